//! Plain-text renderings and the JSON shapes that are not core types.

use std::fmt::Write as _;

use rsg_core::bounds::{
    AssertionStatus, AuditReport, BoundVerdict, DistanceCertificate, LayerBound,
};
use rsg_core::search::SearchOutcome;
use rsg_core::{Rational, VerificationReport, Witness};
use serde::Serialize;

use crate::format::emit_rsg;

/// JSON for `bound` without `--r`.
#[derive(Debug, Clone, Serialize)]
pub struct MaxRReport {
    pub n: u64,
    pub t: u64,
    pub max_r: String,
    pub max_r_floor: i128,
}

impl MaxRReport {
    pub fn new(n: u64, t: u64, bound: Rational) -> Self {
        MaxRReport {
            n,
            t,
            max_r: bound.to_string(),
            max_r_floor: bound.floor().to_integer(),
        }
    }
}

/// JSON for `search` and `max-t`: the outcome with the certificate inlined
/// as an .rsg document.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub verdict: &'static str,
    pub t: Option<usize>,
    pub nodes_explored: u64,
    pub wall_time_secs: Option<f64>,
    pub note: Option<String>,
    pub certificate: Option<String>,
}

impl SearchReport {
    pub fn new(outcome: &SearchOutcome) -> Self {
        SearchReport {
            verdict: outcome.verdict.name(),
            t: outcome.t(),
            nodes_explored: outcome.nodes_explored,
            wall_time_secs: crate::cli::secs(outcome.wall_time),
            note: outcome.note.clone(),
            certificate: outcome.certificate.as_ref().map(emit_rsg),
        }
    }
}

pub fn witness(w: &Witness) -> String {
    match *w {
        Witness::Edge {
            matching: Some(m),
            edge,
        } => format!("edge {edge} listed in matching {m}"),
        Witness::Edge {
            matching: None,
            edge,
        } => format!("edge {edge}"),
        Witness::SharedEdge {
            edge,
            first,
            second,
        } => {
            format!("edge {edge} in matchings {first} and {second}")
        }
        Witness::Size {
            matching,
            size,
            expected,
        } => {
            format!("matching {matching} has {size} edges, expected {expected}")
        }
        Witness::Vertex { matching, vertex } => {
            format!("matching {matching} uses vertex {vertex} twice")
        }
        Witness::Pair { matching, u, v } => {
            format!("edge ({u}, {v}) joins two endpoints of matching {matching}")
        }
        Witness::DegreeSum { edge, sum, limit } => {
            format!("edge {edge} has d_u + d_v = {sum} > {limit}")
        }
        Witness::Intersection {
            first,
            second,
            size,
            limit,
        } => {
            format!("|V_{first} ∩ V_{second}| = {size} > {limit}")
        }
    }
}

pub fn verification(report: &VerificationReport) -> String {
    let s = &report.stats;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: n={} t={} r={} edges={}",
        if report.pass { "PASS" } else { "FAIL" },
        s.n,
        s.t,
        s.r,
        s.edges
    );
    for v in &report.violations {
        let _ = writeln!(
            out,
            "  {} x{}: first {}",
            v.invariant.name(),
            v.count,
            witness(&v.witness)
        );
    }
    let _ = writeln!(
        out,
        "degrees {}..{}, max d_u + d_v = {} (limit {}), max |V_i ∩ V_j| = {} (limit {}), isolated {}",
        s.min_degree,
        s.max_degree,
        s.max_degree_sum,
        s.t + 1,
        s.max_intersection,
        s.r,
        s.isolated_vertices
    );
    out
}

pub fn bound(v: &BoundVerdict) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: n={} r={} t={} ({})",
        if v.feasible { "feasible" } else { "infeasible" },
        v.n,
        v.r,
        v.t,
        v.regime.name()
    );
    let _ = writeln!(
        out,
        "max r = {}{}",
        rsg_core::bounds::max_r(v.n, v.t),
        if v.tight { " (tight)" } else { "" }
    );
    if let Some(lb) = &v.t_bound {
        let _ = writeln!(
            out,
            "{}: max t = {} ({})",
            lb.expression,
            lb.max_t,
            if lb.holds { "holds" } else { "violated" }
        );
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "reason: {w}");
    }
    for a in &v.advisory {
        let _ = writeln!(out, "advisory: {a}");
    }
    out
}

pub fn search(summary: &str, outcome: &SearchOutcome) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{}: {summary}, {} nodes",
        outcome.verdict.name(),
        outcome.nodes_explored
    );
    if let Some(d) = outcome.wall_time {
        let _ = write!(out, ", {:.3}s", d.as_secs_f64());
    }
    out.push('\n');
    if let Some(note) = &outcome.note {
        let _ = writeln!(out, "note: {note}");
    }
    if let Some(cert) = &outcome.certificate {
        out.push_str(&emit_rsg(cert));
    }
    out
}

pub fn audit(a: &AuditReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: n={} r={} t={}{}",
        if a.passed() { "PASS" } else { "FAIL" },
        a.n,
        a.r,
        a.t,
        if a.double_covered {
            " (double cover of the input)"
        } else {
            ""
        }
    );
    let _ = writeln!(
        out,
        "edges={} E1={} E0={} below={} above={} excess sum={}",
        a.edges,
        a.e1,
        a.e0,
        a.e_neg.iter().sum::<usize>(),
        a.e_above,
        a.excess_sum
    );
    let _ = writeln!(
        out,
        "core F: {} vertices, {} edges; BFS pairs {} with {} violations",
        a.f_vertices, a.f_edges, a.bfs_pairs_checked, a.bfs_violations
    );
    for x in &a.assertions {
        let status = match x.status {
            AssertionStatus::Pass => "pass",
            AssertionStatus::Fail => "FAIL",
            AssertionStatus::NotApplicable => "n/a",
            AssertionStatus::Info => "info",
        };
        let _ = writeln!(out, "  [{status}] {}: {}", x.name, x.detail);
    }
    for row in &a.layers {
        let kind = match row.bound {
            LayerBound::Weaker => "layer",
            LayerBound::Sharpened => "layer'",
        };
        let _ = writeln!(
            out,
            "  {kind} {}: size {} >= {} {}{}",
            row.depth,
            row.size,
            row.lower_bound,
            if row.holds { "ok" } else { "short" },
            if row.asserted { "" } else { " (informational)" }
        );
    }
    out
}

pub fn distance(c: &DistanceCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: n={} r={} t={}",
        if c.holds() { "PASS" } else { "FAIL" },
        c.n,
        c.r,
        c.t
    );
    match (c.min_distance, c.min_pair) {
        (Some(d), Some((i, j))) => {
            let _ = writeln!(
                out,
                "min distance {d} between v_{i} and v_{j} (need >= {})",
                2 * c.r
            );
        }
        _ => out.push_str("no pairs (t = 0)\n"),
    }
    if let Some(d) = c.min_distance_matchings {
        let _ = writeln!(out, "min distance among matchings {d}");
    }
    let _ = writeln!(
        out,
        "{} <= {} = {} <= {}; slack {} / {}{}",
        c.lower,
        c.distance_sum,
        c.coordinate_sum,
        c.upper,
        c.lower_slack,
        c.upper_slack,
        if c.binding {
            ""
        } else {
            " (4r <= n: not binding)"
        }
    );
    out
}
