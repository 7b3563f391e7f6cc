//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Built with `harness = false` so the lines reach the terminal during
//! `cargo test`. Any failure makes the process exit non-zero.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rsg::{emit_rsg, exists_rs_parallel, parse_rsg};
use rsg_core::bounds::{distance_certificate, expansion_audit, max_r};
use rsg_core::constructions::{
    ap_free_set, cayley_rs, double_cover, hypercube_rs, kneser_rs, ApMethod,
};
use rsg_core::search::{SearchOptions, Verdict};
use rsg_core::{verify_decomposition, Graph, MatchingDecomposition, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params(dec: &MatchingDecomposition) -> (usize, usize, usize) {
    (dec.n(), dec.t(), dec.r())
}

fn verified(label: &str, dec: &MatchingDecomposition) -> Result<(), String> {
    let report = verify_decomposition(dec);
    ensure(report.pass, || {
        format!(
            "{label}: verification failed: {:?}",
            report.violations.first()
        )
    })
}

fn kneser_instances() -> Vec<(String, MatchingDecomposition)> {
    (1..=4)
        .map(|k| (format!("kneser k={k}"), kneser_rs(k).unwrap()))
        .collect()
}

fn hypercube_instances() -> Vec<(String, MatchingDecomposition)> {
    let mut out = Vec::new();
    for k in 2..=10 {
        out.push((format!("hypercube k={k}"), hypercube_rs(k, false).unwrap()));
        if k % 2 == 0 {
            out.push((format!("hypercube+ k={k}"), hypercube_rs(k, true).unwrap()));
        }
    }
    out
}

fn cayley_41() -> MatchingDecomposition {
    let set = ap_free_set(ApMethod::GreedyBase3, 13).unwrap();
    cayley_rs(41, &set).unwrap()
}

/// Every base instance named by the criteria plus their double covers.
fn sweep() -> Vec<(String, MatchingDecomposition)> {
    let mut base = kneser_instances();
    base.extend(hypercube_instances());
    base.push(("cayley N=41".into(), cayley_41()));
    for modulus in (7..=61).step_by(2) {
        for method in [ApMethod::GreedyBase3, ApMethod::Behrend] {
            let set = ap_free_set(method, (modulus - 1) / 3).unwrap();
            base.push((
                format!("cayley N={modulus} {}", method.name()),
                cayley_rs(modulus, &set).unwrap(),
            ));
        }
    }
    let covers: Vec<_> = base
        .iter()
        .map(|(label, dec)| (format!("cover of {label}"), double_cover(dec).unwrap()))
        .collect();
    base.extend(covers);
    base
}

fn kneser_exactness() -> Outcome {
    for (label, dec) in kneser_instances() {
        verified(&label, &dec)?;
        let (n, t, r) = params(&dec);
        let expected =
            Rational::new(n as i128, 4) * (Rational::from_integer(1) + Rational::new(1, t as i128));
        ensure(Rational::from_integer(r as i128) == expected, || {
            format!("{label}: r = {r}, (n/4)(1+1/t) = {expected}")
        })?;
    }
    let k4 = params(&kneser_rs(4).unwrap());
    ensure(k4 == (126, 9, 35), || format!("k=4 gave (n,t,r) = {k4:?}"))?;
    Ok("k=1..4 tight, k=4 is (126, 9, 35)".into())
}

fn hypercube_family() -> Outcome {
    let mut count = 0;
    for k in 2..=10 {
        for augmented in [false, true] {
            if augmented && k % 2 == 1 {
                continue;
            }
            let dec = hypercube_rs(k, augmented).unwrap();
            let label = format!("k={k} augmented={augmented}");
            verified(&label, &dec)?;
            let (n, t, r) = params(&dec);
            let want_t = if augmented { 2 * k + 2 } else { 2 * k };
            ensure(4 * r == n && t == want_t, || {
                format!("{label}: (n,t,r) = ({n},{t},{r})")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} instances with r = n/4"))
}

fn double_covers() -> Outcome {
    let mut base = kneser_instances();
    base.extend(hypercube_instances());
    base.push(("cayley N=41".into(), cayley_41()));
    for (label, dec) in &base {
        let cover = double_cover(dec).map_err(|e| format!("{label}: {e}"))?;
        verified(&format!("cover of {label}"), &cover)?;
        let (n, t, r) = params(dec);
        ensure(params(&cover) == (2 * n, t, 2 * r), || {
            format!("{label}: cover is {:?}", params(&cover))
        })?;
    }
    let triangle = MatchingDecomposition::from_matchings(
        3,
        Graph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)])
            .unwrap()
            .edges()
            .iter()
            .map(|&e| vec![e])
            .collect(),
        1,
    )
    .unwrap();
    let hexagon = double_cover(&triangle).unwrap();
    let g = hexagon.graph();
    ensure(
        g.n() == 6
            && g.edge_count() == 6
            && g.degrees().iter().all(|&d| d == 2)
            && g.girth() == Some(6),
        || "K3 cover is not a 6-cycle".into(),
    )?;
    Ok(format!("{} covers are (2n, 2r, t); K3 -> C6", base.len()))
}

fn bound_engine() -> Outcome {
    let cases = [
        ((10, 5), Rational::from_integer(3)),
        ((6, 4), Rational::new(9, 5)),
        ((10, 6), Rational::new(20, 7)),
    ];
    for ((n, t), want) in cases {
        let got = max_r(n, t);
        ensure(got == want, || {
            format!("max_r({n},{t}) = {got}, want {want}")
        })?;
    }
    Ok("max_r(10,5)=3, max_r(6,4)=9/5, max_r(10,6)=20/7".into())
}

fn search_consistency() -> Outcome {
    let options = SearchOptions {
        eq1_shortcut: false,
        ..SearchOptions::default()
    };
    let (mut sat, mut unsat, mut indeterminate) = (0, 0, Vec::new());
    for n in 2..=7usize {
        for r in 1..=3usize.min(n / 2) {
            for t in 0..=6usize {
                let out = exists_rs_parallel(n, r, t, &options, 0)
                    .map_err(|e| format!("({n},{r},{t}): {e}"))?;
                let bound = max_r(n as u64, t as u64);
                match out.verdict {
                    Verdict::Sat => {
                        sat += 1;
                        ensure(Rational::from_integer(r as i128) <= bound, || {
                            format!("({n},{r},{t}) SAT but max_r = {bound}")
                        })?;
                        let cert = out.certificate.as_ref().ok_or("SAT without certificate")?;
                        verified(&format!("certificate ({n},{r},{t})"), cert)?;
                    }
                    Verdict::Unsat => unsat += 1,
                    Verdict::Indeterminate => indeterminate.push((n, r, t)),
                }
            }
        }
    }
    for (n, r, t) in [(3, 1, 3), (6, 2, 3)] {
        let out = exists_rs_parallel(n, r, t, &options, 1).map_err(|e| e.to_string())?;
        ensure(out.verdict == Verdict::Sat, || {
            format!("({n},{r},{t}) gave {:?}", out.verdict)
        })?;
    }
    Ok(format!(
        "{sat} SAT, {unsat} UNSAT, {} INDETERMINATE {:?}",
        indeterminate.len(),
        indeterminate
    ))
}

fn edge_local_invariants() -> Outcome {
    let all = sweep();
    for (label, dec) in &all {
        let report = verify_decomposition(dec);
        let s = &report.stats;
        ensure(
            report.pass && s.max_degree_sum <= s.t + 1 && s.max_intersection <= s.r,
            || {
                format!(
                    "{label}: max d_u+d_v = {} (t+1 = {}), max |Vi∩Vj| = {} (r = {})",
                    s.max_degree_sum,
                    s.t + 1,
                    s.max_intersection,
                    s.r
                )
            },
        )?;
    }
    Ok(format!("0 violations over {} decompositions", all.len()))
}

fn distance_certificates() -> Outcome {
    let petersen = distance_certificate(&kneser_rs(2).unwrap()).map_err(|e| e.to_string())?;
    ensure(
        petersen.min_distance == Some(6) && 2 * petersen.r == 6,
        || format!("Petersen min distance {:?}", petersen.min_distance),
    )?;
    let all = sweep();
    for (label, dec) in &all {
        let c = distance_certificate(dec).map_err(|e| format!("{label}: {e}"))?;
        ensure(c.holds(), || {
            format!("{label}: slack {} / {}", c.lower_slack, c.upper_slack)
        })?;
    }
    Ok(format!(
        "Petersen min distance 6 = 2r; slack >= 0 on {} families",
        all.len()
    ))
}

fn expansion_audits() -> Outcome {
    for (k, augmented) in [(2, false), (4, true)] {
        let dec = hypercube_rs(k, augmented).unwrap();
        let a = expansion_audit(&dec).map_err(|e| e.to_string())?;
        ensure(4 * (2 * a.e1 + a.e0) == a.n * a.t, || {
            format!(
                "k={k}: 2E1+E0 = {}, nt/4 = {}/4",
                2 * a.e1 + a.e0,
                a.n * a.t
            )
        })?;
    }
    let mut checked = 0;
    let mut pairs = 0;
    for (label, dec) in sweep() {
        if 4 * dec.r() != dec.n() {
            continue;
        }
        let a = expansion_audit(&dec).map_err(|e| format!("{label}: {e}"))?;
        ensure(a.bfs_violations == 0 && a.passed(), || {
            format!(
                "{label}: {} BFS violations, witness {:?}",
                a.bfs_violations, a.bfs_witness
            )
        })?;
        checked += 1;
        pairs += a.bfs_pairs_checked;
    }
    Ok(format!("2E1+E0 = nt/4 on k=2 and k=4+; {checked} quarter instances, {pairs} BFS pairs, 0 violations"))
}

fn progression(set: &[u64]) -> bool {
    let mut member = vec![false; set.last().map_or(0, |&m| m as usize + 1)];
    for &x in set {
        member[x as usize] = true;
    }
    set.iter().enumerate().any(|(i, &x)| {
        set[i + 1..]
            .iter()
            .any(|&z| (x + z) % 2 == 0 && member[((x + z) / 2) as usize])
    })
}

fn cayley_construction() -> Outcome {
    let dec = cayley_41();
    verified("cayley 41", &dec)?;
    ensure(params(&dec) == (82, 41, 7), || {
        format!("got {:?}", params(&dec))
    })?;
    for method in [ApMethod::GreedyBase3, ApMethod::Behrend] {
        for limit in 1..=10_000 {
            let set = ap_free_set(method, limit)
                .map_err(|e| format!("{} {limit}: {e}", method.name()))?;
            let e = &set.elements;
            ensure(
                e.windows(2).all(|w| w[0] < w[1]) && e[0] >= 1 && *e.last().unwrap() <= limit,
                || format!("{} {limit}: elements out of range", method.name()),
            )?;
            ensure(!progression(e), || {
                format!("{} {limit}: contains a 3-AP", method.name())
            })?;
        }
    }
    Ok("(82, 41, 7); 20000 sets free of 3-APs".into())
}

fn round_trip() -> Outcome {
    let all = sweep();
    for (label, dec) in &all {
        let text = emit_rsg(dec);
        let back = parse_rsg(&text).map_err(|e| format!("{label}: {e}"))?;
        ensure(emit_rsg(&back) == text && &back == dec, || {
            format!("{label}: round trip differs")
        })?;
    }
    Ok(format!("{} canonical documents byte-identical", all.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "kneser-exactness",
            Some(Duration::from_secs(5)),
            kneser_exactness,
        ),
        (
            "hypercube-family",
            Some(Duration::from_secs(10)),
            hypercube_family,
        ),
        ("double-cover", Some(Duration::from_secs(10)), double_covers),
        ("bound-engine", None, bound_engine),
        (
            "search-consistency",
            Some(Duration::from_secs(600)),
            search_consistency,
        ),
        ("edge-local-invariants", None, edge_local_invariants),
        ("distance-certificate", None, distance_certificates),
        ("expansion-audit", None, expansion_audits),
        (
            "cayley-ap",
            Some(Duration::from_secs(30)),
            cayley_construction,
        ),
        ("round-trip", None, round_trip),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
