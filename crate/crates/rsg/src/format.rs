//! The `.rsg` text format.
//!
//! ```text
//! rsg <n> <t> <r>
//! <u> <v> <m>
//! ...
//! ```
//!
//! One record per edge, `0 <= u < v < n`, `0 <= m < t` naming the matching.
//! Fields are separated by whitespace and every line ends with `\n`. The
//! canonical document sorts records by `(m, u, v)`; [`emit_rsg`] always
//! writes it and [`parse_rsg`] reads it back unchanged. Parsing checks
//! syntax and ranges only; whether the records form an RS decomposition is
//! for [`verify_decomposition`](rsg_core::verify_decomposition) to decide.

use std::collections::HashMap;
use std::fmt::Write as _;

use rsg_core::{Edge, MatchingDecomposition};

/// A syntax or range error on a 1-based line.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn numbers<const N: usize>(line: usize, text: &str, what: &str) -> Result<[usize; N], ParseError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != N {
        return fail(
            line,
            format!("{what} needs {N} fields, found {}", fields.len()),
        );
    }
    let mut out = [0; N];
    for (slot, field) in out.iter_mut().zip(&fields) {
        *slot = field.parse().map_err(|_| ParseError {
            line,
            message: format!("{field:?} is not a non-negative integer"),
        })?;
    }
    Ok(out)
}

pub fn parse_rsg(text: &str) -> Result<MatchingDecomposition, ParseError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n').enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().unwrap_or((1, ""));
    let header = header.strip_suffix('\r').unwrap_or(header);
    let rest = match header.trim_start().strip_prefix("rsg") {
        Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => rest,
        _ => return fail(1, "header must start with \"rsg\""),
    };
    let [n, t, r] = numbers::<3>(1, rest, "header \"rsg n t r\"")?;
    if 2 * r as u128 > n as u128 {
        return fail(1, format!("r = {r} does not fit on n = {n} vertices"));
    }

    let mut matchings: Vec<Vec<Edge>> = vec![Vec::new(); t];
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for (line, record) in lines {
        let record = record.strip_suffix('\r').unwrap_or(record);
        let [u, v, m] = numbers::<3>(line, record, "edge record \"u v m\"")?;
        if u >= v {
            return fail(line, format!("edge ({u}, {v}) must have u < v"));
        }
        if v >= n {
            return fail(line, format!("vertex {v} out of range 0..{n}"));
        }
        if m >= t {
            return fail(line, format!("matching index {m} out of range 0..{t}"));
        }
        if let Some(first) = seen.insert((u, v), line) {
            return fail(
                line,
                format!("duplicate edge ({u}, {v}), first listed on line {first}"),
            );
        }
        matchings[m].push(Edge::new(u, v).expect("u < v"));
    }
    MatchingDecomposition::from_matchings(n, matchings, r).map_err(|e| ParseError {
        line: 1,
        message: e.to_string(),
    })
}

/// The canonical document: header, then records sorted by `(m, u, v)`.
pub fn emit_rsg(dec: &MatchingDecomposition) -> String {
    let mut out = String::with_capacity(16 + 12 * dec.graph().edge_count());
    writeln!(out, "rsg {} {} {}", dec.n(), dec.t(), dec.r()).unwrap();
    for (m, e) in dec.labeled_edges() {
        writeln!(out, "{} {} {m}", e.u(), e.v()).unwrap();
    }
    out
}
