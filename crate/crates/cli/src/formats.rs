//! SHD text matrices, JSON and DOT exports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sethom::{PairState, SDigraph};

use crate::CliError;

const MAGIC: &str = "SHD1";

fn state_char(s: PairState) -> char {
    match s {
        PairState::Unrelated => '0',
        PairState::Arc => '>',
        PairState::RevArc => '<',
        PairState::Edge => '~',
    }
}

pub fn to_shd(d: &SDigraph) -> String {
    let n = d.n();
    let mut out = format!("{MAGIC} n={n}\n");
    for i in 0..n {
        for j in 0..n {
            out.push(if i == j { '.' } else { state_char(d.state(i, j)) });
        }
        out.push('\n');
    }
    out
}

fn bad(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Format {
        line,
        message: msg.into(),
    }
}

pub fn from_shd(text: &str) -> Result<SDigraph, CliError> {
    let mut lines = text.split('\n');
    let header = lines.next().unwrap_or_default();
    let n: usize = header
        .strip_prefix(MAGIC)
        .and_then(|r| r.strip_prefix(" n="))
        .and_then(|r| r.parse().ok())
        .ok_or_else(|| bad(1, format!("expected `{MAGIC} n=<N>`")))?;
    let rows: Vec<&str> = lines.collect();
    // exactly n rows, each LF-terminated
    if rows.len() != n + 1 || !rows[n].is_empty() {
        return Err(bad(1, format!("expected {n} rows ending in a newline")));
    }
    let mut d = SDigraph::empty(n).map_err(CliError::Core)?;
    for (i, row) in rows[..n].iter().enumerate() {
        let chars: Vec<char> = row.chars().collect();
        if chars.len() != n {
            return Err(bad(i + 2, format!("row has {} characters, expected {n}", chars.len())));
        }
        for (j, &c) in chars.iter().enumerate() {
            let s = match (i == j, c) {
                (true, '.') => continue,
                (false, '0') => PairState::Unrelated,
                (false, '>') => PairState::Arc,
                (false, '<') => PairState::RevArc,
                (false, '~') => PairState::Edge,
                _ => return Err(bad(i + 2, format!("unexpected `{c}` in column {}", j + 1))),
            };
            if j < i {
                if d.state(j, i).flip() != s {
                    return Err(bad(i + 2, format!("entry ({i},{j}) disagrees with ({j},{i})")));
                }
            } else {
                d.set(i, j, s);
            }
        }
    }
    Ok(d)
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct JsonDigraph {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    pub edges: Vec<(usize, usize)>,
}

impl From<&SDigraph> for JsonDigraph {
    fn from(d: &SDigraph) -> Self {
        JsonDigraph {
            n: d.n(),
            arcs: d.arcs(),
            edges: d.edges(),
        }
    }
}

pub fn to_json(d: &SDigraph) -> String {
    serde_json::to_string_pretty(&JsonDigraph::from(d)).expect("plain data serializes") + "\n"
}

pub fn to_dot(d: &SDigraph) -> String {
    let mut out = String::from("digraph {\n");
    for v in 0..d.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (a, b) in d.arcs() {
        let _ = writeln!(out, "  {a} -> {b};");
    }
    for (a, b) in d.edges() {
        let _ = writeln!(out, "  {a} -> {b} [dir=none];");
    }
    out.push_str("}\n");
    out
}
