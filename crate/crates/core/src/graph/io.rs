//! Edge-list text format: a header line `n m`, then `m` lines `u v` with
//! `0 <= u < v < n`. Writing always emits canonical (sorted) order, so a
//! sorted file round-trips byte for byte.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use super::Graph;

#[derive(Debug, thiserror::Error)]
pub enum EdgeListError {
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn format_err(line: usize, msg: impl Into<String>) -> EdgeListError {
    EdgeListError::Format { line, msg: msg.into() }
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), EdgeListError> {
    let mut it = line.split_ascii_whitespace();
    let a = it.next().ok_or_else(|| format_err(lineno, "expected two integers"))?;
    let b = it.next().ok_or_else(|| format_err(lineno, "expected two integers"))?;
    if it.next().is_some() {
        return Err(format_err(lineno, "trailing tokens"));
    }
    let a = a.parse().map_err(|_| format_err(lineno, format!("bad integer `{a}`")))?;
    let b = b.parse().map_err(|_| format_err(lineno, format!("bad integer `{b}`")))?;
    Ok((a, b))
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph, EdgeListError> {
    let mut lines = reader.lines();
    let header = lines.next().ok_or_else(|| format_err(1, "missing header"))??;
    let (n, m) = parse_pair(&header, 1)?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for i in 0..m {
        let lineno = i + 2;
        let line = lines.next().ok_or_else(|| format_err(lineno, format!("expected {m} edges, found {i}")))??;
        let (u, v) = parse_pair(&line, lineno)?;
        if u >= v || v >= n {
            return Err(format_err(lineno, format!("edge `{u} {v}` violates 0 <= u < v < {n}")));
        }
        if !seen.insert((u, v)) {
            return Err(format_err(lineno, format!("duplicate edge `{u} {v}`")));
        }
        edges.push((u, v));
    }
    for (j, rest) in lines.enumerate() {
        if !rest?.trim().is_empty() {
            return Err(format_err(m + 2 + j, "unexpected content after the declared edges"));
        }
    }
    Ok(Graph::from_edges(n, edges).expect("validated edges"))
}

pub fn to_edge_list_string(g: &Graph) -> String {
    let mut s = String::with_capacity(8 * (g.m() + 1));
    let _ = writeln!(s, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    w.write_all(to_edge_list_string(g).as_bytes())
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    read_edge_list(text.as_bytes())
}
