//! DIMACS edge format and JSON graph input.

use super::Graph;
use crate::error::{Error, Result};

/// Parses `p edge n m` / `e u v` text; `c` lines are comments. Vertices are
/// `1..=n`.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<u32> = None;
    let mut declared = 0usize;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let mut it = line.split_whitespace();
        let bad = |what: &str| Error::Parse(format!("dimacs line {}: {what}", lineno + 1));
        match it.next() {
            None | Some("c") => {}
            Some("p") => {
                if it.next() != Some("edge") && n.is_none() {
                    return Err(bad("expected \"p edge n m\""));
                }
                n = Some(it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("vertex count"))?);
                declared = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("edge count"))?;
            }
            Some("e") => {
                if n.is_none() {
                    return Err(bad("edge before problem line"));
                }
                let mut num = || -> Result<u32> {
                    it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("endpoint"))
                };
                edges.push((num()?, num()?));
            }
            Some(other) => return Err(bad(&format!("unknown record {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("dimacs: missing problem line".into()))?;
    let g = Graph::new(1..=n, edges.iter().copied())?;
    if g.edge_count() != declared {
        return Err(Error::Parse(format!(
            "dimacs: declared {declared} edges, found {}",
            g.edge_count()
        )));
    }
    Ok(g)
}

/// Vertices are relabelled to `1..=n` in sorted order.
pub fn to_dimacs(g: &Graph) -> String {
    let h = g.relabeled();
    let mut s = format!("p edge {} {}\n", h.order(), h.edge_count());
    for (a, b) in h.edges() {
        s.push_str(&format!("e {a} {b}\n"));
    }
    s
}

/// JSON when the text starts with `{`, DIMACS otherwise.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph json: {e}")))
    } else {
        parse_dimacs(text)
    }
}
