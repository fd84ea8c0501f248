//! All graphs up to isomorphism on at most 7 vertices.

use std::collections::BTreeSet;

use super::canon::{canonical_form, from_graph6, to_graph6};
use super::Graph;
use crate::error::Result;

const SHIPPED: &str = include_str!("../../data/graphs_le7.g6");

/// The shipped corpus, one graph per line in graph6, ordered by vertex count
/// then code.
pub fn shipped() -> Result<Vec<Graph>> {
    SHIPPED
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(from_graph6)
        .collect()
}

pub fn shipped_text() -> &'static str {
    SHIPPED
}

/// Canonical representatives of all graphs with `1..=max_n` vertices, built
/// by adding one vertex at a time with every possible neighbourhood.
pub fn generate(max_n: u32) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut level: BTreeSet<String> = BTreeSet::new();
    if max_n == 0 {
        return out;
    }
    level.insert(to_graph6(&Graph::empty(1)));
    for n in 1..=max_n {
        let graphs: Vec<Graph> = level.iter().map(|s| from_graph6(s).unwrap()).collect();
        if n == max_n {
            out.extend(graphs);
            break;
        }
        let mut next = BTreeSet::new();
        for g in &graphs {
            for nb in 0u32..1 << n {
                let edges = g
                    .edges()
                    .into_iter()
                    .chain((0..n).filter(|i| nb >> i & 1 == 1).map(|i| (i + 1, n + 1)));
                let h = Graph::new(1..=n + 1, edges).unwrap();
                next.insert(to_graph6(&canonical_form(&h)));
            }
        }
        out.extend(graphs);
        level = next;
    }
    out
}

pub fn render(graphs: &[Graph]) -> String {
    let mut s = String::new();
    for g in graphs {
        s.push_str(&to_graph6(g));
        s.push('\n');
    }
    s
}
