//! Canonical labelling for small graphs and the graph6 text format.

use super::Graph;
use crate::error::{Error, Result};

/// Upper-triangle adjacency bits in the order (0,1), (0,2), (1,2), (0,3), ...
fn code(adj: &[u64], perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut c = 0u64;
    for j in 1..n {
        for i in 0..j {
            c = c << 1 | (adj[perm[i]] >> perm[j] & 1);
        }
    }
    c
}

/// Canonical form: the relabelling onto `1..=n` maximising the adjacency
/// code, searched over orderings that sort vertices by decreasing degree.
/// Isomorphic graphs get equal forms. Intended for at most 10 vertices.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.order();
    let adj = g.adjacency_masks();
    let deg: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    // Degree classes, permuted independently.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if deg[c[0]] == deg[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut perm = Vec::with_capacity(n);
    search(&adj, &mut classes, 0, &mut perm, &mut best);
    let (_, perm) = best.unwrap_or((0, Vec::new()));
    let mut pos = vec![0u32; n];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i as u32 + 1;
    }
    let vs = g.vertices();
    let idx = |x: u32| vs.binary_search(&x).unwrap();
    Graph::new(
        1..=n as u32,
        g.edges().into_iter().map(|(a, b)| (pos[idx(a)], pos[idx(b)])),
    )
    .unwrap()
}

fn search(
    adj: &[u64],
    classes: &mut [Vec<usize>],
    ci: usize,
    perm: &mut Vec<usize>,
    best: &mut Option<(u64, Vec<usize>)>,
) {
    if ci == classes.len() {
        let c = code(adj, perm);
        if best.as_ref().is_none_or(|(b, _)| c > *b) {
            *best = Some((c, perm.clone()));
        }
        return;
    }
    permute(adj, classes, ci, 0, perm, best);
}

fn permute(
    adj: &[u64],
    classes: &mut [Vec<usize>],
    ci: usize,
    k: usize,
    perm: &mut Vec<usize>,
    best: &mut Option<(u64, Vec<usize>)>,
) {
    let len = classes[ci].len();
    if k == len {
        perm.extend_from_slice(&classes[ci].clone());
        search(adj, classes, ci + 1, perm, best);
        perm.truncate(perm.len() - len);
        return;
    }
    for i in k..len {
        classes[ci].swap(k, i);
        permute(adj, classes, ci, k + 1, perm, best);
        classes[ci].swap(k, i);
    }
}

/// graph6 encoding of `g` with vertices taken in sorted order.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= 62, "graph6 short form only");
    let adj = g.adjacency_masks();
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(adj[i] >> j & 1 == 1);
        }
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                v |= 1 << (5 - k);
            }
        }
        out.push((v + 63) as char);
    }
    out
}

/// Parses a graph6 line; vertices become `1..=n`.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let bytes = s.trim().as_bytes();
    let bad = || Error::Parse(format!("graph6 {s:?}"));
    let (&first, rest) = bytes.split_first().ok_or_else(bad)?;
    if !(63..=125).contains(&first) {
        return Err(bad());
    }
    let n = (first - 63) as usize;
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != need || rest.iter().any(|b| !(63..=126).contains(b)) {
        return Err(bad());
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i as u32 + 1, j as u32 + 1));
            }
            k += 1;
        }
    }
    Graph::new(1..=n as u32, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_round_trip() {
        let g = Graph::cycle(5);
        let s = to_graph6(&g);
        assert_eq!(s, "Dhc");
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn relabelled_cycles_share_a_form() {
        let a = Graph::cycle(6);
        let b = Graph::from_edges(&[(1, 3), (3, 5), (5, 2), (2, 6), (6, 4), (4, 1)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&Graph::path(6)));
    }
}
