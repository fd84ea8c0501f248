use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{Family, IdSet};

/// Finite simple graph over integer vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    vertices: Vec<u32>,
    adj: BTreeMap<u32, BTreeSet<u32>>,
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = u32>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        let mut adj: BTreeMap<u32, BTreeSet<u32>> =
            vertices.into_iter().map(|v| (v, BTreeSet::new())).collect();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Invalid(format!("loop at vertex {a}")));
            }
            for x in [a, b] {
                if !adj.contains_key(&x) {
                    return Err(Error::Invalid(format!("edge endpoint {x} is not a vertex")));
                }
            }
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
        Ok(Self {
            vertices: adj.keys().copied().collect(),
            adj,
        })
    }

    /// Vertices are the endpoints of the edges.
    pub fn from_edges(edges: &[(u32, u32)]) -> Result<Self> {
        let vs: BTreeSet<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Self::new(vs, edges.iter().copied())
    }

    /// The cycle 1-2-...-n-1.
    pub fn cycle(n: u32) -> Self {
        let edges = (1..=n).map(|i| (i, if i == n { 1 } else { i + 1 }));
        Self::new(1..=n, edges).expect("cycle needs n >= 3")
    }

    pub fn complete(n: u32) -> Self {
        let edges: Vec<(u32, u32)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        Self::new(1..=n, edges).unwrap()
    }

    pub fn path(n: u32) -> Self {
        Self::new(1..=n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    pub fn empty(n: u32) -> Self {
        Self::new(1..=n, std::iter::empty()).unwrap()
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> IdSet {
        IdSet::from_sorted(self.vertices.clone())
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.adj
            .iter()
            .flat_map(|(&a, s)| s.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Self {
        let mut edges = Vec::new();
        for (i, &a) in self.vertices.iter().enumerate() {
            for &b in &self.vertices[i + 1..] {
                if !self.has_edge(a, b) {
                    edges.push((a, b));
                }
            }
        }
        Self::new(self.vertices.iter().copied(), edges).unwrap()
    }

    /// Induced subgraph on `set ∩ V`.
    pub fn induced(&self, set: &IdSet) -> Self {
        let keep: Vec<u32> = set.iter().copied().filter(|v| self.contains_vertex(*v)).collect();
        let edges: Vec<(u32, u32)> = keep
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| {
                keep[i + 1..]
                    .iter()
                    .filter(move |&&b| self.has_edge(a, b))
                    .map(move |&b| (a, b))
            })
            .collect();
        Self::new(keep.iter().copied(), edges).unwrap()
    }

    /// Vertices renamed to `1..=n` in increasing order.
    pub fn relabeled(&self) -> Self {
        let idx: BTreeMap<u32, u32> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32 + 1))
            .collect();
        Self::new(
            1..=self.vertices.len() as u32,
            self.edges().into_iter().map(|(a, b)| (idx[&a], idx[&b])),
        )
        .unwrap()
    }

    pub fn is_clique(&self, set: &IdSet) -> bool {
        set.iter().all(|&v| self.contains_vertex(v)) && set.pairs().all(|(a, b)| self.has_edge(a, b))
    }

    pub fn is_anticlique(&self, set: &IdSet) -> bool {
        set.iter().all(|&v| self.contains_vertex(v)) && set.pairs().all(|(a, b)| !self.has_edge(a, b))
    }

    /// Neighborhoods as bit masks over vertex positions. Requires at most
    /// 64 vertices.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.vertices.len() <= 64, "bit-mask routines need at most 64 vertices");
        self.vertices
            .iter()
            .map(|&v| {
                self.neighbors(v).fold(0u64, |m, u| {
                    m | 1 << self.vertices.binary_search(&u).unwrap()
                })
            })
            .collect()
    }

    pub fn cliques(&self) -> Family {
        Family::cliques(self.clone())
    }

    pub fn anticliques(&self) -> Family {
        Family::anticliques(self.clone())
    }

    /// All maximal cliques, in colex order.
    pub fn maximal_cliques(&self) -> Vec<IdSet> {
        let adj = self.adjacency_masks();
        let n = self.vertices.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut out = Vec::new();
        bron_kerbosch(&adj, 0, all, 0, &mut out);
        let mut sets: Vec<IdSet> = out
            .into_iter()
            .map(|m| IdSet::from_mask(&self.vertices, m))
            .collect();
        sets.sort();
        sets
    }

    pub fn maximal_anticliques(&self) -> Vec<IdSet> {
        self.complement().maximal_cliques()
    }

    /// Clique number.
    pub fn clique_number(&self) -> usize {
        if self.vertices.is_empty() {
            return 0;
        }
        let adj = self.adjacency_masks();
        let n = self.vertices.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut best = 0;
        max_clique(&adj, 0, all, &mut best);
        best
    }

    /// Chromatic number by DSATUR-ordered branch and bound.
    pub fn chromatic_number(&self) -> usize {
        let n = self.vertices.len();
        if n == 0 {
            return 0;
        }
        let adj = self.adjacency_masks();
        let lower = self.clique_number();
        let mut best = greedy_coloring(&adj);
        if best == lower {
            return best;
        }
        let mut colors = vec![usize::MAX; n];
        dsatur_bb(&adj, &mut colors, 0, 0, lower, &mut best);
        best
    }
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

fn max_clique(adj: &[u64], size: usize, mut p: u64, best: &mut usize) {
    if p == 0 {
        *best = (*best).max(size);
        return;
    }
    while p != 0 {
        if size + p.count_ones() as usize <= *best {
            return;
        }
        let v = p.trailing_zeros() as usize;
        p &= p - 1;
        max_clique(adj, size + 1, p & adj[v], best);
    }
}

fn greedy_coloring(adj: &[u64]) -> usize {
    let n = adj.len();
    let mut colors = vec![usize::MAX; n];
    let mut used = 0;
    for v in 0..n {
        let mut c = 0;
        while (0..n).any(|u| adj[v] >> u & 1 == 1 && colors[u] == c) {
            c += 1;
        }
        colors[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn dsatur_bb(
    adj: &[u64],
    colors: &mut [usize],
    colored: usize,
    used: usize,
    lower: usize,
    best: &mut usize,
) {
    let n = adj.len();
    if used >= *best {
        return;
    }
    if colored == n {
        *best = used;
        return;
    }
    // Pick the uncolored vertex of maximal saturation, ties by degree.
    let mut pick = usize::MAX;
    let mut key = (0usize, 0usize);
    for v in 0..n {
        if colors[v] != usize::MAX {
            continue;
        }
        let mut seen = 0u64;
        for u in 0..n {
            if adj[v] >> u & 1 == 1 && colors[u] != usize::MAX {
                seen |= 1 << colors[u];
            }
        }
        let k = (seen.count_ones() as usize, adj[v].count_ones() as usize);
        if pick == usize::MAX || k > key {
            pick = v;
            key = k;
        }
    }
    let v = pick;
    for c in 0..=used.min(n - 1) {
        if c + 1 >= *best && c == used {
            break;
        }
        if (0..n).any(|u| adj[v] >> u & 1 == 1 && colors[u] == c) {
            continue;
        }
        colors[v] = c;
        dsatur_bb(adj, colors, colored + 1, used.max(c + 1), lower, best);
        colors[v] = usize::MAX;
        if *best == lower {
            return;
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(V={:?}, E={:?})", self.vertices, self.edges())
    }
}

/// JSON form: `{"vertices": [...], "edges": [[a, b], ...]}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct GraphJson {
    #[serde(default)]
    vertices: Option<Vec<u32>>,
    edges: Vec<(u32, u32)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            vertices: Some(self.vertices.clone()),
            edges: self.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let vs: BTreeSet<u32> = match raw.vertices {
            Some(v) => v.into_iter().collect(),
            None => raw.edges.iter().flat_map(|&(a, b)| [a, b]).collect(),
        };
        Graph::new(vs, raw.edges).map_err(serde::de::Error::custom)
    }
}
