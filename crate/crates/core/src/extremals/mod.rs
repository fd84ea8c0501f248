//! Extreme points of the unit ball of the clique norm `‖·‖_G` on a finite
//! graph: terminal points, the half-valued extension of an odd hole,
//! antihole points and the rational-value gadget.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rat::{abs, serde_str};
use crate::exact::{half, Rat, RatMatrix, RatVector};
use crate::families::{sign_vectors, Family, IdSet};
use crate::graphs::Graph;
use crate::norms::family_norm;

/// `W(max(A(G)))`: sign patterns on maximal anticliques.
pub fn terminal_points(g: &Graph) -> Vec<RatVector> {
    sign_vectors(&g.maximal_anticliques())
        .into_iter()
        .map(|s| s.to_rat_vector())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremeReport {
    pub extreme: bool,
    pub rank: usize,
    pub dimension: usize,
    /// Maximal cliques `C` with `Σ_{v∈C} |x(v)| = 1`.
    pub tight_cliques: Vec<IdSet>,
}

/// Vertex test for the unit ball: the normals of the tight inequalities
/// `Σ_{v∈C} σ_v x(v) ≤ 1` must span `R^V`.
pub fn extreme_report(g: &Graph, x: &RatVector) -> Result<ExtremeReport> {
    let ids = g.vertices();
    if let Some((v, _)) = x.iter().find(|(v, _)| !g.contains_vertex(*v)) {
        return Err(Error::OutsideUniverse(v));
    }
    let n = family_norm(&Family::cliques(g.clone()), x);
    if !n.is_one() {
        return Err(Error::NotOnSphere(crate::exact::rat::format_rat(&n)));
    }
    let pos = |v: u32| ids.binary_search(&v).unwrap();
    let mut rows = Vec::new();
    let mut tight = Vec::new();
    let mut zeros = BTreeSet::new();
    for c in g.maximal_cliques() {
        let mass: Rat = c.iter().map(|&v| abs(&x.get(v))).sum();
        if !mass.is_one() {
            continue;
        }
        // both signs on a zero coordinate are tight; their span adds e_v
        let mut row = vec![Rat::zero(); ids.len()];
        for &v in c.iter() {
            let a = x.get(v);
            row[pos(v)] = if a.is_negative() { -Rat::one() } else { Rat::one() };
            if a.is_zero() {
                zeros.insert(v);
            }
        }
        rows.push(row);
        tight.push(c);
    }
    for v in zeros {
        let mut row = vec![Rat::zero(); ids.len()];
        row[pos(v)] = Rat::one();
        rows.push(row);
    }
    let rank = if rows.is_empty() {
        0
    } else {
        RatMatrix::new(rows)?.rank()
    };
    Ok(ExtremeReport {
        extreme: rank == ids.len(),
        rank,
        dimension: ids.len(),
        tight_cliques: tight,
    })
}

pub fn is_extreme(g: &Graph, x: &RatVector) -> Result<bool> {
    Ok(extreme_report(g, x)?.extreme)
}

fn check_hole(g: &Graph, hole: &[u32]) -> Result<()> {
    let fail = |why: &str| Err(Error::NotAnOddHole(format!("{hole:?}: {why}")));
    let k = hole.len();
    if k < 5 || k % 2 == 0 {
        return fail("length must be odd and at least 5");
    }
    let set: BTreeSet<u32> = hole.iter().copied().collect();
    if set.len() != k {
        return fail("repeated vertex");
    }
    if let Some(v) = hole.iter().find(|&&v| !g.contains_vertex(v)) {
        return fail(&format!("{v} is not a vertex"));
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(hole[i], hole[j]) != consecutive {
                return fail("not an induced cycle in the given order");
            }
        }
    }
    Ok(())
}

fn component(g: &Graph, start: &IdSet) -> IdSet {
    let mut seen: BTreeSet<u32> = start.iter().copied().collect();
    let mut stack: Vec<u32> = seen.iter().copied().collect();
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    IdSet::new(seen)
}

/// An extreme point equal to `1/2` on the odd hole, with values in
/// `{0, 1/2, 1}`. Vertices are added in ascending id order among those
/// adjacent to the assigned set; each gets its value from the first rule
/// that applies:
/// 1. a neighbour with value 1 gives 0;
/// 2. two adjacent neighbours with value 1/2 give 0;
/// 3. all neighbours 0 gives 1;
/// 4. otherwise 1/2.
///
/// Every other component receives `+1` on its colex-first maximal
/// anticlique.
pub fn extend_half(g: &Graph, hole: &[u32]) -> Result<RatVector> {
    check_hole(g, hole)?;
    let h = half();
    let one = Rat::one();
    let mut value: std::collections::BTreeMap<u32, Rat> =
        hole.iter().map(|&v| (v, h.clone())).collect();
    loop {
        let next = g
            .vertices()
            .iter()
            .copied()
            .find(|&v| !value.contains_key(&v) && g.neighbors(v).any(|w| value.contains_key(&w)));
        let Some(v) = next else { break };
        let assigned: Vec<(u32, &Rat)> = g
            .neighbors(v)
            .filter_map(|w| value.get(&w).map(|a| (w, a)))
            .collect();
        let halves: Vec<u32> = assigned.iter().filter(|(_, a)| **a == h).map(|&(w, _)| w).collect();
        let a = if assigned.iter().any(|(_, a)| **a == one) {
            Rat::zero()
        } else if halves
            .iter()
            .enumerate()
            .any(|(i, &p)| halves[i + 1..].iter().any(|&q| g.has_edge(p, q)))
        {
            Rat::zero()
        } else if assigned.iter().all(|(_, a)| a.is_zero()) {
            one.clone()
        } else {
            h.clone()
        };
        value.insert(v, a);
    }
    let mut x = RatVector::from_pairs(value);
    let mut covered: BTreeSet<u32> = component(g, &IdSet::new(hole.iter().copied())).into_vec().into_iter().collect();
    for &v in g.vertices() {
        if covered.contains(&v) {
            continue;
        }
        let comp = component(g, &IdSet::singleton(v));
        let first = g.induced(&comp).maximal_anticliques().into_iter().next();
        for &u in first.iter().flat_map(|s| s.iter()) {
            x.set(u, one.clone());
        }
        covered.extend(comp.iter().copied());
    }
    Ok(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntiholePoint {
    pub graph: Graph,
    pub x: RatVector,
    /// Indicators of the maximal cliques, as shifts of `(1,0,1,0,...,1,0,0)`.
    pub clique_matrix: Vec<Vec<i64>>,
    #[serde(with = "serde_str")]
    pub determinant: Rat,
    pub extreme: bool,
}

/// The `(2n+1)`-antihole on `1..=2n+1` (complement of the cycle).
pub fn antihole(n: u32) -> Graph {
    Graph::cycle(2 * n + 1).complement()
}

fn circulant_first_row(n: u32) -> Vec<i64> {
    let m = 2 * n + 1;
    (0..m).map(|j| i64::from(j % 2 == 0 && j < 2 * n - 1)).collect()
}

/// `|x(v)| = 1/n` on the `(2n+1)`-antihole, all positive unless `signs`
/// are given (one `±1` per vertex).
pub fn antihole_point(n: u32, signs: Option<&[i8]>) -> Result<AntiholePoint> {
    if n < 2 {
        return Err(Error::Invalid(format!("antihole point needs n >= 2, got {n}")));
    }
    let m = (2 * n + 1) as usize;
    if let Some(s) = signs {
        if s.len() != m || s.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::Invalid(format!("need {m} signs in {{-1, 1}}")));
        }
    }
    let graph = antihole(n);
    let inv = Rat::new(1.into(), n.into());
    let x = RatVector::from_pairs((1..=m as u32).map(|v| {
        let s = signs.map_or(1, |s| s[v as usize - 1]);
        (v, if s < 0 { -inv.clone() } else { inv.clone() })
    }));
    let first = circulant_first_row(n);
    let a = RatMatrix::circulant(&first.iter().map(|&v| Rat::from_integer(v.into())).collect::<Vec<_>>());
    let determinant = a.determinant()?;
    let clique_matrix = (0..m)
        .map(|i| (0..m).map(|j| first[(j + m - i) % m]).collect())
        .collect();
    let extreme = is_extreme(&graph, &x)?;
    Ok(AntiholePoint {
        graph,
        x,
        clique_matrix,
        determinant,
        extreme,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub graph: Graph,
    pub x: RatVector,
    pub w: u32,
    pub clique: IdSet,
    #[serde(with = "serde_str")]
    pub determinant: Rat,
    pub extreme: bool,
}

/// A graph and an extreme point taking the value `q` at vertex `w`.
/// For `q = i/n ∈ (0,1)`: the `(2n+1)`-antihole plus `w = 2n+2` joined to
/// the lexicographically first clique of size `n - i`, with `1/n` on the
/// antihole and `i/n` at `w`. Negative `q` flips the sign at `w`; `±1`
/// uses `K_1` and `0` uses `K_2` with `x = (1, 0)`.
pub fn rational_gadget(q: &Rat) -> Result<Gadget> {
    let aq = abs(q);
    let one = Rat::one();
    if aq > one {
        return Err(Error::Invalid(format!("{q} lies outside [-1, 1]")));
    }
    let flip = |mut g: Gadget| -> Result<Gadget> {
        if q.is_negative() {
            let a = g.x.get(g.w);
            g.x.set(g.w, -a);
            g.extreme = is_extreme(&g.graph, &g.x)?;
        }
        Ok(g)
    };
    if aq.is_one() || aq.is_zero() {
        let (graph, x, w) = if aq.is_one() {
            (Graph::complete(1), RatVector::from_pairs([(1, one.clone())]), 1)
        } else {
            (Graph::complete(2), RatVector::from_pairs([(1, one.clone())]), 2)
        };
        let extreme = is_extreme(&graph, &x)?;
        return flip(Gadget {
            clique: IdSet::empty(),
            determinant: one,
            graph,
            x,
            w,
            extreme,
        });
    }
    let n = u32::try_from(aq.denom()).map_err(|_| Error::Invalid("denominator too large".into()))?;
    let i = u32::try_from(aq.numer()).unwrap();
    let d = antihole(n);
    let clique = first_clique(&d, (n - i) as usize)
        .ok_or_else(|| Error::Invalid("no clique of the required size".into()))?;
    let w = 2 * n + 2;
    let edges: Vec<(u32, u32)> = d.edges().into_iter().chain(clique.iter().map(|&c| (c, w))).collect();
    let graph = Graph::new(1..=w, edges)?;
    let inv = Rat::new(1.into(), n.into());
    let mut x = RatVector::from_pairs((1..=2 * n + 1).map(|v| (v, inv.clone())));
    x.set(w, aq.clone());
    let m = (2 * n + 1) as usize;
    let first = circulant_first_row(n);
    let mut rows: Vec<Vec<Rat>> = (0..m)
        .map(|r| {
            let mut row: Vec<Rat> = (0..m).map(|j| Rat::from_integer(first[(j + m - r) % m].into())).collect();
            row.push(Rat::zero());
            row
        })
        .collect();
    let mut last: Vec<Rat> = (1..=m as u32)
        .map(|v| if clique.contains(v) { one.clone() } else { Rat::zero() })
        .collect();
    last.push(one.clone());
    rows.push(last);
    let determinant = RatMatrix::new(rows)?.determinant()?;
    let extreme = is_extreme(&graph, &x)?;
    flip(Gadget {
        graph,
        x,
        w,
        clique,
        determinant,
        extreme,
    })
}

/// The lexicographically first clique of `size` vertices.
fn first_clique(g: &Graph, size: usize) -> Option<IdSet> {
    fn go(g: &Graph, from: usize, cur: &mut Vec<u32>, size: usize) -> bool {
        if cur.len() == size {
            return true;
        }
        let vs = g.vertices();
        for i in from..vs.len() {
            let v = vs[i];
            if cur.iter().all(|&u| g.has_edge(u, v)) {
                cur.push(v);
                if go(g, i + 1, cur, size) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = Vec::new();
    go(g, 0, &mut cur, size).then(|| IdSet::new(cur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn halves(n: u32) -> RatVector {
        RatVector::from_pairs((1..=n).map(|v| (v, half())))
    }

    #[test]
    fn terminal_point_counts() {
        assert_eq!(terminal_points(&Graph::complete(3)).len(), 6);
        assert_eq!(terminal_points(&Graph::new([1, 2], []).unwrap()).len(), 4);
        assert_eq!(terminal_points(&Graph::cycle(5)).len(), 20);
    }

    #[test]
    fn extreme_tests() {
        let k2 = Graph::complete(2);
        assert!(!is_extreme(&k2, &halves(2)).unwrap());
        assert!(is_extreme(&Graph::cycle(5), &halves(5)).unwrap());
        let third = RatVector::from_pairs((1..=7).map(|v| (v, rat(1, 3))));
        assert!(is_extreme(&antihole(3), &third).unwrap());
        let off = RatVector::from_pairs([(1, int(2))]);
        assert!(matches!(is_extreme(&k2, &off), Err(Error::NotOnSphere(_))));
    }

    #[test]
    fn extension_of_holes() {
        let c5 = Graph::cycle(5);
        assert_eq!(extend_half(&c5, &[1, 2, 3, 4, 5]).unwrap(), halves(5));
        let mut edges = c5.edges();
        edges.push((1, 6));
        let pendant = Graph::new(1..=6, edges.clone()).unwrap();
        let x = extend_half(&pendant, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(x.get(6), half());
        assert!(is_extreme(&pendant, &x).unwrap());
        let mut tri = c5.edges();
        tri.extend([(1, 6), (2, 6)]);
        let tri = Graph::new(1..=6, tri).unwrap();
        let x = extend_half(&tri, &[1, 2, 3, 4, 5]).unwrap();
        assert!(x.get(6).is_zero());
        assert!(is_extreme(&tri, &x).unwrap());
        assert!(matches!(extend_half(&c5, &[1, 2, 3, 5, 4]), Err(Error::NotAnOddHole(_))));
    }

    #[test]
    fn disconnected_extension() {
        let mut edges = Graph::cycle(5).edges();
        edges.push((6, 7));
        let g = Graph::new(1..=8, edges).unwrap();
        let x = extend_half(&g, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(x.get(6), int(1));
        assert!(x.get(7).is_zero());
        assert_eq!(x.get(8), int(1));
        assert!(is_extreme(&g, &x).unwrap());
    }

    #[test]
    fn antihole_points() {
        let p = antihole_point(2, None).unwrap();
        assert!(!p.determinant.is_zero() && p.extreme);
        let p = antihole_point(3, None).unwrap();
        assert!(p.extreme);
        assert_eq!(p.clique_matrix[0], vec![1, 0, 1, 0, 1, 0, 0]);
    }

    #[test]
    fn gadgets() {
        for q in [rat(1, 2), rat(1, 3), rat(2, 3), rat(-3, 5), int(1), int(0)] {
            let g = rational_gadget(&q).unwrap();
            assert_eq!(g.x.get(g.w), q);
            assert!(g.extreme, "{q}");
            assert!(!g.determinant.is_zero());
        }
        assert_eq!(rational_gadget(&rat(1, 2)).unwrap().clique, IdSet::singleton(1));
        assert!(rational_gadget(&rat(3, 2)).is_err());
    }
}
