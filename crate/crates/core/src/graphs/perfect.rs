use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::families::{IdSet, Poset};

pub const DEFAULT_SIZE_LIMIT: usize = 12;

/// The comparability graph of a poset: `{p, q}` is an edge iff `p < q` or
/// `q < p`.
pub fn comparability(p: &Poset) -> Graph {
    Graph::new(p.elements().iter().copied(), p.strict_pairs()).expect("poset pairs are elements")
}

fn check_size(g: &Graph, limit: usize) -> Result<()> {
    if g.order() > limit {
        return Err(Error::SizeLimitExceeded {
            size: g.order(),
            limit,
        });
    }
    Ok(())
}

/// Smallest induced odd cycle of length at least 5, as a vertex list in
/// cycle order. Among holes of the same length the colex-first vertex set
/// wins; the list starts at its minimum and continues to the smaller
/// neighbour.
pub fn find_odd_hole(g: &Graph) -> Result<Option<Vec<u32>>> {
    find_odd_hole_with_limit(g, DEFAULT_SIZE_LIMIT)
}

pub fn find_odd_hole_with_limit(g: &Graph, limit: usize) -> Result<Option<Vec<u32>>> {
    check_size(g, limit)?;
    Ok(odd_hole_masks(g).map(|mask| cycle_order(g, mask)))
}

/// Odd hole of the complement, reported in cycle order of the complement.
pub fn find_odd_antihole(g: &Graph) -> Result<Option<Vec<u32>>> {
    find_odd_antihole_with_limit(g, DEFAULT_SIZE_LIMIT)
}

pub fn find_odd_antihole_with_limit(g: &Graph, limit: usize) -> Result<Option<Vec<u32>>> {
    find_odd_hole_with_limit(&g.complement(), limit)
}

fn odd_hole_masks(g: &Graph) -> Option<u64> {
    let n = g.order();
    let adj = g.adjacency_masks();
    let mut k = 5;
    while k <= n {
        // Gosper's hack walks k-subsets in increasing numeric (= colex) order.
        let mut mask: u64 = (1 << k) - 1;
        while mask < 1 << n {
            if is_cycle(&adj, mask) {
                return Some(mask);
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
        k += 2;
    }
    None
}

fn is_cycle(adj: &[u64], mask: u64) -> bool {
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if (adj[v] & mask).count_ones() != 2 {
            return false;
        }
    }
    // 2-regular: a cycle iff connected.
    let start = mask & mask.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & mask & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == mask
}

fn cycle_order(g: &Graph, mask: u64) -> Vec<u32> {
    let set = IdSet::from_mask(g.vertices(), mask);
    let first = set.as_slice()[0];
    let mut order = vec![first];
    let mut prev = first;
    let mut cur = g
        .neighbors(first)
        .filter(|&u| set.contains(u))
        .min()
        .unwrap();
    while cur != first {
        order.push(cur);
        let next = g
            .neighbors(cur)
            .find(|&u| set.contains(u) && u != prev)
            .unwrap();
        prev = cur;
        cur = next;
    }
    order
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Spgt,
    ChiOmega,
    Both,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spgt" => Ok(Method::Spgt),
            "chi-omega" | "chi_omega" => Ok(Method::ChiOmega),
            "both" => Ok(Method::Both),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

/// Why a graph is not perfect.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Obstruction {
    OddHole { cycle: Vec<u32> },
    OddAntihole { cycle: Vec<u32> },
    /// An induced subgraph with `χ > ω`.
    ChiOmega {
        vertices: Vec<u32>,
        chi: usize,
        omega: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub perfect: bool,
    pub witness: Option<Obstruction>,
}

pub fn is_perfect(g: &Graph, method: Method) -> Result<bool> {
    Ok(perfection(g, method)?.perfect)
}

pub fn perfection(g: &Graph, method: Method) -> Result<Verdict> {
    perfection_with_limit(g, method, DEFAULT_SIZE_LIMIT)
}

pub fn perfection_with_limit(g: &Graph, method: Method, limit: usize) -> Result<Verdict> {
    check_size(g, limit)?;
    match method {
        Method::Spgt => Ok(spgt(g)),
        Method::ChiOmega => Ok(chi_omega(g)),
        Method::Both => {
            let a = spgt(g);
            let b = chi_omega(g);
            if a.perfect != b.perfect {
                return Err(Error::EquivalenceViolation(format!(
                    "spgt says {} but chi-omega says {} on {g:?}",
                    a.perfect, b.perfect
                )));
            }
            Ok(a)
        }
    }
}

fn spgt(g: &Graph) -> Verdict {
    if let Some(mask) = odd_hole_masks(g) {
        return Verdict {
            perfect: false,
            witness: Some(Obstruction::OddHole {
                cycle: cycle_order(g, mask),
            }),
        };
    }
    let c = g.complement();
    if let Some(mask) = odd_hole_masks(&c) {
        return Verdict {
            perfect: false,
            witness: Some(Obstruction::OddAntihole {
                cycle: cycle_order(&c, mask),
            }),
        };
    }
    Verdict {
        perfect: true,
        witness: None,
    }
}

fn chi_omega(g: &Graph) -> Verdict {
    let n = g.order();
    let vs = g.vertices();
    // Smallest failing subsets first, so the witness is minimal.
    let mut masks: Vec<u64> = (1..1u64 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for m in masks {
        // χ = ω holds trivially below 5 vertices for every graph.
        if m.count_ones() < 5 {
            continue;
        }
        let h = g.induced(&IdSet::from_mask(vs, m));
        let omega = h.clique_number();
        let chi = h.chromatic_number();
        if chi != omega {
            return Verdict {
                perfect: false,
                witness: Some(Obstruction::ChiOmega {
                    vertices: h.vertices().to_vec(),
                    chi,
                    omega,
                }),
            };
        }
    }
    Verdict {
        perfect: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_hole() {
        assert_eq!(find_odd_hole(&Graph::cycle(5)).unwrap(), Some(vec![1, 2, 3, 4, 5]));
        assert!(!is_perfect(&Graph::cycle(5), Method::Both).unwrap());
    }

    #[test]
    fn c7_complement_antihole() {
        let g = Graph::cycle(7).complement();
        assert_eq!(find_odd_hole(&g).unwrap(), None);
        assert_eq!(
            find_odd_antihole(&g).unwrap(),
            Some(vec![1, 2, 3, 4, 5, 6, 7])
        );
        assert!(!is_perfect(&g, Method::ChiOmega).unwrap());
    }

    #[test]
    fn hole_order_follows_smaller_neighbour() {
        let g = Graph::from_edges(&[(1, 4), (4, 2), (2, 5), (5, 3), (3, 1)]).unwrap();
        assert_eq!(find_odd_hole(&g).unwrap(), Some(vec![1, 3, 5, 2, 4]));
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            find_odd_hole(&Graph::cycle(13)),
            Err(Error::SizeLimitExceeded { size: 13, limit: 12 })
        ));
    }

    #[test]
    fn comparability_examples() {
        assert_eq!(comparability(&Poset::chain(3)), Graph::complete(3));
        assert_eq!(comparability(&Poset::antichain(3)).edge_count(), 0);
        let g = comparability(&Poset::product_order(2));
        // (1,2) = 2 and (2,1) = 3.
        assert!(!g.has_edge(2, 3));
        assert!(g.has_edge(1, 4));
        assert!(is_perfect(&g, Method::Both).unwrap());
    }
}
