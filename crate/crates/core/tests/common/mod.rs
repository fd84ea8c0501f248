//! Brute-force oracles. Deliberately naive: each one follows a definition
//! directly and shares no code with the library beyond its data types.
#![allow(dead_code)]

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use combinorm::emulations::Emulation;
use combinorm::exact::{Polytope, Rat, RatVector};
use combinorm::families::{Family, IdSet};
use combinorm::graphs::Graph;

pub fn r(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn ri(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn vector(pairs: &[(u32, Rat)]) -> RatVector {
    RatVector::from_pairs(pairs.iter().cloned())
}

pub fn set(items: &[u32]) -> IdSet {
    IdSet::new(items.iter().copied())
}

/// Every subset of `items`, as sorted vectors.
pub fn subsets(items: &[u32]) -> Vec<Vec<u32>> {
    (0u64..1 << items.len())
        .map(|m| {
            (0..items.len())
                .filter(|&i| m >> i & 1 == 1)
                .map(|i| items[i])
                .collect()
        })
        .collect()
}

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return ri(1);
    }
    let mut total = Rat::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rat>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Unique solution of a square system by Gauss–Jordan, or `None`.
fn solve_square(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for k in c..n {
                    let d = &f * &a[c][k];
                    a[i][k] -= d;
                }
                let d = &f * &b[c];
                b[i] -= d;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Vertices by trying every `d`-subset of inequalities as equalities.
pub fn subset_vertices(p: &Polytope) -> Vec<Vec<Rat>> {
    let d = p.dimension();
    let hs = p.inequalities();
    let mut out: Vec<Vec<Rat>> = Vec::new();
    for c in combinations(hs.len(), d) {
        let a = c.iter().map(|&i| hs[i].normal.clone()).collect();
        let b = c.iter().map(|&i| hs[i].bound.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            if p.contains(&x) && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

/// `max Σ_{i∈F} |x(i)|` over members `F ⊆ supp(x)`.
pub fn brute_norm(f: &Family, x: &RatVector) -> Rat {
    let support: Vec<u32> = x.iter().map(|(i, _)| i).collect();
    subsets(&support)
        .into_iter()
        .filter(|s| f.contains(&IdSet::new(s.iter().copied())))
        .map(|s| s.iter().map(|&i| x.get(i).abs()).sum())
        .max()
        .unwrap_or_else(Rat::zero)
}

/// Heaviest set of indices on which `values` increases, weights `|w|`.
pub fn brute_chain_norm(values: &[Rat], w: &[Rat]) -> Rat {
    let n = values.len();
    (0u32..1 << n)
        .filter(|m| {
            let idx: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            idx.windows(2).all(|p| values[p[0]] < values[p[1]])
        })
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| w[i].abs()).sum())
        .max()
        .unwrap_or_else(Rat::zero)
}

/// Position ranges of each block, in block order.
fn block_positions(e: &Emulation) -> Vec<(u32, Vec<usize>)> {
    let mut start = 0;
    e.blocks()
        .iter()
        .map(|b| {
            let r = (start..start + b.size as usize).collect();
            start += b.size as usize;
            (b.label, r)
        })
        .collect()
}

/// Heaviest `θ`-increasing set of positions, each weighted by its label's
/// `|a|`; every subset of positions is tried.
pub fn brute_emulation_weighted(e: &Emulation, a: &RatVector) -> Rat {
    let pos: Vec<(usize, Rat)> = block_positions(e)
        .into_iter()
        .filter(|(l, _)| !a.get(*l).is_zero())
        .flat_map(|(l, ps)| ps.into_iter().map(move |p| (p, a.get(l).abs())))
        .collect();
    assert!(pos.len() <= 22, "oracle too slow for {} positions", pos.len());
    let theta = e.theta();
    (0u32..1 << pos.len())
        .filter(|m| {
            let idx: Vec<usize> = (0..pos.len()).filter(|&i| m >> i & 1 == 1).map(|i| pos[i].0).collect();
            idx.windows(2).all(|p| theta[p[0]] < theta[p[1]])
        })
        .map(|m| (0..pos.len()).filter(|&i| m >> i & 1 == 1).map(|i| pos[i].1.clone()).sum())
        .max()
        .unwrap_or_else(Rat::zero)
}

pub fn brute_emulation_norm(e: &Emulation, labels: &[u32]) -> Rat {
    let a = RatVector::from_pairs(labels.iter().map(|&l| (l, ri(1))));
    brute_emulation_weighted(e, &a)
}

/// `E ∈ S_k`, trying every split of `E` into consecutive pieces.
pub fn brute_schreier(k: u32, e: &[u32]) -> bool {
    if e.len() <= 1 {
        return true;
    }
    if k == 0 {
        return false;
    }
    splits(e, e[0] as usize, &|piece| brute_schreier(k - 1, piece))
}

/// `E ∈ S_ω` for the ladder `k ↦ k`.
pub fn brute_schreier_omega(e: &[u32]) -> bool {
    e.is_empty() || (1..=e[0]).any(|k| brute_schreier(k, e))
}

/// `E ∈ S*_ω`: `E = B_1 < ... < B_m`, `m <= min E`, `B_j ∈ S_{m-j+1}`.
pub fn brute_schreier_star_omega(e: &[u32]) -> bool {
    if e.is_empty() {
        return true;
    }
    (1..=e[0] as usize).any(|m| pieces(e, m).iter().any(|bs| {
        bs.iter().enumerate().all(|(j, b)| brute_schreier((m - j) as u32, b))
    }))
}

/// Whether `e` splits into at most `max` non-empty consecutive pieces that
/// all satisfy `ok`.
fn splits(e: &[u32], max: usize, ok: &dyn Fn(&[u32]) -> bool) -> bool {
    (1..=max.min(e.len())).any(|m| pieces(e, m).iter().any(|bs| bs.iter().all(|b| ok(b))))
}

/// All splits of `e` into exactly `m` non-empty consecutive pieces.
fn pieces(e: &[u32], m: usize) -> Vec<Vec<Vec<u32>>> {
    if m == 0 {
        return if e.is_empty() { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for cut in 1..=e.len() {
        for mut rest in pieces(&e[cut..], m - 1) {
            rest.insert(0, e[..cut].to_vec());
            out.push(rest);
        }
    }
    out
}

/// Clique number and chromatic number of every induced subgraph, indexed by
/// vertex mask over `g.vertices()`.
pub fn brute_omega_chi(g: &Graph) -> (Vec<u32>, Vec<u32>) {
    let vs = g.vertices();
    let n = vs.len();
    let full = 1usize << n;
    let edge = |i: usize, j: usize| g.has_edge(vs[i], vs[j]);
    let is_clique: Vec<bool> = (0..full)
        .map(|m| (0..n).all(|i| (i + 1..n).all(|j| m >> i & 1 == 0 || m >> j & 1 == 0 || edge(i, j))))
        .collect();
    let independent: Vec<bool> = (0..full)
        .map(|m| (0..n).all(|i| (i + 1..n).all(|j| m >> i & 1 == 0 || m >> j & 1 == 0 || !edge(i, j))))
        .collect();
    let mut omega = vec![0u32; full];
    let mut chi = vec![0u32; full];
    for m in 1..full {
        omega[m] = if is_clique[m] {
            m.count_ones()
        } else {
            (0..n).filter(|&i| m >> i & 1 == 1).map(|i| omega[m & !(1 << i)]).max().unwrap()
        };
        // The lowest vertex gets some colour class; try every one.
        let low = m & m.wrapping_neg();
        let rest = m & !low;
        let mut best = u32::MAX;
        let mut s = rest;
        loop {
            let class = s | low;
            if independent[class] {
                best = best.min(1 + chi[m & !class]);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & rest;
        }
        chi[m] = best;
    }
    (omega, chi)
}

/// `χ = ω` on every induced subgraph.
pub fn brute_is_perfect(g: &Graph) -> bool {
    let (omega, chi) = brute_omega_chi(g);
    omega == chi
}

/// Graph on `1..=n` whose edges are picked by `bits` in lexicographic pair
/// order.
pub fn graph_from_bits(n: u32, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            if bits[k % bits.len().max(1)] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(1..=n, edges).unwrap()
}

pub fn arb_graph(max_n: u32) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = (n * (n - 1) / 2).max(1) as usize;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Rationals `p/q` with `|p| <= num`, `1 <= q <= den`.
pub fn arb_rat(num: i64, den: i64) -> impl Strategy<Value = Rat> {
    (-num..=num, 1..=den).prop_map(|(p, q)| r(p, q))
}

pub fn arb_vector(ids: Vec<u32>, num: i64, den: i64) -> impl Strategy<Value = RatVector> {
    let n = ids.len();
    proptest::collection::vec(arb_rat(num, den), n)
        .prop_map(move |vals| RatVector::from_pairs(ids.iter().copied().zip(vals)))
}

/// `E ∈ S(F)` for the family given by `member`: at most `min E` consecutive
/// pieces, every split tried.
pub fn brute_schreier_op(e: &[u32], member: &dyn Fn(&[u32]) -> bool) -> bool {
    e.is_empty() || splits(e, e[0] as usize, member)
}

/// `E ∈ D*((F_k)_k)`: `E = B_1 < ... < B_m` with `m <= min E` and
/// `B_j ∈ F_{m-j+1}`; `member(k, B)` tests `B ∈ F_k`.
pub fn brute_dstar(e: &[u32], member: &dyn Fn(u32, &[u32]) -> bool) -> bool {
    if e.is_empty() {
        return true;
    }
    (1..=e[0] as usize).any(|m| {
        pieces(e, m)
            .iter()
            .any(|bs| bs.iter().enumerate().all(|(j, b)| member((m - j) as u32, b)))
    })
}

/// Labels `1..=sizes.len()` with the given block sizes and `θ` a
/// permutation of `1..=P` made decreasing inside each block.
pub fn emulation_from(sizes: &[u32], perm: &[u32]) -> Emulation {
    use combinorm::emulations::Block;
    let blocks: Vec<Block> = sizes.iter().enumerate().map(|(i, &s)| Block { label: i as u32 + 1, size: s }).collect();
    let mut theta = Vec::new();
    let mut start = 0;
    for &s in sizes {
        let mut part: Vec<u32> = perm[start..start + s as usize].to_vec();
        part.sort_unstable_by(|a, b| b.cmp(a));
        theta.extend(part.into_iter().map(|v| ri(v as i64)));
        start += s as usize;
    }
    Emulation::new(blocks, theta).unwrap()
}

pub fn arb_emulation(max_labels: usize, max_block: u32) -> impl Strategy<Value = Emulation> {
    proptest::collection::vec(1..=max_block, 1..=max_labels).prop_flat_map(|sizes| {
        let p: u32 = sizes.iter().sum();
        Just((1..=p).collect::<Vec<u32>>())
            .prop_shuffle()
            .prop_map(move |perm| emulation_from(&sizes, &perm))
    })
}
