//! Sierpiński graphs `G_f`: `i < j` adjacent iff `f(i) < f(j)`.

mod injection;
mod lis;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Rat, RatVector};
use crate::families::Family;
use crate::graphs::Graph;

pub use injection::{
    simplest_in, stern_brocot_depth, stern_brocot_node, stern_brocot_position, Generator,
    InjectionSpec, RationalInjection,
};
pub use lis::weighted_lis;

/// Rationals deeper than this in the Stern–Brocot tree are not tried by
/// [`embed`].
pub const MAX_EMBED_DEPTH: u64 = 60;

/// Host indices searched by [`embed`] for generators without a direct
/// inverse.
pub const MAX_HOST_INDEX: u32 = 1 << 24;

#[derive(Clone, Debug)]
pub struct SierpinskiContext {
    injection: RationalInjection,
}

impl SierpinskiContext {
    pub fn new(injection: RationalInjection) -> Self {
        Self { injection }
    }

    pub fn injection(&self) -> &RationalInjection {
        &self.injection
    }

    /// `n ≤_f k` iff `n ≤ k` and `f(n) ≤ f(k)`.
    pub fn leq(&self, n: u32, k: u32) -> Result<bool> {
        Ok(n <= k && self.injection.value(n)? <= self.injection.value(k)?)
    }

    /// `G_f` on `{1, ..., n}`.
    pub fn graph(&self, n: u32) -> Result<Graph> {
        let f = self.injection.prefix(n)?;
        let mut edges = Vec::new();
        for i in 0..n as usize {
            for j in i + 1..n as usize {
                if f[i] < f[j] {
                    edges.push((i as u32 + 1, j as u32 + 1));
                }
            }
        }
        Graph::new(1..=n, edges)
    }

    /// The chain family of `≤_f` on `{1, ..., n}`, i.e. the cliques of `G_f`.
    pub fn family(&self, n: u32) -> Result<Family> {
        Ok(Family::sierpinski(self.injection.prefix(n)?))
    }

    /// `‖x‖` for the chain family: a heaviest `f`-increasing index sequence.
    pub fn chain_norm(&self, x: &RatVector) -> Result<Rat> {
        let mut keys = Vec::with_capacity(x.len());
        let mut weights = Vec::with_capacity(x.len());
        for (i, v) in x.iter() {
            keys.push(self.injection.value(i)?);
            weights.push(v.clone());
        }
        Ok(weighted_lis(&keys, &weights))
    }
}

pub fn sierpinski_graph(ctx: &SierpinskiContext, n: u32) -> Result<Graph> {
    ctx.graph(n)
}

pub fn chain_norm(ctx: &SierpinskiContext, x: &RatVector) -> Result<Rat> {
    ctx.chain_norm(x)
}

/// An increasing embedding `i ↦ n_i` of `G_h↾{1..n}` into `G_f` as an
/// induced subgraph. Step `k+1` needs `q` outside `{f(m) : m <= n_k}` with
/// `q < f(n_i)` iff `h(k+1) < h(i)`; among admissible `q` the one of least
/// Stern–Brocot depth, then least numerator, is taken, and
/// `n_{k+1} = f^{-1}(q)`.
pub fn embed(host: &SierpinskiContext, guest: &SierpinskiContext, n: u32) -> Result<Vec<u32>> {
    let h = guest.injection.prefix(n)?;
    let f = &host.injection;
    let mut image: Vec<u32> = Vec::with_capacity(n as usize);
    let mut image_values: Vec<Rat> = Vec::with_capacity(n as usize);
    for k in 0..n as usize {
        // Tightest bounds from the already placed points.
        let mut lo: Option<&Rat> = None;
        let mut hi: Option<&Rat> = None;
        for i in 0..k {
            let fv = &image_values[i];
            if h[k] < h[i] {
                if hi.is_none_or(|b| fv < b) {
                    hi = Some(fv);
                }
            } else if lo.is_none_or(|b| fv > b) {
                lo = Some(fv);
            }
        }
        let last = image.last().copied().unwrap_or(0);
        let inside = |q: &Rat| lo.is_none_or(|l| q > l) && hi.is_none_or(|u| q < u);
        let next = match f.truncation() {
            // Finite host: the admissible values are those it lists after
            // n_k.
            Some(t) => (last + 1..=t)
                .map(|m| (m, f.value(m).unwrap()))
                .filter(|(_, q)| inside(q))
                .min_by(|(_, a), (_, b)| {
                    stern_brocot_depth(a)
                        .cmp(&stern_brocot_depth(b))
                        .then(a.numer().cmp(b.numer()))
                })
                .map(|(m, _)| m),
            None => simplest_in(
                lo,
                hi,
                |q| f.index_of(q, MAX_HOST_INDEX).is_some_and(|m| m > last),
                MAX_EMBED_DEPTH,
            )
            .and_then(|q| f.index_of(&q, MAX_HOST_INDEX)),
        };
        let m = next.ok_or(Error::HostExhausted(k + 1))?;
        image_values.push(f.value(m)?);
        image.push(m);
    }
    Ok(image)
}

/// Checks that `map` is increasing and that `i, j` are adjacent in
/// `G_guest` iff `map[i], map[j]` are adjacent in `G_host`.
pub fn is_induced_embedding(
    host: &SierpinskiContext,
    guest: &SierpinskiContext,
    map: &[u32],
) -> Result<bool> {
    if map.windows(2).any(|w| w[0] >= w[1]) {
        return Ok(false);
    }
    let h = guest.injection.prefix(map.len() as u32)?;
    let f: Vec<Rat> = map.iter().map(|&m| host.injection.value(m)).collect::<Result<_>>()?;
    for i in 0..map.len() {
        for j in i + 1..map.len() {
            if (h[i] < h[j]) != (f[i] < f[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Schröder–Bernstein classification of a window `1..=n` for injections
/// `φ: A → B` and `ψ: B → A` (both copies of `1..=n`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BanachPartition {
    pub a1: Vec<u32>,
    pub a2: Vec<u32>,
    pub b1: Vec<u32>,
    pub b2: Vec<u32>,
    /// Elements of `A` whose partner under `φ` (for `A_1`) or `ψ^{-1}` (for
    /// `A_2`) lies outside the window.
    pub undetermined_a: Vec<u32>,
    pub undetermined_b: Vec<u32>,
}

impl BanachPartition {
    /// The bijection `ρ = φ` on `A_1`, `ψ^{-1}` on `A_2`, on determined
    /// elements.
    pub fn rho(&self, phi: &BTreeMap<u32, u32>, psi: &BTreeMap<u32, u32>) -> BTreeMap<u32, u32> {
        let inv: BTreeMap<u32, u32> = psi.iter().map(|(&b, &a)| (a, b)).collect();
        let mut rho = BTreeMap::new();
        for &a in &self.a1 {
            rho.insert(a, phi[&a]);
        }
        for &a in &self.a2 {
            rho.insert(a, inv[&a]);
        }
        rho
    }
}

/// Walks each orbit backwards inside the window. A backward chain that
/// stops in `A` (an element outside `ψ`'s image) or cycles puts the orbit
/// on the `φ` side; one stopping in `B` puts it on the `ψ` side. The given
/// maps are taken as the complete maps on the window: a missing preimage
/// inside the window counts as none.
pub fn banach_partition(
    phi: &BTreeMap<u32, u32>,
    psi: &BTreeMap<u32, u32>,
    n: u32,
) -> Result<BanachPartition> {
    for (name, m) in [("phi", phi), ("psi", psi)] {
        let mut seen = BTreeSet::new();
        for (&k, &v) in m {
            if k == 0 || k > n {
                return Err(Error::OutsideUniverse(k));
            }
            if !seen.insert(v) {
                return Err(Error::NotInjective(format!("{name} repeats {v}")));
            }
        }
    }
    let window = |m: &BTreeMap<u32, u32>| -> BTreeMap<u32, u32> {
        m.iter()
            .filter(|(_, &v)| (1..=n).contains(&v))
            .map(|(&k, &v)| (v, k))
            .collect()
    };
    let phi_inv = window(phi);
    let psi_inv = window(psi);
    // true: the orbit of this element is on the φ side.
    let phi_side = |start: u32, in_a: bool| -> bool {
        let (mut x, mut a_side) = (start, in_a);
        let mut steps = 0;
        loop {
            let pre = if a_side { psi_inv.get(&x) } else { phi_inv.get(&x) };
            match pre {
                None => return a_side,
                Some(&p) => {
                    x = p;
                    a_side = !a_side;
                }
            }
            steps += 1;
            if steps > 2 * n as usize + 2 {
                return true;
            }
        }
    };
    let mut out = BanachPartition::default();
    for a in 1..=n {
        if phi_side(a, true) {
            match phi.get(&a) {
                Some(v) if (1..=n).contains(v) => out.a1.push(a),
                _ => out.undetermined_a.push(a),
            }
        } else {
            match psi_inv.get(&a) {
                Some(_) => out.a2.push(a),
                None => out.undetermined_a.push(a),
            }
        }
    }
    for b in 1..=n {
        if phi_side(b, false) {
            match phi_inv.get(&b) {
                Some(_) => out.b1.push(b),
                None => out.undetermined_b.push(b),
            }
        } else {
            match psi.get(&b) {
                Some(v) if (1..=n).contains(v) => out.b2.push(b),
                _ => out.undetermined_b.push(b),
            }
        }
    }
    Ok(out)
}

/// The two-sided bound `‖x‖_f <= 2 ‖x∘ρ^{-1}‖_h` and its mirror, for `x`
/// supported on the domain of `ρ`, where `ρ` is an isomorphism on each of
/// two pieces.
pub fn check_permutative_bound(
    f: &SierpinskiContext,
    h: &SierpinskiContext,
    rho: &BTreeMap<u32, u32>,
    x: &RatVector,
) -> Result<bool> {
    let mut moved = RatVector::new();
    for (i, v) in x.iter() {
        let j = *rho.get(&i).ok_or(Error::OutsideUniverse(i))?;
        moved.set(j, v.clone());
    }
    let two = Rat::from_integer(2.into());
    let a = f.chain_norm(x)?;
    let b = h.chain_norm(&moved)?;
    Ok(a <= &two * &b && b <= two * a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn ctx(v: &[i64]) -> SierpinskiContext {
        SierpinskiContext::new(RationalInjection::from_ints(v).unwrap())
    }

    #[test]
    fn graphs_from_values() {
        assert_eq!(ctx(&[1, 2, 3]).graph(3).unwrap(), Graph::complete(3));
        assert_eq!(ctx(&[3, 2, 1]).graph(3).unwrap().edge_count(), 0);
        assert_eq!(ctx(&[0, -1, 1]).graph(3).unwrap().edges(), vec![(1, 3), (2, 3)]);
        assert!(ctx(&[0, 1]).graph(3).is_err());
    }

    #[test]
    fn chain_norm_examples() {
        let ones = RatVector::from_pairs((1..=3).map(|i| (i, int(1))));
        assert_eq!(ctx(&[0, -1, 1]).chain_norm(&ones).unwrap(), int(2));
        assert_eq!(ctx(&[1, 2, 3]).chain_norm(&ones).unwrap(), int(3));
    }

    #[test]
    fn embeddings_into_stern_brocot() {
        let host = SierpinskiContext::new(RationalInjection::generated(Generator::SternBrocot));
        for guest in [ctx(&[1, 2, 3, 4, 5]), ctx(&[5, 4, 3, 2, 1]), ctx(&[3, 1, 4, 0, 2])] {
            let m = embed(&host, &guest, 5).unwrap();
            assert!(is_induced_embedding(&host, &guest, &m).unwrap());
        }
    }

    #[test]
    fn finite_host_can_run_out() {
        let host = ctx(&[1, 2, 3]);
        assert!(matches!(
            embed(&host, &ctx(&[2, 1]), 2),
            Err(Error::HostExhausted(2))
        ));
    }

    #[test]
    fn banach_partition_examples() {
        let id: BTreeMap<u32, u32> = (1..=5).map(|k| (k, k)).collect();
        let p = banach_partition(&id, &id, 5).unwrap();
        assert_eq!(p.a1, vec![1, 2, 3, 4, 5]);
        assert!(p.undetermined_a.is_empty() && p.undetermined_b.is_empty());

        let succ: BTreeMap<u32, u32> = (1..=10).map(|k| (k, k + 1)).collect();
        let p = banach_partition(&succ, &succ, 10).unwrap();
        assert_eq!(p.a1, vec![1, 3, 5, 7, 9]);
        assert_eq!(p.a2, vec![2, 4, 6, 8, 10]);
        assert_eq!(p.b1, vec![2, 4, 6, 8, 10]);
        assert_eq!(p.b2, vec![1, 3, 5, 7, 9]);

        let p = banach_partition(&BTreeMap::new(), &BTreeMap::new(), 0).unwrap();
        assert_eq!(p, BanachPartition::default());
    }
}
