//! The family norm `‖x‖_F = max_{F ∈ F} Σ_{i∈F} |x(i)|`, its dual, and the
//! unit balls of finite restrictions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::polytope::DEFAULT_DIMENSION_LIMIT;
use crate::exact::rat::{common_denominator, scaled_integer};
use crate::exact::{Halfspace, Polytope, Rat, RatVector};
use crate::families::{sign_vectors, Family, IdSet, Kind};
use crate::graphs::Graph;
use crate::sierpinski::weighted_lis;

/// A family together with a finite restriction set `V`.
#[derive(Clone, Debug)]
pub struct NormContext {
    family: Family,
    ground: IdSet,
    limit: usize,
}

impl NormContext {
    pub fn new(family: Family, ground: IdSet) -> Result<Self> {
        for &x in ground.iter() {
            if !family.universe().contains(x) {
                return Err(Error::OutsideUniverse(x));
            }
            if !family.contains(&IdSet::singleton(x)) {
                return Err(Error::NotHereditary(format!("{{{x}}} is not a member")));
            }
        }
        Ok(Self {
            family,
            ground,
            limit: DEFAULT_DIMENSION_LIMIT,
        })
    }

    /// Context over the whole (finite) universe of `family`.
    pub fn full(family: Family) -> Result<Self> {
        let ground = IdSet::new(family.universe().elements());
        Self::new(family, ground)
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn ground(&self) -> &IdSet {
        &self.ground
    }

    pub fn ids(&self) -> &[u32] {
        self.ground.as_slice()
    }

    fn check_support(&self, x: &RatVector) -> Result<()> {
        match x.iter().find(|(i, _)| !self.ground.contains(*i)) {
            Some((i, _)) => Err(Error::OutsideUniverse(i)),
            None => Ok(()),
        }
    }

    fn check_dimension(&self) -> Result<()> {
        if self.ground.len() > self.limit {
            return Err(Error::DimensionLimitExceeded {
                dimension: self.ground.len(),
                limit: self.limit,
            });
        }
        if self.ground.is_empty() {
            return Err(Error::Invalid("empty ground set".into()));
        }
        Ok(())
    }
}

/// `‖x‖_F`, searching only members inside `supp(x)`.
pub fn norm(ctx: &NormContext, x: &RatVector) -> Result<Rat> {
    ctx.check_support(x)?;
    Ok(family_norm(&ctx.family, x))
}

/// The norm without the ground-set check; elements of `supp(x)` outside the
/// universe never contribute.
pub fn family_norm(family: &Family, x: &RatVector) -> Rat {
    let support: Vec<(u32, Rat)> = x
        .iter()
        .filter(|(i, _)| family.universe().contains(*i))
        .map(|(i, v)| (i, v.abs()))
        .collect();
    if support.is_empty() {
        return Rat::zero();
    }
    match family.kind() {
        Kind::All => support.into_iter().map(|(_, v)| v).sum(),
        Kind::UpTo(k) => {
            let mut w: Vec<Rat> = support.into_iter().map(|(_, v)| v).collect();
            w.sort_by(|a, b| b.cmp(a));
            w.into_iter().take(*k).sum()
        }
        Kind::Cliques(g) => max_weight_clique(g, &support, false),
        Kind::Anticliques(g) => max_weight_clique(g, &support, true),
        Kind::Sierpinski(values) => {
            let keys: Vec<Rat> = support.iter().map(|(i, _)| values[*i as usize - 1].clone()).collect();
            let w: Vec<Rat> = support.into_iter().map(|(_, v)| v).collect();
            weighted_lis(&keys, &w)
        }
        _ => max_weight_member(family, &support),
    }
}

fn scaled(support: &[(u32, Rat)]) -> (BigInt, Vec<BigInt>) {
    let den = common_denominator(support.iter().map(|(_, v)| v));
    let w = support.iter().map(|(_, v)| scaled_integer(v, &den)).collect();
    (den, w)
}

/// Branch and bound over members, extending in decreasing weight order.
fn max_weight_member(family: &Family, support: &[(u32, Rat)]) -> Rat {
    let (den, w) = scaled(support);
    let mut order: Vec<usize> = (0..support.len()).collect();
    order.sort_by(|&a, &b| w[b].cmp(&w[a]).then(support[a].0.cmp(&support[b].0)));
    let ids: Vec<u32> = order.iter().map(|&i| support[i].0).collect();
    let ws: Vec<BigInt> = order.iter().map(|&i| w[i].clone()).collect();
    let mut suffix = vec![BigInt::zero(); ws.len() + 1];
    for i in (0..ws.len()).rev() {
        suffix[i] = &suffix[i + 1] + &ws[i];
    }
    let mut best = BigInt::zero();
    let mut current = Vec::new();
    member_dfs(family, &ids, &ws, &suffix, 0, &mut current, &BigInt::zero(), &mut best);
    Rat::new(best, den)
}

#[allow(clippy::too_many_arguments)]
fn member_dfs(
    family: &Family,
    ids: &[u32],
    ws: &[BigInt],
    suffix: &[BigInt],
    start: usize,
    current: &mut Vec<u32>,
    value: &BigInt,
    best: &mut BigInt,
) {
    if value > best {
        *best = value.clone();
    }
    for j in start..ids.len() {
        if value + &suffix[j] <= *best {
            return;
        }
        current.push(ids[j]);
        if family.contains(&IdSet::new(current.iter().copied())) {
            let v = value + &ws[j];
            member_dfs(family, ids, ws, suffix, j + 1, current, &v, best);
        }
        current.pop();
    }
}

/// Maximum weight clique (or anticlique) among the support vertices.
fn max_weight_clique(g: &Graph, support: &[(u32, Rat)], anti: bool) -> Rat {
    let (den, w) = scaled(support);
    let n = support.len();
    assert!(n <= 64, "clique search over at most 64 support vertices");
    let mut adj = vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && g.has_edge(support[i].0, support[j].0) != anti {
                adj[i] |= 1 << j;
            }
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = BigInt::zero();
    clique_bb(&adj, &w, all, &BigInt::zero(), &mut best);
    Rat::new(best, den)
}

fn clique_bb(adj: &[u64], w: &[BigInt], mut cand: u64, value: &BigInt, best: &mut BigInt) {
    if value > best {
        *best = value.clone();
    }
    while cand != 0 {
        let mut bound = value.clone();
        let mut m = cand;
        while m != 0 {
            bound += &w[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        if bound <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        clique_bb(adj, w, cand & adj[v], &(value + &w[v]), best);
    }
}

/// `B(X_{F↾V})`: `σ·x <= 1` for every sign pattern `σ` on every maximal
/// member. Coordinates follow the sorted ground set.
pub fn unit_ball(ctx: &NormContext) -> Result<Polytope> {
    ctx.check_dimension()?;
    let maxes = ctx.family.max_elements(&ctx.ground)?;
    let ids = ctx.ids();
    let rows = sign_vectors(&maxes)
        .into_iter()
        .map(|s| Halfspace {
            normal: s.to_dense(ids),
            bound: Rat::from_integer(1.into()),
        })
        .collect();
    Polytope::new(ids.len(), rows)
}

/// `max{α·x : x ∈ B(X_{F↾V})}` by exact LP.
pub fn dual_norm(ctx: &NormContext, alpha: &RatVector) -> Result<Rat> {
    ctx.check_support(alpha)?;
    let ball = unit_ball(ctx)?;
    Ok(ball.lp_maximize(&alpha.to_dense(ctx.ids()))?.0)
}

/// Vertices of the unit ball as sparse vectors, sorted by dense coordinates.
pub fn ball_extreme_points(ctx: &NormContext) -> Result<Vec<RatVector>> {
    let ball = unit_ball(ctx)?;
    Ok(ball
        .vertices_with_limit(ctx.limit)?
        .into_iter()
        .map(|v| RatVector::from_dense(ctx.ids(), &v))
        .collect())
}

/// Outcome of comparing the dual ball's vertices with `W(max(F↾V))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualExtremeReport {
    pub equal: bool,
    pub dual_vertices: usize,
    pub sign_vectors: usize,
    /// Present on mismatch: a dual vertex that is not a sign vector, or the
    /// reverse.
    pub mismatch: Option<RatVector>,
}

/// Vertices of the polar of `B(X_{F↾V})` against `W(max(F↾V))`.
pub fn dual_extreme_check(ctx: &NormContext) -> Result<bool> {
    Ok(dual_extreme_report(ctx)?.equal)
}

pub fn dual_extreme_report(ctx: &NormContext) -> Result<DualExtremeReport> {
    let ids = ctx.ids();
    let ball_vertices = unit_ball(ctx)?.vertices_with_limit(ctx.limit)?;
    let polar = Polytope::polar_of_points(ids.len(), &ball_vertices)?;
    let dual: BTreeSet<Vec<Rat>> = polar.vertices_with_limit(ctx.limit)?.into_iter().collect();
    let maxes = ctx.family.max_elements(&ctx.ground)?;
    let signs: BTreeSet<Vec<Rat>> = sign_vectors(&maxes).iter().map(|s| s.to_dense(ids)).collect();
    let mismatch = dual
        .symmetric_difference(&signs)
        .next()
        .map(|v| RatVector::from_dense(ids, v));
    Ok(DualExtremeReport {
        equal: mismatch.is_none(),
        dual_vertices: dual.len(),
        sign_vectors: signs.len(),
        mismatch,
    })
}
