//! Emulations `((I_t), θ)`: consecutive blocks of positions with a rational
//! labelling `θ`, decreasing inside each block, such that the blocks of `E`
//! carry an `|E|`-long `θ`-increasing chain exactly when `E ∈ F`.

mod search;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rat::serde_vec;
use crate::exact::{Rat, RatVector};
use crate::families::{Family, IdSet};
use crate::sierpinski::weighted_lis;

pub use search::{search_emulation, MAX_SEARCH_BLOCK, MAX_SEARCH_LABELS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub label: u32,
    pub size: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EmulationJson", into = "EmulationJson")]
pub struct Emulation {
    blocks: Vec<Block>,
    theta: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct EmulationJson {
    blocks: Vec<Block>,
    #[serde(with = "serde_vec")]
    theta: Vec<Rat>,
}

impl TryFrom<EmulationJson> for Emulation {
    type Error = Error;

    fn try_from(j: EmulationJson) -> Result<Self> {
        Emulation::new(j.blocks, j.theta)
    }
}

impl From<Emulation> for EmulationJson {
    fn from(e: Emulation) -> Self {
        EmulationJson {
            blocks: e.blocks,
            theta: e.theta,
        }
    }
}

impl Emulation {
    pub fn new(blocks: Vec<Block>, theta: Vec<Rat>) -> Result<Self> {
        let total: usize = blocks.iter().map(|b| b.size as usize).sum();
        if total != theta.len() {
            return Err(Error::InvalidEmulation(format!(
                "blocks cover {total} positions but theta has {}",
                theta.len()
            )));
        }
        let mut labels = BTreeSet::new();
        for b in &blocks {
            if b.size == 0 {
                return Err(Error::InvalidEmulation(format!("block {} is empty", b.label)));
            }
            if !labels.insert(b.label) {
                return Err(Error::InvalidEmulation(format!("label {} repeats", b.label)));
            }
        }
        let distinct: BTreeSet<&Rat> = theta.iter().collect();
        if distinct.len() != theta.len() {
            return Err(Error::InvalidEmulation("theta is not injective".into()));
        }
        let e = Self { blocks, theta };
        for (i, b) in e.blocks.iter().enumerate() {
            let r = e.range(i);
            if e.theta[r].windows(2).any(|w| w[0] <= w[1]) {
                return Err(Error::InvalidEmulation(format!(
                    "theta is not decreasing on block {}",
                    b.label
                )));
            }
        }
        Ok(e)
    }

    /// Unit blocks labelled `1..=n` with decreasing `θ`; emulates `[N]^{<=1}`.
    pub fn decreasing(n: u32) -> Self {
        Self::unit_blocks(n, |i| -Rat::from_integer(i.into()))
    }

    /// Unit blocks with increasing `θ`; emulates `[N]^{<∞}`.
    pub fn increasing(n: u32) -> Self {
        Self::unit_blocks(n, |i| Rat::from_integer(i.into()))
    }

    fn unit_blocks(n: u32, f: impl Fn(u32) -> Rat) -> Self {
        let blocks = (1..=n).map(|label| Block { label, size: 1 }).collect();
        Self::new(blocks, (1..=n).map(f).collect()).unwrap()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn theta(&self) -> &[Rat] {
        &self.theta
    }

    pub fn labels(&self) -> IdSet {
        IdSet::new(self.blocks.iter().map(|b| b.label))
    }

    pub fn positions(&self) -> usize {
        self.theta.len()
    }

    fn start(&self, i: usize) -> usize {
        self.blocks[..i].iter().map(|b| b.size as usize).sum()
    }

    fn range(&self, i: usize) -> std::ops::Range<usize> {
        let s = self.start(i);
        s..s + self.blocks[i].size as usize
    }

    /// Whether the blocks are labelled `1, 2, 3, ...` in order.
    pub fn is_ordered(&self) -> bool {
        self.blocks.iter().enumerate().all(|(i, b)| b.label == i as u32 + 1)
    }

    fn block_index(&self) -> BTreeMap<u32, usize> {
        self.blocks.iter().enumerate().map(|(i, b)| (b.label, i)).collect()
    }

    /// Values in `(0, 1)` with the same order type:
    /// `(v - min + 1) / (max - min + 2)`.
    pub fn normalized(&self) -> Self {
        let (Some(min), Some(max)) = (self.theta.iter().min(), self.theta.iter().max()) else {
            return self.clone();
        };
        let one = Rat::one();
        let den = max - min + &one + &one;
        let theta = self.theta.iter().map(|v| (v - min + &one) / &den).collect();
        Self {
            blocks: self.blocks.clone(),
            theta,
        }
    }

    /// Ranks of `θ` (0-based), for repeated norm evaluation.
    fn ranks(&self) -> Vec<u32> {
        let mut order: Vec<usize> = (0..self.theta.len()).collect();
        order.sort_by(|&a, &b| self.theta[a].cmp(&self.theta[b]));
        let mut r = vec![0u32; order.len()];
        for (k, &i) in order.iter().enumerate() {
            r[i] = k as u32;
        }
        r
    }
}

/// `‖Σ_{t∈E} x_t‖_θ`: the longest `θ`-increasing run of positions taken
/// from the blocks of `E` in block order.
pub fn emulation_norm(e: &Emulation, labels: &IdSet) -> Result<u32> {
    let idx = e.block_index();
    if let Some(&t) = labels.iter().find(|t| !idx.contains_key(t)) {
        return Err(Error::UnknownLabel(t));
    }
    Ok(lis_over(&e.ranks(), &selected(e, labels)))
}

fn selected(e: &Emulation, labels: &IdSet) -> Vec<std::ops::Range<usize>> {
    (0..e.blocks.len())
        .filter(|&i| labels.contains(e.blocks[i].label))
        .map(|i| e.range(i))
        .collect()
}

/// Strict LIS length over the given position ranges, in order.
fn lis_over(ranks: &[u32], ranges: &[std::ops::Range<usize>]) -> u32 {
    let mut tails: Vec<u32> = Vec::new();
    for r in ranges {
        for &v in &ranks[r.clone()] {
            let k = tails.partition_point(|&t| t < v);
            if k == tails.len() {
                tails.push(v);
            } else {
                tails[k] = v;
            }
        }
    }
    tails.len() as u32
}

/// `‖Σ_t a_t x_t‖_θ`: heaviest `θ`-increasing run, each position of block
/// `t` weighing `|a_t|`.
pub fn emulation_weighted_norm(e: &Emulation, a: &RatVector) -> Result<Rat> {
    let idx = e.block_index();
    if let Some((t, _)) = a.iter().find(|(t, _)| !idx.contains_key(t)) {
        return Err(Error::UnknownLabel(t));
    }
    let mut keys = Vec::new();
    let mut weights = Vec::new();
    for (i, b) in e.blocks.iter().enumerate() {
        let w = crate::exact::rat::abs(&a.get(b.label));
        if w.is_zero() {
            continue;
        }
        for p in e.range(i) {
            keys.push(e.theta[p].clone());
            weights.push(w.clone());
        }
    }
    Ok(weighted_lis(&keys, &weights))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub ok: bool,
    pub checked: usize,
    pub counterexample: Option<IdSet>,
}

/// Checks `‖Σ_{t∈E} x_t‖ = |E| ⟺ E ∈ F` for every `E` of at most
/// `max_size` labels, in colex order; reports the first failure.
pub fn verify_emulation(e: &Emulation, f: &Family, max_size: usize) -> Result<Verification> {
    let labels = e.labels();
    if let Some(&t) = labels.iter().find(|&&t| !f.universe().contains(t)) {
        return Err(Error::OutsideUniverse(t));
    }
    let ranks = e.ranks();
    let mut checked = 0;
    for s in labels.subsets() {
        if s.len() > max_size {
            continue;
        }
        checked += 1;
        let full = lis_over(&ranks, &selected(e, &s)) as usize == s.len();
        if full != f.contains(&s) {
            return Ok(Verification {
                ok: false,
                checked,
                counterexample: Some(s),
            });
        }
    }
    Ok(Verification {
        ok: true,
        checked,
        counterexample: None,
    })
}

fn require_ordered(e: &Emulation) -> Result<()> {
    if !e.is_ordered() {
        return Err(Error::InvalidEmulation(
            "blocks must be labelled 1, 2, 3, ... in order".into(),
        ));
    }
    Ok(())
}

/// From an emulation of `F` to one of `S(F)`: block `n` becomes
/// `J_n = I^1_n < ... < I^n_n`, copies of `I_n`, with
/// `θ*(j) = θ(g^k_n(j)) - k` on the `k`-th copy.
pub fn schreier_transform(e: &Emulation) -> Result<Emulation> {
    require_ordered(e)?;
    let e = e.normalized();
    let mut blocks = Vec::new();
    let mut theta = Vec::new();
    for (i, b) in e.blocks.iter().enumerate() {
        let n = b.label;
        let src = &e.theta[e.range(i)];
        for k in 1..=n {
            let shift = Rat::from_integer(k.into());
            theta.extend(src.iter().map(|v| v - &shift));
        }
        blocks.push(Block {
            label: n,
            size: n * b.size,
        });
    }
    Emulation::new(blocks, theta)
}

/// From emulations of `F_1, F_2, ...` to one of `D*((F_k)_k)`: block `n`
/// is `J_n = I^1_n < ... < I^n_n` with `θ*(j) = θ_k(j) - k` on `I^k_n`.
/// Emits block `n` while parts `1..=n` all have a block `n`.
pub fn dstar_transform(parts: &[Emulation]) -> Result<Emulation> {
    for p in parts {
        require_ordered(p)?;
    }
    let parts: Vec<Emulation> = parts.iter().map(|p| p.normalized()).collect();
    let mut blocks = Vec::new();
    let mut theta = Vec::new();
    let mut n = 1usize;
    while n <= parts.len() && parts[..n].iter().all(|p| p.blocks.len() >= n) {
        let mut size = 0;
        for (k, p) in parts[..n].iter().enumerate() {
            let shift = Rat::from_integer((k + 1).into());
            theta.extend(p.theta[p.range(n - 1)].iter().map(|v| v - &shift));
            size += p.blocks[n - 1].size;
        }
        blocks.push(Block {
            label: n as u32,
            size,
        });
        n += 1;
    }
    if blocks.is_empty() {
        return Err(Error::InvalidEmulation("no complete output block".into()));
    }
    Emulation::new(blocks, theta)
}

fn shift_parts(parts: &[Emulation], rightwards: bool) -> Result<Emulation> {
    let k = parts.len();
    let mut blocks = Vec::new();
    let mut theta = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let p = p.normalized();
        let offset = if rightwards { i } else { k - 1 - i };
        let shift = Rat::from_integer(offset.into());
        blocks.extend(p.blocks.iter().copied());
        theta.extend(p.theta.iter().map(|v| v + &shift));
    }
    Emulation::new(blocks, theta)
}

/// Parts side by side with `θ`-ranges decreasing from part to part;
/// emulates the union of the part families.
pub fn union_shift(parts: &[Emulation]) -> Result<Emulation> {
    shift_parts(parts, false)
}

/// Parts side by side with `θ`-ranges increasing; emulates the Farah
/// family of the parts.
pub fn farah_shift(parts: &[Emulation]) -> Result<Emulation> {
    shift_parts(parts, true)
}

/// The emulation of `S_k` obtained from the decreasing base by `k`
/// transforms, on labels `1..=n`.
pub fn schreier_emulation(k: u32, n: u32) -> Result<Emulation> {
    let mut e = Emulation::decreasing(n);
    for _ in 0..k {
        e = schreier_transform(&e)?;
    }
    Ok(e)
}

/// The emulation of `S*_ω` (canonical ladder) on labels `1..=n`, from the
/// emulations of `S_1, ..., S_n`.
pub fn star_omega_emulation(n: u32) -> Result<Emulation> {
    let parts: Vec<Emulation> = (1..=n).map(|k| schreier_emulation(k, n)).collect::<Result<_>>()?;
    dstar_transform(&parts)
}
