//! Musielak–Orlicz sequences `φ_i(t) = c·t^p` on finite truncations: the
//! modular `I(x) = Σ φ_i(|a_i|)`, the norm `inf{ρ : I(x/ρ) ≤ 1}`, and the
//! order `≤̇` on the unit ball.
//!
//! Integer exponents are evaluated exactly. A rational exponent `m/k` is
//! enclosed through the integer `k`-th root at a binary precision that is
//! raised until a comparison is decided.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rat::{abs, format_rat, serde_str};
use crate::exact::{Rat, RatVector};

pub const START_BITS: u32 = 32;
pub const MAX_BITS: u32 = 1024;
/// Default width of the certified norm enclosure, `2^-20`.
pub const NORM_TOLERANCE_BITS: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Power {
    #[serde(with = "serde_str")]
    pub p: Rat,
    #[serde(with = "serde_str", default = "Rat::one")]
    pub c: Rat,
}

impl Power {
    pub fn new(p: Rat) -> Self {
        Self { p, c: Rat::one() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Repeat {
    /// The last function applies to every later index.
    #[default]
    Last,
    /// The listed functions repeat periodically.
    Cycle,
    /// Only the listed indices exist.
    None,
}

/// `Δ₂` data `φ_i(2t) ≤ K φ_i(t) + h_i`, recorded for the power forms with
/// `K = 2^⌈max p⌉` and `h_i = 0`; not verified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delta2 {
    #[serde(with = "serde_str")]
    pub k: Rat,
    #[serde(with = "serde_str")]
    pub h: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeqJson", into = "SeqJson")]
pub struct OrliczSeq {
    terms: Vec<Power>,
    repeat: Repeat,
    delta2: Delta2,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SeqJson {
    Terms(Vec<Power>),
    Full {
        terms: Vec<Power>,
        #[serde(default)]
        repeat: Repeat,
    },
}

impl TryFrom<SeqJson> for OrliczSeq {
    type Error = Error;

    fn try_from(j: SeqJson) -> Result<Self> {
        match j {
            SeqJson::Terms(t) => OrliczSeq::new(t, Repeat::Last),
            SeqJson::Full { terms, repeat } => OrliczSeq::new(terms, repeat),
        }
    }
}

impl From<OrliczSeq> for SeqJson {
    fn from(s: OrliczSeq) -> Self {
        SeqJson::Full {
            terms: s.terms,
            repeat: s.repeat,
        }
    }
}

impl OrliczSeq {
    /// Exponents must be rational `p ≥ 1` and `φ_i(1) = c = 1`.
    pub fn new(terms: Vec<Power>, repeat: Repeat) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Invalid("an Orlicz sequence needs at least one function".into()));
        }
        for t in &terms {
            if t.p < Rat::one() {
                return Err(Error::Invalid(format!("exponent {} is below 1", format_rat(&t.p))));
            }
            if !t.c.is_one() {
                return Err(Error::Invalid(format!(
                    "phi(1) = {} but must equal 1",
                    format_rat(&t.c)
                )));
            }
        }
        let top = terms.iter().map(|t| t.p.ceil().to_integer()).max().unwrap();
        let k = Rat::from_integer(num_traits::pow(BigInt::from(2), top.to_usize().unwrap_or(usize::MAX)));
        Ok(Self {
            terms,
            repeat,
            delta2: Delta2 { k, h: Rat::zero() },
        })
    }

    pub fn lp(p: Rat) -> Result<Self> {
        Self::new(vec![Power::new(p)], Repeat::Last)
    }

    pub fn powers(ps: &[Rat]) -> Result<Self> {
        Self::new(ps.iter().cloned().map(Power::new).collect(), Repeat::Last)
    }

    pub fn terms(&self) -> &[Power] {
        &self.terms
    }

    pub fn delta2(&self) -> &Delta2 {
        &self.delta2
    }

    /// `φ_i` for a 1-based index.
    pub fn phi(&self, i: u32) -> Result<&Power> {
        let n = self.terms.len();
        let k = i as usize;
        if k == 0 {
            return Err(Error::OutsideUniverse(i));
        }
        Ok(match self.repeat {
            _ if k <= n => &self.terms[k - 1],
            Repeat::Last => &self.terms[n - 1],
            Repeat::Cycle => &self.terms[(k - 1) % n],
            Repeat::None => return Err(Error::OutsideUniverse(i)),
        })
    }

    fn all_integer(&self, x: &RatVector) -> Result<bool> {
        for (i, _) in x.iter() {
            if !self.phi(i)?.p.is_integer() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Closed enclosure `[lo, hi]`; `lo == hi` means exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    fn exact(v: Rat) -> Self {
        Self { lo: v.clone(), hi: v }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    /// `Some` when the comparison is decided.
    fn cmp(&self, o: &Interval) -> Option<Ordering> {
        if self.is_exact() && o.is_exact() {
            Some(self.lo.cmp(&o.lo))
        } else if self.hi < o.lo {
            Some(Ordering::Less)
        } else if self.lo > o.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// `T^{1/k}` to within `2^-bits`, exact when `T` is a perfect power at
/// that scale.
fn root_enclosure(t: &Rat, k: u32, bits: u32) -> Interval {
    if k == 1 || t.is_zero() || t.is_one() {
        return Interval::exact(t.clone());
    }
    let scaled = t.numer() << (bits as usize * k as usize);
    let (f, rem) = (&scaled / t.denom(), &scaled % t.denom());
    let r = f.nth_root(k);
    let den = BigInt::one() << bits as usize;
    let lo = Rat::new(r.clone(), den.clone());
    if rem.is_zero() && num_traits::pow(r.clone(), k as usize) == f {
        return Interval::exact(lo);
    }
    Interval {
        lo,
        hi: Rat::new(r + 1, den),
    }
}

fn phi_enclosure(f: &Power, t: &Rat, bits: u32) -> Result<Interval> {
    let a = abs(t);
    let m = f.p.numer().to_usize().ok_or_else(|| Error::Invalid("exponent too large".into()))?;
    let k = f.p.denom().to_u32().ok_or_else(|| Error::Invalid("exponent too large".into()))?;
    let tm = num_traits::pow(a, m);
    let r = root_enclosure(&tm, k, bits);
    Ok(Interval {
        lo: &f.c * r.lo,
        hi: &f.c * r.hi,
    })
}

/// Enclosure of `Σ_j I(x_j)` at the given precision.
fn modular_sum(phi: &OrliczSeq, xs: &[&RatVector], bits: u32) -> Result<Interval> {
    let mut acc = Interval::exact(Rat::zero());
    for x in xs {
        for (i, a) in x.iter() {
            acc = acc.add(&phi_enclosure(phi.phi(i)?, a, bits)?);
        }
    }
    Ok(acc)
}

/// Certified enclosure of `I(x)` with width at most `|supp x|·2^-bits`.
pub fn modular_interval(phi: &OrliczSeq, x: &RatVector, bits: u32) -> Result<Interval> {
    modular_sum(phi, &[x], bits)
}

/// Exact `I(x)`; requires integer exponents on the support.
pub fn modular(phi: &OrliczSeq, x: &RatVector) -> Result<Rat> {
    if !phi.all_integer(x)? {
        return Err(Error::Unsupported(
            "exact modular needs integer exponents; use modular_interval".into(),
        ));
    }
    Ok(modular_interval(phi, x, 0)?.lo)
}

/// The terms `φ_i(|a_i|)` of `Σ I(xs)` as `(p, c, |a|)`, zeros dropped.
fn terms_of(phi: &OrliczSeq, xs: &[&RatVector]) -> Result<Vec<(Rat, Rat, Rat)>> {
    let mut out = Vec::new();
    for x in xs {
        for (i, a) in x.iter() {
            if !a.is_zero() {
                let f = phi.phi(i)?;
                out.push((f.p.clone(), f.c.clone(), abs(a)));
            }
        }
    }
    out.sort();
    Ok(out)
}

fn terms_sum(terms: &[(Rat, Rat, Rat)], bits: u32) -> Result<Interval> {
    let mut acc = Interval::exact(Rat::zero());
    for (p, c, a) in terms {
        let f = Power { p: p.clone(), c: c.clone() };
        acc = acc.add(&phi_enclosure(&f, a, bits)?);
    }
    Ok(acc)
}

/// Compares `Σ I(xs)` with `Σ I(ys)` (a constant `extra` is added to the
/// right side), raising precision until decided. Terms equal on both sides
/// cancel first, so equal irrational sums of the same terms still compare.
fn compare_sums(phi: &OrliczSeq, xs: &[&RatVector], ys: &[&RatVector], extra: &Rat) -> Result<Ordering> {
    let (mut l, mut r) = (terms_of(phi, xs)?, terms_of(phi, ys)?);
    let (mut i, mut j) = (0, 0);
    let (mut lk, mut rk) = (Vec::new(), Vec::new());
    while i < l.len() && j < r.len() {
        match l[i].cmp(&r[j]) {
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
            Ordering::Less => {
                lk.push(i);
                i += 1;
            }
            Ordering::Greater => {
                rk.push(j);
                j += 1;
            }
        }
    }
    lk.extend(i..l.len());
    rk.extend(j..r.len());
    l = lk.into_iter().map(|k| l[k].clone()).collect();
    r = rk.into_iter().map(|k| r[k].clone()).collect();
    let mut bits = START_BITS;
    loop {
        let lo = terms_sum(&l, bits)?;
        let hi = terms_sum(&r, bits)?.add(&Interval::exact(extra.clone()));
        if let Some(o) = lo.cmp(&hi) {
            return Ok(o);
        }
        if bits >= MAX_BITS {
            return Err(Error::PrecisionExhausted { bits });
        }
        bits *= 2;
    }
}

/// `I(x) ≤ 1`, i.e. `‖x‖ ≤ 1`.
pub fn in_ball(phi: &OrliczSeq, x: &RatVector) -> Result<bool> {
    Ok(compare_sums(phi, &[x], &[], &Rat::one())? != Ordering::Greater)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LuxNorm {
    #[serde(with = "serde_str")]
    pub lo: Rat,
    #[serde(with = "serde_str")]
    pub hi: Rat,
    pub exact: bool,
}

impl LuxNorm {
    pub fn value(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }
}

/// `inf{ρ > 0 : I(x/ρ) ≤ 1}` enclosed in `[lo, hi]` with
/// `hi - lo ≤ 2^-tol_bits`. A common integer exponent gives the closed form
/// `(Σ|a_i|^p)^{1/p}`, exact when it is rational.
pub fn lux_norm(phi: &OrliczSeq, x: &RatVector, tol_bits: u32) -> Result<LuxNorm> {
    let x = RatVector::from_pairs(x.iter().filter(|(_, a)| !a.is_zero()).map(|(i, a)| (i, a.clone())));
    if x.is_empty() {
        return Ok(LuxNorm {
            lo: Rat::zero(),
            hi: Rat::zero(),
            exact: true,
        });
    }
    let ps: Vec<Rat> = x.iter().map(|(i, _)| phi.phi(i).map(|f| f.p.clone())).collect::<Result<_>>()?;
    if ps.iter().all(|p| p == &ps[0] && p.is_integer()) {
        let k = ps[0].to_integer().to_u32().ok_or_else(|| Error::Invalid("exponent too large".into()))?;
        let s = modular(phi, &x)?;
        // enclose the numerator and denominator roots separately
        let bits = tol_bits + 8;
        let mut e = root_enclosure(&s, k, bits);
        if e.is_exact() {
            return Ok(LuxNorm {
                lo: e.lo.clone(),
                hi: e.lo,
                exact: true,
            });
        }
        let n = root_enclosure(&Rat::from_integer(s.numer().clone()), k, bits);
        let d = root_enclosure(&Rat::from_integer(s.denom().clone()), k, bits);
        if n.is_exact() && d.is_exact() {
            let v = &n.lo / &d.lo;
            return Ok(LuxNorm {
                lo: v.clone(),
                hi: v,
                exact: true,
            });
        }
        e.hi = e.hi.min(&e.lo + Rat::new(1.into(), BigInt::one() << tol_bits as usize));
        return Ok(LuxNorm {
            lo: e.lo,
            hi: e.hi,
            exact: false,
        });
    }
    // invariant: lo < ‖x‖ ≤ hi; Σ|a_i| bounds the norm since p ≥ 1
    let mut lo = Rat::zero();
    let mut hi: Rat = x.iter().map(|(_, a)| abs(a)).sum();
    let tol = Rat::new(1.into(), BigInt::one() << tol_bits as usize);
    while &hi - &lo > tol {
        let w = &hi - &lo;
        let three = Rat::from_integer(3.into());
        let candidates = [
            &lo + &w / Rat::from_integer(2.into()),
            &lo + &w / &three,
            &lo + &w * Rat::from_integer(2.into()) / &three,
        ];
        let mut moved = false;
        for rho in candidates {
            let scaled = x.scale(&(Rat::one() / &rho));
            match compare_sums(phi, &[&scaled], &[], &Rat::one()) {
                Ok(Ordering::Greater) => lo = rho,
                Ok(_) => hi = rho,
                Err(Error::PrecisionExhausted { .. }) => continue,
                Err(e) => return Err(e),
            }
            moved = true;
            break;
        }
        if !moved {
            return Err(Error::PrecisionExhausted { bits: MAX_BITS });
        }
    }
    let exact = lo == hi;
    Ok(LuxNorm { lo, hi, exact })
}

fn require_ball(phi: &OrliczSeq, v: &RatVector, name: &str) -> Result<()> {
    if !in_ball(phi, v)? {
        return Err(Error::OutsideBall(format!("{name} has modular above 1")));
    }
    Ok(())
}

/// `x ≤̇ y` on the unit ball, decided as `I(x) ≤ I(y)`.
pub fn dot_order(phi: &OrliczSeq, x: &RatVector, y: &RatVector) -> Result<bool> {
    require_ball(phi, x, "x")?;
    require_ball(phi, y, "y")?;
    Ok(compare_sums(phi, &[x], &[y], &Rat::zero())? != Ordering::Greater)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawOrder {
    /// A tail `z` with `y + z` in the ball but `x + z` outside.
    Refuted(RatVector),
    /// No grid tail separates them.
    NotRefuted,
}

/// The defining condition of `x ≤̇ y`, read as "`y + z` in the ball forces
/// `x + z` in the ball", tested on tails `z` supported on the `width`
/// indices after both supports with coordinates in `{0, 1/grid, ..., 1}`.
pub fn raw_dot_order(phi: &OrliczSeq, x: &RatVector, y: &RatVector, grid: u32, width: u32) -> Result<RawOrder> {
    require_ball(phi, x, "x")?;
    require_ball(phi, y, "y")?;
    let last = |v: &RatVector| v.iter().map(|(i, _)| i).last().unwrap_or(0);
    let start = last(x).max(last(y)) + 1;
    let steps = grid as u64 + 1;
    let total = steps.checked_pow(width).ok_or_else(|| Error::Invalid("grid too large".into()))?;
    for code in 1..total {
        let mut c = code;
        let mut z = RatVector::new();
        for j in 0..width {
            let k = c % steps;
            c /= steps;
            if k > 0 {
                z.set(start + j, Rat::new(k.into(), grid.into()));
            }
        }
        if in_ball(phi, &y.add(&z))? && !in_ball(phi, &x.add(&z))? {
            return Ok(RawOrder::Refuted(z));
        }
    }
    Ok(RawOrder::NotRefuted)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaFailure {
    pub x: RatVector,
    pub y: RatVector,
    pub n: u32,
    pub a: Rat,
    pub b: Rat,
    pub step: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaReport {
    pub checked: usize,
    pub failure: Option<BetaFailure>,
}

impl BetaReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: u32, grid: i64) -> RatVector {
    RatVector::from_pairs((1..n).filter_map(|i| {
        let k = rng.gen_range(-grid..=grid);
        (k != 0).then(|| (i, Rat::new(k.into(), grid.into())))
    }))
}

/// Samples instances of the hypotheses of (β) on a `1/8` grid and checks
/// the conclusion together with each step of the chain
/// `I(x+(a+b)e_n) = I(x)+I((a+b)e_n) ≥ I(x)+I(ae_n)+I(be_n)
///  = I(x+ae_n)+I(be_n) ≥ I(y)+I(be_n) = I(y+be_n)`.
pub fn check_beta(phi: &OrliczSeq, samples: usize, seed: u64) -> Result<BetaReport> {
    const GRID: i64 = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut attempts = 0usize;
    let e = |n: u32, t: &Rat| RatVector::from_pairs([(n, t.clone())]);
    while checked < samples {
        attempts += 1;
        if attempts > samples * 1000 + 1000 {
            break;
        }
        let n = rng.gen_range(2..=5u32);
        let x = random_vector(&mut rng, n, GRID);
        let y = random_vector(&mut rng, n, GRID);
        let a = Rat::new(rng.gen_range(0..=GRID).into(), GRID.into());
        let b = Rat::new(rng.gen_range(0..=GRID).into(), GRID.into());
        let ab = &a + &b;
        if ab > Rat::one() {
            continue;
        }
        let (ea, eb, eab) = (e(n, &a), e(n, &b), e(n, &ab));
        let xa = x.add(&ea);
        let xab = x.add(&eab);
        if !in_ball(phi, &x)? || !in_ball(phi, &y)? || !in_ball(phi, &xa)? || !in_ball(phi, &xab)? {
            continue;
        }
        if !dot_order(phi, &y, &xa)? {
            continue;
        }
        checked += 1;
        let yb = y.add(&eb);
        let fail = |step| {
            Ok(BetaReport {
                checked,
                failure: Some(BetaFailure {
                    x: x.clone(),
                    y: y.clone(),
                    n,
                    a: a.clone(),
                    b: b.clone(),
                    step,
                }),
            })
        };
        let zero = Rat::zero();
        let steps: [(&[&RatVector], &[&RatVector], Ordering, &'static str); 5] = [
            (&[&xab], &[&x, &eab], Ordering::Equal, "additivity at x+(a+b)e_n"),
            (&[&eab], &[&ea, &eb], Ordering::Greater, "superadditivity"),
            (&[&x, &ea], &[&xa], Ordering::Equal, "additivity at x+ae_n"),
            (&[&xa], &[&y], Ordering::Greater, "hypothesis y <= x+ae_n"),
            (&[&y, &eb], &[&yb], Ordering::Equal, "additivity at y+be_n"),
        ];
        for (l, r, want, step) in steps {
            let ok = match sum_order(phi, l, r, &zero) {
                Ok(o) => o == want || (want == Ordering::Greater && o == Ordering::Equal),
                // equal sums with irrational values cannot be separated
                Err(Error::PrecisionExhausted { .. }) => want != Ordering::Less,
                Err(e) => return Err(e),
            };
            if !ok {
                return fail(step);
            }
        }
        if !in_ball(phi, &yb)? || !dot_order(phi, &yb, &xab)? {
            return fail("conclusion");
        }
    }
    Ok(BetaReport { checked, failure: None })
}

fn sum_order(phi: &OrliczSeq, l: &[&RatVector], r: &[&RatVector], extra: &Rat) -> Result<Ordering> {
    compare_sums(phi, l, r, extra)
}

/// Whether every sampled pair is comparable one way (property (α)).
pub fn check_alpha(phi: &OrliczSeq, samples: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = 0;
    while seen < samples {
        let x = random_vector(&mut rng, 5, 8);
        let y = random_vector(&mut rng, 5, 8);
        if !in_ball(phi, &x)? || !in_ball(phi, &y)? {
            continue;
        }
        seen += 1;
        let xy = dot_order(phi, &x, &y);
        let yx = dot_order(phi, &y, &x);
        match (xy, yx) {
            (Ok(false), Ok(false)) => return Ok(false),
            (Err(Error::PrecisionExhausted { .. }), _) | (_, Err(Error::PrecisionExhausted { .. })) => {}
            (Err(e), _) | (_, Err(e)) => return Err(e),
            _ => {}
        }
    }
    Ok(true)
}
