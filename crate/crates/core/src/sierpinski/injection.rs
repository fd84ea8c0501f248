use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rat::serde_vec;
use crate::exact::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    /// `0, s_1, -s_1, s_2, -s_2, ...` with `s_k` the breadth-first
    /// Stern–Brocot enumeration of the positive rationals.
    SternBrocot,
    /// `0` then, along diagonals `a + b = 2, 3, ...`, each reduced `a/b`
    /// followed by `-a/b`.
    Cantor,
}

#[derive(Default)]
struct Cache {
    values: Vec<Rat>,
    index: HashMap<Rat, u32>,
    // Cantor cursor: next (a, b).
    diag: (u64, u64),
}

enum Source {
    Explicit(Vec<Rat>, HashMap<Rat, u32>),
    Generated(Generator, RwLock<Cache>),
}

/// An injection `{1, 2, ...} → Q`, explicit on `1..=N` or generated on
/// demand.
#[derive(Clone)]
pub struct RationalInjection {
    source: Arc<Source>,
}

impl RationalInjection {
    pub fn explicit(values: Vec<Rat>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in values.iter().enumerate() {
            if index.insert(v.clone(), i as u32 + 1).is_some() {
                return Err(Error::NotInjective(format!("value {v} repeats")));
            }
        }
        Ok(Self {
            source: Arc::new(Source::Explicit(values, index)),
        })
    }

    pub fn generated(g: Generator) -> Self {
        let cache = Cache {
            diag: (1, 1),
            ..Cache::default()
        };
        Self {
            source: Arc::new(Source::Generated(g, RwLock::new(cache))),
        }
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::explicit(values.iter().map(|&v| Rat::from_integer(v.into())).collect())
    }

    /// `Some(N)` for explicit injections.
    pub fn truncation(&self) -> Option<u32> {
        match &*self.source {
            Source::Explicit(v, _) => Some(v.len() as u32),
            Source::Generated(..) => None,
        }
    }

    pub fn generator(&self) -> Option<Generator> {
        match &*self.source {
            Source::Explicit(..) => None,
            Source::Generated(g, _) => Some(*g),
        }
    }

    /// `f(n)` for `n >= 1`.
    pub fn value(&self, n: u32) -> Result<Rat> {
        if n == 0 {
            return Err(Error::Invalid("injections are indexed from 1".into()));
        }
        match &*self.source {
            Source::Explicit(v, _) => v.get(n as usize - 1).cloned().ok_or(Error::TruncationExceeded {
                index: n as usize,
                truncation: v.len(),
            }),
            Source::Generated(Generator::SternBrocot, _) => Ok(stern_brocot_value(n)),
            Source::Generated(Generator::Cantor, cache) => {
                self.extend_cantor(cache, n);
                Ok(cache.read().unwrap().values[n as usize - 1].clone())
            }
        }
    }

    /// `f(1), ..., f(n)`.
    pub fn prefix(&self, n: u32) -> Result<Vec<Rat>> {
        if let Source::Generated(Generator::Cantor, cache) = &*self.source {
            self.extend_cantor(cache, n);
            return Ok(cache.read().unwrap().values[..n as usize].to_vec());
        }
        (1..=n).map(|i| self.value(i)).collect()
    }

    /// `f^{-1}(q)`; for Cantor hosts the search stops at index `cap`.
    pub fn index_of(&self, q: &Rat, cap: u32) -> Option<u32> {
        match &*self.source {
            Source::Explicit(_, index) => index.get(q).copied(),
            Source::Generated(Generator::SternBrocot, _) => stern_brocot_index(q),
            Source::Generated(Generator::Cantor, cache) => {
                if let Some(&i) = cache.read().unwrap().index.get(q) {
                    return Some(i);
                }
                // Position is determined by the diagonal a + b of |q|.
                let s = (q.numer().abs() + q.denom()).to_u64()?;
                let mut n = cache.read().unwrap().values.len() as u32;
                while cache.read().unwrap().diag.0 + cache.read().unwrap().diag.1 <= s {
                    if n >= cap {
                        return None;
                    }
                    n = (n + 1).max(n.saturating_mul(2)).min(cap);
                    self.extend_cantor(cache, n);
                }
                cache.read().unwrap().index.get(q).copied()
            }
        }
    }

    fn extend_cantor(&self, cache: &RwLock<Cache>, n: u32) {
        if cache.read().unwrap().values.len() >= n as usize {
            return;
        }
        let mut c = cache.write().unwrap();
        if c.values.is_empty() {
            c.values.push(Rat::zero());
            c.index.insert(Rat::zero(), 1);
        }
        while c.values.len() < n as usize {
            let (a, b) = c.diag;
            c.diag = if b == 1 { (1, a + 1) } else { (a + 1, b - 1) };
            if a.gcd(&b) != 1 {
                continue;
            }
            for q in [Rat::new(a.into(), b.into()), -Rat::new(a.into(), b.into())] {
                let i = c.values.len() as u32 + 1;
                c.index.insert(q.clone(), i);
                c.values.push(q);
            }
        }
    }
}

impl std::fmt::Debug for RationalInjection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &*self.source {
            Source::Explicit(v, _) => {
                let s: Vec<String> = v.iter().map(|r| r.to_string()).collect();
                write!(f, "RationalInjection[{}]", s.join(", "))
            }
            Source::Generated(g, _) => write!(f, "RationalInjection({g:?})"),
        }
    }
}

/// The `k`-th node (`k >= 1`) of the Stern–Brocot tree in breadth-first
/// order: the bits of `k` below its leading one, read from the top, say
/// left (0) or right (1).
pub fn stern_brocot_node(k: u64) -> Rat {
    assert!(k >= 1);
    let (mut ln, mut ld, mut rn, mut rd) = (0u64, 1u64, 1u64, 0u64);
    let (mut n, mut d) = (1u64, 1u64);
    let depth = 63 - k.leading_zeros();
    for bit in (0..depth).rev() {
        if k >> bit & 1 == 0 {
            (rn, rd) = (n, d);
        } else {
            (ln, ld) = (n, d);
        }
        n = ln + rn;
        d = ld + rd;
    }
    Rat::new(n.into(), d.into())
}

fn stern_brocot_value(n: u32) -> Rat {
    if n == 1 {
        return Rat::zero();
    }
    let q = stern_brocot_node(n as u64 / 2);
    if n % 2 == 0 {
        q
    } else {
        -q
    }
}

/// Breadth-first index of a positive rational in the Stern–Brocot tree, if
/// it fits in 64 bits.
pub fn stern_brocot_position(q: &Rat) -> Option<u64> {
    if !q.is_positive() {
        return None;
    }
    let (mut ln, mut ld, mut rn, mut rd) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut k: u64 = 1;
    loop {
        let n = &ln + &rn;
        let d = &ld + &rd;
        let m = Rat::new(n.clone(), d.clone());
        if m == *q {
            return Some(k);
        }
        k = k.checked_mul(2)?;
        if *q < m {
            (rn, rd) = (n, d);
        } else {
            (ln, ld) = (n, d);
            k += 1;
        }
    }
}

/// Depth in the Stern–Brocot tree (1 for 1/1), extended to `Q` by
/// `depth(0) = 0` and `depth(-q) = depth(q)`.
pub fn stern_brocot_depth(q: &Rat) -> u64 {
    if q.is_zero() {
        return 0;
    }
    // Sum of continued-fraction quotients.
    let (mut a, mut b) = (q.numer().abs(), q.denom().clone());
    let mut depth = BigInt::zero();
    while !b.is_zero() {
        let (quot, rem) = a.div_rem(&b);
        depth += quot;
        a = b;
        b = rem;
    }
    depth.to_u64().unwrap_or(u64::MAX)
}

fn stern_brocot_index(q: &Rat) -> Option<u32> {
    if q.is_zero() {
        return Some(1);
    }
    let k = stern_brocot_position(&q.abs())?;
    let i = k.checked_mul(2)? + u64::from(q.is_negative());
    u32::try_from(i).ok()
}

/// Rationals in the open interval `(lo, hi)` (`None` = unbounded) by
/// increasing Stern–Brocot depth, then numerator, the first one passing
/// `accept`. Gives up after `max_depth`.
pub fn simplest_in(
    lo: Option<&Rat>,
    hi: Option<&Rat>,
    accept: impl Fn(&Rat) -> bool,
    max_depth: u64,
) -> Option<Rat> {
    let inside = |q: &Rat| lo.is_none_or(|l| q > l) && hi.is_none_or(|h| q < h);
    let zero = Rat::zero();
    if inside(&zero) && accept(&zero) {
        return Some(zero);
    }
    // Positive candidates come from (max(lo, 0), hi); negative ones are the
    // negatives of positives in (-min(hi, 0), -lo).
    let pos_range = (lo.map_or(zero.clone(), |l| l.clone().max(zero.clone())), hi.cloned());
    let neg_range = (hi.map_or(zero.clone(), |h| (-h).max(zero.clone())), lo.map(|l| -l));
    let nonempty = |(a, b): &(Rat, Option<Rat>)| b.as_ref().is_none_or(|b| b > a);
    for depth in 1..=max_depth {
        let mut level: BTreeSet<(BigInt, Rat)> = BTreeSet::new();
        for (range, sign) in [(&pos_range, 1), (&neg_range, -1)] {
            if !nonempty(range) {
                continue;
            }
            collect_level(range, depth, &mut |q: Rat| {
                let q = if sign < 0 { -q } else { q };
                level.insert((q.numer().clone(), q));
            });
        }
        if let Some((_, q)) = level.into_iter().find(|(_, q)| inside(q) && accept(q)) {
            return Some(q);
        }
    }
    None
}

/// Nodes at `depth` strictly inside `(a, b)`, pruning subtrees whose span
/// misses the interval.
fn collect_level(range: &(Rat, Option<Rat>), depth: u64, out: &mut dyn FnMut(Rat)) {
    fn walk(
        range: &(Rat, Option<Rat>),
        l: (BigInt, BigInt),
        r: (BigInt, BigInt),
        d: u64,
        depth: u64,
        out: &mut dyn FnMut(Rat),
    ) {
        // Subtree spans the open interval (l, r); r may be 1/0.
        let l_val = Rat::new(l.0.clone(), l.1.clone());
        if let Some(b) = &range.1 {
            if l_val >= *b {
                return;
            }
        }
        if !r.1.is_zero() && Rat::new(r.0.clone(), r.1.clone()) <= range.0 {
            return;
        }
        let m = (&l.0 + &r.0, &l.1 + &r.1);
        if d == depth {
            let q = Rat::new(m.0, m.1);
            if q > range.0 && range.1.as_ref().is_none_or(|b| q < *b) {
                out(q);
            }
            return;
        }
        walk(range, l, m.clone(), d + 1, depth, out);
        walk(range, m, r, d + 1, depth, out);
    }
    walk(
        range,
        (BigInt::zero(), BigInt::one()),
        (BigInt::one(), BigInt::zero()),
        1,
        depth,
        out,
    );
}

/// JSON form: `{"values": ["0", "-1", "1"]}` or `{"generator": "stern-brocot"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InjectionSpec {
    Values {
        #[serde(with = "serde_vec")]
        values: Vec<Rat>,
    },
    Generator {
        generator: Generator,
    },
}

impl InjectionSpec {
    pub fn build(&self) -> Result<RationalInjection> {
        match self {
            InjectionSpec::Values { values } => RationalInjection::explicit(values.clone()),
            InjectionSpec::Generator { generator } => Ok(RationalInjection::generated(*generator)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn stern_brocot_order() {
        let first: Vec<Rat> = (1..=7).map(stern_brocot_node).collect();
        assert_eq!(
            first,
            vec![int(1), rat(1, 2), int(2), rat(1, 3), rat(2, 3), rat(3, 2), int(3)]
        );
        for k in 1..200u64 {
            assert_eq!(stern_brocot_position(&stern_brocot_node(k)), Some(k));
            assert_eq!(stern_brocot_depth(&stern_brocot_node(k)), 64 - k.leading_zeros() as u64);
        }
    }

    #[test]
    fn generated_hosts_are_injective() {
        for g in [Generator::SternBrocot, Generator::Cantor] {
            let f = RationalInjection::generated(g);
            let vals = f.prefix(300).unwrap();
            let set: BTreeSet<&Rat> = vals.iter().collect();
            assert_eq!(set.len(), 300);
            for (i, v) in vals.iter().enumerate() {
                assert_eq!(f.index_of(v, 10_000), Some(i as u32 + 1));
            }
        }
    }

    #[test]
    fn simplest_rationals() {
        let any = |_: &Rat| true;
        assert_eq!(simplest_in(None, None, any, 10), Some(int(0)));
        assert_eq!(simplest_in(Some(&int(0)), None, any, 10), Some(int(1)));
        assert_eq!(simplest_in(Some(&rat(1, 3)), Some(&rat(1, 2)), any, 10), Some(rat(2, 5)));
        assert_eq!(simplest_in(None, Some(&int(-1)), any, 10), Some(int(-2)));
        assert_eq!(simplest_in(Some(&int(-1)), Some(&int(1)), |q| !q.is_zero(), 10), Some(rat(-1, 2)));
    }

    #[test]
    fn explicit_rejects_repeats() {
        assert!(matches!(
            RationalInjection::from_ints(&[1, 2, 1]),
            Err(Error::NotInjective(_))
        ));
    }
}
