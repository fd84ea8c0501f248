use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type LadderFn = Arc<dyn Fn(u32) -> Ordinal + Send + Sync>;

/// Fundamental sequence `k ↦ ξ_k` (k = 1, 2, ...) of a limit ordinal.
#[derive(Clone)]
pub struct Ladder {
    pub label: String,
    pub seq: Option<LadderFn>,
    /// `(a, b)` when the limit is `ω·a + b` with canonical structure.
    pub(crate) pair: Option<(u32, u32)>,
}

/// Countable ordinals below ω^ω built from zero, successors and limits.
#[derive(Clone)]
pub enum Ordinal {
    Zero,
    Succ(Box<Ordinal>),
    Limit(Ladder),
}

impl Ordinal {
    pub fn finite(n: u32) -> Self {
        let mut o = Ordinal::Zero;
        for _ in 0..n {
            o = Ordinal::Succ(Box::new(o));
        }
        o
    }

    pub fn omega() -> Self {
        Self::omega_mul_add(1, 0)
    }

    /// `ω·a + b` with the canonical ladder `ω·a = lim_k ω·(a-1) + k`.
    pub fn omega_mul_add(a: u32, b: u32) -> Self {
        if a == 0 {
            return Self::finite(b);
        }
        let seq: LadderFn = Arc::new(move |k| Ordinal::omega_mul_add(a - 1, k));
        let mut o = Ordinal::Limit(Ladder {
            label: if a == 1 { "ω".into() } else { format!("ω·{a}") },
            seq: Some(seq),
            pair: Some((a, 0)),
        });
        for _ in 0..b {
            o = Ordinal::Succ(Box::new(o));
        }
        o
    }

    /// A limit with a user-supplied fundamental sequence.
    pub fn limit(label: impl Into<String>, seq: Option<LadderFn>) -> Self {
        Ordinal::Limit(Ladder {
            label: label.into(),
            seq,
            pair: None,
        })
    }

    pub fn succ(self) -> Self {
        Ordinal::Succ(Box::new(self))
    }

    pub fn is_limit(&self) -> bool {
        matches!(self, Ordinal::Limit(_))
    }

    /// `(a, b)` for ordinals of the form `ω·a + b` built canonically.
    pub fn as_pair(&self) -> Option<(u32, u32)> {
        match self {
            Ordinal::Zero => Some((0, 0)),
            Ordinal::Succ(p) => p.as_pair().map(|(a, b)| (a, b + 1)),
            Ordinal::Limit(l) => l.pair,
        }
    }

    /// Order comparison, available when both sides are canonical.
    pub fn cmp_canonical(&self, other: &Ordinal) -> Option<Ordering> {
        Some(self.as_pair()?.cmp(&other.as_pair()?))
    }

    /// The same ordinal over the shifted ladder system `ξ⁺_k = ξ_k + 1`.
    pub fn plus_ladder(&self) -> Ordinal {
        match self {
            Ordinal::Zero => Ordinal::Zero,
            Ordinal::Succ(p) => Ordinal::Succ(Box::new(p.plus_ladder())),
            Ordinal::Limit(l) => {
                let seq = l.seq.clone().map(|f| -> LadderFn {
                    Arc::new(move |k| f(k).plus_ladder().succ())
                });
                Ordinal::Limit(Ladder {
                    label: format!("{}⁺", l.label),
                    seq,
                    pair: None,
                })
            }
        }
    }

    /// Checks that every limit reachable with ladder indices `k <= depth` has a
    /// fundamental sequence, and that canonical sequences increase.
    pub fn validate(&self, depth: u32) -> Result<()> {
        let mut seen = HashSet::new();
        self.validate_inner(depth, &mut seen)
    }

    fn validate_inner(&self, depth: u32, seen: &mut HashSet<String>) -> Result<()> {
        match self {
            Ordinal::Zero => Ok(()),
            Ordinal::Succ(p) => p.validate_inner(depth, seen),
            Ordinal::Limit(l) => {
                if !seen.insert(l.label.clone()) {
                    return Ok(());
                }
                let f = l
                    .seq
                    .as_ref()
                    .ok_or_else(|| Error::LadderMissing(l.label.clone()))?;
                let mut prev: Option<Ordinal> = None;
                for k in 1..=depth.max(1) {
                    let o = f(k);
                    if let Some(p) = &prev {
                        if p.cmp_canonical(&o).is_some_and(|c| c != Ordering::Less) {
                            return Err(Error::Invalid(format!(
                                "ladder of {} is not strictly increasing at k = {k}",
                                l.label
                            )));
                        }
                    }
                    if o.cmp_canonical(self).is_some_and(|c| c != Ordering::Less) {
                        return Err(Error::Invalid(format!(
                            "ladder of {} is not below it at k = {k}",
                            l.label
                        )));
                    }
                    o.validate_inner(depth, seen)?;
                    prev = Some(o);
                }
                Ok(())
            }
        }
    }

    /// Parses `"3"`, `"omega"`, `"ω·2+1"`, `"omega*2+1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s
            .trim()
            .replace("omega", "ω")
            .replace('*', "·")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if let Ok(n) = t.parse::<u32>() {
            return Ok(Self::finite(n));
        }
        let bad = || Error::Parse(format!("ordinal {s:?}: expected n, ω, ω·a or ω·a+b"));
        let rest = t.strip_prefix('ω').ok_or_else(bad)?;
        let (a, rest) = match rest.strip_prefix('·') {
            Some(r) => {
                let end = r.find('+').unwrap_or(r.len());
                (r[..end].parse::<u32>().map_err(|_| bad())?, &r[end..])
            }
            None => (1, rest),
        };
        let b = match rest.strip_prefix('+') {
            Some(r) => r.parse::<u32>().map_err(|_| bad())?,
            None if rest.is_empty() => 0,
            None => return Err(bad()),
        };
        if a == 0 {
            return Err(bad());
        }
        Ok(Self::omega_mul_add(a, b))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_pair() {
            Some((0, b)) => write!(f, "{b}"),
            Some((1, 0)) => write!(f, "ω"),
            Some((1, b)) => write!(f, "ω+{b}"),
            Some((a, 0)) => write!(f, "ω·{a}"),
            Some((a, b)) => write!(f, "ω·{a}+{b}"),
            None => {
                let mut n = 0;
                let mut o = self;
                while let Ordinal::Succ(p) = o {
                    n += 1;
                    o = p;
                }
                match o {
                    Ordinal::Limit(l) if n > 0 => write!(f, "{}+{n}", l.label),
                    Ordinal::Limit(l) => write!(f, "{}", l.label),
                    _ => write!(f, "{n}"),
                }
            }
        }
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}
