use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::IdSet;
use crate::error::{Error, Result};

/// A finite partial order, stored as the full set of pairs `a <= b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    elements: Vec<u32>,
    leq: BTreeSet<(u32, u32)>,
}

impl Poset {
    /// Validates reflexivity, antisymmetry and transitivity of `pairs`.
    pub fn new(
        elements: impl IntoIterator<Item = u32>,
        pairs: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        let elements: Vec<u32> = elements.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let leq: BTreeSet<(u32, u32)> = pairs.into_iter().collect();
        for &(a, b) in &leq {
            for x in [a, b] {
                if elements.binary_search(&x).is_err() {
                    return Err(Error::NotAPoset(format!("{x} is not an element")));
                }
            }
        }
        for &x in &elements {
            if !leq.contains(&(x, x)) {
                return Err(Error::NotAPoset(format!("reflexivity fails at {x}")));
            }
        }
        for &(a, b) in &leq {
            if a != b && leq.contains(&(b, a)) {
                return Err(Error::NotAPoset(format!("antisymmetry fails at {a}, {b}")));
            }
        }
        for &(a, b) in &leq {
            for &(c, d) in leq.range((b, 0)..=(b, u32::MAX)) {
                debug_assert_eq!(c, b);
                if !leq.contains(&(a, d)) {
                    return Err(Error::NotAPoset(format!(
                        "transitivity fails at {a} <= {b} <= {d}"
                    )));
                }
            }
        }
        Ok(Self { elements, leq })
    }

    /// Reflexive-transitive closure of `pairs`, then validated.
    pub fn from_cover(
        elements: impl IntoIterator<Item = u32>,
        pairs: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        let elements: Vec<u32> = elements.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut leq: BTreeSet<(u32, u32)> = pairs.into_iter().collect();
        leq.extend(elements.iter().map(|&x| (x, x)));
        loop {
            let mut added = Vec::new();
            for &(a, b) in &leq {
                for &(_, d) in leq.range((b, 0)..=(b, u32::MAX)) {
                    if !leq.contains(&(a, d)) {
                        added.push((a, d));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            leq.extend(added);
        }
        Self::new(elements, leq)
    }

    /// The coordinatewise order on `{1..n}²`; `(i, j)` gets id `(i-1)·n + j`.
    pub fn product_order(n: u32) -> Self {
        let id = |i: u32, j: u32| (i - 1) * n + j;
        let mut leq = BTreeSet::new();
        for i0 in 1..=n {
            for j0 in 1..=n {
                for i1 in i0..=n {
                    for j1 in j0..=n {
                        leq.insert((id(i0, j0), id(i1, j1)));
                    }
                }
            }
        }
        Self {
            elements: (1..=n * n).collect(),
            leq,
        }
    }

    pub fn product_id(n: u32, i: u32, j: u32) -> u32 {
        (i - 1) * n + j
    }

    /// The linear order on `1..=n`.
    pub fn chain(n: u32) -> Self {
        let leq = (1..=n).flat_map(|a| (a..=n).map(move |b| (a, b))).collect();
        Self {
            elements: (1..=n).collect(),
            leq,
        }
    }

    /// The trivial order (only `x <= x`).
    pub fn antichain(n: u32) -> Self {
        Self {
            elements: (1..=n).collect(),
            leq: (1..=n).map(|x| (x, x)).collect(),
        }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn leq(&self, a: u32, b: u32) -> bool {
        self.leq.contains(&(a, b))
    }

    pub fn comparable(&self, a: u32, b: u32) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn is_chain(&self, set: &IdSet) -> bool {
        set.pairs().all(|(a, b)| self.comparable(a, b))
    }

    pub fn is_antichain(&self, set: &IdSet) -> bool {
        set.pairs().all(|(a, b)| !self.comparable(a, b))
    }

    /// Strict relations `a < b`.
    pub fn strict_pairs(&self) -> Vec<(u32, u32)> {
        self.leq.iter().copied().filter(|(a, b)| a != b).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: Vec<u32>,
    /// Pairs `[a, b]` meaning `a <= b`; closed reflexively and transitively
    /// when `closure` is set.
    leq: Vec<(u32, u32)>,
    #[serde(default)]
    closure: bool,
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PosetJson {
            elements: self.elements.clone(),
            leq: self.leq.iter().copied().collect(),
            closure: false,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PosetJson::deserialize(d)?;
        let r = if raw.closure {
            Poset::from_cover(raw.elements, raw.leq)
        } else {
            Poset::new(raw.elements, raw.leq)
        };
        r.map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_are_checked() {
        assert!(matches!(
            Poset::new([1, 2], [(1, 2)]),
            Err(Error::NotAPoset(m)) if m.contains("reflexivity")
        ));
        assert!(matches!(
            Poset::new([1, 2], [(1, 1), (2, 2), (1, 2), (2, 1)]),
            Err(Error::NotAPoset(m)) if m.contains("antisymmetry")
        ));
        assert!(matches!(
            Poset::new([1, 2, 3], [(1, 1), (2, 2), (3, 3), (1, 2), (2, 3)]),
            Err(Error::NotAPoset(m)) if m.contains("transitivity")
        ));
        assert!(Poset::from_cover([1, 2, 3], [(1, 2), (2, 3)]).is_ok());
    }

    #[test]
    fn product_order_diagonal_is_antichain() {
        let p = Poset::product_order(3);
        let diag = IdSet::new([
            Poset::product_id(3, 1, 3),
            Poset::product_id(3, 2, 2),
            Poset::product_id(3, 3, 1),
        ]);
        assert!(p.is_antichain(&diag));
        assert!(p.leq(Poset::product_id(3, 1, 1), Poset::product_id(3, 2, 3)));
        assert!(!p.comparable(Poset::product_id(3, 1, 2), Poset::product_id(3, 2, 1)));
    }
}
