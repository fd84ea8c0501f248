use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{format_rat, parse_rat, Rat};
use crate::error::Result;
use crate::families::IdSet;

/// A finitely supported rational vector indexed by vertex ids.
///
/// Zero entries are never stored, so the key set is the support.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector {
    entries: BTreeMap<u32, Rat>,
}

impl RatVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, Rat)>) -> Self {
        let mut v = Self::new();
        for (k, r) in pairs {
            v.set(k, r);
        }
        v
    }

    /// Builds a sparse vector from dense coordinates over `ids`.
    pub fn from_dense(ids: &[u32], values: &[Rat]) -> Self {
        debug_assert_eq!(ids.len(), values.len());
        Self::from_pairs(ids.iter().copied().zip(values.iter().cloned()))
    }

    /// Characteristic vector of a set.
    pub fn indicator(set: &IdSet) -> Self {
        Self::from_pairs(set.iter().map(|&i| (i, super::rat::int(1))))
    }

    pub fn set(&mut self, id: u32, value: Rat) {
        if value.is_zero() {
            self.entries.remove(&id);
        } else {
            self.entries.insert(id, value);
        }
    }

    pub fn get(&self, id: u32) -> Rat {
        self.entries.get(&id).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> IdSet {
        IdSet::from_sorted(self.entries.keys().copied().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self, ids: &[u32]) -> Vec<Rat> {
        ids.iter().map(|&i| self.get(i)).collect()
    }

    pub fn abs(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(k, v)| (*k, v.abs())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_pairs(self.entries.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            let s = out.get(*k) + v;
            out.set(*k, s);
        }
        out
    }

    pub fn dot(&self, other: &Self) -> Rat {
        let mut acc = Rat::zero();
        for (k, v) in &self.entries {
            if let Some(w) = other.entries.get(k) {
                acc += v * w;
            }
        }
        acc
    }

    pub fn max_abs(&self) -> Rat {
        self.entries
            .values()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// Parses the `{"3": "1/2", ...}` form.
    pub fn from_json_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let mut v = Self::new();
        for (k, s) in map {
            let id: u32 = k
                .trim()
                .parse()
                .map_err(|e| crate::Error::Parse(format!("vector key {k:?}: {e}")))?;
            v.set(id, parse_rat(s)?);
        }
        Ok(v)
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {}", format_rat(v))?;
        }
        write!(f, "}}")
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // A BTreeMap<String, _> would sort "10" before "2"; keep numeric order.
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.entries.len()))?;
        for (k, v) in &self.entries {
            map.serialize_entry(&k.to_string(), &format_rat(v))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for RatVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, super::rat::serde_str::RatRepr>::deserialize(d)?;
        let mut v = RatVector::new();
        for (k, r) in raw {
            let id: u32 = k.trim().parse().map_err(serde::de::Error::custom)?;
            v.set(id, r.into_rat().map_err(serde::de::Error::custom)?);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{half, int};

    #[test]
    fn zeros_are_not_stored() {
        let mut v = RatVector::from_pairs([(1, half()), (2, int(0))]);
        assert_eq!(v.len(), 1);
        v.set(1, int(0));
        assert!(v.is_zero());
    }

    #[test]
    fn json_keys_in_numeric_order() {
        let v = RatVector::from_pairs([(10, int(1)), (2, half())]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"2":"1/2","10":"1"}"#);
        let back: RatVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
