use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::IdSet;
use crate::exact::{int, RatVector};

/// A vector with entries in `{-1, +1}` on its support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignVector {
    values: BTreeMap<u32, i8>,
}

impl SignVector {
    /// Panics on entries other than ±1.
    pub fn new(values: BTreeMap<u32, i8>) -> Self {
        assert!(values.values().all(|&s| s == 1 || s == -1), "signs must be ±1");
        Self { values }
    }

    pub fn support(&self) -> IdSet {
        IdSet::new(self.values.keys().copied())
    }

    pub fn get(&self, id: u32) -> i8 {
        self.values.get(&id).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i8)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }

    pub fn to_rat_vector(&self) -> RatVector {
        RatVector::from_pairs(self.values.iter().map(|(&k, &v)| (k, int(v as i64))))
    }

    pub fn to_dense(&self, ids: &[u32]) -> Vec<crate::exact::Rat> {
        ids.iter().map(|&i| int(self.get(i) as i64)).collect()
    }
}

/// `W(H)`: every ± pattern on every set of `sets`, deduplicated and sorted.
pub fn sign_vectors(sets: &[IdSet]) -> Vec<SignVector> {
    let mut out = BTreeSet::new();
    for s in sets {
        let k = s.len();
        assert!(k < 32, "sign patterns on a set of size {k}");
        for pattern in 0u32..1 << k {
            let values = s
                .iter()
                .enumerate()
                .map(|(i, &x)| (x, if pattern >> i & 1 == 1 { -1 } else { 1 }))
                .collect();
            out.insert(SignVector { values });
        }
    }
    out.into_iter().collect()
}
