use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A finite set of vertex ids, stored sorted and deduplicated.
///
/// `Ord` is the colexicographic order (`A < B` iff the largest element of the
/// symmetric difference lies in `B`), which is the enumeration order used
/// throughout the crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IdSet(Vec<u32>);

impl IdSet {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(items: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    /// Caller guarantees the input is strictly increasing.
    pub fn from_sorted(v: Vec<u32>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Self(v)
    }

    pub fn range(lo: u32, hi: u32) -> Self {
        Self((lo..=hi).collect())
    }

    pub fn singleton(x: u32) -> Self {
        Self(vec![x])
    }

    /// Elements of `ground` selected by the bits of `mask`.
    pub fn from_mask(ground: &[u32], mask: u64) -> Self {
        Self(
            ground
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect(),
        )
    }

    /// Bit mask relative to `ground`; `None` if an element is outside it.
    pub fn to_mask(&self, ground: &[u32]) -> Option<u64> {
        let mut m = 0u64;
        for x in &self.0 {
            let i = ground.binary_search(x).ok()?;
            m |= 1 << i;
        }
        Some(m)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u32> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &IdSet) -> bool {
        let mut j = 0;
        for x in &self.0 {
            while j < other.0.len() && other.0[j] < *x {
                j += 1;
            }
            if j == other.0.len() || other.0[j] != *x {
                return false;
            }
        }
        true
    }

    pub fn intersection(&self, other: &IdSet) -> IdSet {
        Self(self.0.iter().copied().filter(|x| other.contains(*x)).collect())
    }

    pub fn union(&self, other: &IdSet) -> IdSet {
        Self::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn difference(&self, other: &IdSet) -> IdSet {
        Self(self.0.iter().copied().filter(|x| !other.contains(*x)).collect())
    }

    pub fn with(&self, x: u32) -> IdSet {
        let mut v = self.0.clone();
        if let Err(i) = v.binary_search(&x) {
            v.insert(i, x);
        }
        Self(v)
    }

    pub fn without(&self, x: u32) -> IdSet {
        Self(self.0.iter().copied().filter(|&y| y != x).collect())
    }

    /// All 2-element subsets.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(move |(i, &a)| self.0[i + 1..].iter().map(move |&b| (a, b)))
    }

    /// All subsets, in colex order.
    pub fn subsets(&self) -> impl Iterator<Item = IdSet> + '_ {
        assert!(self.0.len() < 64, "too many elements for subset enumeration");
        (0u64..1 << self.0.len()).map(move |m| IdSet::from_mask(&self.0, m))
    }
}

impl Ord for IdSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (self.0.len(), other.0.len());
        loop {
            match (i, j) {
                (0, 0) => return Ordering::Equal,
                (0, _) => return Ordering::Less,
                (_, 0) => return Ordering::Greater,
                _ => {
                    let (a, b) = (self.0[i - 1], other.0[j - 1]);
                    match a.cmp(&b) {
                        Ordering::Equal => {
                            i -= 1;
                            j -= 1;
                        }
                        o => return o,
                    }
                }
            }
        }
    }
}

impl PartialOrd for IdSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<u32> for IdSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        IdSet::new(iter)
    }
}

impl<'a> IntoIterator for &'a IdSet {
    type Item = &'a u32;
    type IntoIter = std::slice::Iter<'a, u32>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Serialize for IdSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IdSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(IdSet::new(Vec::<u32>::deserialize(d)?))
    }
}
