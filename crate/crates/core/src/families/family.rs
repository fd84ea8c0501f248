use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use super::ordinal::Ordinal;
use super::poset::Poset;
use super::schreier::{self, Variant};
use super::IdSet;
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::graphs::Graph;

pub type Predicate = Arc<dyn Fn(&IdSet) -> bool + Send + Sync>;

/// Ground set of a family: an explicit finite set or `{1, ..., bound}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Universe {
    Explicit(IdSet),
    Bounded(u32),
}

impl Universe {
    pub fn contains(&self, x: u32) -> bool {
        match self {
            Universe::Explicit(s) => s.contains(x),
            Universe::Bounded(n) => (1..=*n).contains(&x),
        }
    }

    pub fn elements(&self) -> Vec<u32> {
        match self {
            Universe::Explicit(s) => s.as_slice().to_vec(),
            Universe::Bounded(n) => (1..=*n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Universe::Explicit(s) => s.len(),
            Universe::Bounded(n) => *n as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The first `n` elements.
    pub fn truncate(&self, n: usize) -> Result<Universe> {
        if n > self.len() {
            return Err(Error::TruncationExceeded {
                index: n,
                truncation: self.len(),
            });
        }
        Ok(match self {
            Universe::Explicit(s) => Universe::Explicit(IdSet::from_sorted(s.as_slice()[..n].to_vec())),
            Universe::Bounded(_) => Universe::Bounded(n as u32),
        })
    }
}

/// How membership is decided.
#[derive(Clone)]
pub enum Kind {
    /// Hereditary closure of the listed sets.
    Explicit(Vec<IdSet>),
    /// `[U]^{<=k}`.
    UpTo(usize),
    /// `[U]^{<∞}`.
    All,
    Cliques(Graph),
    Anticliques(Graph),
    Schreier { alpha: Ordinal, variant: Variant },
    Farah(Vec<(IdSet, Family)>),
    Union(Vec<(IdSet, Family)>),
    /// Sets meeting every member of the base family in at most one point.
    Perp(Family),
    Chains(Poset),
    Antichains(Poset),
    /// Chains of the Sierpiński order: `i < j` with `f(i) < f(j)`, where
    /// `values[i-1] = f(i)`.
    Sierpinski(Arc<Vec<Rat>>),
    Custom { name: String, pred: Predicate },
}

/// A hereditary family of finite subsets of its universe.
#[derive(Clone)]
pub struct Family {
    universe: Universe,
    kind: Arc<Kind>,
}

impl Family {
    fn make(universe: Universe, kind: Kind) -> Self {
        Self {
            universe,
            kind: Arc::new(kind),
        }
    }

    /// Hereditary closure of `sets`; every universe point must be covered.
    pub fn explicit(universe: IdSet, sets: Vec<IdSet>) -> Result<Self> {
        for s in &sets {
            if let Some(&x) = s.iter().find(|&&x| !universe.contains(x)) {
                return Err(Error::OutsideUniverse(x));
            }
        }
        for &x in universe.iter() {
            if !sets.iter().any(|s| s.contains(x)) {
                return Err(Error::NotHereditary(format!("{x} is not covered")));
            }
        }
        let mut sets: Vec<IdSet> = sets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        // Keep only maximal listed sets.
        let all = sets.clone();
        sets.retain(|s| !all.iter().any(|t| t != s && s.is_subset(t)));
        Ok(Self::make(Universe::Explicit(universe), Kind::Explicit(sets)))
    }

    pub fn up_to(universe: Universe, k: usize) -> Self {
        Self::make(universe, Kind::UpTo(k))
    }

    pub fn all(universe: Universe) -> Self {
        Self::make(universe, Kind::All)
    }

    pub fn cliques(g: Graph) -> Self {
        Self::make(Universe::Explicit(g.vertex_set()), Kind::Cliques(g))
    }

    pub fn anticliques(g: Graph) -> Self {
        Self::make(Universe::Explicit(g.vertex_set()), Kind::Anticliques(g))
    }

    /// `S_alpha` or `S*_alpha` on `{1, ..., truncation}`.
    pub fn schreier(alpha: Ordinal, variant: Variant, truncation: u32) -> Result<Self> {
        alpha.validate(truncation)?;
        Ok(Self::make(
            Universe::Bounded(truncation),
            Kind::Schreier { alpha, variant },
        ))
    }

    fn check_parts(parts: &[(IdSet, Family)]) -> Result<IdSet> {
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        for (ground, fam) in parts {
            for &x in ground.iter() {
                if !seen.insert(x) {
                    return Err(Error::OverlappingParts(x));
                }
                if !fam.universe.contains(x) {
                    return Err(Error::OutsideUniverse(x));
                }
            }
        }
        Ok(IdSet::new(seen))
    }

    /// `Fh(Q)`: sets whose trace on each part is a member there.
    pub fn farah(parts: Vec<(IdSet, Family)>) -> Result<Self> {
        let u = Self::check_parts(&parts)?;
        Ok(Self::make(Universe::Explicit(u), Kind::Farah(parts)))
    }

    /// `⋃Q`: sets inside a single part and a member there.
    pub fn union(parts: Vec<(IdSet, Family)>) -> Result<Self> {
        let u = Self::check_parts(&parts)?;
        Ok(Self::make(Universe::Explicit(u), Kind::Union(parts)))
    }

    pub fn chains(p: Poset) -> Self {
        Self::make(Universe::Explicit(IdSet::new(p.elements().iter().copied())), Kind::Chains(p))
    }

    pub fn antichains(p: Poset) -> Self {
        Self::make(
            Universe::Explicit(IdSet::new(p.elements().iter().copied())),
            Kind::Antichains(p),
        )
    }

    /// Chains of the Sierpiński order of `values` on `{1, ..., values.len()}`.
    pub fn sierpinski(values: Vec<Rat>) -> Self {
        let n = values.len() as u32;
        Self::make(Universe::Bounded(n), Kind::Sierpinski(Arc::new(values)))
    }

    /// A family given by a predicate. The predicate must be hereditary and
    /// hold on every singleton; see [`Family::check_hereditary`].
    pub fn custom(
        name: impl Into<String>,
        universe: Universe,
        pred: impl Fn(&IdSet) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self::make(
            universe,
            Kind::Custom {
                name: name.into(),
                pred: Arc::new(pred),
            },
        )
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn tag(&self) -> &'static str {
        match &*self.kind {
            Kind::Explicit(_) => "explicit",
            Kind::UpTo(_) => "up-to",
            Kind::All => "all",
            Kind::Cliques(_) => "graph-cliques",
            Kind::Anticliques(_) => "graph-anticliques",
            Kind::Schreier { .. } => "schreier",
            Kind::Farah(_) => "farah",
            Kind::Union(_) => "union",
            Kind::Perp(_) => "perp",
            Kind::Chains(_) => "poset-chains",
            Kind::Antichains(_) => "poset-antichains",
            Kind::Sierpinski(_) => "sierpinski",
            Kind::Custom { .. } => "custom",
        }
    }

    /// Membership; sets leaving the universe are not members.
    pub fn contains(&self, e: &IdSet) -> bool {
        e.iter().all(|&x| self.universe.contains(x)) && self.kind_contains(e)
    }

    /// Membership with an error for elements outside the universe.
    pub fn check(&self, e: &IdSet) -> Result<bool> {
        if let Some(&x) = e.iter().find(|&&x| !self.universe.contains(x)) {
            return Err(Error::OutsideUniverse(x));
        }
        Ok(self.kind_contains(e))
    }

    fn kind_contains(&self, e: &IdSet) -> bool {
        if e.is_empty() {
            return true;
        }
        match &*self.kind {
            Kind::Explicit(sets) => sets.iter().any(|s| e.is_subset(s)),
            Kind::UpTo(k) => e.len() <= *k,
            Kind::All => true,
            Kind::Cliques(g) => g.is_clique(e),
            Kind::Anticliques(g) => g.is_anticlique(e),
            Kind::Schreier { alpha, variant } => schreier::contains(alpha, *variant, e.as_slice()),
            Kind::Farah(parts) => parts
                .iter()
                .all(|(ground, fam)| fam.contains(&e.intersection(ground))),
            Kind::Union(parts) => parts
                .iter()
                .any(|(ground, fam)| e.is_subset(ground) && fam.contains(e)),
            Kind::Perp(base) => !e
                .pairs()
                .any(|(a, b)| base.contains(&IdSet::from_sorted(vec![a, b]))),
            Kind::Chains(p) => p.is_chain(e),
            Kind::Antichains(p) => p.is_antichain(e),
            Kind::Sierpinski(values) => e
                .as_slice()
                .windows(2)
                .all(|w| values[w[0] as usize - 1] < values[w[1] as usize - 1]),
            Kind::Custom { pred, .. } => pred(e),
        }
    }

    /// `F ↾ ground`.
    pub fn restrict(&self, ground: &IdSet) -> Result<Family> {
        if let Some(&x) = ground.iter().find(|&&x| !self.universe.contains(x)) {
            return Err(Error::OutsideUniverse(x));
        }
        Ok(Self {
            universe: Universe::Explicit(ground.clone()),
            kind: self.kind.clone(),
        })
    }

    /// `F^⊥` on the first `truncation` universe elements. Exact there: since
    /// `F` is hereditary, `E ∈ F^⊥` iff no 2-subset of `E` lies in `F`.
    pub fn perp(&self, truncation: usize) -> Result<Family> {
        let universe = self.universe.truncate(truncation)?;
        Ok(Self::make(universe, Kind::Perp(self.clone())))
    }

    /// `F^⊥ ↾ ground`, exact for any finite `ground` inside the universe.
    pub fn perp_on(&self, ground: &IdSet) -> Result<Family> {
        if let Some(&x) = ground.iter().find(|&&x| !self.universe.contains(x)) {
            return Err(Error::OutsideUniverse(x));
        }
        Ok(Self::make(Universe::Explicit(ground.clone()), Kind::Perp(self.clone())))
    }

    /// The graph whose edges are the 2-element members inside `ground`.
    pub fn pair_graph(&self, ground: &IdSet) -> Graph {
        let edges: Vec<(u32, u32)> = ground
            .pairs()
            .filter(|&(a, b)| self.contains(&IdSet::from_sorted(vec![a, b])))
            .collect();
        Graph::new(ground.iter().copied(), edges).expect("pairs of the ground set")
    }

    /// Decides `F = F^⊥⊥` on the first `truncation` universe elements. On
    /// failure the witness is the colex-first clique of the pair graph that
    /// is not a member.
    pub fn is_graph_generated(&self, truncation: usize) -> Result<(bool, Option<IdSet>)> {
        let ground = IdSet::from_sorted(self.universe.truncate(truncation)?.elements());
        self.graph_generated_on(&ground)
    }

    fn graph_generated_on(&self, ground: &IdSet) -> Result<(bool, Option<IdSet>)> {
        if matches!(&*self.kind, Kind::Cliques(_) | Kind::Anticliques(_) | Kind::All | Kind::Perp(_)) {
            return Ok((true, None));
        }
        let g = self.pair_graph(ground);
        // The colex-first clique outside F minus its maximum is a member, so
        // it suffices to extend members by one larger common neighbour.
        let mut best: Option<IdSet> = None;
        for m in self.members(ground)? {
            let top = m.as_slice().last().copied().unwrap_or(0);
            for &v in ground.iter().filter(|&&v| v > top) {
                if m.iter().all(|&u| g.has_edge(u, v)) {
                    let cand = m.with(v);
                    if !self.contains(&cand) && best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
        }
        Ok((best.is_none(), best))
    }

    /// All members inside `ground`, in colex order.
    pub fn members(&self, ground: &IdSet) -> Result<Vec<IdSet>> {
        let masks = self.member_masks(ground)?;
        let g = ground.as_slice();
        Ok(masks.into_iter().map(|m| IdSet::from_mask(g, m)).collect())
    }

    /// Member bit masks relative to `ground`, sorted ascending (= colex).
    pub fn member_masks(&self, ground: &IdSet) -> Result<Vec<u64>> {
        if ground.len() > 63 {
            return Err(Error::SizeLimitExceeded {
                size: ground.len(),
                limit: 63,
            });
        }
        if let Some(&x) = ground.iter().find(|&&x| !self.universe.contains(x)) {
            return Err(Error::OutsideUniverse(x));
        }
        let g = ground.as_slice();
        let mut out = vec![0u64];
        let mut stack: Vec<(u64, usize)> = vec![(0, 0)];
        while let Some((mask, start)) = stack.pop() {
            for j in start..g.len() {
                let next = mask | 1 << j;
                if self.kind_contains(&IdSet::from_mask(g, next)) {
                    out.push(next);
                    stack.push((next, j + 1));
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Members inside `ground` with no proper extension inside `ground`,
    /// in colex order.
    pub fn max_elements(&self, ground: &IdSet) -> Result<Vec<IdSet>> {
        if let Some(&x) = ground.iter().find(|&&x| !self.universe.contains(x)) {
            return Err(Error::OutsideUniverse(x));
        }
        let mut out = match &*self.kind {
            Kind::Cliques(g) => g.induced(ground).maximal_cliques(),
            Kind::Anticliques(g) => g.induced(ground).maximal_anticliques(),
            Kind::All => vec![ground.clone()],
            Kind::UpTo(k) if *k >= ground.len() => vec![ground.clone()],
            _ => {
                let masks = self.member_masks(ground)?;
                let set: HashSet<u64> = masks.iter().copied().collect();
                let n = ground.len();
                masks
                    .into_iter()
                    .filter(|&m| (0..n).all(|j| m >> j & 1 == 1 || !set.contains(&(m | 1 << j))))
                    .map(|m| IdSet::from_mask(ground.as_slice(), m))
                    .collect()
            }
        };
        out.sort();
        Ok(out)
    }

    /// Checks hereditarity and covering on all subsets of `ground`; the error
    /// names the first failure.
    pub fn check_hereditary(&self, ground: &IdSet) -> Result<()> {
        for &x in ground.iter() {
            if !self.contains(&IdSet::singleton(x)) {
                return Err(Error::NotHereditary(format!("{{{x}}} is not a member")));
            }
        }
        for s in ground.subsets() {
            if self.contains(&s) {
                for &x in s.iter() {
                    let t = s.without(x);
                    if !self.contains(&t) {
                        return Err(Error::NotHereditary(format!("{s} is a member but {t} is not")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Bounded search for a strictly increasing chain of members
    /// `F_1 ⊊ ... ⊊ F_depth` inside `ground`, built greedily from the
    /// smallest addable element. Absence of a chain says nothing about
    /// compactness.
    pub fn find_chain(&self, depth: usize, ground: &IdSet) -> Option<Vec<IdSet>> {
        let mut chain = vec![IdSet::empty()];
        while chain.len() < depth {
            let last = chain.last().unwrap();
            let next = ground
                .iter()
                .filter(|&&x| !last.contains(x))
                .map(|&x| last.with(x))
                .find(|s| self.contains(s))?;
            chain.push(next);
        }
        Some(chain)
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family({}, {:?})", self.tag(), self.universe)
    }
}
