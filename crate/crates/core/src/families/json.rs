//! JSON description of families.
//!
//! ```json
//! {"universe": [1, 2, 3], "kind": "explicit", "sets": [[1, 2], [3]]}
//! {"universe": {"bound": 8}, "kind": "schreier", "alpha": "omega", "variant": "star"}
//! {"kind": "cliques", "graph": {"vertices": [1, 2, 3], "edges": [[1, 2]]}}
//! ```

use serde::{Deserialize, Serialize};

use super::{Family, IdSet, Kind, Ordinal, Poset, Universe, Variant};
use crate::error::{Error, Result};
use crate::exact::rat::serde_vec;
use crate::exact::Rat;
use crate::graphs::Graph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UniverseSpec {
    Ids(Vec<u32>),
    Bound { bound: u32 },
}

impl From<&Universe> for UniverseSpec {
    fn from(u: &Universe) -> Self {
        match u {
            Universe::Explicit(s) => UniverseSpec::Ids(s.as_slice().to_vec()),
            Universe::Bounded(n) => UniverseSpec::Bound { bound: *n },
        }
    }
}

impl From<&UniverseSpec> for Universe {
    fn from(u: &UniverseSpec) -> Self {
        match u {
            UniverseSpec::Ids(v) => Universe::Explicit(IdSet::new(v.iter().copied())),
            UniverseSpec::Bound { bound } => Universe::Bounded(*bound),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartSpec {
    pub ground: Vec<u32>,
    pub family: FamilySpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum KindSpec {
    Explicit {
        sets: Vec<Vec<u32>>,
    },
    UpTo {
        k: usize,
    },
    All,
    Cliques {
        graph: Graph,
    },
    Anticliques {
        graph: Graph,
    },
    Schreier {
        alpha: String,
        #[serde(default = "standard")]
        variant: Variant,
    },
    Farah {
        parts: Vec<PartSpec>,
    },
    Union {
        parts: Vec<PartSpec>,
    },
    Perp {
        family: Box<FamilySpec>,
        truncation: usize,
    },
    Chains {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        poset: Option<Poset>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        product_order: Option<u32>,
    },
    Antichains {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        poset: Option<Poset>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        product_order: Option<u32>,
    },
    Sierpinski {
        #[serde(with = "serde_vec")]
        values: Vec<Rat>,
    },
}

fn standard() -> Variant {
    Variant::Standard
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe: Option<UniverseSpec>,
    #[serde(flatten)]
    pub kind: KindSpec,
}

fn poset_of(poset: &Option<Poset>, product_order: Option<u32>) -> Result<Poset> {
    match (poset, product_order) {
        (Some(p), None) => Ok(p.clone()),
        (None, Some(n)) => Ok(Poset::product_order(n)),
        _ => Err(Error::Invalid(
            "give exactly one of \"poset\" and \"product_order\"".into(),
        )),
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<Family> {
        let universe: Option<Universe> = self.universe.as_ref().map(Universe::from);
        let need_universe = || {
            universe
                .clone()
                .ok_or_else(|| Error::Invalid("this family kind needs a \"universe\"".into()))
        };
        let fam = match &self.kind {
            KindSpec::Explicit { sets } => {
                let u = match need_universe()? {
                    Universe::Explicit(s) => s,
                    Universe::Bounded(n) => IdSet::range(1, n),
                };
                Family::explicit(u, sets.iter().map(|s| IdSet::new(s.iter().copied())).collect())?
            }
            KindSpec::UpTo { k } => Family::up_to(need_universe()?, *k),
            KindSpec::All => Family::all(need_universe()?),
            KindSpec::Cliques { graph } => Family::cliques(graph.clone()),
            KindSpec::Anticliques { graph } => Family::anticliques(graph.clone()),
            KindSpec::Schreier { alpha, variant } => {
                let bound = match need_universe()? {
                    Universe::Bounded(n) => n,
                    Universe::Explicit(_) => {
                        return Err(Error::Invalid(
                            "schreier families take {\"bound\": N} as universe".into(),
                        ))
                    }
                };
                Family::schreier(Ordinal::parse(alpha)?, *variant, bound)?
            }
            KindSpec::Farah { parts } => Family::farah(build_parts(parts)?)?,
            KindSpec::Union { parts } => Family::union(build_parts(parts)?)?,
            KindSpec::Perp { family, truncation } => family.build()?.perp(*truncation)?,
            KindSpec::Chains {
                poset,
                product_order,
            } => Family::chains(poset_of(poset, *product_order)?),
            KindSpec::Antichains {
                poset,
                product_order,
            } => Family::antichains(poset_of(poset, *product_order)?),
            KindSpec::Sierpinski { values } => {
                let distinct: std::collections::BTreeSet<&Rat> = values.iter().collect();
                if distinct.len() != values.len() {
                    return Err(Error::NotInjective("sierpinski values repeat".into()));
                }
                Family::sierpinski(values.clone())
            }
        };
        // An explicit universe on a kind that carries its own acts as a
        // restriction.
        match (&self.kind, universe) {
            (KindSpec::Explicit { .. } | KindSpec::UpTo { .. } | KindSpec::All, _)
            | (KindSpec::Schreier { .. }, _)
            | (_, None) => Ok(fam),
            (_, Some(u)) => fam.restrict(&IdSet::new(u.elements())),
        }
    }

    /// Serializable description of `f`; custom predicates have none.
    pub fn describe(f: &Family) -> Result<FamilySpec> {
        let universe = Some(UniverseSpec::from(f.universe()));
        let kind = match f.kind() {
            Kind::Explicit(sets) => KindSpec::Explicit {
                sets: sets.iter().map(|s| s.as_slice().to_vec()).collect(),
            },
            Kind::UpTo(k) => KindSpec::UpTo { k: *k },
            Kind::All => KindSpec::All,
            Kind::Cliques(g) => KindSpec::Cliques { graph: g.clone() },
            Kind::Anticliques(g) => KindSpec::Anticliques { graph: g.clone() },
            Kind::Schreier { alpha, variant } => {
                if alpha.as_pair().is_none() {
                    return Err(Error::Unsupported("non-canonical ladders have no JSON form".into()));
                }
                KindSpec::Schreier {
                    alpha: alpha.to_string(),
                    variant: *variant,
                }
            }
            Kind::Farah(parts) => KindSpec::Farah {
                parts: describe_parts(parts)?,
            },
            Kind::Union(parts) => KindSpec::Union {
                parts: describe_parts(parts)?,
            },
            Kind::Perp(base) => KindSpec::Perp {
                family: Box::new(FamilySpec::describe(base)?),
                truncation: f.universe().len(),
            },
            Kind::Chains(p) => KindSpec::Chains {
                poset: Some(p.clone()),
                product_order: None,
            },
            Kind::Antichains(p) => KindSpec::Antichains {
                poset: Some(p.clone()),
                product_order: None,
            },
            Kind::Sierpinski(v) => KindSpec::Sierpinski {
                values: v.as_ref().clone(),
            },
            Kind::Custom { name, .. } => {
                return Err(Error::Unsupported(format!("custom family {name:?} has no JSON form")))
            }
        };
        Ok(FamilySpec { universe, kind })
    }
}

fn build_parts(parts: &[PartSpec]) -> Result<Vec<(IdSet, Family)>> {
    parts
        .iter()
        .map(|p| Ok((IdSet::new(p.ground.iter().copied()), p.family.build()?)))
        .collect()
}

fn describe_parts(parts: &[(IdSet, Family)]) -> Result<Vec<PartSpec>> {
    parts
        .iter()
        .map(|(g, f)| {
            Ok(PartSpec {
                ground: g.as_slice().to_vec(),
                family: FamilySpec::describe(f)?,
            })
        })
        .collect()
}

pub fn parse_family(json: &str) -> Result<Family> {
    let spec: FamilySpec =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("family: {e}")))?;
    spec.build()
}
