use std::collections::BTreeMap;

use serde_json::Value;

use combinorm::exact::RatVector;
use combinorm::families::json::FamilySpec;
use combinorm::families::{Family, IdSet};
use combinorm::graphs::{io, Graph};
use combinorm::sierpinski::{InjectionSpec, SierpinskiContext};

use crate::{Failure, NormInput};

pub fn read(path: &str) -> Result<String, Failure> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    text.map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn json(path: &str) -> Result<Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Input(format!("{what}: {e}")))
}

pub fn family_value(v: Value) -> Result<Family, Failure> {
    let spec: FamilySpec = from_value(v, "family")?;
    Ok(spec.build()?)
}

pub fn family(path: &str) -> Result<Family, Failure> {
    family_value(json(path)?)
}

pub fn vector_value(v: Value) -> Result<RatVector, Failure> {
    let map: BTreeMap<String, String> = from_value(v, "vector")?;
    Ok(RatVector::from_json_map(&map)?)
}

pub fn vector(path: &str) -> Result<RatVector, Failure> {
    vector_value(json(path)?)
}

pub fn graph(path: &str) -> Result<Graph, Failure> {
    Ok(io::parse_graph(&read(path)?)?)
}

pub fn injection(path: &str) -> Result<SierpinskiContext, Failure> {
    let spec: InjectionSpec = from_value(json(path)?, "injection")?;
    Ok(SierpinskiContext::new(spec.build()?))
}

pub fn emulation(path: &str) -> Result<combinorm::emulations::Emulation, Failure> {
    from_value(json(path)?, path)
}

/// `"3,4,5"` (spaces and braces tolerated).
pub fn id_list(s: &str) -> Result<Vec<u32>, Failure> {
    s.trim_matches(|c| c == '{' || c == '}' || c == '[' || c == ']')
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Failure::Input(format!("{t:?} is not a vertex id")))
        })
        .collect()
}

pub fn id_set(s: &str) -> Result<IdSet, Failure> {
    Ok(IdSet::new(id_list(s)?))
}

/// Ground set from a flag, falling back to the family's universe.
pub fn ground(f: &Family, flag: Option<&str>) -> Result<IdSet, Failure> {
    match flag {
        Some(s) => id_set(s),
        None if f.universe().len() <= 64 => Ok(IdSet::new(f.universe().elements())),
        None => Err(Failure::Input("universe is large; pass --ground".into())),
    }
}

pub struct NormProblem {
    pub family: Family,
    pub ground: IdSet,
    pub vector: RatVector,
}

pub fn norm_problem(i: &NormInput) -> Result<NormProblem, Failure> {
    let mut base = match &i.input {
        Some(p) => json(p)?,
        None => Value::Object(Default::default()),
    };
    let take = |base: &mut Value, key: &str| base.get_mut(key).map(Value::take);
    let family = match (&i.family, take(&mut base, "family")) {
        (Some(p), _) => family(p)?,
        (None, Some(v)) => family_value(v)?,
        (None, None) => return Err(Failure::Input("no family given".into())),
    };
    let vector = match (&i.vector, take(&mut base, "vector")) {
        (Some(p), _) => vector(p)?,
        (None, Some(v)) => vector_value(v)?,
        (None, None) => return Err(Failure::Input("no vector given".into())),
    };
    let ground = match (&i.ground, take(&mut base, "ground")) {
        (Some(s), _) => id_set(s)?,
        (None, Some(v)) => IdSet::new(from_value::<Vec<u32>>(v, "ground")?),
        (None, None) => vector.support(),
    };
    Ok(NormProblem {
        family,
        ground,
        vector,
    })
}

pub fn rat(s: &str) -> Result<combinorm::exact::Rat, Failure> {
    combinorm::exact::parse_rat(s).map_err(Failure::from)
}

pub fn variant(s: &str) -> Result<combinorm::families::Variant, Failure> {
    match s {
        "standard" => Ok(combinorm::families::Variant::Standard),
        "star" => Ok(combinorm::families::Variant::Star),
        _ => Err(Failure::Input(format!("variant {s:?}: expected standard or star"))),
    }
}

pub fn signs(s: &str) -> Result<Vec<i8>, Failure> {
    s.split(',')
        .map(|t| match t.trim() {
            "1" | "+1" | "+" => Ok(1),
            "-1" | "-" => Ok(-1),
            o => Err(Failure::Input(format!("sign {o:?}"))),
        })
        .collect()
}
