//! Hereditary families of finite sets and the operations on them.

mod family;
mod idset;
pub mod json;
mod ordinal;
mod poset;
pub mod schreier;
mod sign;

pub use family::{Family, Kind, Predicate, Universe};
pub use idset::IdSet;
pub use ordinal::{Ladder, LadderFn, Ordinal};
pub use poset::Poset;
pub use schreier::Variant;
pub use sign::{sign_vectors, SignVector};
