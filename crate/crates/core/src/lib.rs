pub mod error;
pub mod exact;
pub mod families;
pub mod graphs;
pub mod duality;
pub mod emulations;
pub mod extremals;
pub mod norms;
pub mod orlicz;
pub mod sierpinski;

pub use error::{Error, Result};
