//! Exact rational arithmetic, linear algebra, linear programming and
//! polytope conversions.

pub mod matrix;
pub mod polytope;
pub mod rat;
pub mod simplex;
pub mod vector;

pub use matrix::RatMatrix;
pub use polytope::{in_hull, Halfspace, Polytope};
pub use rat::{half, int, parse_rat, rat, Rat};
pub use vector::RatVector;
