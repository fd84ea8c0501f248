pub mod canon;
pub mod corpus;
mod graph;
pub mod io;
mod perfect;

pub use graph::Graph;
pub use perfect::{
    comparability, find_odd_antihole, find_odd_antihole_with_limit, find_odd_hole,
    find_odd_hole_with_limit, is_perfect, perfection, perfection_with_limit, Method, Obstruction,
    Verdict, DEFAULT_SIZE_LIMIT,
};
