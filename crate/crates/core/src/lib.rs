pub mod algebra;
pub mod beadrings;
pub mod contraction;
pub mod eqlink;
pub mod graphs;
pub mod hair;
pub mod laurent;
pub mod linalg;
