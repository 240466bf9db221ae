//! Tropicalizations of r-spin classes as weighted fans in the tropical moduli
//! space of `n`-marked rational curves.

pub mod balance;
pub mod cycle;
pub mod document;
pub mod fan_vector;
pub mod tree;
pub mod wdvv;

pub use balance::{
    boomerang, check_balancing_face, check_balancing_face_by_vertices, check_balancing_face_linear,
    check_balancing_origin, faces, BalanceReport, VertexBalance,
};
pub use cycle::{local_vector, split_weight, tree_weight, TropicalCycle};
pub use document::{export_cycle, import_cycle};
pub use fan_vector::FanVector;
pub use tree::{SplitTree, Vertex};
pub use wdvv::{pushforward, wdvv_check, WdvvOutcome};
