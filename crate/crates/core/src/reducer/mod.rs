//! Reduction of a ball to a tree of nuclei: promote and remove internal
//! nodes depth by depth, then open and cut until only nuclei remain.

mod classify;
mod eliminate;
mod nuclei;
mod sweep;

pub use classify::{classify_depth1, classify_node, NodeClass};
pub use eliminate::{
    eliminate_internal_nodes, DepthRound, Elimination, GrowthLedger, ReduceConfig, DEFAULT_GROWTH_CONSTANT,
};
pub use nuclei::{decompose, is_nucleus, split_into_nuclei, Decomposition, Gluing, Nucleus, NucleusSplit};
pub use sweep::{sweep_c1_to_c0, sweep_c2_to_c1, Piece, PieceTree, SplitStep, SweepTrace};
