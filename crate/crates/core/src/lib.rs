//! Decomposition of triangulated 3-balls into trees of nuclei, and the
//! inverse direction: reassembly, rooted labelings and counting.

pub mod assembly;
pub mod complex;
pub mod error;
pub mod io;
pub mod moves;
pub mod planar;
pub mod reducer;

pub use complex::{FVector, Triangulation};
pub use error::Error;
