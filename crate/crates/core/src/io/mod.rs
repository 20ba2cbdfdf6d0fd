//! File formats, the embedded corpus and generators, and JSON reports.

pub mod corpus;
pub mod report;
mod tet;

pub use tet::{format_triangulation, parse_triangulation};
