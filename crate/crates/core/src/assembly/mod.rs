//! Building balls back up: canonical labels, the inverse moves, trees of
//! nuclei and their counts, the bound series, and small enumerations.

mod canon;
mod catalog;
mod cone;
mod enumerate;
mod inverse;
mod series;
mod tree;

pub use canon::{canonical_label, rooted_count, rooted_key, unrooted_key, Canonical, CanonicalKey};
pub use catalog::{parse_rational, CatalogEntry, NucleusCatalog};
pub use cone::cone_ball;
pub use enumerate::{enumerate_balls, Enumeration, NucleusClass, MAX_ENUMERATION_SIZE};
pub use inverse::{add_tetra, collapse_conditions, collapse_edge, identify_faces};
pub use series::{bound_series, tree_table, BoundSeries, TreeTable, MAX_SERIES_ORDER};
pub use tree::{
    brute_force_trees, check_tree_of_nuclei, count_trees, glue_tree, path_code, ternary_recurrence, tree_code,
    TreeCode, TreeCounts, MAX_TREE_SIZE,
};
