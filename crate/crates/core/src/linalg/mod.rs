//! Exact integer linear algebra: sparse matrices, Smith normal form and
//! homology with explicit cycle representatives.

pub mod elimination;
pub mod homology;
pub mod snf;
pub mod sparse;

pub use elimination::{invariant_factors, rank};
pub use homology::{
    homology, homology_auto, induced_map_on_homology, HomologyContext, HomologyError,
    HomologySummary,
};
pub use snf::{smith_normal_form, SnfResult};
pub use sparse::{SparseMatrix, SparseVector};
