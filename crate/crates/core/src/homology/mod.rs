//! Exact integer linear algebra and the integral bar complex, used as an
//! independent check on everything computed through subgroup arithmetic.

mod bar;
mod snf;

pub use bar::{bar_h1, bar_h2, bar_homology, BAR_CELL_LIMIT, BAR_ORDER_LIMIT};
pub use snf::{smith_normal_form, sparse_invariant_factors, IntMatrix, SmithForm, SparseRow};
