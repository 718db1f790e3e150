//! Cubes of groups and the Hopf-type quotient formulas evaluated on them.

mod cube;
mod formula;

pub use cube::{
    augmented_cube, cube_from_ad, cube_limit, exactness_check, induced_ad_check, ExactnessEntry, ExactnessReport,
    GroupCube, NodeComparison,
};
pub use formula::{
    aspherical_formula_check, counterexample_report, hopf_formula, hopf_h2, two_fold_l1, two_fold_vs_one_fold,
    AsphericalFormulaReport, CounterexampleReport, HopfQuotientReport, Provenance, TwoFoldComparison,
};
