//! Crossed modules, crossed `n`-cubes with axiom checking, inclusion cubes
//! of normal ads, the `B_k` quotient cubes, abelianization, and chain
//! complexes of groups.

mod axioms;
mod complex;
mod cube;
mod module;

pub use axioms::{
    verify_cube_axioms, verify_cube_axioms_with, AxiomOutcome, AxiomReport, AXIOM_ACTION_H, AXIOM_HALL_WITT,
    AXIOM_H_ABSORBS_MU, AXIOM_H_ANTISYMMETRIC, AXIOM_H_COMMUTATOR, AXIOM_H_LEFT, AXIOM_H_RIGHT, AXIOM_H_UNIT,
    AXIOM_MU_COMMUTE, AXIOM_MU_H, AXIOM_MU_OUTSIDE, DEFAULT_AXIOM_SEED,
};
pub use complex::NonAbelianComplex;
pub use cube::{ab_cube, ab_cube_denominators, b_k_cube, crossed_square, inclusion_cube, CrossedCube, Pairing, SquareData};
pub use module::{
    ab_crossed_module, conjugation_action, inclusion_crossed_module, make_crossed_module, trivial_action, CrossedModule,
};

/// Element-tuple budget for exhaustive checks.
pub const PAIR_BUDGET: usize = 1_000_000;
