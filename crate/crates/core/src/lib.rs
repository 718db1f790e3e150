//! Finite-group machinery for homology of groups through simplicial
//! resolutions, crossed structures and Hopf-type formulas.

pub mod crossed;
pub mod error;
pub mod group;
pub mod homology;
pub mod hopf;
pub mod instances;
pub mod nilpotent;
pub mod simplicial;

pub use error::{Error, Result};
pub use group::{Elem, Group, GroupHom, Subgroup};
