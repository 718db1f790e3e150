//! Truncated (pseudo)simplicial groups: Čech complexes, nerves of crossed
//! modules and squares, Moore complexes and homotopy groups, mapping
//! cones, and explicit simplicial homotopies.

mod cech;
mod cone;
mod identities;
mod moore;
mod multinerve;
mod nerve;

pub use cech::{cech_complex, cech_homotopy, nfold_cech_diagonal, HomotopyCheck, SimplicialHomotopy};
pub use cone::{
    kappa_check, square_homology, les_check, mapping_cone, multinerve_vs_cone, square_as_morphism, square_cone,
    ComplexMorphism, DegreeComparison, KappaReport, SquareHomology, LesJoint, LesReport, ConeHomotopyDegree, ConeHomotopyReport,
};
pub use identities::{verify_simplicial_identities, IdentityOutcome, IdentityReport};
pub use moore::{
    apply_zk_levelwise, homotopy_group, last_face_meets, moore_complex, pi0_matches_augmentation, face_kernel_simplicity,
    LevelwiseQuotient, SimplicityOutcome,
};
pub use multinerve::{
    multinerve_diagonal, gamma_vs_coset_kernel, square_parts, square_star_input, GammaKernelOutcome, SquareParts,
};
pub use nerve::{
    constant, nerve_vs_cech, m_star, nerve, abelianized_nerve_check, LevelIsoOutcome, LevelIsoReport, StarInput,
};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, Group, GroupHom, Subgroup};

/// Depth used when none is given: levels 0..3, enough for `π_0..π_2`.
pub const DEFAULT_DEPTH: usize = 3;

/// `(n, i, x)`: a face `G_n → G_{n-1}` or a degeneracy `G_n → G_{n+1}`.
pub type LevelMap = Arc<dyn Fn(usize, usize, &Elem) -> Elem + Send + Sync>;

/// Members of the Moore subgroup `∩_{i<n} Ker d_i` of level `n`, for
/// levels too large to enumerate.
pub type MooreSearch = Arc<dyn Fn(usize) -> Result<Vec<Elem>> + Send + Sync>;

/// Levels `G_0..G_N` of a (pseudo)simplicial group with its faces and
/// degeneracies. Level groups enumerate lazily, so building one is cheap.
#[derive(Clone)]
pub struct SimplicialGroup {
    label: String,
    levels: Vec<Group>,
    face: LevelMap,
    degeneracy: LevelMap,
    pseudo: bool,
    moore_search: Option<MooreSearch>,
}

impl fmt::Debug for SimplicialGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialGroup({}, depth {})", self.label, self.depth())
    }
}

impl SimplicialGroup {
    pub fn new(label: impl Into<String>, levels: Vec<Group>, face: LevelMap, degeneracy: LevelMap, pseudo: bool) -> Self {
        assert!(!levels.is_empty(), "a simplicial group needs level 0");
        SimplicialGroup { label: label.into(), levels, face, degeneracy, pseudo, moore_search: None }
    }

    pub(crate) fn with_moore_search(mut self, search: MooreSearch) -> Self {
        self.moore_search = Some(search);
        self
    }

    /// The same levels with the faces replaced, e.g. to build corrupted
    /// instances for the identity checker.
    pub fn with_faces(&self, face: LevelMap) -> Self {
        SimplicialGroup { face, moore_search: None, ..self.clone() }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Group {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Group] {
        &self.levels
    }

    /// Whether `s_i s_j = s_{j+1} s_i` is allowed to fail.
    pub fn is_pseudo(&self) -> bool {
        self.pseudo
    }

    pub fn face(&self, n: usize, i: usize, x: &Elem) -> Elem {
        debug_assert!(n >= 1 && i <= n);
        (self.face)(n, i, x)
    }

    pub fn degeneracy(&self, n: usize, i: usize, x: &Elem) -> Elem {
        debug_assert!(n < self.depth() && i <= n);
        (self.degeneracy)(n, i, x)
    }

    pub fn face_map(&self) -> &LevelMap {
        &self.face
    }

    pub fn degeneracy_map(&self) -> &LevelMap {
        &self.degeneracy
    }

    pub fn face_hom(&self, n: usize, i: usize) -> GroupHom {
        let f = self.face.clone();
        GroupHom::from_fn(&self.levels[n], &self.levels[n - 1], move |x| f(n, i, x))
    }

    pub fn degeneracy_hom(&self, n: usize, i: usize) -> GroupHom {
        let s = self.degeneracy.clone();
        GroupHom::from_fn(&self.levels[n], &self.levels[n + 1], move |x| s(n, i, x))
    }

    /// `NG_n = ∩_{i<n} Ker d_i` (all of `G_0` at level 0).
    pub fn moore_subgroup(&self, n: usize) -> Result<Subgroup> {
        if n == 0 {
            return Subgroup::whole(&self.levels[0]);
        }
        if let Some(search) = &self.moore_search {
            return Subgroup::from_members(&self.levels[n], search(n)?);
        }
        let els = self.levels[n].elements()?;
        let members: Vec<Elem> = els
            .list
            .iter()
            .filter(|x| (0..n).all(|i| self.levels[n - 1].is_identity(&self.face(n, i, x))))
            .cloned()
            .collect();
        Subgroup::from_members(&self.levels[n], members)
    }

    /// Kernel of a single face, by enumeration.
    pub fn face_kernel(&self, n: usize, i: usize) -> Result<Subgroup> {
        self.face_hom(n, i).kernel()
    }

    /// Truncates to levels `0..=depth`.
    pub fn truncate(&self, depth: usize) -> Self {
        let mut t = self.clone();
        t.levels.truncate(depth + 1);
        t
    }
}

/// A simplicial group with an augmentation `d^0_0: G_0 → G`.
#[derive(Clone, Debug)]
pub struct AugmentedSimplicialGroup {
    pub complex: SimplicialGroup,
    pub augmentation: GroupHom,
}

impl AugmentedSimplicialGroup {
    /// Checks that the augmentation starts at level 0 and equalizes the
    /// two level-1 faces.
    pub fn new(complex: SimplicialGroup, augmentation: GroupHom) -> Result<Self> {
        if !augmentation.source().same(complex.level(0)) {
            return Err(Error::InvalidParameter("augmentation must start at level 0".into()));
        }
        if complex.depth() >= 1 {
            for x in complex.level(1).generators() {
                let a = augmentation.apply(&complex.face(1, 0, &x));
                let b = augmentation.apply(&complex.face(1, 1, &x));
                if a != b {
                    return Err(Error::IdentityViolation {
                        identity: "d^0_0 d^1_0 = d^0_0 d^1_1".into(),
                        witness: format!("{x:?}"),
                    });
                }
            }
        }
        Ok(AugmentedSimplicialGroup { complex, augmentation })
    }

    pub fn base(&self) -> &Group {
        self.augmentation.target()
    }

    /// The `j`-th face out of level `n`, where the single face of level 0
    /// is the augmentation.
    pub fn face_hom(&self, n: usize, j: usize) -> GroupHom {
        if n == 0 {
            self.augmentation.clone()
        } else {
            self.complex.face_hom(n, j)
        }
    }
}
