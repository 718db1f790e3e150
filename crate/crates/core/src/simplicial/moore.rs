use std::sync::Arc;

use serde::Serialize;

use super::{AugmentedSimplicialGroup, LevelMap, SimplicialGroup};
use crate::crossed::NonAbelianComplex;
use crate::error::{Error, Result};
use crate::group::{is_simple_ad, z_k, GroupHom, IndexSet, NormalAd, QuotientMap, Subgroup};

/// The Moore complex `NG_n = ∩_{i<n} Ker d_i` with differential induced
/// by the last face, over every level present. Normality of each image in
/// the next kernel is checked, never assumed.
pub fn moore_complex(s: &SimplicialGroup) -> Result<NonAbelianComplex> {
    let subs: Vec<Subgroup> = (0..=s.depth()).map(|n| s.moore_subgroup(n)).collect::<Result<_>>()?;
    let groups: Vec<_> = subs.iter().map(Subgroup::as_group).collect();
    let diffs = (1..groups.len())
        .map(|n| {
            let f = s.face_map().clone();
            GroupHom::from_fn(&groups[n], &groups[n - 1], move |x| f(n, n, x))
        })
        .collect();
    NonAbelianComplex::new(groups, diffs)
}

/// `π_n = Ker ∂_n / Im ∂_{n+1}` of the Moore complex; needs level `n + 1`.
pub fn homotopy_group(s: &SimplicialGroup, n: usize) -> Result<QuotientMap> {
    if n + 1 > s.depth() {
        return Err(Error::InvalidParameter(format!(
            "π_{n} needs level {} but the depth is {}",
            n + 1,
            s.depth()
        )));
    }
    moore_complex(&s.truncate(n + 1))?.homology(n)
}

/// Whether the augmentation induces `π_0 ≅ G`: it must be onto and its
/// kernel must be exactly `d_1(Ker d_0)`.
pub fn pi0_matches_augmentation(aug: &AugmentedSimplicialGroup) -> Result<bool> {
    let s = &aug.complex;
    if !aug.augmentation.is_surjective()? {
        return Ok(false);
    }
    let kernel = aug.augmentation.kernel()?;
    if s.depth() == 0 {
        return Ok(kernel.is_trivial());
    }
    let boundaries = s.face_hom(1, 1).image_of(&s.face_kernel(1, 0)?)?;
    Ok(boundaries.same_set(&kernel))
}

/// A simplicial group with every level replaced by `G_n / Γ_k(G_n)`, and
/// the projections used to build it.
#[derive(Clone, Debug)]
pub struct LevelwiseQuotient {
    pub group: SimplicialGroup,
    pub maps: Vec<QuotientMap>,
}

/// Applies `Z_k` dimension-wise. Every face and degeneracy is checked to
/// carry `Γ_k` into `Γ_k`, so the induced maps are well defined.
pub fn apply_zk_levelwise(s: &SimplicialGroup, k: usize) -> Result<LevelwiseQuotient> {
    let maps: Vec<QuotientMap> = s.levels().iter().map(|g| z_k(g, k)).collect::<Result<_>>()?;
    let depth = s.depth();
    for n in 0..=depth {
        for gamma in maps[n].kernel.gens() {
            for i in 0..=n {
                if n >= 1 && !maps[n - 1].kernel.contains(&s.face(n, i, gamma)) {
                    return Err(Error::IdentityViolation {
                        identity: format!("d^{n}_{i}(Γ_{k}) ⊆ Γ_{k}"),
                        witness: format!("{gamma:?}"),
                    });
                }
                if n < depth && !maps[n + 1].kernel.contains(&s.degeneracy(n, i, gamma)) {
                    return Err(Error::IdentityViolation {
                        identity: format!("s^{n}_{i}(Γ_{k}) ⊆ Γ_{k}"),
                        witness: format!("{gamma:?}"),
                    });
                }
            }
        }
    }
    let face: LevelMap = {
        let (s, maps) = (s.clone(), maps.clone());
        Arc::new(move |n, i, x| maps[n - 1].rep(&s.face(n, i, x)))
    };
    let degeneracy: LevelMap = {
        let (s, maps) = (s.clone(), maps.clone());
        Arc::new(move |n, i, x| maps[n + 1].rep(&s.degeneracy(n, i, x)))
    };
    let levels = maps.iter().map(|q| q.group.clone()).collect();
    let group = SimplicialGroup::new(format!("Z_{k} {}", s.label()), levels, face, degeneracy, s.is_pseudo());
    Ok(LevelwiseQuotient { group, maps })
}

/// Simplicity of `(G_n; Ker d_0, …, Ker d_{j-1})` relative to its last
/// part, witnessed by the image of `s_{j-1}: G_{n-1} → G_n`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SimplicityOutcome {
    pub level: usize,
    pub parts: usize,
    pub simple: bool,
    pub failed_at: Option<Vec<usize>>,
}

pub fn face_kernel_simplicity(s: &SimplicialGroup) -> Result<Vec<SimplicityOutcome>> {
    let mut out = Vec::new();
    for n in 1..=s.depth() {
        let kernels: Vec<Subgroup> = (0..n).map(|i| s.face_kernel(n, i)).collect::<Result<_>>()?;
        for j in 1..=n {
            let ad = NormalAd::new(s.level(n), kernels[..j].to_vec())?;
            let witness = s.degeneracy_hom(n - 1, j - 1).image()?;
            let verdict = is_simple_ad(&ad, j, Some(&witness), 0)?;
            out.push(SimplicityOutcome {
                level: n,
                parts: j,
                simple: verdict.simple,
                failed_at: verdict.failed_at.map(IndexSet::indices),
            });
        }
    }
    Ok(out)
}

/// `d_n(∩_{i∈A} Ker d^n_{i-1}) = ∩_{i∈A} Ker d^{n-1}_{i-1}` for every
/// proper `A ⊂ {1..n}`. Returns `(level, A, holds)` triples.
pub fn last_face_meets(s: &SimplicialGroup) -> Result<Vec<(usize, Vec<usize>, bool)>> {
    let mut out = Vec::new();
    for n in 1..=s.depth() {
        let upper = NormalAd::new(s.level(n), (0..n).map(|i| s.face_kernel(n, i)).collect::<Result<_>>()?)?;
        let lower = if n >= 2 {
            Some(NormalAd::new(s.level(n - 1), (0..n).map(|i| s.face_kernel(n - 1, i)).collect::<Result<_>>()?)?)
        } else {
            None
        };
        let last = s.face_hom(n, n);
        for a in IndexSet::full(n).subsets() {
            if a == IndexSet::full(n) {
                continue;
            }
            let lhs = last.image_of(&upper.meet(a)?)?;
            let rhs = match &lower {
                Some(ad) => ad.meet(a)?,
                None => Subgroup::whole(s.level(0))?,
            };
            out.push((n, a.indices(), lhs.same_set(&rhs)));
        }
    }
    Ok(out)
}
