use crate::error::{Error, Result};
use crate::group::{quotient, Elem, Group, GroupHom, QuotientMap, Subgroup};

/// A chain complex of groups `C_top → ⋯ → C_1 → C_0` with `d_{i-1} d_i`
/// trivial and each `Im d_{i+1}` normal in `Ker d_i`, both checked at
/// construction.
#[derive(Clone)]
pub struct NonAbelianComplex {
    groups: Vec<Group>,
    /// `diffs[i - 1]` is `d_i: C_i → C_{i-1}`.
    diffs: Vec<GroupHom>,
    kernels: Vec<Subgroup>,
    images: Vec<Subgroup>,
}

impl std::fmt::Debug for NonAbelianComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NonAbelianComplex({:?})", self.groups)
    }
}

impl NonAbelianComplex {
    /// `groups[i]` is `C_i`; `diffs[i - 1]` runs `C_i → C_{i-1}`.
    pub fn new(groups: Vec<Group>, diffs: Vec<GroupHom>) -> Result<Self> {
        if groups.is_empty() || diffs.len() + 1 != groups.len() {
            return Err(Error::InvalidParameter(format!(
                "{} groups need {} differentials, got {}",
                groups.len(),
                groups.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if !d.source().same(&groups[i + 1]) || !d.target().same(&groups[i]) {
                return Err(Error::InvalidParameter(format!("d_{} has the wrong endpoints", i + 1)));
            }
        }
        for i in 1..diffs.len() {
            let (lower, upper) = (&diffs[i - 1], &diffs[i]);
            for g in groups[i + 1].generators() {
                let y = lower.apply(&upper.apply(&g));
                if !groups[i - 1].is_identity(&y) {
                    return Err(Error::IdentityViolation {
                        identity: format!("d_{} d_{} = 1", i, i + 1),
                        witness: format!("{g:?} ↦ {y:?}"),
                    });
                }
            }
        }
        let mut kernels = Vec::with_capacity(groups.len());
        kernels.push(Subgroup::whole(&groups[0])?);
        for d in &diffs {
            kernels.push(d.kernel()?);
        }
        let mut images = Vec::with_capacity(groups.len());
        for d in &diffs {
            images.push(d.image()?);
        }
        images.push(Subgroup::trivial(&groups[groups.len() - 1]));
        for i in 0..groups.len() {
            let (ker, im) = (&kernels[i], &images[i]);
            if !im.is_subset_of(ker) {
                return Err(Error::InclusionViolation(format!("Im d_{} ⊄ Ker d_{i}", i + 1)));
            }
            if !im.is_normalized_by(ker.gens()) {
                return Err(Error::NormalityViolation(format!("Im d_{} is not normal in Ker d_{i}", i + 1)));
            }
        }
        Ok(NonAbelianComplex { groups, diffs, kernels, images })
    }

    /// Highest degree present.
    pub fn top(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn group(&self, i: usize) -> &Group {
        &self.groups[i]
    }

    /// `d_i: C_i → C_{i-1}` for `i ≥ 1`.
    pub fn differential(&self, i: usize) -> &GroupHom {
        &self.diffs[i - 1]
    }

    pub fn cycles(&self, i: usize) -> &Subgroup {
        &self.kernels[i]
    }

    /// `Im d_{i+1}`; trivial in the top degree.
    pub fn boundaries(&self, i: usize) -> &Subgroup {
        &self.images[i]
    }

    /// `H_i = Ker d_i / Im d_{i+1}`, with `Ker d_0 = C_0`. In the top degree
    /// the incoming boundaries are taken to be trivial.
    pub fn homology(&self, i: usize) -> Result<QuotientMap> {
        let ker = &self.kernels[i];
        let kg = ker.as_group();
        quotient(&kg, &self.images[i].rehome(&kg))
    }

    /// Applies `d_i` to one element.
    pub fn apply(&self, i: usize, x: &Elem) -> Elem {
        self.diffs[i - 1].apply(x)
    }
}
