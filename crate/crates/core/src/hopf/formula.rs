use std::collections::BTreeMap;

use serde::Serialize;

use super::cube::{cube_from_ad, exactness_check, induced_ad_check, ExactnessReport};
use crate::error::{Error, Result};
use crate::group::{
    commutator_subgroup, intersect, lower_central, normal_closure, product_subgroup, quotient, AbelianInvariants,
    Group, GroupHom, GroupSignature, IndexSet, NormalAd, Subgroup,
};
use crate::homology::bar_homology;
use crate::nilpotent::{free_nilpotent_group, word_element, Letter};
use crate::simplicial::{
    apply_zk_levelwise, cech_complex, homotopy_group, pi0_matches_augmentation, AugmentedSimplicialGroup,
};

/// Where a quotient came from: the construction route and its inputs.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Provenance {
    pub route: String,
    pub inputs: BTreeMap<String, String>,
}

impl Provenance {
    fn new(route: &str, inputs: &[(&str, String)]) -> Self {
        Provenance {
            route: route.into(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }
}

/// A quotient `numerator / denominator` of subgroups of one group.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HopfQuotientReport {
    pub formula: String,
    pub provenance: Provenance,
    pub numerator_order: usize,
    pub numerator_generators: Vec<Vec<u32>>,
    pub denominator_order: usize,
    pub quotient: GroupSignature,
}

impl HopfQuotientReport {
    pub fn order(&self) -> usize {
        self.quotient.order
    }

    /// Invariant factors when the quotient is abelian.
    pub fn invariants(&self) -> Option<&AbelianInvariants> {
        self.quotient.invariants.as_ref()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariants().is_some_and(|inv| inv.factors().len() <= 1)
    }

    /// Same isomorphism invariants as another quotient.
    pub fn agrees_with(&self, other: &HopfQuotientReport) -> bool {
        self.quotient == other.quotient
    }
}

fn quotient_report(formula: &str, provenance: Provenance, numerator: &Subgroup, denominator: &Subgroup) -> Result<HopfQuotientReport> {
    if !denominator.is_subset_of(numerator) {
        return Err(Error::InclusionViolation(format!(
            "{formula}: denominator of order {} is not inside the numerator of order {}",
            denominator.order(),
            numerator.order()
        )));
    }
    let top = numerator.as_group();
    let q = quotient(&top, &denominator.rehome(&top))?;
    Ok(HopfQuotientReport {
        formula: formula.into(),
        provenance,
        numerator_order: numerator.order(),
        numerator_generators: numerator.gens().iter().map(|g| g.as_slice().to_vec()).collect(),
        denominator_order: denominator.order(),
        quotient: GroupSignature::of(&q.group)?,
    })
}

fn describe(s: &Subgroup) -> String {
    format!("order {} in {}", s.order(), s.ambient().label())
}

/// `(R ∩ [K, K]) / [K, R]`, which is `H_2(K/R)` whenever `H_2(K) = 0`.
pub fn hopf_h2(k: &Group, r: &Subgroup) -> Result<HopfQuotientReport> {
    if !r.ambient().same(k) {
        return Err(Error::InvalidParameter("R must be a subgroup of K".into()));
    }
    if !r.is_normal() {
        return Err(Error::NotNormal(describe(r)));
    }
    let whole = Subgroup::whole(k)?;
    let numerator = intersect(r, &commutator_subgroup(&whole, &whole)?)?;
    let denominator = commutator_subgroup(&whole, r)?;
    let provenance = Provenance::new("hopf_h2", &[("K", k.label()), ("R", describe(r))]);
    quotient_report("(R ∩ [K,K]) / [K,R]", provenance, &numerator, &denominator)
}

/// `(∩_i R_i ∩ Γ_k(F)) / D_k(F; R_1, …, R_n)`.
pub fn hopf_formula(ad: &NormalAd, k: usize) -> Result<HopfQuotientReport> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k}; the formula needs k ≥ 2")));
    }
    let full = ad.full_set();
    let numerator = intersect(&ad.meet(full)?, &lower_central(ad.ambient(), k)?)?;
    let denominator = ad.d_k(full, k)?;
    let parts: Vec<String> = ad.parts().iter().map(|r| r.order().to_string()).collect();
    let provenance = Provenance::new(
        "hopf_formula",
        &[("F", ad.ambient().label()), ("part orders", parts.join(", ")), ("k", k.to_string())],
    );
    quotient_report("(∩R_i ∩ Γ_k(F)) / D_k(F; R_1..R_n)", provenance, &numerator, &denominator)
}

/// `(R_1 Γ_k(F) ∩ R_2 Γ_k(F)) / ((R_1 ∩ R_2) Γ_k(F))`.
pub fn two_fold_l1(f: &Group, r1: &Subgroup, r2: &Subgroup, k: usize) -> Result<HopfQuotientReport> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k}; the formula needs k ≥ 2")));
    }
    for r in [r1, r2] {
        if !r.ambient().same(f) || !r.is_normal() {
            return Err(Error::NotNormal(describe(r)));
        }
    }
    let gamma = lower_central(f, k)?;
    let numerator = intersect(&product_subgroup(r1, &gamma)?, &product_subgroup(r2, &gamma)?)?;
    let denominator = product_subgroup(&intersect(r1, r2)?, &gamma)?;
    let provenance = Provenance::new(
        "two_fold_l1",
        &[("F", f.label()), ("R1", describe(r1)), ("R2", describe(r2)), ("k", k.to_string())],
    );
    quotient_report("(R1 Γ_k ∩ R2 Γ_k) / ((R1 ∩ R2) Γ_k)", provenance, &numerator, &denominator)
}

/// Both sides of the formula for `π_n Z_k` of an augmented simplicial group.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AsphericalFormulaReport {
    pub n: usize,
    pub k: usize,
    /// `π_0` is the augmentation target and `π_i = 1` for `1 ≤ i < depth`.
    pub aspherical: bool,
    /// `π_n` of the levelwise `Z_k` quotient.
    pub homotopy: GroupSignature,
    /// The formula at level `n - 1`, on the ad of face kernels (the
    /// augmentation kernel when `n = 1`).
    pub formula: HopfQuotientReport,
}

impl AsphericalFormulaReport {
    pub fn equal(&self) -> bool {
        self.homotopy == self.formula.quotient
    }
}

fn is_aspherical(aug: &AugmentedSimplicialGroup) -> Result<bool> {
    if !pi0_matches_augmentation(aug)? {
        return Ok(false);
    }
    for i in 1..aug.complex.depth() {
        if homotopy_group(&aug.complex, i)?.group.order()? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Computes `π_n Z_k(F_*)` directly and as
/// `(∩_i Ker d_i ∩ Γ_k(F_{n-1})) / D_k(F_{n-1}; Ker d_0, …, Ker d_{n-1})`.
pub fn aspherical_formula_check(aug: &AugmentedSimplicialGroup, n: usize, k: usize) -> Result<AsphericalFormulaReport> {
    if n == 0 || n + 1 > aug.complex.depth() {
        return Err(Error::InvalidParameter(format!("π_{n} needs 1 ≤ n and depth ≥ {}", n + 1)));
    }
    let aspherical = is_aspherical(aug)?;
    let zk = apply_zk_levelwise(&aug.complex, k)?;
    let homotopy = GroupSignature::of(&homotopy_group(&zk.group, n)?.group)?;
    let (ad, _) = induced_ad_check(aug, n)?;
    let mut formula = hopf_formula(&ad, k)?;
    formula.provenance.route = "hopf_formula on face kernels".into();
    formula.provenance.inputs.insert("complex".into(), aug.complex.label().to_string());
    formula.provenance.inputs.insert("level".into(), (n - 1).to_string());
    Ok(AsphericalFormulaReport { n, k, aspherical, homotopy, formula })
}

/// The two-fold formula on `(F_1; Ker d_0, Ker d_1)` of the Čech complex of
/// `f` beside the one-fold formula on `(K; Ker f)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TwoFoldComparison {
    pub k: usize,
    pub two_fold: HopfQuotientReport,
    pub one_fold: HopfQuotientReport,
}

impl TwoFoldComparison {
    pub fn equal(&self) -> bool {
        self.two_fold.agrees_with(&self.one_fold)
    }
}

pub fn two_fold_vs_one_fold(f: &GroupHom, k: usize) -> Result<TwoFoldComparison> {
    let aug = cech_complex(f, 2)?;
    let one_fold = aspherical_formula_check(&aug, 1, k)?.formula;
    let level = aug.complex.level(1);
    let two_fold = two_fold_l1(level, &aug.complex.face_kernel(1, 0)?, &aug.complex.face_kernel(1, 1)?, k)?;
    Ok(TwoFoldComparison { k, two_fold, one_fold })
}

/// The three-relator quotient in the class-3, exponent-`m` free nilpotent
/// group on two generators.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub m: u64,
    pub group_order: usize,
    pub relator_orders: Vec<usize>,
    pub quotient: HopfQuotientReport,
    pub exactness: ExactnessReport,
    /// `H_3` of `F / R_1 R_2 R_3`, computed by the bar oracle.
    pub corner_h3: AbelianInvariants,
}

impl CounterexampleReport {
    /// A nonzero cyclic quotient of order `m` beside a vanishing `H_3`, with
    /// the cube failing exactness at the empty set.
    pub fn reproduces(&self) -> bool {
        self.quotient.order() as u64 == self.m
            && self.quotient.is_cyclic()
            && self.corner_h3.is_trivial()
            && self.exactness.entry(&[]).is_some_and(|e| !e.surjective)
    }
}

/// `R_1, R_2, R_3` are the normal closures of `x_1`, `x_2` and `x_1 x_2⁻¹`.
pub fn counterexample_report(m: u64) -> Result<CounterexampleReport> {
    let f = free_nilpotent_group(2, 3, m)?;
    let words = [
        vec![Letter::new(1, false)],
        vec![Letter::new(2, false)],
        vec![Letter::new(1, false), Letter::new(2, true)],
    ];
    let parts = words
        .iter()
        .map(|w| normal_closure(&f, &[word_element(&f, w)]))
        .collect::<Result<Vec<_>>>()?;
    let relator_orders = parts.iter().map(Subgroup::order).collect();
    let ad = NormalAd::new(&f, parts)?;
    let mut quotient = hopf_formula(&ad, 2)?;
    quotient.provenance.route = "hopf_formula on the three-relator ad".into();
    quotient.provenance.inputs.insert("relators".into(), "x1, x2, x1 x2'".into());
    let exactness = exactness_check(&cube_from_ad(&ad)?)?;
    let corner = self::quotient(&f, &ad.join(IndexSet::full(3))?)?;
    let corner_h3 = bar_homology(&corner.group, 3)?;
    Ok(CounterexampleReport { m, group_order: f.order()?, relator_orders, quotient, exactness, corner_h3 })
}
