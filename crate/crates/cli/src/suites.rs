//! Verification suites over the built-in instance set. Each suite yields
//! one row per checked instance, with a verdict.

use std::time::Instant;

use clap::ValueEnum;
use hopf_core::crossed::{ab_cube, b_k_cube, inclusion_crossed_module, inclusion_cube, verify_cube_axioms, AxiomReport};
use hopf_core::group::catalog::{dihedral, quaternion, symmetric, trivial};
use hopf_core::group::{lower_central, lower_central_by_products, quotient, GroupSignature, IndexSet};
use hopf_core::homology::{bar_h2, bar_homology};
use hopf_core::hopf::{aspherical_formula_check, counterexample_report, hopf_h2, two_fold_vs_one_fold};
use hopf_core::instances;
use hopf_core::nilpotent::{invert_word, magnus_equal, witt_number, Collector, HallBasis, Letter};
use hopf_core::simplicial::{
    abelianized_nerve_check, apply_zk_levelwise, cech_complex, cech_homotopy, face_kernel_simplicity,
    gamma_vs_coset_kernel, kappa_check, last_face_meets, les_check, multinerve_diagonal, multinerve_vs_cone,
    nerve, nerve_vs_cech, square_as_morphism, square_cone, square_homology, square_star_input,
    verify_simplicial_identities, LevelIsoReport, SimplicialGroup,
};
use hopf_core::{GroupHom, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Row, Section, SectionError};

/// Seed for the sampled suites; reports are byte-stable for a fixed seed.
pub const DEFAULT_SEED: u64 = 20_240_611;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Simplicial identities, face-kernel simplicity, last-face meets.
    Identities,
    /// Crossed-module and crossed-square axioms, including B_k and Ab.
    CrossedAxioms,
    /// Γ_k two ways, and D_k(F; ∅) = Γ_k.
    LowerCentral,
    /// Nerve of the kernel against the Čech complex, levelwise.
    NerveCech,
    /// Abelianized nerve against the nerve of the abelianization.
    NerveAbelianization,
    /// The explicit homotopy between two lifts through Čech complexes.
    CechHomotopy,
    /// Γ_k of multinerve levels against the kernel of the coset map.
    GammaKernel,
    /// The comparison map from Moore homology to the square cone.
    Kappa,
    /// Homotopy of the multinerve diagonal against the square cone, and
    /// the long exact sequence of the cone.
    ConeHomotopy,
    /// Classical Hopf formula against the bar-complex oracle.
    ClassicalHopf,
    /// π_n of Z_k applied to Čech complexes against the quotient formula.
    AsphericalFormula,
    /// The two-fold formula against the one-fold route.
    TwoFold,
    /// The three-relator quotient in truncated free nilpotent groups.
    Counterexample,
    /// Collection against Magnus expansion, Hall layers against Witt numbers.
    Collection,
    All,
}

impl Suite {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    /// The suites `all` expands to, in run order.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::value_variants().iter().copied().filter(|&s| s != Suite::All).collect(),
            s => vec![s],
        }
    }

    fn rows(self, seed: u64) -> Result<Vec<Row>> {
        match self {
            Suite::Identities => identities(),
            Suite::CrossedAxioms => crossed_axioms(),
            Suite::LowerCentral => lower_central_suite(),
            Suite::NerveCech => nerve_cech(),
            Suite::NerveAbelianization => nerve_abelianization(),
            Suite::CechHomotopy => cech_homotopy_suite(),
            Suite::GammaKernel => gamma_kernel(),
            Suite::Kappa => kappa(),
            Suite::ConeHomotopy => cone_homotopy(),
            Suite::ClassicalHopf => classical_hopf(),
            Suite::AsphericalFormula => aspherical_formula(),
            Suite::TwoFold => two_fold(),
            Suite::Counterexample => counterexample(),
            Suite::Collection => collection(seed),
            Suite::All => unreachable!("expanded before running"),
        }
    }
}

/// Runs a suite (or all of them), one section each.
pub fn run_suite(suite: Suite, seed: u64, timings: bool) -> Vec<Section> {
    suite
        .expand()
        .into_iter()
        .map(|s| {
            let start = Instant::now();
            let mut section = Section::new(format!("verify {}", s.name()));
            match s.rows(seed) {
                Ok(rows) => section.rows = rows,
                Err(e) => section.error = Some(SectionError::from_core(&s.name(), &e)),
            }
            if timings {
                section.wall_ms = Some(start.elapsed().as_millis() as u64);
            }
            section
        })
        .collect()
}

fn identity_row(item: String, s: &SimplicialGroup) -> Result<Row> {
    let report = verify_simplicial_identities(s)?;
    let checked: u64 = report.outcomes.iter().map(|o| o.checked).sum();
    Ok(Row::new(item)
        .value("check", "simplicial identities")
        .value("cases", checked)
        .value("exhaustive", report.exhaustive())
        .value("exempt", report.exempt().count())
        .verdict(report.passed()))
}

fn identities() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let mut complexes: Vec<(String, SimplicialGroup)> = Vec::new();
    for (name, f) in instances::surjections()? {
        complexes.push((format!("Čech({name})"), cech_complex(&f, 3)?.complex));
    }
    for (name, ad) in instances::small_ads()? {
        let e = nerve(&inclusion_crossed_module(ad.part(1))?, 3)?;
        complexes.push((format!("nerve of R_1 in {name}"), e.clone()));
        if name == "(S3; A3)" {
            complexes.push((format!("Z_2 of nerve of R_1 in {name}"), apply_zk_levelwise(&e, 2)?.group));
        }
    }
    for (name, ad) in instances::square_ads()? {
        complexes.push((format!("multinerve diagonal of {name}"), multinerve_diagonal(&inclusion_cube(&ad)?, 2)?));
    }
    for (name, s) in &complexes {
        rows.push(identity_row(name.clone(), s)?);
    }
    let simple_on = |name: &str| name.starts_with("Čech(Q8") || name.starts_with("nerve of R_1 in (S3") || name.starts_with("multinerve diagonal of (Q8");
    for (name, s) in complexes.iter().filter(|(n, _)| simple_on(n)) {
        let outcomes = face_kernel_simplicity(s)?;
        let failed: Vec<String> = outcomes.iter().filter(|o| !o.simple).map(|o| format!("level {} parts {}", o.level, o.parts)).collect();
        rows.push(
            Row::new(name.clone())
                .value("check", "face-kernel ads simple, degeneracy witness")
                .value("cases", outcomes.len())
                .value("failed at", failed.join("; "))
                .verdict(failed.is_empty()),
        );
    }
    for (name, s) in complexes.iter().filter(|(n, _)| n.starts_with("Čech")) {
        let meets = last_face_meets(s)?;
        let failed = meets.iter().filter(|(_, _, holds)| !holds).count();
        rows.push(
            Row::new(name.clone())
                .value("check", "last face carries kernel meets onto kernel meets")
                .value("cases", meets.len())
                .verdict(failed == 0),
        );
    }
    Ok(rows)
}

fn axiom_row(item: String, what: &str, report: &AxiomReport) -> Row {
    let checked: u64 = report.outcomes.iter().map(|o| o.checked).sum();
    let failed: Vec<String> = report.failures().map(|o| o.axiom.clone()).collect();
    Row::new(item)
        .value("structure", what)
        .value("axioms", report.outcomes.len())
        .value("cases", checked)
        .value("exhaustive", report.exhaustive())
        .value("failed", failed.join("; "))
        .verdict(report.all_passed())
}

fn crossed_axioms() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (name, ad) in instances::small_ads()? {
        for (i, part) in ad.parts().iter().enumerate() {
            let cm = inclusion_crossed_module(part)?;
            rows.push(axiom_row(format!("R_{} in {name}", i + 1), "crossed module", &verify_cube_axioms(&cm.to_cube())?));
        }
        let cube = inclusion_cube(&ad)?;
        rows.push(axiom_row(name.to_string(), "inclusion cube", &verify_cube_axioms(&cube)?));
        rows.push(axiom_row(name.to_string(), "Ab cube", &verify_cube_axioms(&ab_cube(&cube)?)?));
        for k in [2, 3] {
            rows.push(axiom_row(name.to_string(), &format!("B_{k} cube"), &verify_cube_axioms(&b_k_cube(&cube, k)?)?));
        }
    }
    Ok(rows)
}

fn lower_central_suite() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for g in [symmetric(3), symmetric(4), quaternion(), dihedral(4), dihedral(6), dihedral(8)] {
        let products = lower_central_by_products(&g, 5)?;
        for k in 1..=5 {
            let recursive = lower_central(&g, k)?;
            rows.push(
                Row::new(g.label())
                    .value("check", format!("Γ_{k} recursive = by products"))
                    .value("order", recursive.order())
                    .verdict(recursive.same_set(&products[k - 1])),
            );
        }
    }
    for (name, ad) in instances::small_ads()? {
        for k in 1..=4 {
            let gamma = lower_central(ad.ambient(), k)?;
            let d = ad.d_k(IndexSet::EMPTY, k)?;
            rows.push(
                Row::new(name)
                    .value("check", format!("D_{k}(F; ∅) = Γ_{k}"))
                    .value("order", d.order())
                    .verdict(d.same_set(&gamma)),
            );
        }
    }
    Ok(rows)
}

fn level_rows(item: &str, report: &LevelIsoReport) -> Vec<Row> {
    report
        .levels
        .iter()
        .map(|l| {
            Row::new(item)
                .value("level", l.level)
                .value("source order", l.source_order)
                .value("target order", l.target_order)
                .value("homomorphism", l.homomorphism)
                .value("bijective", l.bijective)
                .value("compatible", l.compatible)
                .verdict(l.passed())
        })
        .collect()
}

fn nerve_cech() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (name, f) in instances::surjections()? {
        rows.extend(level_rows(name, &nerve_vs_cech(&f, 3)?));
    }
    Ok(rows)
}

fn nerve_abelianization() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (name, ad) in instances::small_ads()? {
        for (i, part) in ad.parts().iter().enumerate() {
            let report = abelianized_nerve_check(&inclusion_crossed_module(part)?, 3)?;
            rows.extend(level_rows(&format!("R_{} in {name}", i + 1), &report));
        }
    }
    Ok(rows)
}

fn cech_homotopy_suite() -> Result<Vec<Row>> {
    let f = instances::q8_onto_v4()?;
    let q = f.source().clone();
    let id = GroupHom::identity(&q);
    let i = q.generators()[0].clone();
    let by_i = {
        let q2 = q.clone();
        GroupHom::from_fn(&q, &q, move |x| q2.conj(&i, x))
    };
    let base = GroupHom::identity(f.target());
    let mut rows = Vec::new();
    for (pair, lower, upper) in [("id, id", &id, &id), ("id, conjugation by i", &id, &by_i)] {
        for depth in 0..=2 {
            let item = format!("Q8 -> V4, lifts ({pair})");
            let row = Row::new(item).value("depth", depth);
            rows.push(match cech_homotopy(&f, &f, &base, lower, upper, depth) {
                Ok((_, checks)) => {
                    let cases: usize = checks.iter().map(|c| c.checked).sum();
                    row.value("identities", checks.len()).value("cases", cases).verdict(true)
                }
                Err(e @ hopf_core::Error::IdentityViolation { .. }) => row.value("failure", e.to_string()).verdict(false),
                Err(e) => return Err(e),
            });
        }
    }
    Ok(rows)
}

fn gamma_kernel() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (name, ad) in instances::square_ads()? {
        for k in [2, 3] {
            for o in gamma_vs_coset_kernel(&ad, k, 2)? {
                rows.push(
                    Row::new(name)
                        .value("k", k)
                        .value("level", o.level)
                        .value("Γ_k order", o.gamma_order)
                        .value("Ker Δ order", o.kernel_order as u64)
                        .value("sets equal", o.sets_equal)
                        .value("Δ onto", o.delta_onto)
                        .verdict(o.passed()),
                );
            }
        }
    }
    Ok(rows)
}

fn kappa() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (name, ad) in instances::square_ads()? {
        let cube = inclusion_cube(&ad)?;
        let report = kappa_check(&square_star_input(&cube, 3)?)?;
        for d in &report.degrees {
            rows.push(
                Row::new(name)
                    .value("degree", d.degree)
                    .signature("Moore", &d.source)
                    .signature("cone", &d.target)
                    .value("well defined", d.well_defined)
                    .value("bijective", d.bijective)
                    .verdict(report.homomorphism && report.chain_map && d.well_defined && d.bijective && d.source == d.target),
            );
        }
    }
    Ok(rows)
}

fn cone_homotopy() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (name, ad) in instances::square_ads()? {
        let cube = inclusion_cube(&ad)?;
        for d in multinerve_vs_cone(&cube)?.degrees {
            rows.push(
                Row::new(name)
                    .value("check", format!("π_{0} multinerve = H_{0} cone", d.degree))
                    .signature("π", &d.homotopy)
                    .signature("H", &d.cone)
                    .verdict(d.matches()),
            );
        }
        let direct = square_homology(&cube)?;
        let cone_h2 = GroupSignature::of(&square_cone(&cube)?.homology(2)?.group)?;
        let meet = GroupSignature::of(&direct.h2.as_group())?;
        rows.push(
            Row::new(name)
                .value("check", "H_2 cone = Ker λ ∩ Ker λ′")
                .signature("π", &meet)
                .signature("H", &cone_h2)
                .verdict(meet == cone_h2),
        );
        let les = les_check(&square_as_morphism(&cube)?)?;
        let failed: Vec<String> = les.joints.iter().filter(|j| !j.exact).map(|j| j.at.clone()).collect();
        rows.push(
            Row::new(name)
                .value("check", "long exact sequence of the cone")
                .value("joints", les.joints.len())
                .value("inexact at", failed.join("; "))
                .verdict(les.passed()),
        );
    }
    Ok(rows)
}

fn classical_hopf() -> Result<Vec<Row>> {
    let ad = instances::q8_centre()?;
    let (q8, centre) = (ad.ambient(), ad.part(1));
    let formula = hopf_h2(q8, centre)?;
    let v4 = quotient(q8, centre)?.group;
    let oracle = bar_h2(&v4)?;
    let q8_h2 = bar_h2(q8)?;
    Ok(vec![
        Row::new("Q8 / {±1}")
            .value("route", "(R ∩ [K,K]) / [K,R]")
            .invariants("invariants", formula.invariants())
            .verdict(formula.invariants().is_some_and(|inv| inv.factors() == [2])),
        Row::new("V4").value("route", "bar complex H_2").invariants("invariants", Some(&oracle)).verdict(oracle.factors() == [2]),
        Row::new("Q8").value("route", "bar complex H_2").invariants("invariants", Some(&q8_h2)).verdict(q8_h2.is_trivial()),
        Row::new("Q8 / {±1}")
            .value("route", "formula = oracle")
            .verdict(formula.invariants() == Some(&oracle)),
    ])
}

fn aspherical_formula() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (name, f) in instances::surjections()? {
        let aug = cech_complex(&f, 3)?;
        for n in 1..=2 {
            for k in 2..=3 {
                let r = aspherical_formula_check(&aug, n, k)?;
                rows.push(
                    Row::new(format!("Čech({name})"))
                        .value("n", n)
                        .value("k", k)
                        .value("aspherical", r.aspherical)
                        .signature("π_n Z_k", &r.homotopy)
                        .signature("formula", &r.formula.quotient)
                        .verdict(r.aspherical && r.equal()),
                );
            }
        }
    }
    Ok(rows)
}

fn two_fold() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (name, f) in instances::surjections()? {
        for k in [2, 3] {
            let c = two_fold_vs_one_fold(&f, k)?;
            rows.push(
                Row::new(format!("Čech({name}) level 1"))
                    .value("k", k)
                    .signature("two-fold", &c.two_fold.quotient)
                    .signature("one-fold", &c.one_fold.quotient)
                    .verdict(c.equal()),
            );
        }
    }
    Ok(rows)
}

fn counterexample() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for m in [5, 7] {
        let r = counterexample_report(m)?;
        let empty = r.exactness.entry(&[]).expect("the empty set is a proper subset");
        rows.push(
            Row::new(format!("FN(2,3,{m}); x1, x2, x1x2'"))
                .value("group order", r.group_order)
                .signature("quotient", &r.quotient.quotient)
                .value("cyclic", r.quotient.is_cyclic())
                .value("onto limit at ∅", empty.surjective)
                .invariants("H_3 of corner", Some(&r.corner_h3))
                .verdict(r.reproduces()),
        );
    }
    let h3 = bar_homology(&trivial(), 3)?;
    rows.push(Row::new("trivial group").invariants("H_3", Some(&h3)).verdict(h3.is_trivial()));
    Ok(rows)
}

/// Left-normed commutator `[a, b] = a⁻¹ b⁻¹ a b` of two words.
fn commutator(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    let mut out = invert_word(a);
    out.extend(invert_word(b));
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Letter::new(rng.gen_range(1..=rank), rng.gen_bool(0.5))).collect()
}

/// Lyndon words of length `n` over `r` letters, counted by Duval's
/// successor rule.
fn lyndon_count(r: usize, n: usize) -> usize {
    let mut count = 0;
    let mut word = vec![0usize];
    while !word.is_empty() {
        if word.len() == n {
            count += 1;
        }
        let mut next: Vec<usize> = (0..n).map(|i| word[i % word.len()]).collect();
        while next.last() == Some(&(r - 1)) {
            next.pop();
        }
        if let Some(last) = next.last_mut() {
            *last += 1;
        }
        word = next;
    }
    count
}

pub const COLLECTION_PAIRS: usize = 10_000;

fn collection(seed: u64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (rank, class) in [(2, 2), (2, 3), (3, 2)] {
        let col = Collector::new(rank, class);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((rank * 16 + class) as u64));
        let (mut equal, mut disagreements) = (0usize, 0usize);
        for t in 0..COLLECTION_PAIRS {
            let a = random_word(&mut rng, rank, 12);
            let b = if t % 2 == 0 {
                random_word(&mut rng, rank, 12)
            } else {
                // A commutator of weight class + 1 spliced in; it vanishes.
                let mut c = vec![Letter::new(rng.gen_range(1..=rank), false)];
                for _ in 0..class {
                    c = commutator(&c, &[Letter::new(rng.gen_range(1..=rank), rng.gen_bool(0.5))]);
                }
                let cut = rng.gen_range(0..=a.len());
                [&a[..cut], &c[..], &a[cut..]].concat()
            };
            let by_collection = col.collect(&a) == col.collect(&b);
            let by_magnus = magnus_equal(&a, &b, rank, class);
            disagreements += (by_collection != by_magnus) as usize;
            equal += by_magnus as usize;
        }
        rows.push(
            Row::new(format!("rank {rank}, class {class}"))
                .value("check", "collect = Magnus")
                .value("pairs", COLLECTION_PAIRS)
                .value("equal pairs", equal)
                .value("disagreements", disagreements)
                .verdict(disagreements == 0),
        );
        let layers = HallBasis::new(rank, class).layer_sizes();
        let lyndon: Vec<usize> = (1..=class).map(|w| lyndon_count(rank, w)).collect();
        let witt: Vec<usize> = (1..=class).map(|w| witt_number(rank, w)).collect();
        rows.push(
            Row::new(format!("rank {rank}, class {class}"))
                .value("check", "Hall layers = Witt numbers")
                .value("layers", layers.clone())
                .value("Lyndon counts", lyndon.clone())
                .verdict(layers == lyndon && witt == lyndon),
        );
    }
    Ok(rows)
}

