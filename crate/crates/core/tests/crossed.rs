use std::collections::BTreeSet;
use std::sync::Arc;

use hopf_core::crossed::{
    ab_crossed_module, ab_cube, ab_cube_denominators, b_k_cube, conjugation_action, crossed_square, inclusion_crossed_module,
    inclusion_cube, make_crossed_module, trivial_action, verify_cube_axioms, verify_cube_axioms_with, CrossedCube,
    NonAbelianComplex, Pairing, SquareData, AXIOM_H_ANTISYMMETRIC,
};
use hopf_core::group::catalog::{abelian, cyclic, quaternion, symmetric};
use hopf_core::group::{abelian_invariants, closure, lower_central, IndexSet, NormalAd};
use hopf_core::instances;
use hopf_core::{Elem, Error, Group, GroupHom, Subgroup};

fn set(indices: &[usize]) -> IndexSet {
    IndexSet::from_indices(indices)
}

fn member_set(s: &Subgroup) -> BTreeSet<Elem> {
    s.members().iter().cloned().collect()
}

/// Subgroup generated by all commutators `[x, y]` for `x ∈ a`, `y ∈ b`,
/// by repeated multiplication.
fn naive_commutator_closure(g: &Group, pairs: &[(Vec<Elem>, Vec<Elem>)]) -> BTreeSet<Elem> {
    let mut gens = Vec::new();
    for (a, b) in pairs {
        for x in a {
            for y in b {
                gens.push(g.comm(x, y));
            }
        }
    }
    let mut out: BTreeSet<Elem> = BTreeSet::from([g.identity()]);
    loop {
        let cur: Vec<Elem> = out.iter().cloned().collect();
        let before = out.len();
        for x in &cur {
            for y in &gens {
                out.insert(g.mul(x, y));
            }
        }
        if out.len() == before {
            return out;
        }
    }
}

#[test]
fn crossed_module_examples() {
    let ad = instances::s3_a3().unwrap();
    let cm = inclusion_crossed_module(ad.part(1)).unwrap();
    assert_eq!(cm.source().order().unwrap(), 3);
    assert_eq!(cm.target().order().unwrap(), 6);

    let q = quaternion();
    let id = make_crossed_module(&q, &q, GroupHom::identity(&q), conjugation_action(&q));
    assert!(id.is_ok());

    // A3 ↪ S3 with the trivial action breaks equivariance: μ(ᵖm) = μ(m) while
    // p μ(m) p⁻¹ = μ(m)⁻¹ for a transposition p.
    let a3 = ad.part(1).as_group();
    let s3 = ad.ambient().clone();
    let bad = make_crossed_module(&a3, &s3, GroupHom::inclusion(ad.part(1)), trivial_action());
    match bad {
        Err(Error::AxiomViolation { axiom, witness }) => {
            assert!(axiom.contains("μ(ᵖm)"), "{axiom}");
            assert!(!witness.is_empty());
        }
        other => panic!("expected an axiom violation, got {other:?}"),
    }
}

#[test]
fn crossed_modules_pass_the_cube_axioms() {
    for (name, ad) in instances::small_ads().unwrap() {
        for i in 1..=ad.len() {
            let cm = inclusion_crossed_module(ad.part(i)).unwrap();
            let report = verify_cube_axioms(&cm.to_cube()).unwrap();
            assert!(report.all_passed(), "{name}: {:?}", report.failures().collect::<Vec<_>>());
            assert!(report.exhaustive());
            let back = cm.to_cube().to_crossed_module().unwrap();
            for p in cm.target().elements().unwrap().list.iter() {
                for m in cm.source().elements().unwrap().list.iter() {
                    assert_eq!(back.act(p, m), cm.act(p, m));
                }
            }
        }
    }
}

#[test]
fn inclusion_cube_examples() {
    let ad = instances::s3_a3().unwrap();
    let cube = inclusion_cube(&ad).unwrap();
    assert_eq!(cube.group(IndexSet::EMPTY).order().unwrap(), 6);
    assert_eq!(cube.group(set(&[1])).order().unwrap(), 3);

    let s3 = symmetric(3);
    let r = closure(&s3, &[Elem::from_slice(&[1, 2, 0])]).unwrap();
    let twice = NormalAd::new(&s3, vec![r.clone(), r.clone()]).unwrap();
    let cube = inclusion_cube(&twice).unwrap();
    let top: BTreeSet<Elem> = cube.group(set(&[1, 2])).elements().unwrap().list.iter().cloned().collect();
    assert_eq!(top, member_set(&r));

    let cube = inclusion_cube(&instances::q8_ij().unwrap()).unwrap();
    let q = quaternion();
    let g = q.generators();
    let minus = q.mul(&g[0], &g[0]);
    let top: BTreeSet<Elem> = cube.group(set(&[1, 2])).elements().unwrap().list.iter().cloned().collect();
    assert_eq!(top, BTreeSet::from([q.identity(), minus]));
}

#[test]
fn inclusion_cubes_pass_the_axioms() {
    let mut ads = instances::small_ads().unwrap();
    ads.push(("(Q8; <i>, {±1}, <j>)", instances::q8_three().unwrap()));
    for (name, ad) in ads {
        let report = verify_cube_axioms(&inclusion_cube(&ad).unwrap()).unwrap();
        assert!(report.all_passed(), "{name}: {:?}", report.failures().collect::<Vec<_>>());
        assert_eq!(report.outcomes.len(), 11);
    }
}

#[test]
fn b_k_examples() {
    // n = 1, (F; R), k = 2: the components are R/[F,R] and F/[F,F].
    for (name, ad) in instances::small_ads().unwrap().into_iter().filter(|(_, ad)| ad.len() == 1) {
        let f = ad.ambient();
        let all: Vec<Elem> = f.elements().unwrap().list.clone();
        let r: Vec<Elem> = ad.part(1).members().to_vec();
        let b2 = b_k_cube(&inclusion_cube(&ad).unwrap(), 2).unwrap();
        let fr = naive_commutator_closure(f, &[(all.clone(), r.clone())]);
        let ff = naive_commutator_closure(f, &[(all.clone(), all.clone())]);
        assert_eq!(b2.group(set(&[1])).order().unwrap(), r.len() / fr.len(), "{name}");
        assert_eq!(b2.group(IndexSet::EMPTY).order().unwrap(), all.len() / ff.len(), "{name}");
    }

    // The empty corner is F/Γ_k(F).
    for (name, ad) in instances::small_ads().unwrap() {
        let cube = inclusion_cube(&ad).unwrap();
        for k in 2..=3 {
            let b = b_k_cube(&cube, k).unwrap();
            let gamma = lower_central(ad.ambient(), k).unwrap();
            let expect = ad.ambient().order().unwrap() / gamma.order();
            assert_eq!(b.group(IndexSet::EMPTY).order().unwrap(), expect, "{name}, k = {k}");
        }
    }

    // (Q8; {±1}), k = 2: order 2 into order 4.
    let b2 = b_k_cube(&inclusion_cube(&instances::q8_centre().unwrap()).unwrap(), 2).unwrap();
    assert_eq!(b2.group(set(&[1])).order().unwrap(), 2);
    assert_eq!(b2.group(IndexSet::EMPTY).order().unwrap(), 4);
}

#[test]
fn b_k_cubes_pass_the_axioms() {
    let mut ads = instances::small_ads().unwrap();
    ads.push(("(Q8; <i>, {±1}, <j>)", instances::q8_three().unwrap()));
    for (name, ad) in ads {
        let cube = inclusion_cube(&ad).unwrap();
        for k in 2..=3 {
            let report = verify_cube_axioms(&b_k_cube(&cube, k).unwrap()).unwrap();
            assert!(report.all_passed(), "{name}, k = {k}: {:?}", report.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn b_k_needs_an_inclusion_cube() {
    let cm = inclusion_crossed_module(instances::s3_a3().unwrap().part(1)).unwrap();
    assert!(matches!(b_k_cube(&cm.to_cube(), 2), Err(Error::InvalidParameter(_))));
}

#[test]
fn b_2_denominators_match_abelianization() {
    let mut ads = instances::small_ads().unwrap();
    ads.push(("(Q8; <i>, {±1}, <j>)", instances::q8_three().unwrap()));
    for (name, ad) in ads {
        let cube = inclusion_cube(&ad).unwrap();
        let dens = ab_cube_denominators(&cube).unwrap();
        for a in ad.full_set().subsets() {
            let d2 = ad.d_k(a, 2).unwrap();
            assert_eq!(member_set(&dens[a.0 as usize]), member_set(&d2), "{name} at {a:?}");
            // Independent oracle: products of commutator subgroups [∩_B R, ∩_C R].
            let pairs: Vec<(Vec<Elem>, Vec<Elem>)> = a
                .subsets()
                .into_iter()
                .flat_map(|b| a.subsets().into_iter().map(move |c| (b, c)))
                .filter(|(b, c)| b.union(*c) == a)
                .map(|(b, c)| (ad.meet(b).unwrap().members().to_vec(), ad.meet(c).unwrap().members().to_vec()))
                .collect();
            assert_eq!(member_set(&d2), naive_commutator_closure(ad.ambient(), &pairs), "{name} at {a:?}");
        }
        let ab = ab_cube(&cube).unwrap();
        let b2 = b_k_cube(&cube, 2).unwrap();
        for a in ad.full_set().subsets() {
            assert_eq!(ab.group(a).order().unwrap(), b2.group(a).order().unwrap());
        }
    }
}

#[test]
fn b_k_denominators_are_nested() {
    for (name, ad) in instances::small_ads().unwrap() {
        for k in 2..=3 {
            for a in ad.full_set().subsets() {
                let outer = ad.d_k(a, k).unwrap();
                let inner = ad.d_k(a, k + 1).unwrap();
                assert!(inner.is_subset_of(&outer), "{name}, k = {k}, {a:?}");
            }
            let cube = inclusion_cube(&ad).unwrap();
            let (big, small) = (b_k_cube(&cube, k + 1).unwrap(), b_k_cube(&cube, k).unwrap());
            for a in ad.full_set().subsets() {
                let (nb, ns) = (big.group(a).order().unwrap(), small.group(a).order().unwrap());
                assert_eq!(nb % ns, 0, "{name}: B_{} → B_{k} at {a:?}", k + 1);
            }
        }
    }
}

#[test]
fn abelianization_examples() {
    let s3 = instances::s3_a3().unwrap();
    let ab = ab_crossed_module(&inclusion_crossed_module(s3.part(1)).unwrap()).unwrap();
    assert_eq!(ab.source().order().unwrap(), 1);
    assert_eq!(abelian_invariants(ab.target()).unwrap().factors(), &[2]);

    let q = instances::q8_centre().unwrap();
    let ab = ab_crossed_module(&inclusion_crossed_module(q.part(1)).unwrap()).unwrap();
    assert_eq!(abelian_invariants(ab.source()).unwrap().factors(), &[2]);
    assert_eq!(abelian_invariants(ab.target()).unwrap().factors(), &[2, 2]);

    // An abelian crossed module with trivial action is its own abelianization.
    let p = abelian(&[2, 4]);
    let m = cyclic(4);
    let mu = GroupHom::from_images(&m, &p, &[Elem::from_slice(&[0, 1])]).unwrap();
    let cm = make_crossed_module(&m, &p, mu, trivial_action()).unwrap();
    let ab = ab_crossed_module(&cm).unwrap();
    assert_eq!(ab.source().order().unwrap(), 4);
    assert_eq!(ab.target().order().unwrap(), 8);
}

#[test]
fn abelianization_is_abelian_with_trivial_action() {
    for (name, ad) in instances::small_ads().unwrap() {
        for i in 1..=ad.len() {
            let ab = ab_crossed_module(&inclusion_crossed_module(ad.part(i)).unwrap()).unwrap();
            assert!(ab.source().is_abelian() && ab.target().is_abelian(), "{name}");
            for p in &ab.target().elements().unwrap().list {
                for m in &ab.source().elements().unwrap().list {
                    assert_eq!(ab.act(p, m), *m, "{name}");
                }
            }
        }
    }
}

fn corrupted(cube: &CrossedCube) -> CrossedCube {
    let f = cube.group(IndexSet::EMPTY).clone();
    let h: Pairing = Arc::new(move |a: IndexSet, x: &Elem, b: IndexSet, y: &Elem| {
        if a.0 <= b.0 {
            f.comm(x, y)
        } else {
            f.identity()
        }
    });
    cube.with_pairing(h)
}

#[test]
fn corrupted_pairing_is_caught() {
    let cube = inclusion_cube(&instances::q8_ij().unwrap()).unwrap();
    let report = verify_cube_axioms(&corrupted(&cube)).unwrap();
    let anti = report.outcome(AXIOM_H_ANTISYMMETRIC).unwrap();
    assert!(!anti.passed);
    assert!(anti.witness.is_some());
    assert!(matches!(report.into_result(), Err(Error::AxiomViolation { .. })));
}

#[test]
fn sampled_mode_is_flagged_and_still_catches_faults() {
    let cube = inclusion_cube(&instances::s4_a4_v4().unwrap()).unwrap();
    let report = verify_cube_axioms_with(&cube, 1_000, 7).unwrap();
    assert!(!report.exhaustive());
    assert!(report.all_passed());
    let bad = verify_cube_axioms_with(&corrupted(&cube), 1_000, 7).unwrap();
    assert!(!bad.outcome(AXIOM_H_ANTISYMMETRIC).unwrap().passed);
    assert_eq!(bad, verify_cube_axioms_with(&corrupted(&cube), 1_000, 7).unwrap());
}

/// The inclusion square of an ad, assembled from its square data rather
/// than as an inclusion cube.
fn square_from_ad(ad: &NormalAd) -> CrossedCube {
    let f = ad.ambient().clone();
    let m = ad.part(1).as_group();
    let n = ad.part(2).as_group();
    let l = ad.meet(set(&[1, 2])).unwrap().as_group();
    let incl = |a: &Group, b: &Group| GroupHom::from_fn(a, b, |x| x.clone());
    let fc = f.clone();
    let data = SquareData {
        lambda: incl(&l, &m),
        lambda_prime: incl(&l, &n),
        mu: incl(&m, &f),
        nu: incl(&n, &f),
        act_l: conjugation_action(&f),
        act_m: conjugation_action(&f),
        act_n: conjugation_action(&f),
        pairing: Arc::new(move |x: &Elem, y: &Elem| fc.comm(x, y)),
        l,
        m,
        n,
        p: f,
    };
    crossed_square(data).unwrap()
}

#[test]
fn crossed_square_from_data_matches_inclusion_cube() {
    for (name, ad) in instances::square_ads().unwrap() {
        let sq = square_from_ad(&ad);
        let report = verify_cube_axioms(&sq).unwrap();
        assert!(report.all_passed(), "{name}: {:?}", report.failures().collect::<Vec<_>>());
        let cube = inclusion_cube(&ad).unwrap();
        for a in ad.full_set().subsets() {
            for b in ad.full_set().subsets() {
                for x in &cube.group(a).elements().unwrap().list {
                    for y in &cube.group(b).elements().unwrap().list {
                        assert_eq!(sq.h(a, x, b, y), cube.h(a, x, b, y), "{name}: {a:?} {b:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn complexes_check_their_axioms() {
    let ad = instances::s3_a3().unwrap();
    let s3 = ad.ambient().clone();
    let a3 = ad.part(1).as_group();
    let c = NonAbelianComplex::new(vec![s3.clone(), a3.clone()], vec![GroupHom::inclusion(ad.part(1))]).unwrap();
    assert_eq!(c.homology(0).unwrap().group.order().unwrap(), 2);
    assert_eq!(c.homology(1).unwrap().group.order().unwrap(), 1);

    // Z/4 --·2--> Z/4 --·2--> Z/4 has d∘d = ·4 = 0, H_1 = {0,2}/{0,2}.
    let z = cyclic(4);
    let double = || GroupHom::from_images(&z, &z, &[Elem::scalar(2)]).unwrap();
    let c = NonAbelianComplex::new(vec![z.clone(), z.clone(), z.clone()], vec![double(), double()]).unwrap();
    assert_eq!(c.homology(1).unwrap().group.order().unwrap(), 1);
    assert_eq!(c.homology(0).unwrap().group.order().unwrap(), 2);
    assert_eq!(c.homology(2).unwrap().group.order().unwrap(), 2);

    let ident = GroupHom::identity(&z);
    let err = NonAbelianComplex::new(vec![z.clone(), z.clone(), z.clone()], vec![ident.clone(), ident]).unwrap_err();
    assert!(matches!(err, Error::IdentityViolation { .. }));

    // Image not normal in the kernel: ⟨(0 1)⟩ ↪ S3 → 1.
    let t = closure(&s3, &[Elem::from_slice(&[1, 0, 2])]).unwrap();
    let one = cyclic(1);
    let err = NonAbelianComplex::new(
        vec![one.clone(), s3.clone(), t.as_group()],
        vec![GroupHom::trivial(&s3, &one), GroupHom::inclusion(&t)],
    )
    .unwrap_err();
    assert!(matches!(err, Error::NormalityViolation(_)));
}
