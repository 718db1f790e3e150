use std::collections::BTreeSet;
use std::sync::Arc;

use hopf_core::crossed::{inclusion_crossed_module, inclusion_cube, make_crossed_module, trivial_action, CrossedModule};
use hopf_core::group::catalog::{cyclic, quaternion, trivial};
use hopf_core::group::{quotient, GroupSignature, IndexSet, NormalAd};
use hopf_core::instances;
use hopf_core::simplicial::{
    apply_zk_levelwise, cech_complex, constant, homotopy_group, kappa_check, nerve_vs_cech, cech_homotopy,
    square_homology, last_face_meets, les_check, m_star, mapping_cone, moore_complex, multinerve_diagonal, nerve,
    nfold_cech_diagonal, pi0_matches_augmentation, multinerve_vs_cone, abelianized_nerve_check, face_kernel_simplicity, gamma_vs_coset_kernel,
    square_as_morphism, square_cone, square_star_input, verify_simplicial_identities, ComplexMorphism, LevelMap,
    StarInput,
};
use hopf_core::{Elem, Error, Group, GroupHom, Subgroup};

fn members(g: &Group) -> BTreeSet<Elem> {
    g.elements().unwrap().list.iter().cloned().collect()
}

fn signature(g: &Group) -> GroupSignature {
    GroupSignature::of(g).unwrap()
}

fn z4_to_trivial() -> CrossedModule {
    let z = cyclic(4);
    let one = trivial();
    make_crossed_module(&z, &one, GroupHom::trivial(&z, &one), trivial_action()).unwrap()
}

#[test]
fn cech_level_orders() {
    let f = instances::q8_onto_v4().unwrap();
    let c = cech_complex(&f, 2).unwrap();
    let orders: Vec<usize> = (0..=2).map(|n| c.complex.level(n).order().unwrap()).collect();
    // |G| |R|^n with G = Q8, R = {±1}.
    assert_eq!(orders, vec![8, 16, 32]);

    let id = GroupHom::identity(&quaternion());
    let c = cech_complex(&id, 2).unwrap();
    for n in 0..=2 {
        assert_eq!(c.complex.level(n).order().unwrap(), 8);
    }

    let q = quaternion();
    let to_one = GroupHom::trivial(&q, &trivial());
    let c = cech_complex(&to_one, 2).unwrap();
    assert_eq!(c.complex.level(2).order().unwrap(), 512);
}

#[test]
fn cech_is_aspherical_with_the_right_pi0() {
    for (name, f) in instances::surjections().unwrap() {
        let c = cech_complex(&f, 3).unwrap();
        assert!(pi0_matches_augmentation(&c).unwrap(), "{name}");
        let pi0 = homotopy_group(&c.complex, 0).unwrap();
        assert_eq!(signature(&pi0.group), signature(f.target()), "{name}");
        for i in 1..=2 {
            assert_eq!(homotopy_group(&c.complex, i).unwrap().group.order().unwrap(), 1, "{name} π_{i}");
        }
    }
    let c = cech_complex(&instances::q8_onto_v4().unwrap(), 2).unwrap();
    assert_eq!(moore_complex(&c.complex).unwrap().group(1).order().unwrap(), 2);
}

#[test]
fn homotopy_group_needs_the_next_level() {
    let c = cech_complex(&instances::z4_onto_z2().unwrap(), 2).unwrap();
    assert!(matches!(homotopy_group(&c.complex, 2), Err(Error::InvalidParameter(_))));
}

#[test]
fn nerve_levels_and_moore_complex() {
    let ad = instances::s3_a3().unwrap();
    let cm = inclusion_crossed_module(ad.part(1)).unwrap();
    let e = nerve(&cm, 3).unwrap();
    assert_eq!(e.level(2).order().unwrap(), 3 * 3 * 6);
    let moore = moore_complex(&e).unwrap();
    assert_eq!(moore.group(0).order().unwrap(), 6);
    assert_eq!(moore.group(1).order().unwrap(), 3);
    for n in 2..=3 {
        assert_eq!(moore.group(n).order().unwrap(), 1, "NE_{n}");
    }

    let q = quaternion();
    let one = trivial();
    let degenerate = make_crossed_module(&one, &q, GroupHom::trivial(&one, &q), trivial_action()).unwrap();
    let e = nerve(&degenerate, 2).unwrap();
    let c = constant(&q, 2);
    for n in 0..=2 {
        assert_eq!(e.level(n).order().unwrap(), c.level(n).order().unwrap());
    }
}

#[test]
fn pi1_of_a_nerve_is_the_kernel() {
    let e = nerve(&z4_to_trivial(), 2).unwrap();
    let pi1 = homotopy_group(&e, 1).unwrap();
    assert_eq!(signature(&pi1.group), signature(&cyclic(4)));
    assert_eq!(homotopy_group(&e, 0).unwrap().group.order().unwrap(), 1);
}

#[test]
fn nerve_of_kernel_matches_cech() {
    for (name, f) in instances::surjections().unwrap() {
        let report = nerve_vs_cech(&f, 3).unwrap();
        assert!(report.passed(), "{name}: {report:?}");
    }
    let id = GroupHom::identity(&quaternion());
    assert!(nerve_vs_cech(&id, 2).unwrap().passed());
}

#[test]
fn abelianized_nerve_matches_nerve_of_abelianization() {
    for (name, ad) in instances::small_ads().unwrap() {
        for part in ad.parts() {
            let cm = inclusion_crossed_module(part).unwrap();
            let report = abelianized_nerve_check(&cm, 3).unwrap();
            assert!(report.passed(), "{name}: {report:?}");
        }
    }
    let q = quaternion();
    let cm = make_crossed_module(&q, &q, GroupHom::identity(&q), hopf_core::crossed::conjugation_action(&q)).unwrap();
    assert!(abelianized_nerve_check(&cm, 2).unwrap().passed());
}

#[test]
fn zk_levelwise_on_a_nerve() {
    let ad = instances::s3_a3().unwrap();
    let e = nerve(&inclusion_crossed_module(ad.part(1)).unwrap(), 2).unwrap();
    let z2 = apply_zk_levelwise(&e, 2).unwrap();
    assert_eq!(signature(z2.group.level(0)), signature(&cyclic(2)));
    assert!(verify_simplicial_identities(&z2.group).unwrap().passed());

    // Abelian levels are untouched.
    let a = nerve(&z4_to_trivial(), 2).unwrap();
    let z3 = apply_zk_levelwise(&a, 3).unwrap();
    for n in 0..=2 {
        assert_eq!(z3.group.level(n).order().unwrap(), a.level(n).order().unwrap());
    }

    // Z_2 after Z_3 agrees with Z_2 directly.
    let z3 = apply_zk_levelwise(&e, 3).unwrap();
    let both = apply_zk_levelwise(&z3.group, 2).unwrap();
    for n in 0..=2 {
        assert_eq!(both.group.level(n).order().unwrap(), z2.group.level(n).order().unwrap());
    }
}

#[test]
fn identity_checker_passes_on_constructions() {
    let c = cech_complex(&instances::q8_onto_v4().unwrap(), 2).unwrap();
    let report = verify_simplicial_identities(&c.complex).unwrap();
    assert!(report.passed() && report.exhaustive());
    assert_eq!(report.exempt().count(), 0);

    let ad = instances::q8_ij().unwrap();
    let e2 = multinerve_diagonal(&inclusion_cube(&ad).unwrap(), 2).unwrap();
    assert!(e2.is_pseudo());
    let report = verify_simplicial_identities(&e2).unwrap();
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    assert!(report.exempt().count() > 0);
}

#[test]
fn identity_checker_catches_a_corrupted_face() {
    let c = cech_complex(&instances::q8_onto_v4().unwrap(), 2).unwrap().complex;
    let original = c.face_map().clone();
    let corrupted: LevelMap = Arc::new(move |n, i, x| if n == 1 && i == 0 { original(1, 1, x) } else { original(n, i, x) });
    let report = verify_simplicial_identities(&c.with_faces(corrupted)).unwrap();
    assert!(!report.passed());
    let failure = report.failures().next().unwrap();
    assert!(failure.witness.is_some());
}

#[test]
fn face_kernels_form_simple_ads() {
    let cech = cech_complex(&instances::q8_onto_v4().unwrap(), 3).unwrap().complex;
    let ad = instances::s3_a3().unwrap();
    let e = nerve(&inclusion_crossed_module(ad.part(1)).unwrap(), 3).unwrap();
    let e2 = multinerve_diagonal(&inclusion_cube(&instances::q8_ij().unwrap()).unwrap(), 2).unwrap();
    for s in [&cech, &e, &e2] {
        let outcomes = face_kernel_simplicity(s).unwrap();
        assert_eq!(outcomes.len(), s.depth() * (s.depth() + 1) / 2);
        for o in outcomes {
            assert!(o.simple, "{}: {o:?}", s.label());
        }
    }
}

#[test]
fn last_face_carries_kernel_meets_onto_kernel_meets() {
    for (name, f) in instances::surjections().unwrap() {
        let c = cech_complex(&f, 3).unwrap().complex;
        for (level, a, holds) in last_face_meets(&c).unwrap() {
            assert!(holds, "{name}: level {level}, A = {a:?}");
        }
    }
}

#[test]
fn explicit_cech_homotopy_between_two_lifts() {
    let f = instances::q8_onto_v4().unwrap();
    let q = f.source().clone();
    let i = q.generators()[0].clone();
    let id = GroupHom::identity(&q);
    let by_i = {
        let (q, i) = (q.clone(), i.clone());
        GroupHom::from_fn(&q.clone(), &q.clone(), move |x| q.conj(&i, x))
    };
    let base = GroupHom::identity(f.target());
    for depth in 0..=2 {
        let (_, checks) = cech_homotopy(&f, &f, &base, &id, &by_i, depth).unwrap();
        assert!(checks.iter().any(|c| c.level == depth));
    }
    let (_, checks) = cech_homotopy(&f, &f, &base, &id, &id, 1).unwrap();
    assert!(!checks.is_empty());

    // The base map need not be onto.
    let g = instances::z4_onto_z2().unwrap();
    let z = g.source().clone();
    let zero = GroupHom::trivial(g.target(), g.target());
    let double = GroupHom::from_fn(&z, &z, |x| Elem::scalar(2 * x.as_slice()[0] % 4));
    let none = GroupHom::trivial(&z, &z);
    assert!(cech_homotopy(&g, &g, &zero, &none, &double, 2).is_ok());

    // Lifts over different base maps are rejected.
    assert!(matches!(
        cech_homotopy(&g, &g, &zero, &none, &GroupHom::identity(&z), 1),
        Err(Error::IdentityViolation { .. })
    ));
}

#[test]
fn multinerve_level_orders() {
    for (name, ad) in instances::square_ads().unwrap() {
        let e2 = multinerve_diagonal(&inclusion_cube(&ad).unwrap(), 2).unwrap();
        let (r1, r2) = (ad.part(1).order(), ad.part(2).order());
        let meet = ad.meet(IndexSet::full(2)).unwrap().order();
        let f = ad.ambient().order().unwrap();
        for m in 0..=2usize {
            let expected = meet.pow((m * m) as u32) * r1.pow(m as u32) * r2.pow(m as u32) * f;
            assert_eq!(e2.level(m).order().unwrap(), expected, "{name} level {m}");
        }
    }
    let q = quaternion();
    let ad = NormalAd::new(&q, vec![Subgroup::trivial(&q), Subgroup::trivial(&q)]).unwrap();
    let e2 = multinerve_diagonal(&inclusion_cube(&ad).unwrap(), 2).unwrap();
    for m in 0..=2 {
        assert_eq!(e2.level(m).order().unwrap(), 8);
    }
}

#[test]
fn multinerve_moore_complex_has_length_two() {
    let cube = inclusion_cube(&instances::q8_ij().unwrap()).unwrap();
    let e2 = multinerve_diagonal(&cube, 3).unwrap();
    assert!(e2.moore_subgroup(3).unwrap().is_trivial());
}

#[test]
fn multinerve_moore_search_matches_enumeration() {
    for (name, ad) in instances::square_ads().unwrap() {
        let e2 = multinerve_diagonal(&inclusion_cube(&ad).unwrap(), 2).unwrap();
        for n in 1..=2 {
            let brute: BTreeSet<Elem> = e2
                .level(n)
                .elements()
                .unwrap()
                .list
                .iter()
                .filter(|x| (0..n).all(|i| e2.level(n - 1).is_identity(&e2.face(n, i, x))))
                .cloned()
                .collect();
            let found: BTreeSet<Elem> = e2.moore_subgroup(n).unwrap().members().iter().cloned().collect();
            assert_eq!(found, brute, "{name} level {n}");
        }
    }
}

#[test]
fn nfold_cech_with_one_direction_is_cech() {
    let f = instances::q8_onto_v4().unwrap();
    let one = nfold_cech_diagonal(&[f.clone()], &f, 2).unwrap();
    let c = cech_complex(&f, 2).unwrap();
    for n in 0..=2 {
        assert_eq!(members(one.complex.level(n)), members(c.complex.level(n)));
        for x in &c.complex.level(n).elements().unwrap().list {
            for i in 0..=n {
                if n >= 1 {
                    assert_eq!(one.complex.face(n, i, x), c.complex.face(n, i, x));
                }
                if n < 2 {
                    assert_eq!(one.complex.degeneracy(n, i, x), c.complex.degeneracy(n, i, x));
                }
            }
        }
    }
}

#[test]
fn two_fold_cech_matches_multinerve_orders() {
    for (name, ad) in instances::square_ads().unwrap() {
        let f = ad.ambient();
        let arrows: Vec<GroupHom> = ad.parts().iter().map(|r| quotient(f, r).unwrap().projection).collect();
        let joined = ad.join(IndexSet::full(2)).unwrap();
        let corner = quotient(f, &joined).unwrap().projection;
        let two = nfold_cech_diagonal(&arrows, &corner, 2).unwrap();
        let e2 = multinerve_diagonal(&inclusion_cube(&ad).unwrap(), 2).unwrap();
        for m in 0..=2 {
            assert_eq!(two.complex.level(m).order().unwrap(), e2.level(m).order().unwrap(), "{name} level {m}");
        }
        assert!(verify_simplicial_identities(&two.complex).unwrap().passed());
    }
}

#[test]
fn lower_central_series_of_multinerve_levels() {
    for (name, ad) in instances::square_ads().unwrap() {
        for k in [2, 3] {
            for outcome in gamma_vs_coset_kernel(&ad, k, 2).unwrap() {
                assert!(outcome.passed(), "{name}, k = {k}: {outcome:?}");
            }
        }
    }
}

#[test]
fn square_cone_homology() {
    let cube = inclusion_cube(&instances::q8_ij().unwrap()).unwrap();
    let groups = square_homology(&cube).unwrap();
    assert_eq!(groups.h0.group.order().unwrap(), 1);
    assert!(groups.h2.is_trivial());
    let cone = square_cone(&cube).unwrap();
    let sigs = groups.signatures().unwrap();
    for (i, sig) in sigs.iter().enumerate() {
        assert_eq!(&signature(&cone.homology(i).unwrap().group), sig, "H_{i}");
    }

    let one = trivial();
    let ad = NormalAd::new(&one, vec![Subgroup::trivial(&one), Subgroup::trivial(&one)]).unwrap();
    let groups = square_homology(&inclusion_cube(&ad).unwrap()).unwrap();
    assert_eq!(groups.h0.group.order().unwrap(), 1);
    assert_eq!(groups.h1.group.order().unwrap(), 1);
    assert_eq!(groups.h2.order(), 1);
}

#[test]
fn mapping_cone_of_a_square_is_its_cone() {
    for (name, ad) in instances::square_ads().unwrap() {
        let cube = inclusion_cube(&ad).unwrap();
        let via_morphism = mapping_cone(&square_as_morphism(&cube).unwrap()).unwrap();
        let direct = square_cone(&cube).unwrap();
        for i in 0..=2 {
            assert_eq!(
                signature(&via_morphism.homology(i).unwrap().group),
                signature(&direct.homology(i).unwrap().group),
                "{name} H_{i}"
            );
        }
    }
}

#[test]
fn mapping_cone_with_trivial_source_is_the_target() {
    let cube = inclusion_cube(&instances::d4_square().unwrap()).unwrap();
    let f = square_as_morphism(&cube).unwrap();
    let b = f.target().clone();
    let one = trivial();
    let a = hopf_core::crossed::NonAbelianComplex::new(
        vec![one.clone(), one.clone()],
        vec![GroupHom::identity(&one)],
    )
    .unwrap();
    let maps = (0..=1)
        .map(|i| make_crossed_module(&one, b.group(i), GroupHom::trivial(&one, b.group(i)), trivial_action()).unwrap())
        .collect();
    let cone = mapping_cone(&ComplexMorphism::new(a, b.clone(), maps).unwrap()).unwrap();
    for i in 0..=1 {
        assert_eq!(signature(&cone.homology(i).unwrap().group), signature(&b.homology(i).unwrap().group));
    }
}

#[test]
fn long_exact_sequence_of_square_cones() {
    for (name, ad) in instances::square_ads().unwrap() {
        let report = les_check(&square_as_morphism(&inclusion_cube(&ad).unwrap()).unwrap()).unwrap();
        assert!(report.passed(), "{name}: {report:?}");
    }
}

#[test]
fn homotopy_of_multinerve_matches_square_cone() {
    for (name, ad) in instances::square_ads().unwrap() {
        let report = multinerve_vs_cone(&inclusion_cube(&ad).unwrap()).unwrap();
        assert!(report.passed(), "{name}: {report:?}");
        // π_2 is Ker λ ∩ Ker λ′, trivial for inclusions.
        assert_eq!(report.degrees[2].homotopy.order, 1);
    }
}

#[test]
fn kappa_identifies_moore_homology_with_the_cone() {
    let cube = inclusion_cube(&instances::q8_ij().unwrap()).unwrap();
    let report = kappa_check(&square_star_input(&cube, 3).unwrap()).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.degrees.len(), 3);

    let ad = instances::s3_a3().unwrap();
    let target = nerve(&inclusion_crossed_module(ad.part(1)).unwrap(), 3).unwrap();
    let one = trivial();
    let source = constant(&one, 3);
    let levels = (0..=3)
        .map(|n| {
            let h = target.level(n);
            make_crossed_module(source.level(n), h, GroupHom::trivial(source.level(n), h), trivial_action()).unwrap()
        })
        .collect();
    let input = StarInput { source, target: target.clone(), levels };
    let report = kappa_check(&input).unwrap();
    assert!(report.passed(), "{report:?}");
    for d in &report.degrees {
        let pi = homotopy_group(&target, d.degree).unwrap();
        assert_eq!(d.source, signature(&pi.group));
    }
    assert_eq!(m_star(&input).unwrap().level(2).order().unwrap(), target.level(2).order().unwrap());
}

fn normal_pairs() -> Vec<NormalAd> {
    use hopf_core::group::all_subgroups;
    use hopf_core::group::catalog::{abelian, dihedral, symmetric};
    let mut out = Vec::new();
    for g in [abelian(&[2, 2]), cyclic(4), symmetric(3), quaternion(), dihedral(4)] {
        let normal: Vec<Subgroup> = all_subgroups(&g, 8, 64).unwrap().into_iter().filter(Subgroup::is_normal).collect();
        for a in &normal {
            for b in &normal {
                out.push(NormalAd::new(&g, vec![a.clone(), b.clone()]).unwrap());
            }
        }
    }
    out
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]

    #[test]
    fn inclusion_squares_satisfy_the_cone_comparisons(pick in 0usize..1000) {
        let ads = normal_pairs();
        let ad = &ads[pick % ads.len()];
        let cube = inclusion_cube(ad).unwrap();
        let kappa = kappa_check(&square_star_input(&cube, 3).unwrap()).unwrap();
        proptest::prop_assert!(kappa.passed(), "{:?}", kappa);
        let les = les_check(&square_as_morphism(&cube).unwrap()).unwrap();
        proptest::prop_assert!(les.passed(), "{:?}", les);
        let homotopy = multinerve_vs_cone(&cube).unwrap();
        proptest::prop_assert!(homotopy.passed(), "{:?}", homotopy);
    }
}
