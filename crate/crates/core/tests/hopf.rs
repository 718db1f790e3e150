use std::collections::BTreeSet;

use hopf_core::group::catalog::{abelian, cyclic, dihedral, klein_four, quaternion, symmetric};
use hopf_core::group::{all_subgroups, normal_closure, quotient, GroupSignature, IndexSet, NormalAd};
use hopf_core::homology::{bar_h2, bar_homology};
use hopf_core::hopf::{
    aspherical_formula_check, augmented_cube, counterexample_report, cube_from_ad, cube_limit, exactness_check,
    hopf_formula, hopf_h2, induced_ad_check, two_fold_l1, two_fold_vs_one_fold,
};
use hopf_core::instances;
use hopf_core::nilpotent::{free_nilpotent_group, word_element, Letter};
use hopf_core::simplicial::cech_complex;
use hopf_core::{Elem, Group, Subgroup};

fn set(indices: &[usize]) -> IndexSet {
    IndexSet::from_indices(indices)
}

/// Closes a set of elements under multiplication by repeated products.
fn naive_closure(g: &Group, gens: impl IntoIterator<Item = Elem>) -> BTreeSet<Elem> {
    let gens: Vec<Elem> = gens.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let mut out = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for y in &gens {
            let z = g.mul(&x, y);
            if out.insert(z.clone()) {
                frontier.push(z);
            }
        }
    }
    out
}

fn naive_commutators(g: &Group, a: &[Elem], b: &[Elem]) -> BTreeSet<Elem> {
    naive_closure(g, a.iter().flat_map(|x| b.iter().map(move |y| g.comm(x, y))))
}

#[test]
fn cube_nodes_of_an_ad() {
    let cube = cube_from_ad(&instances::s3_a3().unwrap()).unwrap();
    assert_eq!(cube.node(set(&[])).order().unwrap(), 6);
    assert_eq!(cube.node(set(&[1])).order().unwrap(), 2);

    let centre = instances::q8_centre().unwrap().part(1).clone();
    let q = centre.ambient().clone();
    let ad = NormalAd::new(&q, vec![Subgroup::whole(&q).unwrap(), centre]).unwrap();
    let cube = cube_from_ad(&ad).unwrap();
    for a in [set(&[1]), set(&[1, 2])] {
        assert_eq!(cube.node(a).order().unwrap(), 1);
    }
    assert_eq!(cube.node(set(&[2])).order().unwrap(), 4);
}

#[test]
fn cube_limits() {
    let f = instances::z4_onto_z2().unwrap();
    let ad = NormalAd::new(f.source(), vec![f.kernel().unwrap()]).unwrap();
    let cube = cube_from_ad(&ad).unwrap();
    let (limit, canonical) = cube_limit(&cube, set(&[])).unwrap();
    assert_eq!(limit.order().unwrap(), cube.node(set(&[1])).order().unwrap());
    assert!(canonical.is_surjective().unwrap());

    let cube = cube_from_ad(&instances::q8_ij().unwrap()).unwrap();
    let (limit, _) = cube_limit(&cube, set(&[])).unwrap();
    assert_eq!(GroupSignature::of(&limit).unwrap(), GroupSignature::of(&klein_four()).unwrap());

    let q = quaternion();
    let ad = NormalAd::new(&q, vec![Subgroup::trivial(&q), Subgroup::trivial(&q)]).unwrap();
    let cube = cube_from_ad(&ad).unwrap();
    for a in [set(&[]), set(&[1]), set(&[2])] {
        let (limit, canonical) = cube_limit(&cube, a).unwrap();
        assert_eq!(limit.order().unwrap(), 8);
        assert!(canonical.is_bijective().unwrap());
    }
    assert!(cube_limit(&cube, set(&[1, 2])).is_err());
}

#[test]
fn cech_cubes_are_exact_and_come_from_their_face_kernels() {
    for (name, f) in instances::surjections().unwrap() {
        let aug = cech_complex(&f, 2).unwrap();
        for n in 1..=3 {
            let report = exactness_check(&augmented_cube(&aug, n).unwrap()).unwrap();
            assert!(report.exact(), "{name}, n = {n}: {report:?}");
            let (_, nodes) = induced_ad_check(&aug, n).unwrap();
            assert!(nodes.iter().all(|c| c.passed()), "{name}, n = {n}: {nodes:?}");
        }
    }
}

#[test]
fn classical_hopf_formula() {
    let ad = instances::q8_centre().unwrap();
    let report = hopf_h2(ad.ambient(), ad.part(1)).unwrap();
    assert_eq!(report.invariants().unwrap().factors(), &[2]);
    let v4 = quotient(ad.ambient(), ad.part(1)).unwrap().group;
    assert_eq!(bar_h2(&v4).unwrap().factors(), &[2]);
    assert!(bar_h2(ad.ambient()).unwrap().is_trivial());

    let z = cyclic(4);
    let two = hopf_core::group::closure(&z, &[Elem::scalar(2)]).unwrap();
    assert_eq!(hopf_h2(&z, &two).unwrap().order(), 1);
    let s = symmetric(3);
    assert_eq!(hopf_h2(&s, &Subgroup::trivial(&s)).unwrap().order(), 1);
}

#[test]
fn one_part_formula_is_the_classical_one_and_matches_the_bar_oracle() {
    // Every normal subgroup of a group with trivial multiplier.
    for k in [quaternion(), cyclic(4), symmetric(3), cyclic(6), abelian(&[3]), symmetric(4)] {
        if !bar_h2(&k).map(|h| h.is_trivial()).unwrap_or(false) {
            continue;
        }
        for r in all_subgroups(&k, 64, 64).unwrap().into_iter().filter(Subgroup::is_normal) {
            let classical = hopf_h2(&k, &r).unwrap();
            let general = hopf_formula(&NormalAd::new(&k, vec![r.clone()]).unwrap(), 2).unwrap();
            assert!(classical.agrees_with(&general), "{k:?}, |R| = {}", r.order());
            let g = quotient(&k, &r).unwrap().group;
            if g.order().unwrap() <= 64 {
                assert_eq!(classical.invariants().cloned().unwrap_or_default(), bar_h2(&g).unwrap(), "{k:?}/{}", r.order());
            }
        }
    }
}

#[test]
fn formula_with_every_part_whole_is_trivial() {
    let d = dihedral(4);
    for n in 1..=3 {
        let ad = NormalAd::new(&d, vec![Subgroup::whole(&d).unwrap(); n]).unwrap();
        assert_eq!(hopf_formula(&ad, 2).unwrap().order(), 1);
    }
}

#[test]
fn counterexample_quotients() {
    for m in [5u64, 7] {
        let report = counterexample_report(m).unwrap();
        assert_eq!(report.quotient.order() as u64, m);
        assert!(report.quotient.is_cyclic());
        let empty = report.exactness.entry(&[]).unwrap();
        assert!(!empty.surjective);
        assert!(empty.image_order < empty.limit_order);
        assert!(report.corner_h3.is_trivial());
        assert!(report.reproduces());
    }
    assert!(bar_homology(&hopf_core::group::catalog::trivial(), 3).unwrap().is_trivial());
}

#[test]
fn counterexample_quotient_by_brute_force() {
    let m = 5;
    let f = free_nilpotent_group(2, 3, m).unwrap();
    let words = [
        vec![Letter::new(1, false)],
        vec![Letter::new(2, false)],
        vec![Letter::new(1, false), Letter::new(2, true)],
    ];
    let parts: Vec<BTreeSet<Elem>> = words
        .iter()
        .map(|w| normal_closure(&f, &[word_element(&f, w)]).unwrap().members().iter().cloned().collect())
        .collect();
    let meet = |a: IndexSet| -> Vec<Elem> {
        f.elements()
            .unwrap()
            .list
            .iter()
            .filter(|x| a.indices().iter().all(|&i| parts[i - 1].contains(*x)))
            .cloned()
            .collect()
    };
    let all = f.elements().unwrap().list.clone();
    let derived = naive_commutators(&f, &all, &all);
    let numerator: Vec<Elem> = meet(set(&[1, 2, 3])).into_iter().filter(|x| derived.contains(x)).collect();
    let full = set(&[1, 2, 3]);
    let mut gens = BTreeSet::new();
    for a in full.subsets() {
        for b in full.subsets() {
            if a.union(b) == full {
                let (ma, mb) = (meet(a), meet(b));
                gens.extend(naive_commutators(&f, &ma, &mb));
            }
        }
    }
    let denominator = naive_closure(&f, gens);
    assert_eq!(numerator.len() / denominator.len(), m as usize);
    assert_eq!(counterexample_report(m).unwrap().quotient.order(), numerator.len() / denominator.len());
}

#[test]
fn aspherical_formula_routes_agree() {
    for (name, f) in instances::surjections().unwrap() {
        let aug = cech_complex(&f, 3).unwrap();
        for n in 1..=2 {
            for k in 2..=3 {
                let report = aspherical_formula_check(&aug, n, k).unwrap();
                assert!(report.aspherical, "{name}");
                assert!(report.equal(), "{name}, n = {n}, k = {k}: {report:?}");
            }
        }
    }
    let aug = cech_complex(&instances::q8_onto_v4().unwrap(), 2).unwrap();
    assert_eq!(aspherical_formula_check(&aug, 1, 2).unwrap().formula.order(), 2);
    let aug = cech_complex(&instances::z4_onto_z2().unwrap(), 2).unwrap();
    assert_eq!(aspherical_formula_check(&aug, 1, 2).unwrap().formula.order(), 1);
    assert!(aspherical_formula_check(&aug, 2, 2).is_err());
}

#[test]
fn two_fold_formula() {
    let ad = instances::d4_square().unwrap();
    let (f, r1) = (ad.ambient(), ad.part(1));
    assert_eq!(two_fold_l1(f, r1, r1, 2).unwrap().order(), 1);
    assert_eq!(two_fold_l1(f, r1, &Subgroup::whole(f).unwrap(), 3).unwrap().order(), 1);

    // In the class-2 quotient, ncl(x1) ∩ ncl(x2) is the centre, which is
    // already Γ_2, so both lattices coincide.
    for m in [3u64, 5] {
        let g = free_nilpotent_group(2, 2, m).unwrap();
        let x = g.generators();
        let r1 = normal_closure(&g, &[x[0].clone()]).unwrap();
        let r2 = normal_closure(&g, &[x[1].clone()]).unwrap();
        let all = g.elements().unwrap().list.clone();
        let gamma = naive_commutators(&g, &all, &all);
        let with_gamma = |r: &Subgroup| naive_closure(&g, r.members().iter().cloned().chain(gamma.iter().cloned()));
        let numerator: BTreeSet<Elem> = with_gamma(&r1).intersection(&with_gamma(&r2)).cloned().collect();
        let meet: Vec<Elem> = r1.members().iter().filter(|x| r2.contains(x)).cloned().collect();
        let denominator = naive_closure(&g, meet.into_iter().chain(gamma.iter().cloned()));
        let report = two_fold_l1(&g, &r1, &r2, 2).unwrap();
        assert_eq!(report.order(), numerator.len() / denominator.len());
        assert_eq!(report.order(), 1);
    }
}

#[test]
fn two_fold_formula_matches_one_fold_on_cech_data() {
    for (name, f) in instances::surjections().unwrap() {
        for k in [2, 3] {
            let c = two_fold_vs_one_fold(&f, k).unwrap();
            assert!(c.equal(), "{name}, k = {k}: {c:?}");
        }
    }
}
