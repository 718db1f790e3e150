use hopf_core::group::catalog::{abelian, cyclic, dihedral, klein_four, quaternion, symmetric, table_group};
use hopf_core::group::{
    abelian_invariants, all_subgroups, closure, commutator_subgroup, direct_product, fiber_product, find_simplicity_witness,
    intersect, is_simple_ad, lower_central, lower_central_by_products, normal_closure, product_subgroup, quotient,
    semidirect_product, z_k, Action, GroupSignature, IndexSet, NormalAd,
};
use hopf_core::{Elem, Error, Group, GroupHom, Subgroup};
use std::collections::BTreeSet;
use std::sync::Arc;

fn perm(p: &[u32]) -> Elem {
    Elem::from_slice(p)
}

/// Brute-force closure: keep multiplying until nothing new appears.
fn naive_closure(g: &Group, gens: &[Elem]) -> BTreeSet<Elem> {
    let mut set: BTreeSet<Elem> = BTreeSet::from([g.identity()]);
    loop {
        let mut grew = false;
        let cur: Vec<Elem> = set.iter().cloned().collect();
        for a in &cur {
            for b in gens {
                if set.insert(g.mul(a, b)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

fn naive_commutator(g: &Group, a: &Subgroup, b: &Subgroup) -> BTreeSet<Elem> {
    let mut comms = Vec::new();
    for x in a.members() {
        for y in b.members() {
            comms.push(g.comm(x, y));
        }
    }
    naive_closure(g, &comms)
}

fn set_of(s: &Subgroup) -> BTreeSet<Elem> {
    s.members().iter().cloned().collect()
}

fn q8_units() -> (Group, Elem, Elem, Elem) {
    let q = quaternion();
    let gens = q.generators();
    let minus = q.mul(&gens[0], &gens[0]);
    (q.clone(), gens[0].clone(), gens[1].clone(), minus)
}

#[test]
fn closure_examples() {
    let s3 = symmetric(3);
    let c = closure(&s3, &[perm(&[1, 0, 2]), perm(&[2, 1, 0])]).unwrap();
    assert_eq!(c.order(), 6);
    assert_eq!(set_of(&c), naive_closure(&s3, &[perm(&[1, 0, 2]), perm(&[2, 1, 0])]));
    assert!(closure(&s3, &[]).unwrap().is_trivial());
    let z6 = cyclic(6);
    let c = closure(&z6, &[Elem::scalar(2)]).unwrap();
    assert_eq!(c.members(), &[Elem::scalar(0), Elem::scalar(2), Elem::scalar(4)]);
}

#[test]
fn normal_closure_examples() {
    let s3 = symmetric(3);
    assert_eq!(normal_closure(&s3, &[perm(&[1, 0, 2])]).unwrap().order(), 6);
    let a3 = normal_closure(&s3, &[perm(&[1, 2, 0])]).unwrap();
    assert_eq!(a3.order(), 3);
    assert!(a3.is_normal());
    let z12 = cyclic(12);
    let c = normal_closure(&z12, &[Elem::scalar(4)]).unwrap();
    assert_eq!(set_of(&c), naive_closure(&z12, &[Elem::scalar(4)]));
}

#[test]
fn commutator_examples() {
    let s3 = symmetric(3);
    let whole = Subgroup::whole(&s3).unwrap();
    let c = commutator_subgroup(&whole, &whole).unwrap();
    assert_eq!(set_of(&c), naive_commutator(&s3, &whole, &whole));
    assert_eq!(c.order(), 3);
    assert!(commutator_subgroup(&whole, &Subgroup::trivial(&s3)).unwrap().is_trivial());
    let (q, _, _, minus) = q8_units();
    let wq = Subgroup::whole(&q).unwrap();
    let c = commutator_subgroup(&wq, &wq).unwrap();
    assert_eq!(set_of(&c), BTreeSet::from([q.identity(), minus]));
}

#[test]
fn intersections_and_products() {
    let s3 = symmetric(3);
    let a3 = closure(&s3, &[perm(&[1, 2, 0])]).unwrap();
    let t = closure(&s3, &[perm(&[1, 0, 2])]).unwrap();
    assert!(intersect(&a3, &t).unwrap().is_trivial());
    assert!(intersect(&a3, &a3).unwrap().same_set(&a3));
    assert_eq!(product_subgroup(&a3, &t).unwrap().order(), 6);
    assert!(product_subgroup(&a3, &Subgroup::trivial(&s3)).unwrap().same_set(&a3));
    let (q, i, j, minus) = q8_units();
    let ci = closure(&q, &[i]).unwrap();
    let cj = closure(&q, &[j]).unwrap();
    let centre = closure(&q, &[minus]).unwrap();
    assert!(intersect(&centre, &ci).unwrap().same_set(&centre));
    assert_eq!(product_subgroup(&ci, &cj).unwrap().order(), 8);
    let s4 = symmetric(4);
    let t1 = closure(&s4, &[perm(&[1, 0, 2, 3])]).unwrap();
    let t2 = closure(&s4, &[perm(&[0, 2, 1, 3])]).unwrap();
    assert!(matches!(product_subgroup(&t1, &t2), Err(Error::NotASubgroup(_))));
}

#[test]
fn lower_central_examples() {
    let (q, _, _, _) = q8_units();
    assert_eq!(lower_central(&q, 2).unwrap().order(), 2);
    assert!(lower_central(&q, 3).unwrap().is_trivial());
    assert!(lower_central(&abelian(&[2, 4]), 2).unwrap().is_trivial());
    let s3 = symmetric(3);
    assert_eq!(lower_central(&s3, 2).unwrap().order(), 3);
    assert_eq!(lower_central(&s3, 3).unwrap().order(), 3);
}

#[test]
fn lower_central_two_definitions_agree() {
    let groups = [symmetric(3), symmetric(4), quaternion(), dihedral(4), dihedral(8), dihedral(6)];
    for g in &groups {
        let products = lower_central_by_products(g, 5).unwrap();
        for k in 1..=5 {
            assert!(lower_central(g, k).unwrap().same_set(&products[k - 1]), "{g:?} at k={k}");
        }
    }
}

#[test]
fn quotients() {
    let s3 = symmetric(3);
    let a3 = closure(&s3, &[perm(&[1, 2, 0])]).unwrap();
    assert_eq!(quotient(&s3, &a3).unwrap().group.order().unwrap(), 2);
    let qm = quotient(&s3, &Subgroup::trivial(&s3)).unwrap();
    assert!(qm.projection.is_bijective().unwrap());
    let (q, _, _, minus) = q8_units();
    let v = quotient(&q, &closure(&q, &[minus]).unwrap()).unwrap();
    let vg = &v.group;
    assert_eq!(vg.order().unwrap(), 4);
    for x in &vg.elements().unwrap().list {
        if !vg.is_identity(x) {
            assert_eq!(vg.element_order(x), 2);
        }
    }
    v.projection.verify().unwrap();
    assert_eq!(abelian_invariants(vg).unwrap().factors(), &[2, 2]);
    let t = closure(&s3, &[perm(&[1, 0, 2])]).unwrap();
    assert!(matches!(quotient(&s3, &t), Err(Error::NotNormal(_))));
    // Coset representatives are the least members.
    for x in &q.elements().unwrap().list {
        let r = v.rep(x);
        assert!(r <= *x);
        assert!(v.rep(&r) == r);
    }
}

#[test]
fn z_k_examples() {
    let s3 = symmetric(3);
    assert_eq!(z_k(&s3, 2).unwrap().group.order().unwrap(), 2);
    let a = abelian(&[2, 3]);
    assert_eq!(z_k(&a, 2).unwrap().group.order().unwrap(), 6);
    assert_eq!(z_k(&quaternion(), 3).unwrap().group.order().unwrap(), 8);
}

#[test]
fn fiber_products() {
    let (q, _, _, minus) = q8_units();
    let p = quotient(&q, &closure(&q, &[minus]).unwrap()).unwrap().projection;
    let (fp, a, b) = fiber_product(&p, &p).unwrap();
    assert_eq!(fp.order().unwrap(), 16);
    a.verify().unwrap();
    b.verify().unwrap();
    let z2 = cyclic(2);
    let z3 = cyclic(3);
    let one = cyclic(1);
    let (fp, _, _) = fiber_product(&GroupHom::trivial(&z2, &one), &GroupHom::trivial(&z3, &one)).unwrap();
    assert_eq!(fp.order().unwrap(), 6);
    let s3 = symmetric(3);
    let id = GroupHom::identity(&s3);
    let (fp, _, _) = fiber_product(&id, &id).unwrap();
    assert_eq!(fp.order().unwrap(), 6);
}

#[test]
fn semidirect_products() {
    let z3 = cyclic(3);
    let z2 = cyclic(2);
    let inversion: Action = Arc::new(|h: &Elem, n: &Elem| {
        if h.as_slice()[0] == 1 {
            Elem::scalar((3 - n.as_slice()[0]) % 3)
        } else {
            n.clone()
        }
    });
    let s = semidirect_product(&z3, &z2, inversion).unwrap();
    assert_eq!(s.order().unwrap(), 6);
    assert!(!s.is_abelian());
    assert_eq!(GroupSignature::of(&s).unwrap(), GroupSignature::of(&symmetric(3)).unwrap());
    let trivial_act: Action = Arc::new(|_: &Elem, n: &Elem| n.clone());
    let d = semidirect_product(&z3, &z2, trivial_act.clone()).unwrap();
    assert!(d.is_abelian());
    assert_eq!(d.order().unwrap(), 6);
    let n = semidirect_product(&z3, &cyclic(1), trivial_act).unwrap();
    assert_eq!(n.order().unwrap(), 3);
    let bad: Action = Arc::new(|h: &Elem, n: &Elem| if h.as_slice()[0] == 1 { Elem::scalar(0) } else { n.clone() });
    assert!(matches!(semidirect_product(&z3, &z2, bad), Err(Error::NotAnAction(_))));
}

#[test]
fn homomorphisms() {
    let s3 = symmetric(3);
    let z2 = cyclic(2);
    let sign = GroupHom::from_images(&s3, &z2, &[Elem::scalar(1), Elem::scalar(0)]).unwrap();
    sign.verify().unwrap();
    assert_eq!(sign.kernel().unwrap().order(), 3);
    let id = GroupHom::identity(&s3);
    assert!(id.kernel().unwrap().is_trivial());
    assert_eq!(id.image().unwrap().order(), 6);
    assert_eq!(GroupHom::trivial(&s3, &z2).kernel().unwrap().order(), 6);
    assert!(matches!(
        GroupHom::from_images(&s3, &z2, &[Elem::scalar(1), Elem::scalar(1)]),
        Err(Error::NotAHomomorphism(_))
    ));
}

#[test]
fn d_k_examples() {
    let s3 = symmetric(3);
    let a3 = closure(&s3, &[perm(&[1, 2, 0])]).unwrap();
    let ad = NormalAd::new(&s3, vec![a3.clone()]).unwrap();
    assert!(ad.d_k(IndexSet::from_indices(&[1]), 2).unwrap().same_set(&a3));
    let (q, _, _, minus) = q8_units();
    let centre = closure(&q, &[minus]).unwrap();
    let ad = NormalAd::new(&q, vec![centre]).unwrap();
    assert!(ad.d_k(IndexSet::from_indices(&[1]), 2).unwrap().is_trivial());
}

fn test_ads() -> Vec<NormalAd> {
    let mut out = Vec::new();
    let (q, i, j, minus) = q8_units();
    let ci = closure(&q, &[i.clone()]).unwrap();
    let cj = closure(&q, &[j]).unwrap();
    let centre = closure(&q, &[minus]).unwrap();
    out.push(NormalAd::new(&q, vec![ci.clone(), cj.clone()]).unwrap());
    out.push(NormalAd::new(&q, vec![ci, centre.clone(), cj]).unwrap());
    let d4 = dihedral(4);
    let g = d4.generators();
    let r = closure(&d4, &[g[0].clone()]).unwrap();
    let r2s = closure(&d4, &[d4.mul(&g[0], &g[0]), g[1].clone()]).unwrap();
    out.push(NormalAd::new(&d4, vec![r, r2s]).unwrap());
    let s4 = symmetric(4);
    let v4 = closure(&s4, &[perm(&[1, 0, 3, 2]), perm(&[2, 3, 0, 1])]).unwrap();
    let a4 = normal_closure(&s4, &[perm(&[1, 2, 0, 3])]).unwrap();
    out.push(NormalAd::new(&s4, vec![a4, v4]).unwrap());
    out
}

#[test]
fn d_k_of_empty_set_is_lower_central() {
    for ad in test_ads() {
        for k in 1..=4 {
            let gamma = lower_central(ad.ambient(), k).unwrap();
            assert!(ad.d_k(IndexSet::EMPTY, k).unwrap().same_set(&gamma), "{ad:?} k={k}");
        }
    }
}

#[test]
fn d_k_is_monotone_and_nested() {
    for ad in test_ads() {
        let full = ad.full_set();
        for a in full.subsets() {
            for b in full.subsets() {
                for k in 1..=3 {
                    let big = ad.d_k(a.union(b), k).unwrap();
                    assert!(big.is_subset_of(&ad.d_k(a, k).unwrap()));
                }
            }
            for k in 1..=3 {
                assert!(ad.d_k(a, k + 1).unwrap().is_subset_of(&ad.d_k(a, k).unwrap()));
            }
        }
    }
}

#[test]
fn d_2_matches_brute_force_formula() {
    // D_2(F; A) = ∏_{B ⊆ A} [∩_B R, ∩_{A∖B} R] with every ordered cover.
    for ad in test_ads() {
        let full = ad.full_set();
        for a in full.subsets() {
            let mut gens = Vec::new();
            for b in a.subsets() {
                for c in a.subsets() {
                    if b.union(c) == a {
                        let x = ad.meet(b).unwrap();
                        let y = ad.meet(c).unwrap();
                        let g = ad.ambient();
                        gens.extend(naive_commutator(g, &x, &y));
                    }
                }
            }
            let expect = naive_closure(ad.ambient(), &gens);
            assert_eq!(set_of(&ad.d_k(a, 2).unwrap()), expect, "{ad:?} at {a:?}");
        }
    }
}

#[test]
fn simplicity() {
    let (q, _, _, minus) = q8_units();
    let centre = closure(&q, &[minus]).unwrap();
    let ad = NormalAd::new(&q, vec![centre]).unwrap();
    let v = is_simple_ad(&ad, 1, None, 64).unwrap();
    assert!(!v.simple);
    assert!(matches!(find_simplicity_witness(&ad, 1, 64), Err(Error::NotFound(_))));
    let s3 = symmetric(3);
    let whole = Subgroup::whole(&s3).unwrap();
    let ad = NormalAd::new(&s3, vec![whole]).unwrap();
    assert!(is_simple_ad(&ad, 1, Some(&Subgroup::trivial(&s3)), 64).unwrap().simple);
    let a3 = closure(&s3, &[perm(&[1, 2, 0])]).unwrap();
    let ad = NormalAd::new(&s3, vec![a3]).unwrap();
    let v = is_simple_ad(&ad, 1, None, 64).unwrap();
    assert!(v.simple);
    assert_eq!(v.witness.unwrap().order(), 2);
    assert!(matches!(is_simple_ad(&ad, 1, None, 4), Err(Error::SearchSpaceExceeded(_))));
}

#[test]
fn subgroup_lattice_counts() {
    // Known lattice sizes: S3 has 6 subgroups, Q8 has 6, D4 has 10, S4 has 30.
    assert_eq!(all_subgroups(&symmetric(3), 100, 1000).unwrap().len(), 6);
    assert_eq!(all_subgroups(&quaternion(), 100, 1000).unwrap().len(), 6);
    assert_eq!(all_subgroups(&dihedral(4), 100, 1000).unwrap().len(), 10);
    assert_eq!(all_subgroups(&symmetric(4), 100, 1000).unwrap().len(), 30);
}

#[test]
fn abelian_invariant_examples() {
    assert_eq!(abelian_invariants(&abelian(&[2, 4])).unwrap().factors(), &[2, 4]);
    assert!(abelian_invariants(&cyclic(1)).unwrap().is_trivial());
    assert_eq!(abelian_invariants(&abelian(&[4, 6])).unwrap().factors(), &[2, 12]);
    assert_eq!(abelian_invariants(&abelian(&[2, 3])).unwrap().factors(), &[6]);
    assert_eq!(abelian_invariants(&klein_four()).unwrap().factors(), &[2, 2]);
    assert!(matches!(abelian_invariants(&symmetric(3)), Err(Error::NotAbelian)));
}

#[test]
fn invariants_survive_relabelling() {
    // Z/2 × Z/4 as a table, then with its labels scrambled.
    let g = abelian(&[2, 4]);
    let els = g.elements().unwrap();
    let idx = |x: &Elem| els.index[x];
    let table: Vec<Vec<u32>> = els.list.iter().map(|a| els.list.iter().map(|b| idx(&g.mul(a, b))).collect()).collect();
    let scramble = [5u32, 2, 7, 0, 3, 6, 1, 4];
    let mut t2 = vec![vec![0u32; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            t2[scramble[a] as usize][scramble[b] as usize] = scramble[table[a][b] as usize];
        }
    }
    let (h1, map1) = table_group(&table, "t").unwrap();
    let (h2, map2) = table_group(&t2, "t2").unwrap();
    for x in 1..8usize {
        let n1 = closure(&h1, &[Elem::scalar(map1[x])]).unwrap();
        let n2 = closure(&h2, &[Elem::scalar(map2[scramble[x] as usize])]).unwrap();
        assert_eq!(n1.order(), n2.order());
        let q1 = abelian_invariants(&quotient(&h1, &n1).unwrap().group).unwrap();
        let q2 = abelian_invariants(&quotient(&h2, &n2).unwrap().group).unwrap();
        assert_eq!(q1, q2);
    }
    assert_eq!(abelian_invariants(&h1).unwrap(), abelian_invariants(&h2).unwrap());
}

#[test]
fn group_axioms_hold_for_catalog() {
    for g in [symmetric(4), quaternion(), dihedral(5), abelian(&[3, 3]), direct_product(&[quaternion(), cyclic(2)])] {
        g.check_axioms(512, 10_000, 7).unwrap();
    }
}
