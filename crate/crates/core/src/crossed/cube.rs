use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::module::CrossedModule;
use super::PAIR_BUDGET;
use crate::error::{Error, Result};
use crate::group::{closure, quotient, Action, Elem, Group, GroupHom, IndexSet, NormalAd, QuotientMap, Subgroup};

/// `h: M_A × M_B → M_{A∪B}`, called as `h(A, a, B, b)`.
pub type Pairing = Arc<dyn Fn(IndexSet, &Elem, IndexSet, &Elem) -> Elem + Send + Sync>;

/// Groups `M_A` for every `A ⊆ {1..n}`, homomorphisms `μ_i: M_A → M_{A∖i}`
/// for `i ∈ A`, and pairings `h`. Components are indexed by the bitmask of
/// `A`. Nothing is assumed about the data; see [`super::verify_cube_axioms`].
#[derive(Clone)]
pub struct CrossedCube {
    dim: usize,
    groups: Vec<Group>,
    mus: Vec<Vec<Option<GroupHom>>>,
    h: Pairing,
    origin: Option<NormalAd>,
}

impl std::fmt::Debug for CrossedCube {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CrossedCube(dim {}, {:?})", self.dim, self.groups)
    }
}

impl CrossedCube {
    /// `mus[A][i - 1]` must be present exactly when `i ∈ A`, running from
    /// `groups[A]` to `groups[A ∖ i]`.
    pub fn new(dim: usize, groups: Vec<Group>, mus: Vec<Vec<Option<GroupHom>>>, h: Pairing) -> Result<Self> {
        let size = 1usize << dim;
        if groups.len() != size || mus.len() != size {
            return Err(Error::InvalidParameter(format!("a crossed {dim}-cube needs {size} components")));
        }
        for mask in 0..size {
            let a = IndexSet(mask as u32);
            if mus[mask].len() != dim {
                return Err(Error::InvalidParameter(format!("component {a:?} needs {dim} μ slots")));
            }
            for i in 1..=dim {
                match (&mus[mask][i - 1], a.contains(i)) {
                    (Some(f), true) => {
                        let b = a.without(i);
                        if !f.source().same(&groups[mask]) || !f.target().same(&groups[b.0 as usize]) {
                            return Err(Error::InvalidParameter(format!("μ_{i} on {a:?} has the wrong endpoints")));
                        }
                    }
                    (None, false) => {}
                    (Some(_), false) => {
                        return Err(Error::InvalidParameter(format!("μ_{i} given on {a:?}, which omits {i}")))
                    }
                    (None, true) => return Err(Error::InvalidParameter(format!("μ_{i} missing on {a:?}"))),
                }
            }
        }
        Ok(CrossedCube { dim, groups, mus, h, origin: None })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn full_set(&self) -> IndexSet {
        IndexSet::full(self.dim)
    }

    pub fn group(&self, a: IndexSet) -> &Group {
        &self.groups[a.0 as usize]
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    /// `μ_i: M_A → M_{A∖i}`, or `None` when `i ∉ A`.
    pub fn mu_hom(&self, i: usize, a: IndexSet) -> Option<&GroupHom> {
        self.mus[a.0 as usize][i - 1].as_ref()
    }

    /// `μ_i(x)` for `x ∈ M_A`; the identity map when `i ∉ A`.
    pub fn mu(&self, i: usize, a: IndexSet, x: &Elem) -> Elem {
        match self.mu_hom(i, a) {
            Some(f) => f.apply(x),
            None => x.clone(),
        }
    }

    /// Composite of `μ_i` over every `i ∈ A`, landing in `M_∅`.
    pub fn to_base(&self, a: IndexSet, x: &Elem) -> Elem {
        let mut set = a;
        let mut y = x.clone();
        for i in a.indices() {
            y = self.mu(i, set, &y);
            set = set.without(i);
        }
        y
    }

    pub fn h(&self, a: IndexSet, x: &Elem, b: IndexSet, y: &Elem) -> Elem {
        (self.h)(a, x, b, y)
    }

    pub fn pairing(&self) -> &Pairing {
        &self.h
    }

    /// `ˣy = h(x, y) y` for `x ∈ M_A`, `y ∈ M_B`, `A ⊆ B`.
    pub fn act(&self, a: IndexSet, x: &Elem, b: IndexSet, y: &Elem) -> Elem {
        debug_assert!(a.is_subset_of(b), "action needs {a:?} ⊆ {b:?}");
        self.group(b).mul(&self.h(a, x, b, y), y)
    }

    /// The normal ad this cube was built from, for inclusion cubes.
    pub fn origin(&self) -> Option<&NormalAd> {
        self.origin.as_ref()
    }

    /// Replaces the pairing, keeping groups and maps. Used to build
    /// deliberately broken cubes in tests and diagnostics.
    pub fn with_pairing(&self, h: Pairing) -> CrossedCube {
        CrossedCube { h, origin: None, ..self.clone() }
    }

    /// The crossed module `M_{1} → M_∅` of a 1-cube, with `ᵖm = h(p, m) m`.
    pub fn to_crossed_module(&self) -> Result<CrossedModule> {
        if self.dim != 1 {
            return Err(Error::InvalidParameter(format!("a {}-cube is not a crossed module", self.dim)));
        }
        let one = IndexSet::from_indices(&[1]);
        let cube = self.clone();
        let act: Action = Arc::new(move |p: &Elem, m: &Elem| cube.act(IndexSet::EMPTY, p, one, m));
        let mu = self.mu_hom(1, one).expect("present").clone();
        super::make_crossed_module(self.group(one), self.group(IndexSet::EMPTY), mu, act)
    }
}

/// The inclusion cube of a normal ad: `M_A = ∩_{i∈A} R_i`, `μ_i` the
/// inclusions and `h` the commutator in `F`. `M_∅` is `F` itself.
pub fn inclusion_cube(ad: &NormalAd) -> Result<CrossedCube> {
    let f = ad.ambient().clone();
    let dim = ad.len();
    let full = ad.full_set();
    let mut groups = Vec::with_capacity(1 << dim);
    for a in full.subsets() {
        groups.push(if a.is_empty() { f.clone() } else { ad.meet(a)?.as_group() });
    }
    let mus = structural_mus(dim, &groups, |_, _, x| x.clone());
    let fh = f.clone();
    let h: Pairing = Arc::new(move |_, x: &Elem, _, y: &Elem| fh.comm(x, y));
    let mut cube = CrossedCube::new(dim, groups, mus, h)?;
    cube.origin = Some(ad.clone());
    Ok(cube)
}

fn structural_mus(
    dim: usize,
    groups: &[Group],
    f: impl Fn(usize, IndexSet, &Elem) -> Elem + Clone + Send + Sync + 'static,
) -> Vec<Vec<Option<GroupHom>>> {
    (0..groups.len())
        .map(|mask| {
            let a = IndexSet(mask as u32);
            (1..=dim)
                .map(|i| {
                    a.contains(i).then(|| {
                        let f = f.clone();
                        GroupHom::from_fn(&groups[mask], &groups[a.without(i).0 as usize], move |x| f(i, a, x))
                    })
                })
                .collect()
        })
        .collect()
}

/// Quotient cube `M_A / K_A` for normal subgroups `K_A ⊆ M_A` (given as
/// subgroups of `M_A`), with `μ̃` and `h̃` computed on canonical coset
/// representatives. Each induced map is re-evaluated on a second
/// representative set, the largest member of every coset, and must agree.
fn quotient_cube(cube: &CrossedCube, kernels: &[Subgroup], what: &str) -> Result<CrossedCube> {
    let dim = cube.dim;
    let mut qs = Vec::with_capacity(kernels.len());
    for (mask, k) in kernels.iter().enumerate() {
        qs.push(quotient(&cube.groups[mask], &k.rehome(&cube.groups[mask]))?);
    }
    let groups: Vec<Group> = qs.iter().map(|q| q.group.clone()).collect();
    let qs = Arc::new(qs);
    let inner = cube.clone();
    let qm = qs.clone();
    let mus = structural_mus(dim, &groups, move |i, a, x| qm[a.without(i).0 as usize].rep(&inner.mu(i, a, x)));
    let inner = cube.clone();
    let qh = qs.clone();
    let h: Pairing = Arc::new(move |a, x: &Elem, b, y: &Elem| qh[a.union(b).0 as usize].rep(&inner.h(a, x, b, y)));
    let out = CrossedCube::new(dim, groups, mus, h)?;
    check_well_defined(cube, &out, &qs, what)?;
    Ok(out)
}

fn check_well_defined(cube: &CrossedCube, out: &CrossedCube, qs: &[QuotientMap], what: &str) -> Result<()> {
    let size = qs.len();
    let mut alt: Vec<FxHashMap<Elem, Elem>> = Vec::with_capacity(size);
    for (mask, q) in qs.iter().enumerate() {
        let mut m: FxHashMap<Elem, Elem> = FxHashMap::default();
        for x in &cube.groups[mask].elements()?.list {
            let r = q.rep(x);
            let e = m.entry(r).or_insert_with(|| x.clone());
            if *x > *e {
                *e = x.clone();
            }
        }
        alt.push(m);
    }
    let fail = |map: String, witness: String| Error::AxiomViolation { axiom: format!("{what}: {map} well defined"), witness };
    for mask in 0..size {
        let a = IndexSet(mask as u32);
        for (r, s) in &alt[mask] {
            for i in a.indices() {
                let b = a.without(i);
                if qs[b.0 as usize].rep(&cube.mu(i, a, s)) != out.mu(i, a, r) {
                    return Err(fail(format!("μ_{i}"), format!("{a:?}: {r:?} vs {s:?}")));
                }
            }
        }
    }
    let mut evaluated = 0usize;
    for ma in 0..size {
        for mb in 0..size {
            let (a, b) = (IndexSet(ma as u32), IndexSet(mb as u32));
            let target = &qs[a.union(b).0 as usize];
            evaluated += alt[ma].len() * alt[mb].len();
            if evaluated > PAIR_BUDGET {
                // Fall back to generators of the kernels, which decides the
                // question exactly for pairings that are multiplicative in
                // each argument up to the action.
                return check_well_defined_on_generators(cube, qs, what);
            }
            for (r, s) in &alt[ma] {
                for (r2, s2) in &alt[mb] {
                    if target.rep(&cube.h(a, s, b, s2)) != out.h(a, r, b, r2) {
                        return Err(fail("h".into(), format!("{a:?} {r:?}, {b:?} {r2:?}")));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_well_defined_on_generators(cube: &CrossedCube, qs: &[QuotientMap], what: &str) -> Result<()> {
    let size = qs.len();
    for ma in 0..size {
        for mb in 0..size {
            let (a, b) = (IndexSet(ma as u32), IndexSet(mb as u32));
            let target = &qs[a.union(b).0 as usize];
            let e = target.group.identity();
            for d in qs[ma].kernel.gens() {
                for y in cube.groups[mb].generators() {
                    if target.rep(&cube.h(a, d, b, &y)) != e || target.rep(&cube.h(b, &y, a, d)) != e {
                        return Err(Error::AxiomViolation {
                            axiom: format!("{what}: h well defined"),
                            witness: format!("kernel element {d:?} of {a:?} against {y:?} in {b:?}"),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// `B_k(M)_A = M_A / D_k(F; A)` for an inclusion cube, with induced `μ̃`
/// and `h̃(x̄, ȳ) = [x, y]` modulo `D_k(F; A ∪ B)`.
pub fn b_k_cube(cube: &CrossedCube, k: usize) -> Result<CrossedCube> {
    let ad = cube
        .origin()
        .ok_or_else(|| Error::InvalidParameter("B_k is defined for inclusion cubes only".into()))?
        .clone();
    if k < 2 {
        return Err(Error::InvalidParameter(format!("B_k needs k >= 2, got {k}")));
    }
    let mut kernels = Vec::with_capacity(1 << cube.dim);
    for a in cube.full_set().subsets() {
        let d = ad.d_k(a, k)?;
        let m = ad.meet(a)?;
        if !d.is_subset_of(&m) {
            return Err(Error::InclusionViolation(format!("D_{k}(F; {a:?}) is not inside its component")));
        }
        kernels.push(d);
    }
    quotient_cube(cube, &kernels, &format!("B_{k}"))
}

/// Denominators of the abelianization of a cube: for each `A`, the
/// subgroup of `M_A` generated by every `h(b, c)` with `B ∪ C = A`.
pub fn ab_cube_denominators(cube: &CrossedCube) -> Result<Vec<Subgroup>> {
    let full = cube.full_set();
    let mut out = Vec::with_capacity(1 << cube.dim);
    for a in full.subsets() {
        let mut gens = Vec::new();
        for b in a.subsets() {
            for c in a.subsets() {
                if b.union(c) != a {
                    continue;
                }
                let (gb, gc) = (cube.group(b).elements()?, cube.group(c).elements()?);
                for x in &gb.list {
                    for y in &gc.list {
                        gens.push(cube.h(b, x, c, y));
                    }
                }
            }
        }
        gens.sort_unstable();
        gens.dedup();
        let sub = closure(cube.group(a), &gens)?;
        if !sub.is_normal() {
            return Err(Error::NotNormal(format!("abelianization denominator at {a:?}")));
        }
        out.push(sub);
    }
    Ok(out)
}

/// `Ab(M)_A = M_A / ∏_{B∪C=A} D_{B,C}` with trivial pairings.
pub fn ab_cube(cube: &CrossedCube) -> Result<CrossedCube> {
    let kernels = ab_cube_denominators(cube)?;
    quotient_cube(cube, &kernels, "Ab")
}

/// The data of a crossed square
/// ```text
///   L --λ--> M
///   |λ'      |μ
///   v        v
///   N --ν--> P
/// ```
/// with `P` acting on `L`, `M`, `N` and a pairing `M × N → L`.
#[derive(Clone)]
pub struct SquareData {
    pub l: Group,
    pub m: Group,
    pub n: Group,
    pub p: Group,
    pub lambda: GroupHom,
    pub lambda_prime: GroupHom,
    pub mu: GroupHom,
    pub nu: GroupHom,
    pub act_l: Action,
    pub act_m: Action,
    pub act_n: Action,
    pub pairing: Arc<dyn Fn(&Elem, &Elem) -> Elem + Send + Sync>,
}

const SQ_P: IndexSet = IndexSet(0);
const SQ_M: IndexSet = IndexSet(1);
const SQ_N: IndexSet = IndexSet(2);

/// A crossed square as a 2-cube: `M_{12} = L`, `M_{1} = M`, `M_{2} = N`,
/// `M_∅ = P`. So `μ_2: L → M` is `λ`, `μ_1: L → N` is `λ'`, `μ_1: M → P` is
/// `μ` and `μ_2: N → P` is `ν`. Pairings between nested components come
/// from the actions through `P`; the pairing between `M` and `N` is the
/// given one.
pub fn crossed_square(data: SquareData) -> Result<CrossedCube> {
    let groups = vec![data.p.clone(), data.m.clone(), data.n.clone(), data.l.clone()];
    let mus = vec![
        vec![None, None],
        vec![Some(data.mu.clone()), None],
        vec![None, Some(data.nu.clone())],
        vec![Some(data.lambda_prime.clone()), Some(data.lambda.clone())],
    ];
    let d = data.clone();
    let to_p = move |a: IndexSet, x: &Elem| -> Elem {
        match a {
            SQ_P => x.clone(),
            SQ_M => d.mu.apply(x),
            SQ_N => d.nu.apply(x),
            _ => d.mu.apply(&d.lambda.apply(x)),
        }
    };
    let d = data;
    let h: Pairing = Arc::new(move |a: IndexSet, x: &Elem, b: IndexSet, y: &Elem| -> Elem {
        let grp = |s: IndexSet| match s {
            SQ_P => &d.p,
            SQ_M => &d.m,
            SQ_N => &d.n,
            _ => &d.l,
        };
        let act = |s: IndexSet, p: &Elem, z: &Elem| match s {
            SQ_P => d.p.conj(p, z),
            SQ_M => (d.act_m)(p, z),
            SQ_N => (d.act_n)(p, z),
            _ => (d.act_l)(p, z),
        };
        if a == b {
            return grp(a).comm(x, y);
        }
        if a.is_subset_of(b) {
            let g = grp(b);
            return g.mul(&act(b, &to_p(a, x), y), &g.inv(y));
        }
        if b.is_subset_of(a) {
            let g = grp(a);
            return g.mul(x, &g.inv(&act(a, &to_p(b, y), x)));
        }
        if a == SQ_M && b == SQ_N {
            (d.pairing)(x, y)
        } else {
            d.l.inv(&(d.pairing)(y, x))
        }
    });
    CrossedCube::new(2, groups, mus, h)
}
