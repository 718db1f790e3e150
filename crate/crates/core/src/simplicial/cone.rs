use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use super::{homotopy_group, m_star, moore_complex, multinerve_diagonal, square_parts, StarInput};
use crate::crossed::{make_crossed_module, CrossedCube, CrossedModule, NonAbelianComplex};
use crate::error::{Error, Result};
use crate::group::catalog::trivial;
use crate::group::{
    fiber_product, intersect, product_subgroup, quotient, semidirect_product, Action, Elem, Group, GroupHom,
    GroupSignature, IndexSet, QuotientMap, Subgroup,
};

const P_SET: IndexSet = IndexSet(0);
const M_SET: IndexSet = IndexSet(1);
const N_SET: IndexSet = IndexSet(2);
const L_SET: IndexSet = IndexSet(3);

/// A morphism `f: A_* → B_*` of complexes of the same length whose
/// components `f_i: A_i → B_i` are crossed modules, with each pair
/// `(d_i, d'_i)` a morphism of crossed modules.
#[derive(Clone, Debug)]
pub struct ComplexMorphism {
    source: NonAbelianComplex,
    target: NonAbelianComplex,
    maps: Vec<CrossedModule>,
}

impl ComplexMorphism {
    pub fn new(source: NonAbelianComplex, target: NonAbelianComplex, maps: Vec<CrossedModule>) -> Result<Self> {
        let top = source.top();
        if target.top() != top || maps.len() != top + 1 {
            return Err(Error::InvalidParameter(format!(
                "complexes of lengths {} and {} with {} maps",
                top,
                target.top(),
                maps.len()
            )));
        }
        for (i, f) in maps.iter().enumerate() {
            if !f.source().same(source.group(i)) || !f.target().same(target.group(i)) {
                return Err(Error::InvalidParameter(format!("f_{i} has the wrong endpoints")));
            }
        }
        for i in 1..=top {
            let (d, dt) = (source.differential(i), target.differential(i));
            let (f, f_below) = (&maps[i], &maps[i - 1]);
            for a in source.group(i).generators() {
                let lhs = dt.apply(&f.boundary().apply(&a));
                let rhs = f_below.boundary().apply(&d.apply(&a));
                if lhs != rhs {
                    return Err(Error::StarConditionViolation(format!("d'_{i} f_{i} ≠ f_{} d_{i} at {a:?}", i - 1)));
                }
                for b in target.group(i).generators() {
                    if d.apply(&f.act(&b, &a)) != f_below.act(&dt.apply(&b), &d.apply(&a)) {
                        return Err(Error::StarConditionViolation(format!(
                            "d_{i} is not equivariant along d'_{i}: b = {b:?}, a = {a:?}"
                        )));
                    }
                }
            }
        }
        Ok(ComplexMorphism { source, target, maps })
    }

    pub fn source(&self) -> &NonAbelianComplex {
        &self.source
    }

    pub fn target(&self) -> &NonAbelianComplex {
        &self.target
    }

    pub fn map(&self, i: usize) -> &CrossedModule {
        &self.maps[i]
    }

    pub fn top(&self) -> usize {
        self.source.top()
    }
}

/// The cone `C_i = A_{i-1} ⋊ B_i`, with `B_i` acting through `d'_i`, and
/// `∂(a, b) = (d(a)⁻¹, f(a) d'(b))`. `C_0 = B_0`; the top level is
/// `A_t ⋊ 1`.
pub fn mapping_cone(f: &ComplexMorphism) -> Result<NonAbelianComplex> {
    let top = f.top();
    let (a, b) = (f.source(), f.target());
    let one = trivial();
    let b_at = |i: usize| if i <= top { b.group(i).clone() } else { one.clone() };
    let mut groups = vec![b.group(0).clone()];
    for i in 1..=top + 1 {
        let action: Action = if i <= top {
            let (fm, d) = (f.map(i - 1).clone(), b.differential(i).clone());
            Arc::new(move |y: &Elem, x: &Elem| fm.act(&d.apply(y), x))
        } else {
            Arc::new(|_: &Elem, x: &Elem| x.clone())
        };
        groups.push(semidirect_product(a.group(i - 1), &b_at(i), action)?);
    }
    let mut diffs = Vec::with_capacity(top + 1);
    for i in 1..=top + 1 {
        let wa = a.group(i - 1).width();
        let wb = b_at(i).width();
        let fm = f.map(i - 1).boundary().clone();
        let below = b.group(i - 1).clone();
        let db = (i <= top).then(|| b.differential(i).clone());
        let lift = move |x: &Elem| {
            let (ai, bi) = (x.slice(0, wa), x.slice(wa, wb));
            let pushed = match &db {
                Some(d) => d.apply(&bi),
                None => below.identity(),
            };
            below.mul(&fm.apply(&ai), &pushed)
        };
        let d = if i == 1 {
            GroupHom::from_fn(&groups[1], &groups[0], lift)
        } else {
            let (da, lower_a) = (a.differential(i - 1).clone(), a.group(i - 2).clone());
            GroupHom::from_fn(&groups[i], &groups[i - 1], move |x| {
                let inv = lower_a.inv(&da.apply(&x.slice(0, wa)));
                Elem::concat([&inv, &lift(x)])
            })
        };
        d.verify()?;
        diffs.push(d);
    }
    NonAbelianComplex::new(groups, diffs)
}

fn length_one(top: &Group, bottom: &Group, d: &GroupHom) -> Result<NonAbelianComplex> {
    NonAbelianComplex::new(vec![bottom.clone(), top.clone()], vec![d.clone()])
}

/// A crossed square read as the morphism `(L → M) → (N → P)` given by
/// `λ′` and `μ`.
pub fn square_as_morphism(cube: &CrossedCube) -> Result<ComplexMorphism> {
    let sq = square_parts(cube)?;
    let rows = length_one(&sq.l, &sq.m, &sq.lambda)?;
    let cols = length_one(&sq.n, &sq.p, &sq.nu)?;
    let act_pm: Action = {
        let cube = cube.clone();
        Arc::new(move |p: &Elem, m: &Elem| cube.act(P_SET, p, M_SET, m))
    };
    let act_nl: Action = {
        let cube = cube.clone();
        Arc::new(move |n: &Elem, l: &Elem| cube.act(N_SET, n, L_SET, l))
    };
    let f0 = make_crossed_module(&sq.m, &sq.p, sq.mu.clone(), act_pm)?;
    let f1 = make_crossed_module(&sq.l, &sq.n, sq.lambda_prime.clone(), act_nl)?;
    ComplexMorphism::new(rows, cols, vec![f0, f1])
}

/// `L → M ⋊ N → P` with `l ↦ (λ(l)⁻¹, λ′(l))` and `(m, n) ↦ μ(m) ν(n)`,
/// where `N` acts on `M` through `ν`.
pub fn square_cone(cube: &CrossedCube) -> Result<NonAbelianComplex> {
    let sq = square_parts(cube)?;
    let act: Action = {
        let (cube, nu) = (cube.clone(), sq.nu.clone());
        Arc::new(move |n: &Elem, m: &Elem| cube.act(P_SET, &nu.apply(n), M_SET, m))
    };
    let middle = semidirect_product(&sq.m, &sq.n, act)?;
    let wm = sq.m.width();
    let wn = sq.n.width();
    let alpha = {
        let (m, lambda, lambda_prime) = (sq.m.clone(), sq.lambda.clone(), sq.lambda_prime.clone());
        GroupHom::from_fn(&sq.l, &middle, move |l| Elem::concat([&m.inv(&lambda.apply(l)), &lambda_prime.apply(l)]))
    };
    let beta = {
        let (p, mu, nu) = (sq.p.clone(), sq.mu.clone(), sq.nu.clone());
        GroupHom::from_fn(&middle, &sq.p, move |x| p.mul(&mu.apply(&x.slice(0, wm)), &nu.apply(&x.slice(wm, wn))))
    };
    alpha.verify()?;
    beta.verify()?;
    NonAbelianComplex::new(vec![sq.p.clone(), middle, sq.l.clone()], vec![beta, alpha])
}

/// The three groups computed directly from a crossed square:
/// `P / Im μ Im ν`, `(M ×_P N) / {(λl, λ′l)}` and `Ker λ ∩ Ker λ′`.
#[derive(Clone, Debug)]
pub struct SquareHomology {
    pub h0: QuotientMap,
    pub h1: QuotientMap,
    pub h2: Subgroup,
}

impl SquareHomology {
    pub fn signatures(&self) -> Result<[GroupSignature; 3]> {
        Ok([GroupSignature::of(&self.h0.group)?, GroupSignature::of(&self.h1.group)?, GroupSignature::of(&self.h2.as_group())?])
    }
}

pub fn square_homology(cube: &CrossedCube) -> Result<SquareHomology> {
    let sq = square_parts(cube)?;
    let images = product_subgroup(&sq.mu.image()?, &sq.nu.image()?)?;
    let h0 = quotient(&sq.p, &images)?;
    let (fp, _, _) = fiber_product(&sq.mu, &sq.nu)?;
    let kappa = {
        let (lambda, lambda_prime) = (sq.lambda.clone(), sq.lambda_prime.clone());
        GroupHom::from_fn(&sq.l, &fp, move |l| Elem::concat([&lambda.apply(l), &lambda_prime.apply(l)]))
    };
    kappa.verify()?;
    let h1 = quotient(&fp, &kappa.image()?)?;
    let h2 = intersect(&sq.lambda.kernel()?, &sq.lambda_prime.kernel()?)?;
    Ok(SquareHomology { h0, h1, h2 })
}

/// One degree of a comparison between two homology theories.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    pub source: GroupSignature,
    pub target: GroupSignature,
    /// Cycles go to cycles and boundaries to boundaries.
    pub well_defined: bool,
    pub bijective: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KappaReport {
    pub homomorphism: bool,
    pub chain_map: bool,
    pub degrees: Vec<DegreeComparison>,
}

impl KappaReport {
    pub fn passed(&self) -> bool {
        self.homomorphism && self.chain_map && self.degrees.iter().all(|d| d.well_defined && d.bijective)
    }
}

/// Compares `NM_*(α)` with the cone of `α` restricted to Moore complexes
/// through `κ(g_1, …, g_n, h) = (d_n g_n, h)`, in every degree below the
/// truncation.
pub fn kappa_check(input: &StarInput) -> Result<KappaReport> {
    let depth = input.source.depth();
    let ng = moore_complex(&input.source)?;
    let nh = moore_complex(&input.target)?;
    let maps = (0..=depth)
        .map(|n| {
            let alpha = &input.levels[n];
            let boundary = {
                let b = alpha.boundary().clone();
                GroupHom::from_fn(ng.group(n), nh.group(n), move |x| b.apply(x))
            };
            make_crossed_module(ng.group(n), nh.group(n), boundary, alpha.action().clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let cone = mapping_cone(&ComplexMorphism::new(ng, nh, maps)?)?;
    let star = m_star(input)?;
    let moore = moore_complex(&star)?;
    let mut homomorphism = true;
    let mut chain_map = true;
    let mut kappas = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        let kappa = if n == 0 {
            GroupHom::from_fn(moore.group(0), cone.group(0), |x| x.clone())
        } else {
            let (wg, wh) = (input.source.level(n).width(), input.target.level(n).width());
            let s = input.source.clone();
            GroupHom::from_fn(moore.group(n), cone.group(n), move |x| {
                let last = x.slice((n - 1) * wg, wg);
                Elem::concat([&s.face(n, n, &last), &x.slice(n * wg, wh)])
            })
        };
        homomorphism &= kappa.verify().is_ok();
        kappas.push(kappa);
    }
    for n in 1..=depth {
        for x in moore.group(n).generators() {
            chain_map &= kappas[n - 1].apply(&moore.apply(n, &x)) == cone.apply(n, &kappas[n].apply(&x));
        }
    }
    let mut degrees = Vec::new();
    for i in 0..depth {
        let (hs, ht) = (moore.homology(i)?, cone.homology(i)?);
        let kappa = &kappas[i];
        let well_defined = moore.cycles(i).gens().iter().all(|x| cone.cycles(i).contains(&kappa.apply(x)))
            && moore.boundaries(i).gens().iter().all(|x| cone.boundaries(i).contains(&kappa.apply(x)));
        let (source, target) = (GroupSignature::of(&hs.group)?, GroupSignature::of(&ht.group)?);
        let images: HashSet<Elem> = hs.group.elements()?.list.iter().map(|x| ht.rep(&kappa.apply(x))).collect();
        let bijective = well_defined && images.len() == source.order && source.order == target.order;
        degrees.push(DegreeComparison { degree: i, source, target, well_defined, bijective });
    }
    Ok(KappaReport { homomorphism, chain_map, degrees })
}

/// Exactness at one group of the long exact sequence of a mapping cone.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LesJoint {
    /// `"H_i(A)"`, `"H_i(B)"` or `"H_i(C)"`.
    pub at: String,
    pub image_order: usize,
    pub kernel_order: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LesReport {
    pub joints: Vec<LesJoint>,
}

impl LesReport {
    pub fn passed(&self) -> bool {
        self.joints.iter().all(|j| j.exact)
    }
}

type Induced = Box<dyn Fn(&Elem) -> Elem>;

fn image_reps(from: Option<&QuotientMap>, map: &Induced, to: &QuotientMap) -> Result<HashSet<Elem>> {
    let mut out = HashSet::new();
    out.insert(to.rep(&to.group.identity()));
    if let Some(from) = from {
        out.extend(from.group.elements()?.list.iter().map(|x| to.rep(&map(x))));
    }
    Ok(out)
}

fn kernel_reps(at: &QuotientMap, map: Option<(&Induced, &QuotientMap)>) -> Result<HashSet<Elem>> {
    let els = at.group.elements()?;
    Ok(match map {
        None => els.list.iter().cloned().collect(),
        Some((f, to)) => {
            let e = to.rep(&to.group.identity());
            els.list.iter().filter(|x| to.rep(&f(x)) == e).cloned().collect()
        }
    })
}

fn joint(at: String, image: HashSet<Elem>, kernel: HashSet<Elem>) -> LesJoint {
    LesJoint { at, image_order: image.len(), kernel_order: kernel.len(), exact: image == kernel }
}

/// `⋯ → H_i(A) → H_i(B) → H_i(C) → H_{i-1}(A) → ⋯ → H_0(C) → 1` for the
/// cone `C` of `f`, with `H_i(B) → H_i(C)` induced by `b ↦ (1, b)` and the
/// connecting map by `(a, b) ↦ a⁻¹`. Exactness is checked at every group.
pub fn les_check(f: &ComplexMorphism) -> Result<LesReport> {
    let top = f.top();
    let (a, b) = (f.source(), f.target());
    let c = mapping_cone(f)?;
    let ha: Vec<QuotientMap> = (0..=top).map(|i| a.homology(i)).collect::<Result<_>>()?;
    let hb: Vec<QuotientMap> = (0..=top).map(|i| b.homology(i)).collect::<Result<_>>()?;
    let hc: Vec<QuotientMap> = (0..=top + 1).map(|i| c.homology(i)).collect::<Result<_>>()?;
    let push = |i: usize| -> Induced {
        let fm = f.map(i).boundary().clone();
        Box::new(move |x| fm.apply(x))
    };
    let include = |i: usize| -> Induced {
        if i == 0 {
            return Box::new(|x| x.clone());
        }
        let e = a.group(i - 1).identity();
        Box::new(move |x| Elem::concat([&e, x]))
    };
    let connect = |i: usize| -> Induced {
        let (g, w) = (a.group(i - 1).clone(), a.group(i - 1).width());
        Box::new(move |x| g.inv(&x.slice(0, w)))
    };
    let mut joints = Vec::new();
    for i in (0..=top + 1).rev() {
        if i <= top {
            let into = image_reps(Some(&ha[i]), &push(i), &hb[i])?;
            let out = kernel_reps(&hb[i], Some((&include(i), &hc[i])))?;
            joints.push(joint(format!("H_{i}(B)"), into, out));
        }
        let into = if i <= top { image_reps(Some(&hb[i]), &include(i), &hc[i])? } else { image_reps(None, &include(i), &hc[i])? };
        let out = if i >= 1 { kernel_reps(&hc[i], Some((&connect(i), &ha[i - 1])))? } else { kernel_reps(&hc[i], None)? };
        joints.push(joint(format!("H_{i}(C)"), into, out));
        if i >= 1 {
            let into = image_reps(Some(&hc[i]), &connect(i), &ha[i - 1])?;
            let out = kernel_reps(&ha[i - 1], Some((&push(i - 1), &hb[i - 1])))?;
            joints.push(joint(format!("H_{}(A)", i - 1), into, out));
        }
    }
    Ok(LesReport { joints })
}

/// `π_i` of the multinerve diagonal beside `H_i` of the square cone and
/// the directly computed group, compared by isomorphism invariants.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConeHomotopyDegree {
    pub degree: usize,
    pub homotopy: GroupSignature,
    pub cone: GroupSignature,
    pub direct: GroupSignature,
}

impl ConeHomotopyDegree {
    pub fn matches(&self) -> bool {
        self.homotopy == self.cone && self.cone == self.direct
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConeHomotopyReport {
    pub degrees: Vec<ConeHomotopyDegree>,
}

impl ConeHomotopyReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(ConeHomotopyDegree::matches)
    }
}

/// Compares `π_0, π_1, π_2` of the multinerve diagonal of a crossed square
/// with the homology of its cone and with the three direct groups.
pub fn multinerve_vs_cone(cube: &CrossedCube) -> Result<ConeHomotopyReport> {
    let diagonal = multinerve_diagonal(cube, 3)?;
    let cone = square_cone(cube)?;
    let direct = square_homology(cube)?.signatures()?;
    let mut degrees = Vec::new();
    for (i, direct) in direct.into_iter().enumerate() {
        degrees.push(ConeHomotopyDegree {
            degree: i,
            homotopy: GroupSignature::of(&homotopy_group(&diagonal, i)?.group)?,
            cone: GroupSignature::of(&cone.homology(i)?.group)?,
            direct,
        });
    }
    Ok(ConeHomotopyReport { degrees })
}
