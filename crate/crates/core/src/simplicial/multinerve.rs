use std::sync::Arc;

use serde::Serialize;

use super::{m_star, nerve, SimplicialGroup, StarInput};
use crate::crossed::{b_k_cube, inclusion_cube, make_crossed_module, CrossedCube, CrossedModule};
use crate::error::{Error, Result};
use crate::group::{lower_central, quotient, Action, Elem, Group, GroupHom, IndexSet, NormalAd, QuotientMap};

const P_SET: IndexSet = IndexSet(0);
const M_SET: IndexSet = IndexSet(1);
const N_SET: IndexSet = IndexSet(2);
const L_SET: IndexSet = IndexSet(3);

/// The four corners and four edges of a crossed square
/// `λ: L → M`, `λ′: L → N`, `μ: M → P`, `ν: N → P`.
#[derive(Clone, Debug)]
pub struct SquareParts {
    pub l: Group,
    pub m: Group,
    pub n: Group,
    pub p: Group,
    pub lambda: GroupHom,
    pub lambda_prime: GroupHom,
    pub mu: GroupHom,
    pub nu: GroupHom,
}

pub fn square_parts(cube: &CrossedCube) -> Result<SquareParts> {
    if cube.dim() != 2 {
        return Err(Error::InvalidParameter(format!("a crossed square has dimension 2, not {}", cube.dim())));
    }
    let edge = |i: usize, a: IndexSet| cube.mu_hom(i, a).cloned().expect("a square has all four edges");
    Ok(SquareParts {
        l: cube.group(L_SET).clone(),
        m: cube.group(M_SET).clone(),
        n: cube.group(N_SET).clone(),
        p: cube.group(P_SET).clone(),
        lambda: edge(2, L_SET),
        lambda_prime: edge(1, L_SET),
        mu: edge(1, M_SET),
        nu: edge(2, N_SET),
    })
}

fn level_crossed_module(
    cube: &CrossedCube,
    sq: &SquareParts,
    source: &Group,
    target: &Group,
    k: usize,
) -> Result<CrossedModule> {
    let (wl, wm, wn, wp) = (sq.l.width(), sq.m.width(), sq.n.width(), sq.p.width());
    let boundary = {
        let (lp, mu) = (sq.lambda_prime.clone(), sq.mu.clone());
        GroupHom::from_fn(source, target, move |x| {
            let mut out: Vec<Elem> = (0..k).map(|i| lp.apply(&x.slice(i * wl, wl))).collect();
            out.push(mu.apply(&x.slice(k * wl, wm)));
            Elem::concat(&out)
        })
    };
    // (n_1..n_k, p) acts on (l_1..l_k, m) by m ↦ ᵖm and
    // l_i ↦ ^{ν(n_i) q_i} l_i · h(^{q_i} x_i, n_i)⁻¹ with
    // q_i = ν(n_{i+1}⋯n_k) p and x_i = λ(l_{i+1}⋯l_k) m.
    let action: Action = {
        let (cube, sq) = (cube.clone(), sq.clone());
        Arc::new(move |y: &Elem, x: &Elem| {
            let ns: Vec<Elem> = (0..k).map(|i| y.slice(i * wn, wn)).collect();
            let p = y.slice(k * wn, wp);
            let ls: Vec<Elem> = (0..k).map(|i| x.slice(i * wl, wl)).collect();
            let m = x.slice(k * wl, wm);
            let mut out = vec![sq.l.identity(); k + 1];
            let (mut n_suffix, mut l_suffix) = (sq.n.identity(), sq.l.identity());
            for i in (0..k).rev() {
                let q = sq.p.mul(&sq.nu.apply(&n_suffix), &p);
                let xi = sq.m.mul(&sq.lambda.apply(&l_suffix), &m);
                let twist = sq.p.mul(&sq.nu.apply(&ns[i]), &q);
                let moved = cube.act(P_SET, &twist, L_SET, &ls[i]);
                let qx = cube.act(P_SET, &q, M_SET, &xi);
                let pair = cube.h(M_SET, &qx, N_SET, &ns[i]);
                out[i] = sq.l.mul(&moved, &sq.l.inv(&pair));
                n_suffix = sq.n.mul(&ns[i], &n_suffix);
                l_suffix = sq.l.mul(&ls[i], &l_suffix);
            }
            out[k] = cube.act(P_SET, &p, M_SET, &m);
            Elem::concat(&out)
        })
    };
    make_crossed_module(source, target, boundary, action)
}

/// The levelwise crossed modules `α_n: E(L → M)_n → E(N → P)_n` of a
/// crossed square, with `(n_1..n_k, p)` acting on `(l_1..l_k, m)` through
/// the pairing.
pub fn square_star_input(cube: &CrossedCube, depth: usize) -> Result<StarInput> {
    let sq = square_parts(cube)?;
    let act_ml: Action = {
        let cube = cube.clone();
        Arc::new(move |m: &Elem, l: &Elem| cube.act(M_SET, m, L_SET, l))
    };
    let act_pn: Action = {
        let cube = cube.clone();
        Arc::new(move |p: &Elem, n: &Elem| cube.act(P_SET, p, N_SET, n))
    };
    let rows = make_crossed_module(&sq.l, &sq.m, sq.lambda.clone(), act_ml)?;
    let cols = make_crossed_module(&sq.n, &sq.p, sq.nu.clone(), act_pn)?;
    let source = nerve(&rows, depth)?;
    let target = nerve(&cols, depth)?;
    let levels = (0..=depth)
        .map(|k| level_crossed_module(cube, &sq, source.level(k), target.level(k), k))
        .collect::<Result<Vec<_>>>()?;
    Ok(StarInput { source, target, levels })
}

/// The diagonal `E^{(2)}(M)_*` of the bisimplicial nerve of a crossed
/// square, built as `M_*(α)` of [`square_star_input`]. Level `m` has
/// underlying set `L^{m²} × M^m × N^m × P`.
pub fn multinerve_diagonal(cube: &CrossedCube, depth: usize) -> Result<SimplicialGroup> {
    let mut s = m_star(&square_star_input(cube, depth)?)?;
    s.label = format!("E2({})", cube.group(P_SET).label());
    Ok(s)
}

/// One level of the comparison `Γ_k(E^{(2)}(M)_m) = Ker Δ_m`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GammaKernelOutcome {
    pub level: usize,
    pub k: usize,
    pub gamma_order: usize,
    /// `|D_k(F;{1,2})|^{m²} |D_k(F;{1})|^m |D_k(F;{2})|^m |Γ_k(F)|`.
    pub kernel_order: u128,
    pub sets_equal: bool,
    pub delta_homomorphism: bool,
    pub delta_onto: bool,
    pub delta_kernel_is_gamma: bool,
}

impl GammaKernelOutcome {
    pub fn passed(&self) -> bool {
        self.sets_equal && self.delta_homomorphism && self.delta_onto && self.delta_kernel_is_gamma
    }
}

/// For the inclusion square of a two-part ad, compares `Γ_k` of each level
/// of the multinerve with the kernel of the componentwise coset map `Δ`
/// onto the multinerve of `B_k`, as sets, and checks that `Δ` is an onto
/// homomorphism with exactly that kernel.
pub fn gamma_vs_coset_kernel(ad: &NormalAd, k: usize, max_level: usize) -> Result<Vec<GammaKernelOutcome>> {
    if ad.len() != 2 {
        return Err(Error::InvalidParameter("the multinerve comparison needs a two-part ad".into()));
    }
    let cube = inclusion_cube(ad)?;
    let e = multinerve_diagonal(&cube, max_level)?;
    let eb = multinerve_diagonal(&b_k_cube(&cube, k)?, max_level)?;
    let f = ad.ambient();
    let w = f.width();
    // Denominators and coset maps indexed by mask: P, M, N, L.
    let masks = [P_SET, M_SET, N_SET, L_SET];
    let dens = masks.iter().map(|&a| ad.d_k(a, k)).collect::<Result<Vec<_>>>()?;
    let cosets: Vec<QuotientMap> = masks
        .iter()
        .zip(&dens)
        .map(|(&a, d)| {
            let meet = if a == P_SET { f.clone() } else { ad.meet(a)?.as_group() };
            quotient(&meet, &d.rehome(&meet))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for m in 0..=max_level {
        // Component kinds in storage order: m blocks of (L^m, M), then N^m, P.
        let mut kinds = Vec::with_capacity((m + 1) * (m + 1));
        for _ in 0..m {
            kinds.extend(std::iter::repeat(3).take(m));
            kinds.push(1);
        }
        kinds.extend(std::iter::repeat(2).take(m));
        kinds.push(0);
        let level = e.level(m);
        let gamma = lower_central(level, k)?;
        let in_kernel = |x: &Elem| kinds.iter().enumerate().all(|(c, &kind)| dens[kind].contains(&x.slice(c * w, w)));
        let kernel_order: u128 = kinds.iter().map(|&kind| dens[kind].order() as u128).product();
        let sets_equal = gamma.order() as u128 == kernel_order && gamma.members().iter().all(in_kernel);
        let delta = {
            let (cosets, kinds) = (cosets.clone(), kinds.clone());
            GroupHom::from_fn(level, eb.level(m), move |x| {
                let parts: Vec<Elem> =
                    kinds.iter().enumerate().map(|(c, &kind)| cosets[kind].rep(&x.slice(c * w, w))).collect();
                Elem::concat(&parts)
            })
        };
        let delta_homomorphism = delta.verify().is_ok();
        let delta_onto = delta_homomorphism && delta.is_surjective()?;
        let delta_kernel_is_gamma = delta_homomorphism && delta.kernel()?.same_set(&gamma);
        out.push(GammaKernelOutcome {
            level: m,
            k,
            gamma_order: gamma.order(),
            kernel_order,
            sets_equal,
            delta_homomorphism,
            delta_onto,
            delta_kernel_is_gamma,
        });
    }
    Ok(out)
}
