use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::{apply_zk_levelwise, LevelMap, MooreSearch, SimplicialGroup};
use crate::crossed::{ab_crossed_module, inclusion_crossed_module, CrossedModule};
use crate::error::{Error, Result};
use crate::group::{commutator_subgroup, quotient, Action, Elem, Group, GroupHom, GroupImpl, Subgroup};

/// Level `n` of `M_*(α)`: tuples `(g_1, …, g_n, h)` in `G_n^n ⋊ H_n`, the
/// nerve level of the crossed module `α_n: G_n → H_n`. The product is
/// `(g, h)(g', h') = (g_i · ^{t_i} g'_i, h h')` with
/// `t_i = α(g_{i+1} ⋯ g_n) h` taken from the left factor.
struct StarLevel {
    n: usize,
    g: Group,
    h: Group,
    boundary: GroupHom,
    action: Action,
}

impl StarLevel {
    fn split(&self, x: &Elem) -> (Vec<Elem>, Elem) {
        let w = self.g.width();
        let gs = (0..self.n).map(|i| x.slice(i * w, w)).collect();
        (gs, x.slice(self.n * w, self.h.width()))
    }

    fn twists(&self, gs: &[Elem], h: &Elem) -> Vec<Elem> {
        let mut out = vec![h.clone(); self.n];
        let mut suffix = self.g.identity();
        for i in (0..self.n).rev() {
            out[i] = self.h.mul(&self.boundary.apply(&suffix), h);
            suffix = self.g.mul(&gs[i], &suffix);
        }
        out
    }
}

fn join(gs: &[Elem], h: &Elem) -> Elem {
    Elem::concat(gs.iter().chain(std::iter::once(h)))
}

impl GroupImpl for StarLevel {
    fn width(&self) -> usize {
        self.n * self.g.width() + self.h.width()
    }
    fn identity(&self) -> Elem {
        join(&vec![self.g.identity(); self.n], &self.h.identity())
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let ((ga, ha), (gb, hb)) = (self.split(a), self.split(b));
        let t = self.twists(&ga, &ha);
        let gs: Vec<Elem> = (0..self.n).map(|i| self.g.mul(&ga[i], &(self.action)(&t[i], &gb[i]))).collect();
        join(&gs, &self.h.mul(&ha, &hb))
    }
    fn inv(&self, a: &Elem) -> Elem {
        let (ga, ha) = self.split(a);
        let t = self.twists(&ga, &ha);
        let gs: Vec<Elem> =
            (0..self.n).map(|i| (self.action)(&self.h.inv(&t[i]), &self.g.inv(&ga[i]))).collect();
        join(&gs, &self.h.inv(&ha))
    }
    fn generators(&self) -> Vec<Elem> {
        let ids = vec![self.g.identity(); self.n];
        let eh = self.h.identity();
        let mut out = Vec::new();
        for i in 0..self.n {
            for x in self.g.generators() {
                let mut gs = ids.clone();
                gs[i] = x;
                out.push(join(&gs, &eh));
            }
        }
        out.extend(self.h.generators().iter().map(|y| join(&ids, y)));
        out
    }
    fn label(&self) -> String {
        format!("({})^{} : {}", self.g.label(), self.n, self.h.label())
    }
    fn known_order(&self) -> Option<u128> {
        let mut n = self.h.order_hint()?;
        for _ in 0..self.n {
            n = n.checked_mul(self.g.order_hint()?)?;
        }
        Some(n)
    }
}

/// The constant simplicial group on `g`: every level `g`, every face and
/// degeneracy the identity.
pub fn constant(g: &Group, depth: usize) -> SimplicialGroup {
    let id: LevelMap = Arc::new(|_, _, x: &Elem| x.clone());
    SimplicialGroup::new(format!("const {}", g.label()), vec![g.clone(); depth + 1], id.clone(), id, false)
}

/// Input to [`m_star`]: simplicial groups `G_*`, `H_*` of equal depth and a
/// crossed module `α_n: G_n → H_n` at every level.
#[derive(Clone, Debug)]
pub struct StarInput {
    pub source: SimplicialGroup,
    pub target: SimplicialGroup,
    pub levels: Vec<CrossedModule>,
}

fn star_violation(what: String) -> Error {
    Error::StarConditionViolation(what)
}

/// Checks that every face and degeneracy pair `(G-map, H-map)` is a
/// morphism of crossed modules. Homomorphism composites and equivariance
/// both propagate from generators, so generators suffice.
fn check_star_condition(input: &StarInput) -> Result<()> {
    let (g, h) = (&input.source, &input.target);
    let depth = g.depth();
    let check = |from: usize, to: usize, gmap: &dyn Fn(&Elem) -> Elem, hmap: &dyn Fn(&Elem) -> Elem, name: &str| {
        let (a, b) = (&input.levels[from], &input.levels[to]);
        for x in g.level(from).generators() {
            if b.boundary().apply(&gmap(&x)) != hmap(&a.boundary().apply(&x)) {
                return Err(star_violation(format!("{name} does not commute with α at {x:?}")));
            }
            for y in h.level(from).generators() {
                if gmap(&a.act(&y, &x)) != b.act(&hmap(&y), &gmap(&x)) {
                    return Err(star_violation(format!("{name} is not equivariant at ({y:?}, {x:?})")));
                }
            }
        }
        Ok(())
    };
    for n in 1..=depth {
        for i in 0..=n {
            check(n, n - 1, &|x| g.face(n, i, x), &|y| h.face(n, i, y), &format!("d^{n}_{i}"))?;
        }
    }
    for n in 0..depth {
        for i in 0..=n {
            check(n, n + 1, &|x| g.degeneracy(n, i, x), &|y| h.degeneracy(n, i, y), &format!("s^{n}_{i}"))?;
        }
    }
    Ok(())
}

/// The pseudosimplicial group `M_*(α)` with `M_n = G_n^n ⋊ H_n`:
/// `d_0` drops `g_1` and applies `d_0` throughout; an inner `d_i` merges
/// `d_i(g_i) d_i(g_{i+1})`; `d_n` drops `g_n` into the last slot as
/// `α(d_n g_n) d_n h`; `s_i` inserts an identity after `g_i`.
pub fn m_star(input: &StarInput) -> Result<SimplicialGroup> {
    build_star(input, true, true)
}

fn build_star(input: &StarInput, pseudo: bool, check: bool) -> Result<SimplicialGroup> {
    let (g, h) = (input.source.clone(), input.target.clone());
    let depth = g.depth();
    if h.depth() != depth || input.levels.len() != depth + 1 {
        return Err(Error::InvalidParameter("source, target and crossed modules must share a depth".into()));
    }
    for (n, cm) in input.levels.iter().enumerate() {
        if !cm.source().same(g.level(n)) || !cm.target().same(h.level(n)) {
            return Err(Error::InvalidParameter(format!("crossed module at level {n} has the wrong endpoints")));
        }
    }
    if check {
        check_star_condition(input)?;
    }
    let levels: Vec<Group> = (0..=depth)
        .map(|n| {
            let cm = &input.levels[n];
            let imp = StarLevel {
                n,
                g: cm.source().clone(),
                h: cm.target().clone(),
                boundary: cm.boundary().clone(),
                action: cm.action().clone(),
            };
            let cap = cm.source().cap().max(cm.target().cap());
            Group::with_cap(imp, cap)
        })
        .collect();
    let (wg, wh) = (
        (0..=depth).map(|n| g.level(n).width()).collect::<Vec<_>>(),
        (0..=depth).map(|n| h.level(n).width()).collect::<Vec<_>>(),
    );
    let split = {
        let (wg, wh) = (wg.clone(), wh.clone());
        move |n: usize, x: &Elem| -> (Vec<Elem>, Elem) {
            let gs = (0..n).map(|i| x.slice(i * wg[n], wg[n])).collect();
            (gs, x.slice(n * wg[n], wh[n]))
        }
    };
    let boundaries: Vec<GroupHom> = input.levels.iter().map(|cm| cm.boundary().clone()).collect();
    let face: LevelMap = {
        let (g, h, split) = (g.clone(), h.clone(), split.clone());
        Arc::new(move |n, i, x| {
            let (gs, y) = split(n, x);
            let d = |z: &Elem| g.face(n, i, z);
            if i == 0 {
                let rest: Vec<Elem> = gs[1..].iter().map(d).collect();
                return join(&rest, &h.face(n, 0, &y));
            }
            if i < n {
                let lower = g.level(n - 1);
                let mut out = Vec::with_capacity(n - 1);
                for j in 0..n {
                    if j + 1 == i {
                        out.push(lower.mul(&d(&gs[j]), &d(&gs[j + 1])));
                    } else if j != i {
                        out.push(d(&gs[j]));
                    }
                }
                return join(&out, &h.face(n, i, &y));
            }
            let out: Vec<Elem> = gs[..n - 1].iter().map(d).collect();
            let last = boundaries[n - 1].apply(&d(&gs[n - 1]));
            join(&out, &h.level(n - 1).mul(&last, &h.face(n, n, &y)))
        })
    };
    let degeneracy: LevelMap = {
        let (g, h, split) = (g.clone(), h.clone(), split);
        Arc::new(move |n, i, x| {
            let (gs, y) = split(n, x);
            let mut out: Vec<Elem> = gs.iter().map(|z| g.degeneracy(n, i, z)).collect();
            out.insert(i, g.level(n + 1).identity());
            join(&out, &h.degeneracy(n, i, &y))
        })
    };
    let search: MooreSearch = {
        let (g, h) = (g.clone(), h.clone());
        Arc::new(move |n| star_moore_members(&g, &h, n))
    };
    let label = format!("M({} -> {})", g.label(), h.label());
    Ok(SimplicialGroup::new(label, levels, face, degeneracy, pseudo).with_moore_search(search))
}

/// Members of `∩_{i<n} Ker d_i` in `M_n(α)` without enumerating `M_n`:
/// `h` ranges over the Moore subgroup of `H_n`, each `g_j` over the `G_n`
/// elements killed by the faces that act on it alone, and consecutive
/// slots are matched so that each merged pair `d_i(g_i) d_i(g_{i+1})` is
/// trivial.
fn star_moore_members(g: &SimplicialGroup, h: &SimplicialGroup, n: usize) -> Result<Vec<Elem>> {
    let level = g.level(n);
    let lower = g.level(n - 1);
    let els = level.elements()?;
    let nh = h.moore_subgroup(n)?;
    let cands: Vec<Vec<Elem>> = (1..=n)
        .map(|j| {
            els.list
                .iter()
                .filter(|x| {
                    (j < 2 || lower.is_identity(&g.face(n, 0, x)))
                        && (1..n).filter(|&i| i + 1 != j && i != j).all(|i| lower.is_identity(&g.face(n, i, x)))
                })
                .cloned()
                .collect()
        })
        .collect();
    // For slot j ≥ 2, index candidates by d_{j-1}(g_j).
    let by_face: Vec<FxHashMap<Elem, Vec<usize>>> = (1..=n)
        .map(|j| {
            let mut m: FxHashMap<Elem, Vec<usize>> = FxHashMap::default();
            if j >= 2 {
                for (k, x) in cands[j - 1].iter().enumerate() {
                    m.entry(g.face(n, j - 1, x)).or_default().push(k);
                }
            }
            m
        })
        .collect();
    let mut paths: Vec<Vec<Elem>> = cands[0].iter().map(|x| vec![x.clone()]).collect();
    for j in 2..=n {
        let mut next = Vec::new();
        for p in &paths {
            let need = lower.inv(&g.face(n, j - 1, &p[j - 2]));
            if let Some(ks) = by_face[j - 1].get(&need) {
                for &k in ks {
                    let mut q = p.clone();
                    q.push(cands[j - 1][k].clone());
                    next.push(q);
                }
            }
        }
        paths = next;
    }
    if n == 0 {
        paths = vec![Vec::new()];
    }
    let cap = g.level(n).cap();
    if paths.len().saturating_mul(nh.order()) > cap {
        return Err(Error::CapExceeded { cap });
    }
    let mut out = Vec::with_capacity(paths.len() * nh.order());
    for p in &paths {
        for y in nh.members() {
            out.push(join(p, y));
        }
    }
    Ok(out)
}

/// The nerve `E(M)_*` of a crossed module `μ: M → P`: level `n` is
/// `M^n ⋊ P`, with `d_0` dropping `m_1`, inner faces multiplying
/// neighbours, `d_n(…, m_n, p) = (…, μ(m_n) p)` and degeneracies inserting
/// identities.
pub fn nerve(cm: &CrossedModule, depth: usize) -> Result<SimplicialGroup> {
    let input = StarInput {
        source: constant(cm.source(), depth),
        target: constant(cm.target(), depth),
        levels: vec![cm.clone(); depth + 1],
    };
    let mut s = build_star(&input, false, false)?;
    s.label = format!("E({} -> {})", cm.source().label(), cm.target().label());
    Ok(s)
}

/// One level of a comparison between two simplicial groups.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LevelIsoOutcome {
    pub level: usize,
    pub source_order: usize,
    pub target_order: usize,
    pub homomorphism: bool,
    pub bijective: bool,
    /// Faces and degeneracies commute with the map (or, for a pair of
    /// maps, both composites are identities).
    pub compatible: bool,
    pub detail: Option<String>,
}

impl LevelIsoOutcome {
    pub fn passed(&self) -> bool {
        self.homomorphism && self.bijective && self.compatible && self.source_order == self.target_order
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LevelIsoReport {
    pub name: String,
    pub levels: Vec<LevelIsoOutcome>,
}

impl LevelIsoReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(LevelIsoOutcome::passed)
    }
}

fn image_is_bijective(hom: &GroupHom) -> Result<bool> {
    let els = hom.source().elements()?;
    let imgs: FxHashSet<Elem> = els.list.iter().map(|x| hom.apply(x)).collect();
    Ok(imgs.len() == els.len() && imgs.len() == hom.target().order()? && imgs.iter().all(|y| hom.target().contains(y).unwrap_or(false)))
}

/// The levelwise map `λ_n(r_1, …, r_n, f) = (r_1⋯r_n f, r_2⋯r_n f, …, r_n f, f)`
/// from the nerve of `Ker α ↪ F` to the Čech complex of `α`, checked to be
/// a bijective homomorphism commuting with every face and degeneracy.
pub fn nerve_vs_cech(alpha: &GroupHom, depth: usize) -> Result<LevelIsoReport> {
    let f = alpha.source().clone();
    let kernel = alpha.kernel()?;
    let cm = inclusion_crossed_module(&kernel)?;
    let e = nerve(&cm, depth)?;
    let c = super::cech_complex(alpha, depth)?.complex;
    let mut levels = Vec::new();
    for n in 0..=depth {
        let lam = lambda_map(&f, n);
        let hom = GroupHom::from_fn(e.level(n), c.level(n), lam.clone());
        let homomorphism = hom.verify().is_ok();
        let bijective = image_is_bijective(&hom)?;
        let (below, above) = (lambda_map(&f, n.saturating_sub(1)), lambda_map(&f, n + 1));
        let mut detail = None;
        'elements: for x in &e.level(n).elements()?.list {
            let lx = lam(x);
            for i in 0..=n {
                if n >= 1 && c.face(n, i, &lx) != below(&e.face(n, i, x)) {
                    detail = Some(format!("d_{i} at {x:?}"));
                    break 'elements;
                }
                if n < depth && c.degeneracy(n, i, &lx) != above(&e.degeneracy(n, i, x)) {
                    detail = Some(format!("s_{i} at {x:?}"));
                    break 'elements;
                }
            }
        }
        levels.push(LevelIsoOutcome {
            level: n,
            source_order: e.level(n).order()?,
            target_order: c.level(n).order()?,
            homomorphism,
            bijective,
            compatible: detail.is_none(),
            detail,
        });
    }
    Ok(LevelIsoReport { name: format!("λ for {}", alpha.source().label()), levels })
}

fn lambda_map(f: &Group, n: usize) -> impl Fn(&Elem) -> Elem + Clone + Send + Sync + 'static {
    let (f, w) = (f.clone(), f.width());
    move |x: &Elem| {
        let parts = x.split(&vec![w; n + 1]);
        let mut out = vec![parts[n].clone(); n + 1];
        for i in (0..n).rev() {
            out[i] = f.mul(&parts[i], &out[i + 1]);
        }
        Elem::concat(&out)
    }
}

/// Levelwise abelianization of the nerve against the nerve of the
/// abelianized crossed module: `κ[(m_i, p)] = ([m_i], [p])` and its
/// inverse candidate `κ′`, both checked to be homomorphisms whose
/// composites are identities.
pub fn abelianized_nerve_check(cm: &CrossedModule, depth: usize) -> Result<LevelIsoReport> {
    let ab = ab_crossed_module(cm)?;
    let e = nerve(cm, depth)?;
    let eab = nerve(&ab, depth)?;
    let zl = apply_zk_levelwise(&e, 2)?;
    let qm = quotient(cm.source(), &cm.displacement_subgroup()?)?;
    let whole = Subgroup::whole(cm.target())?;
    let qp = quotient(cm.target(), &commutator_subgroup(&whole, &whole)?)?;
    let (wm, wp) = (cm.source().width(), cm.target().width());
    let mut levels = Vec::new();
    for n in 0..=depth {
        let mut widths = vec![wm; n];
        widths.push(wp);
        let (qm2, qp2, w2) = (qm.clone(), qp.clone(), widths.clone());
        let kappa = GroupHom::from_fn(zl.group.level(n), eab.level(n), move |x| {
            let parts = x.split(&w2);
            let mut out: Vec<Elem> = parts[..n].iter().map(|m| qm2.rep(m)).collect();
            out.push(qp2.rep(&parts[n]));
            Elem::concat(&out)
        });
        let back = zl.maps[n].clone();
        let kappa_back = GroupHom::from_fn(eab.level(n), zl.group.level(n), move |y| back.rep(y));
        let homomorphism = kappa.verify().is_ok() && kappa_back.verify().is_ok();
        let there = kappa.then(&kappa_back);
        let back_again = kappa_back.then(&kappa);
        let compatible = there.agrees_with(&GroupHom::identity(zl.group.level(n)))?
            && back_again.agrees_with(&GroupHom::identity(eab.level(n)))?;
        levels.push(LevelIsoOutcome {
            level: n,
            source_order: zl.group.level(n).order()?,
            target_order: eab.level(n).order()?,
            homomorphism,
            bijective: image_is_bijective(&kappa)?,
            compatible,
            detail: None,
        });
    }
    Ok(LevelIsoReport { name: format!("Ab of nerve for {}", cm.source().label()), levels })
}
