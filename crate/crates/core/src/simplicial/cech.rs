use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::{AugmentedSimplicialGroup, LevelMap, SimplicialGroup};
use crate::error::{Error, Result};
use crate::group::{direct_product, Elem, Group, GroupHom, GroupImpl, Subgroup};

/// Level `n` of a Čech complex: `(n+1)`-tuples of elements of `K` with a
/// common image. Generated by the diagonal copy of `K` together with the
/// kernel placed in each slot after the first.
struct CechLevel {
    base: Group,
    arity: usize,
    kernel_gens: Vec<Elem>,
    kernel_order: usize,
}

impl CechLevel {
    fn parts(&self, x: &Elem) -> Vec<Elem> {
        x.split(&vec![self.base.width(); self.arity])
    }
}

impl GroupImpl for CechLevel {
    fn width(&self) -> usize {
        self.arity * self.base.width()
    }
    fn identity(&self) -> Elem {
        Elem::concat(&vec![self.base.identity(); self.arity])
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let (xs, ys) = (self.parts(a), self.parts(b));
        let out: Vec<Elem> = xs.iter().zip(&ys).map(|(x, y)| self.base.mul(x, y)).collect();
        Elem::concat(&out)
    }
    fn inv(&self, a: &Elem) -> Elem {
        let out: Vec<Elem> = self.parts(a).iter().map(|x| self.base.inv(x)).collect();
        Elem::concat(&out)
    }
    fn generators(&self) -> Vec<Elem> {
        let mut out: Vec<Elem> =
            self.base.generators().iter().map(|g| Elem::concat(&vec![g.clone(); self.arity])).collect();
        let e = self.base.identity();
        for slot in 1..self.arity {
            for r in &self.kernel_gens {
                let mut parts = vec![e.clone(); self.arity];
                parts[slot] = r.clone();
                out.push(Elem::concat(&parts));
            }
        }
        out
    }
    fn label(&self) -> String {
        format!("{}-fold fiber power of {}", self.arity, self.base.label())
    }
    fn known_order(&self) -> Option<u128> {
        let mut n = self.base.order_hint()?;
        for _ in 1..self.arity {
            n = n.checked_mul(self.kernel_order as u128)?;
        }
        Some(n)
    }
}

/// The augmented Čech complex of `f: K → G`: level `n` is the
/// `(n+1)`-fold fiber product of `f` with itself, `d_i` deletes the `i`-th
/// coordinate and `s_i` repeats it. `f` need not be onto.
pub fn cech_complex(f: &GroupHom, depth: usize) -> Result<AugmentedSimplicialGroup> {
    let base = f.source().clone();
    let kernel = f.kernel()?;
    let levels: Vec<Group> = (0..=depth)
        .map(|n| {
            let imp = CechLevel {
                base: base.clone(),
                arity: n + 1,
                kernel_gens: kernel.gens().to_vec(),
                kernel_order: kernel.order(),
            };
            Group::with_cap(imp, base.cap())
        })
        .collect();
    let w = base.width();
    let face: LevelMap = Arc::new(move |n, i, x| {
        let mut parts = x.split(&vec![w; n + 1]);
        parts.remove(i);
        Elem::concat(&parts)
    });
    let degeneracy: LevelMap = Arc::new(move |n, i, x| {
        let mut parts = x.split(&vec![w; n + 1]);
        parts.insert(i, parts[i].clone());
        Elem::concat(&parts)
    });
    let label = format!("Č({} -> {})", base.label(), f.target().label());
    let complex = SimplicialGroup::new(label, levels.clone(), face, degeneracy, false);
    let g = f.clone();
    let augmentation = GroupHom::from_fn(&levels[0], f.target(), move |x| g.apply(x));
    AugmentedSimplicialGroup::new(complex, augmentation)
}

/// Multi-indices of `{0..=m}^dim`, first coordinate most significant.
fn grid(m: usize, dim: usize) -> Vec<Vec<usize>> {
    let side = m + 1;
    let total = side.pow(dim as u32);
    (0..total)
        .map(|mut k| {
            let mut idx = vec![0; dim];
            for c in (0..dim).rev() {
                idx[c] = k % side;
                k /= side;
            }
            idx
        })
        .collect()
}

fn flat(idx: &[usize], side: usize) -> usize {
    idx.iter().fold(0, |acc, &c| acc * side + c)
}

/// Elements of level `m` of the `n`-fold Čech diagonal: arrays over
/// `{0..=m}^n` whose entries along any line in direction `i` share their
/// image under `directions[i]`.
fn nfold_members(directions: &[GroupHom], m: usize) -> Result<Vec<Elem>> {
    let base = directions[0].source();
    let els = base.elements()?;
    let dim = directions.len();
    let side = m + 1;
    let fibres: Vec<FxHashMap<Elem, Vec<Elem>>> = directions
        .iter()
        .map(|d| {
            let mut by: FxHashMap<Elem, Vec<Elem>> = FxHashMap::default();
            for x in &els.list {
                by.entry(d.apply(x)).or_default().push(x.clone());
            }
            by
        })
        .collect();
    let cells = grid(m, dim);
    let mut partial: Vec<Vec<Elem>> = vec![Vec::new()];
    for idx in &cells {
        let anchors: Vec<(usize, usize)> = (0..dim)
            .filter(|&c| idx[c] > 0)
            .map(|c| {
                let mut start = idx.clone();
                start[c] = 0;
                (c, flat(&start, side))
            })
            .collect();
        let mut next = Vec::new();
        for arr in &partial {
            let cands: &[Elem] = match anchors.first() {
                None => &els.list,
                Some(&(c, at)) => &fibres[c][&directions[c].apply(&arr[at])],
            };
            for x in cands {
                let ok = anchors
                    .iter()
                    .skip(1)
                    .all(|&(c, at)| directions[c].apply(x) == directions[c].apply(&arr[at]));
                if ok {
                    let mut a = arr.clone();
                    a.push(x.clone());
                    next.push(a);
                }
            }
            if next.len() > base.cap() {
                return Err(Error::CapExceeded { cap: base.cap() });
            }
        }
        partial = next;
    }
    Ok(partial.iter().map(Elem::concat).collect())
}

/// The diagonal of the `n`-fold Čech multicomplex of a cube of groups
/// given by its arrows `K → 𝔉_{i}` out of the initial node, augmented by
/// `corner: K → G`. Level `m` consists of `{0..=m}^n` arrays; `d_j` and
/// `s_j` delete or repeat index `j` in every direction at once. With one
/// direction this is the Čech complex, with the same element encoding.
pub fn nfold_cech_diagonal(directions: &[GroupHom], corner: &GroupHom, depth: usize) -> Result<AugmentedSimplicialGroup> {
    if directions.is_empty() {
        return Err(Error::InvalidParameter("need at least one direction".into()));
    }
    let base = directions[0].source().clone();
    if directions.iter().any(|d| !d.source().same(&base)) || !corner.source().same(&base) {
        return Err(Error::InvalidParameter("all arrows must leave the same group".into()));
    }
    let dim = directions.len();
    let mut levels = Vec::with_capacity(depth + 1);
    for m in 0..=depth {
        let cells = (m + 1).pow(dim as u32);
        let ambient = direct_product(&vec![base.clone(); cells]);
        levels.push(Subgroup::from_members(&ambient, nfold_members(directions, m)?)?.as_group());
    }
    let w = base.width();
    let face: LevelMap = Arc::new(move |m, j, x| {
        let parts = x.split(&vec![w; (m + 1).pow(dim as u32)]);
        let out: Vec<Elem> = grid(m - 1, dim)
            .iter()
            .map(|idx| {
                let src: Vec<usize> = idx.iter().map(|&c| if c < j { c } else { c + 1 }).collect();
                parts[flat(&src, m + 1)].clone()
            })
            .collect();
        Elem::concat(&out)
    });
    let degeneracy: LevelMap = Arc::new(move |m, j, x| {
        let parts = x.split(&vec![w; (m + 1).pow(dim as u32)]);
        let out: Vec<Elem> = grid(m + 1, dim)
            .iter()
            .map(|idx| {
                let src: Vec<usize> = idx.iter().map(|&c| if c <= j { c } else { c - 1 }).collect();
                parts[flat(&src, m + 1)].clone()
            })
            .collect();
        Elem::concat(&out)
    });
    let label = format!("{dim}-fold Č({})", base.label());
    let complex = SimplicialGroup::new(label, levels.clone(), face, degeneracy, false);
    let g = corner.clone();
    let augmentation = GroupHom::from_fn(&levels[0], corner.target(), move |x| g.apply(x));
    AugmentedSimplicialGroup::new(complex, augmentation)
}

/// The maps `h_i(x_0, …, x_n) = (g x_0, …, g x_i, f x_i, …, f x_n)` from
/// level `n` of one Čech complex to level `n + 1` of another.
#[derive(Clone, Debug)]
pub struct SimplicialHomotopy {
    pub source: SimplicialGroup,
    pub target: SimplicialGroup,
    pub lower: GroupHom,
    pub upper: GroupHom,
}

impl SimplicialHomotopy {
    pub fn h(&self, n: usize, i: usize, x: &Elem) -> Elem {
        let parts = x.split(&vec![self.lower.source().width(); n + 1]);
        let mut out: Vec<Elem> = parts[..=i].iter().map(|y| self.upper.apply(y)).collect();
        out.extend(parts[i..].iter().map(|y| self.lower.apply(y)));
        Elem::concat(&out)
    }

    /// The levelwise map induced by `lower` (`upper` when `use_upper`).
    pub fn induced(&self, use_upper: bool, x: &Elem) -> Elem {
        let map = if use_upper { &self.upper } else { &self.lower };
        let parts = x.split(&vec![map.source().width(); x.len() / map.source().width()]);
        let out: Vec<Elem> = parts.iter().map(|y| map.apply(y)).collect();
        Elem::concat(&out)
    }
}

/// How many elements one homotopy identity was checked on.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomotopyCheck {
    pub identity: String,
    pub level: usize,
    pub checked: usize,
}

/// Builds the explicit homotopy between the maps of Čech complexes
/// induced by two lifts `lower`, `upper: K → Q` of `base: G → H` through
/// `alpha: K → G` and `beta: Q → H`, and checks every homotopy identity on
/// every element of source levels `0..=depth`.
pub fn cech_homotopy(
    alpha: &GroupHom,
    beta: &GroupHom,
    base: &GroupHom,
    lower: &GroupHom,
    upper: &GroupHom,
    depth: usize,
) -> Result<(SimplicialHomotopy, Vec<HomotopyCheck>)> {
    for x in &alpha.source().elements()?.list {
        let over = base.apply(&alpha.apply(x));
        if beta.apply(&lower.apply(x)) != over || beta.apply(&upper.apply(x)) != over {
            return Err(Error::IdentityViolation {
                identity: "β f = λ α = β g".into(),
                witness: format!("{x:?}"),
            });
        }
    }
    let source = cech_complex(alpha, depth)?.complex;
    let target = cech_complex(beta, depth + 2)?.complex;
    let hom = SimplicialHomotopy { source, target, lower: lower.clone(), upper: upper.clone() };
    let (s, t) = (&hom.source, &hom.target);
    let mut checks: Vec<HomotopyCheck> = Vec::new();
    let mut record = |identity: String, level: usize| match checks.iter_mut().find(|c| c.identity == identity && c.level == level) {
        Some(c) => c.checked += 1,
        None => checks.push(HomotopyCheck { identity, level, checked: 1 }),
    };
    let fail = |identity: &str, x: &Elem| Error::IdentityViolation { identity: identity.into(), witness: format!("{x:?}") };
    for n in 0..=depth {
        for j in 0..=n {
            let hj = GroupHom::from_fn(s.level(n), t.level(n + 1), {
                let hom = hom.clone();
                move |x| hom.h(n, j, x)
            });
            hj.verify().map_err(|_| fail(&format!("h_{j} is a homomorphism"), &s.level(n).identity()))?;
        }
        for x in &s.level(n).elements()?.list {
            let hs: Vec<Elem> = (0..=n).map(|j| hom.h(n, j, x)).collect();
            if t.face(n + 1, 0, &hs[0]) != hom.induced(false, x) {
                return Err(fail("d_0 h_0 = f", x));
            }
            record("d_0 h_0 = f".into(), n);
            if t.face(n + 1, n + 1, &hs[n]) != hom.induced(true, x) {
                return Err(fail("d_{n+1} h_n = g", x));
            }
            record("d_{n+1} h_n = g".into(), n);
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = t.face(n + 1, i, &hs[j]);
                    let (name, rhs) = if i < j {
                        ("d_i h_j = h_{j-1} d_i (i < j)", hom.h(n - 1, j - 1, &s.face(n, i, x)))
                    } else if i == j && j > 0 {
                        ("d_j h_j = d_j h_{j-1}", t.face(n + 1, j, &hs[j - 1]))
                    } else if i > j + 1 {
                        ("d_i h_j = h_j d_{i-1} (i > j+1)", hom.h(n - 1, j, &s.face(n, i - 1, x)))
                    } else {
                        continue;
                    };
                    if lhs != rhs {
                        return Err(fail(name, x));
                    }
                    record(name.into(), n);
                }
                if n < depth {
                    for i in 0..=n + 1 {
                        let lhs = t.degeneracy(n + 1, i, &hs[j]);
                        let (name, rhs) = if i <= j {
                            ("s_i h_j = h_{j+1} s_i (i ≤ j)", hom.h(n + 1, j + 1, &s.degeneracy(n, i, x)))
                        } else {
                            ("s_i h_j = h_j s_{i-1} (i > j)", hom.h(n + 1, j, &s.degeneracy(n, i - 1, x)))
                        };
                        if lhs != rhs {
                            return Err(fail(name, x));
                        }
                        record(name.into(), n);
                    }
                }
            }
        }
    }
    Ok((hom, checks))
}
