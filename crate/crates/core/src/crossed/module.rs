use std::sync::Arc;

use super::cube::{CrossedCube, Pairing};
use super::PAIR_BUDGET;
use crate::error::{Error, Result};
use crate::group::constructions::verify_action;
use crate::group::{closure, commutator_subgroup, quotient, Action, Elem, Group, GroupHom, IndexSet, Subgroup};

/// A crossed module `μ: M → P` with a left action of `P` on `M`.
#[derive(Clone)]
pub struct CrossedModule {
    source: Group,
    target: Group,
    boundary: GroupHom,
    action: Action,
}

impl std::fmt::Debug for CrossedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CrossedModule({:?} -> {:?})", self.source, self.target)
    }
}

/// Conjugation inside a common ambient group, for inclusion-like crossed
/// modules whose source and target share an element encoding.
pub fn conjugation_action(ambient: &Group) -> Action {
    let g = ambient.clone();
    Arc::new(move |p: &Elem, m: &Elem| g.conj(p, m))
}

pub fn trivial_action() -> Action {
    Arc::new(|_: &Elem, m: &Elem| m.clone())
}

/// Checks that `boundary` is a homomorphism, that `action` is an action by
/// automorphisms, and both crossed module identities:
/// `μ(ᵖm) = p μ(m) p⁻¹` and `^{μ(m)}m' = m m' m⁻¹`.
///
/// Both identities are checked on every pair when that stays within the
/// pair budget. Otherwise they are checked with `p` (respectively `m`)
/// running over generators only, which is still exact: once the action is
/// known to be multiplicative, each identity propagates from generators.
pub fn make_crossed_module(source: &Group, target: &Group, boundary: GroupHom, action: Action) -> Result<CrossedModule> {
    if !boundary.source().same(source) || !boundary.target().same(target) {
        return Err(Error::NotAHomomorphism("boundary does not run from source to target".into()));
    }
    boundary.verify()?;
    verify_action(source, target, &action)?;
    let ms = source.elements()?;
    let ps = target.elements()?;
    let all_p = ps.len().saturating_mul(ms.len()) <= PAIR_BUDGET;
    let all_m = ms.len().saturating_mul(ms.len()) <= PAIR_BUDGET;
    let p_range: Vec<Elem> = if all_p { ps.list.clone() } else { target.generators() };
    let m_range: Vec<Elem> = if all_m { ms.list.clone() } else { source.generators() };
    for p in &p_range {
        for m in &ms.list {
            let lhs = boundary.apply(&action(p, m));
            let rhs = target.conj(p, &boundary.apply(m));
            if lhs != rhs {
                return Err(Error::AxiomViolation {
                    axiom: "μ(ᵖm) = p μ(m) p⁻¹".into(),
                    witness: format!("p = {p:?}, m = {m:?}"),
                });
            }
        }
    }
    for m in &m_range {
        let dm = boundary.apply(m);
        for m2 in &ms.list {
            if action(&dm, m2) != source.conj(m, m2) {
                return Err(Error::AxiomViolation {
                    axiom: "^{μ(m)}m' = m m' m⁻¹".into(),
                    witness: format!("m = {m:?}, m' = {m2:?}"),
                });
            }
        }
    }
    Ok(CrossedModule { source: source.clone(), target: target.clone(), boundary, action })
}

/// `R ↪ F` with conjugation, for a normal subgroup `R`.
pub fn inclusion_crossed_module(normal: &Subgroup) -> Result<CrossedModule> {
    if !normal.is_normal() {
        return Err(Error::NotNormal(format!("{normal:?}")));
    }
    let ambient = normal.ambient().clone();
    let sub = normal.as_group();
    make_crossed_module(&sub, &ambient, GroupHom::inclusion(normal), conjugation_action(&ambient))
}

impl CrossedModule {
    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn act(&self, p: &Elem, m: &Elem) -> Elem {
        (self.action)(p, m)
    }

    /// The same data as a crossed 1-cube: `M_∅ = P`, `M_{1} = M`, with
    /// `h(p, m) = ᵖm m⁻¹` and commutators on equal indices.
    pub fn to_cube(&self) -> CrossedCube {
        let (src, tgt, act) = (self.source.clone(), self.target.clone(), self.action.clone());
        let h: Pairing = Arc::new(move |a: IndexSet, x: &Elem, b: IndexSet, y: &Elem| -> Elem {
            match (a.is_empty(), b.is_empty()) {
                (true, true) => tgt.comm(x, y),
                (false, false) => src.comm(x, y),
                (true, false) => src.mul(&act(x, y), &src.inv(y)),
                (false, true) => src.mul(x, &src.inv(&act(y, x))),
            }
        });
        let mus = vec![vec![None], vec![Some(self.boundary.clone())]];
        CrossedCube::new(1, vec![self.target.clone(), self.source.clone()], mus, h).expect("well-formed 1-cube")
    }

    /// The `[P, M]` subgroup of `M`, generated by all `ᵖm m⁻¹`.
    pub fn displacement_subgroup(&self) -> Result<Subgroup> {
        let (m, act) = (&self.source, &self.action);
        let pgens = self.target.generators();
        let seeds: Vec<Elem> = pgens
            .iter()
            .flat_map(|p| m.generators().into_iter().map(move |x| (p.clone(), x)))
            .map(|(p, x)| m.mul(&act(&p, &x), &m.inv(&x)))
            .collect();
        let mut sub = closure(m, &seeds)?;
        loop {
            let extra: Vec<Elem> = sub
                .gens()
                .iter()
                .flat_map(|s| pgens.iter().map(move |p| (p.clone(), s.clone())))
                .map(|(p, s)| act(&p, &s))
                .filter(|x| !sub.contains(x))
                .collect();
            if extra.is_empty() {
                return Ok(sub);
            }
            let mut gens = sub.gens().to_vec();
            gens.extend(extra);
            sub = closure(m, &gens)?;
        }
    }
}

/// `Ab(M → P) = (M/[P,M] → P/[P,P])` with the trivial action.
pub fn ab_crossed_module(cm: &CrossedModule) -> Result<CrossedModule> {
    let qm = quotient(&cm.source, &cm.displacement_subgroup()?)?;
    let whole = Subgroup::whole(&cm.target)?;
    let qp = quotient(&cm.target, &commutator_subgroup(&whole, &whole)?)?;
    let (boundary, proj) = (cm.boundary.clone(), qp.projection.clone());
    let mu = GroupHom::from_fn(&qm.group, &qp.group, move |x| proj.apply(&boundary.apply(x)));
    make_crossed_module(&qm.group, &qp.group, mu, trivial_action())
}
