use super::subgroup::Closer;
use super::{quotient, Elem, Group, QuotientMap, Subgroup};
use crate::error::{Error, Result};

/// Smallest subgroup containing `gens` and invariant under conjugation by
/// every element of `conjugators`.
pub fn normal_closure_under(ambient: &Group, gens: &[Elem], conjugators: &[Elem]) -> Result<Subgroup> {
    let mut c = Closer::new(ambient, ambient.cap());
    for g in gens {
        c.add(g)?;
    }
    let mut i = 0;
    while i < c.gens.len() {
        let h = c.gens[i].clone();
        for f in conjugators {
            let x = ambient.conj(f, &h);
            c.add(&x)?;
        }
        i += 1;
    }
    Ok(Subgroup::from_closer(ambient, c))
}

/// Smallest normal subgroup of `ambient` containing `gens`.
pub fn normal_closure(ambient: &Group, gens: &[Elem]) -> Result<Subgroup> {
    normal_closure_under(ambient, gens, &ambient.generators())
}

fn require_shared(a: &Subgroup, b: &Subgroup) -> Result<()> {
    if !a.shares_ambient(b) {
        return Err(Error::NotASubgroup("subgroups live in different ambient groups".into()));
    }
    Ok(())
}

/// `[A, B]`, generated by `a b a⁻¹ b⁻¹`. Computed as the normal closure in
/// `⟨A, B⟩` of the commutators of generators, which is the same subgroup.
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    require_shared(a, b)?;
    let g = a.ambient();
    if a.is_trivial() || b.is_trivial() {
        return Ok(Subgroup::trivial(g));
    }
    let mut seeds = Vec::with_capacity(a.gens().len() * b.gens().len());
    for x in a.gens() {
        for y in b.gens() {
            seeds.push(g.comm(x, y));
        }
    }
    let mut conj: Vec<Elem> = a.gens().to_vec();
    conj.extend_from_slice(b.gens());
    normal_closure_under(g, &seeds, &conj)
}

pub fn intersect(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    require_shared(a, b)?;
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let members: Vec<Elem> = small.members().iter().filter(|x| big.contains(x)).cloned().collect();
    Subgroup::from_members(a.ambient(), members)
}

/// The product set `AB`. Requires one factor to normalize the other, or
/// else that `AB` happens to be closed.
pub fn product_subgroup(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    require_shared(a, b)?;
    let g = a.ambient();
    let mut gens = a.gens().to_vec();
    gens.extend_from_slice(b.gens());
    if a.is_normalized_by(b.gens()) || b.is_normalized_by(a.gens()) {
        return super::closure(g, &gens);
    }
    let joined = super::closure(g, &gens)?;
    let meet = intersect(a, b)?;
    if joined.order() * meet.order() == a.order() * b.order() {
        Ok(joined)
    } else {
        Err(Error::NotASubgroup("neither factor normalizes the other and AB is not closed".into()))
    }
}

/// `Γ_k(G)` via `Γ_k = [G, Γ_{k-1}]`.
pub fn lower_central(g: &Group, k: usize) -> Result<Subgroup> {
    assert!(k >= 1, "lower central series is indexed from 1");
    let whole = Subgroup::whole(g)?;
    let mut cur = whole.clone();
    for _ in 1..k {
        if cur.is_trivial() {
            break;
        }
        cur = commutator_subgroup(&whole, &cur)?;
    }
    Ok(cur)
}

/// `Γ_k(G)` via `Γ_k = ∏_{i+j=k} [Γ_i, Γ_j]`, independent of
/// [`lower_central`] and used to cross-check it.
pub fn lower_central_by_products(g: &Group, k: usize) -> Result<Vec<Subgroup>> {
    assert!(k >= 1);
    let mut terms = vec![Subgroup::whole(g)?];
    for n in 2..=k {
        let mut gens = Vec::new();
        for i in 1..n {
            let c = commutator_subgroup(&terms[i - 1], &terms[n - i - 1])?;
            gens.extend_from_slice(c.gens());
        }
        terms.push(super::closure(g, &gens)?);
    }
    Ok(terms)
}

/// `Z_k(G) = G / Γ_k(G)` with its projection.
pub fn z_k(g: &Group, k: usize) -> Result<QuotientMap> {
    let gamma = lower_central(g, k)?;
    quotient(g, &gamma)
}
