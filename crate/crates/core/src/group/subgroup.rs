use std::fmt;
use std::sync::{Arc, OnceLock};

use rustc_hash::FxHashSet;

use super::{Elem, Group, GroupImpl};
use crate::error::{Error, Result};

/// Incremental closure by Dimino's coset method: adding a generator to a
/// closed subgroup `H` only multiplies `H` by new coset representatives.
pub(crate) struct Closer<'a> {
    group: &'a Group,
    cap: usize,
    pub(crate) gens: Vec<Elem>,
    list: Vec<Elem>,
    set: FxHashSet<Elem>,
}

impl<'a> Closer<'a> {
    pub(crate) fn new(group: &'a Group, cap: usize) -> Self {
        let e = group.identity();
        let mut set = FxHashSet::default();
        set.insert(e.clone());
        Closer { group, cap, gens: Vec::new(), list: vec![e], set }
    }

    pub(crate) fn contains(&self, x: &Elem) -> bool {
        self.set.contains(x)
    }

    pub(crate) fn len(&self) -> usize {
        self.list.len()
    }

    /// Adds `x` as a generator. Returns whether the subgroup grew.
    pub(crate) fn add(&mut self, x: &Elem) -> Result<bool> {
        if self.set.contains(x) {
            return Ok(false);
        }
        let g = self.group;
        let base: Vec<Elem> = self.list.clone();
        self.gens.push(x.clone());
        let mut reps = vec![g.identity()];
        self.push_coset(&base, x)?;
        reps.push(x.clone());
        let mut pos = 1;
        while pos < reps.len() {
            let r = reps[pos].clone();
            for i in 0..self.gens.len() {
                let t = g.mul(&r, &self.gens[i]);
                if !self.set.contains(&t) {
                    self.push_coset(&base, &t)?;
                    reps.push(t);
                }
            }
            pos += 1;
        }
        Ok(true)
    }

    fn push_coset(&mut self, base: &[Elem], t: &Elem) -> Result<()> {
        for h in base {
            let y = self.group.mul(h, t);
            if self.set.insert(y.clone()) {
                self.list.push(y);
            }
        }
        if self.list.len() > self.cap {
            return Err(Error::CapExceeded { cap: self.cap });
        }
        Ok(())
    }

    pub(crate) fn finish(self) -> (Vec<Elem>, Vec<Elem>, FxHashSet<Elem>) {
        let mut list = self.list;
        list.sort_unstable();
        (self.gens, list, self.set)
    }
}

pub(crate) fn bfs_closure(group: &Group, gens: &[Elem], cap: usize) -> Result<Vec<Elem>> {
    let mut c = Closer::new(group, cap);
    for g in gens {
        c.add(g)?;
    }
    Ok(c.finish().1)
}

struct Members {
    sorted: Vec<Elem>,
    set: FxHashSet<Elem>,
}

/// A subgroup of an ambient group: its full member set plus a generating
/// list whose closure is exactly that set.
#[derive(Clone)]
pub struct Subgroup {
    ambient: Group,
    gens: Vec<Elem>,
    members: Arc<Members>,
    as_group: Arc<OnceLock<Group>>,
}

/// Smallest subgroup of `ambient` containing `gens`.
pub fn closure(ambient: &Group, gens: &[Elem]) -> Result<Subgroup> {
    let mut c = Closer::new(ambient, ambient.cap());
    for g in gens {
        c.add(g)?;
    }
    let (gens, sorted, set) = c.finish();
    Ok(Subgroup::assemble(ambient.clone(), gens, sorted, set))
}

impl Subgroup {
    pub(crate) fn from_closer(ambient: &Group, c: Closer<'_>) -> Self {
        let (gens, sorted, set) = c.finish();
        Self::assemble(ambient.clone(), gens, sorted, set)
    }

    fn assemble(ambient: Group, gens: Vec<Elem>, sorted: Vec<Elem>, set: FxHashSet<Elem>) -> Self {
        Subgroup { ambient, gens, members: Arc::new(Members { sorted, set }), as_group: Arc::new(OnceLock::new()) }
    }

    pub fn trivial(ambient: &Group) -> Self {
        let e = ambient.identity();
        let mut set = FxHashSet::default();
        set.insert(e.clone());
        Self::assemble(ambient.clone(), Vec::new(), vec![e], set)
    }

    /// The whole ambient group as a subgroup of itself.
    pub fn whole(ambient: &Group) -> Result<Self> {
        let els = ambient.elements()?;
        let set = els.list.iter().cloned().collect();
        Ok(Self::assemble(ambient.clone(), ambient.generators(), els.list.clone(), set))
    }

    /// Wraps a member set already known to be a subgroup, recovering a
    /// small generating set greedily in canonical order.
    pub fn from_members(ambient: &Group, mut members: Vec<Elem>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let mut c = Closer::new(ambient, ambient.cap());
        for x in &members {
            if !c.contains(x) {
                c.add(x)?;
            }
        }
        if c.len() != members.len() {
            return Err(Error::NotASubgroup(format!(
                "member set of size {} generates a subgroup of size {}",
                members.len(),
                c.len()
            )));
        }
        let (gens, sorted, set) = c.finish();
        Ok(Self::assemble(ambient.clone(), gens, sorted, set))
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn members(&self) -> &[Elem] {
        &self.members.sorted
    }

    pub fn order(&self) -> usize {
        self.members.sorted.len()
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.members.set.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn same_set(&self, other: &Subgroup) -> bool {
        self.order() == other.order() && self.members().iter().all(|x| other.contains(x))
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.members().iter().all(|x| other.contains(x))
    }

    pub fn shares_ambient(&self, other: &Subgroup) -> bool {
        self.ambient.same(&other.ambient)
    }

    /// Invariance under conjugation by each of `by`.
    pub fn is_normalized_by(&self, by: &[Elem]) -> bool {
        let g = &self.ambient;
        by.iter().all(|f| self.gens.iter().all(|h| self.contains(&g.conj(f, h))))
    }

    pub fn is_normal(&self) -> bool {
        self.is_normalized_by(&self.ambient.generators())
    }

    /// The subgroup as a group in its own right. Elements keep the ambient
    /// encoding, so members can be passed back and forth freely.
    pub fn as_group(&self) -> Group {
        self.as_group
            .get_or_init(|| {
                Group::with_elements(
                    SubgroupGroup { ambient: self.ambient.clone(), gens: self.gens.clone(), order: self.order() },
                    self.ambient.cap(),
                    self.members.sorted.clone(),
                )
            })
            .clone()
    }

    /// Re-homes the same member set into another group sharing the
    /// element encoding (for example a subgroup viewed inside `H.as_group()`).
    pub fn rehome(&self, ambient: &Group) -> Subgroup {
        Subgroup {
            ambient: ambient.clone(),
            gens: self.gens.clone(),
            members: self.members.clone(),
            as_group: Arc::new(OnceLock::new()),
        }
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} in {:?})", self.order(), self.ambient)
    }
}

struct SubgroupGroup {
    ambient: Group,
    gens: Vec<Elem>,
    order: usize,
}

impl GroupImpl for SubgroupGroup {
    fn width(&self) -> usize {
        self.ambient.width()
    }
    fn identity(&self) -> Elem {
        self.ambient.identity()
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.ambient.mul(a, b)
    }
    fn inv(&self, a: &Elem) -> Elem {
        self.ambient.inv(a)
    }
    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
    fn label(&self) -> String {
        format!("subgroup of order {} in {}", self.order, self.ambient.label())
    }
    fn known_order(&self) -> Option<u128> {
        Some(self.order as u128)
    }
}

/// Every subgroup of `g`, found as iterated joins of cyclic subgroups.
/// Refuses groups above `max_order` or lattices above `max_count`.
pub fn all_subgroups(g: &Group, max_order: usize, max_count: usize) -> Result<Vec<Subgroup>> {
    let els = g.elements()?;
    if els.len() > max_order {
        return Err(Error::SearchSpaceExceeded(format!(
            "group of order {} exceeds the subgroup-search bound {max_order}",
            els.len()
        )));
    }
    let mut seen: FxHashSet<Vec<Elem>> = FxHashSet::default();
    let mut cyclic = Vec::new();
    for x in &els.list {
        let c = closure(g, std::slice::from_ref(x))?;
        if seen.insert(c.members().to_vec()) {
            cyclic.push(c);
        }
    }
    let mut all = cyclic.clone();
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclic {
                if c.is_subset_of(h) {
                    continue;
                }
                let mut gens = h.gens().to_vec();
                gens.extend_from_slice(c.gens());
                let j = closure(g, &gens)?;
                if seen.insert(j.members().to_vec()) {
                    if seen.len() > max_count {
                        return Err(Error::SearchSpaceExceeded(format!(
                            "more than {max_count} subgroups"
                        )));
                    }
                    next.push(j.clone());
                    all.push(j);
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
    Ok(all)
}
