use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{Elem, Group, GroupHom, GroupImpl, Subgroup};
use crate::error::{Error, Result};

/// A left action `(h, n) ↦ ʰn` of one group on another.
pub type Action = Arc<dyn Fn(&Elem, &Elem) -> Elem + Send + Sync>;

struct DirectProduct {
    factors: Vec<Group>,
    widths: Vec<usize>,
}

impl GroupImpl for DirectProduct {
    fn width(&self) -> usize {
        self.widths.iter().sum()
    }
    fn identity(&self) -> Elem {
        let ids: Vec<Elem> = self.factors.iter().map(|g| g.identity()).collect();
        Elem::concat(&ids)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let (xs, ys) = (a.split(&self.widths), b.split(&self.widths));
        let parts: Vec<Elem> = self.factors.iter().zip(xs.iter().zip(&ys)).map(|(g, (x, y))| g.mul(x, y)).collect();
        Elem::concat(&parts)
    }
    fn inv(&self, a: &Elem) -> Elem {
        let parts: Vec<Elem> = self.factors.iter().zip(a.split(&self.widths)).map(|(g, x)| g.inv(&x)).collect();
        Elem::concat(&parts)
    }
    fn generators(&self) -> Vec<Elem> {
        let ids: Vec<Elem> = self.factors.iter().map(|g| g.identity()).collect();
        let mut out = Vec::new();
        for (i, g) in self.factors.iter().enumerate() {
            for x in g.generators() {
                let mut parts = ids.clone();
                parts[i] = x;
                out.push(Elem::concat(&parts));
            }
        }
        out
    }
    fn label(&self) -> String {
        let names: Vec<String> = self.factors.iter().map(|g| g.label()).collect();
        format!("({})", names.join(" x "))
    }
    fn known_order(&self) -> Option<u128> {
        let mut n: u128 = 1;
        for g in &self.factors {
            n = n.checked_mul(g.order_hint()?)?;
        }
        Some(n)
    }
}

/// Cartesian product with componentwise multiplication. Elements are the
/// concatenated encodings of the factors.
pub fn direct_product(factors: &[Group]) -> Group {
    let widths = factors.iter().map(|g| g.width()).collect();
    let cap = factors.iter().map(|g| g.cap()).max().unwrap_or_else(super::default_order_cap);
    Group::with_cap(DirectProduct { factors: factors.to_vec(), widths }, cap)
}

/// `{(a, b) : f(a) = g(b)}` inside `A × B`, with its two projections.
pub fn fiber_product(f: &GroupHom, g: &GroupHom) -> Result<(Group, GroupHom, GroupHom)> {
    let (a, b) = (f.source(), g.source());
    let prod = direct_product(&[a.clone(), b.clone()]);
    let mut by_image: FxHashMap<Elem, Vec<Elem>> = FxHashMap::default();
    for y in &b.elements()?.list {
        by_image.entry(g.apply(y)).or_default().push(y.clone());
    }
    let mut members = Vec::new();
    for x in &a.elements()?.list {
        if let Some(ys) = by_image.get(&f.apply(x)) {
            for y in ys {
                members.push(Elem::concat([x, y]));
                if members.len() > prod.cap() {
                    return Err(Error::CapExceeded { cap: prod.cap() });
                }
            }
        }
    }
    let sub = Subgroup::from_members(&prod, members)?;
    let fp = sub.as_group();
    let (wa, wb) = (a.width(), b.width());
    let p0 = GroupHom::from_fn(&fp, a, move |x| x.slice(0, wa));
    let p1 = GroupHom::from_fn(&fp, b, move |x| x.slice(wa, wb));
    Ok((fp, p0, p1))
}

struct Semidirect {
    normal: Group,
    acting: Group,
    act: Action,
}

impl Semidirect {
    fn parts(&self, x: &Elem) -> (Elem, Elem) {
        let w = self.normal.width();
        (x.slice(0, w), x.slice(w, self.acting.width()))
    }
}

impl GroupImpl for Semidirect {
    fn width(&self) -> usize {
        self.normal.width() + self.acting.width()
    }
    fn identity(&self) -> Elem {
        Elem::concat([&self.normal.identity(), &self.acting.identity()])
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let ((n1, h1), (n2, h2)) = (self.parts(a), self.parts(b));
        let n = self.normal.mul(&n1, &(self.act)(&h1, &n2));
        Elem::concat([&n, &self.acting.mul(&h1, &h2)])
    }
    fn inv(&self, a: &Elem) -> Elem {
        let (n, h) = self.parts(a);
        let hi = self.acting.inv(&h);
        let ni = (self.act)(&hi, &self.normal.inv(&n));
        Elem::concat([&ni, &hi])
    }
    fn generators(&self) -> Vec<Elem> {
        let (en, eh) = (self.normal.identity(), self.acting.identity());
        let mut out: Vec<Elem> = self.normal.generators().iter().map(|n| Elem::concat([n, &eh])).collect();
        out.extend(self.acting.generators().iter().map(|h| Elem::concat([&en, h])));
        out
    }
    fn label(&self) -> String {
        format!("({} : {})", self.normal.label(), self.acting.label())
    }
    fn known_order(&self) -> Option<u128> {
        self.normal.order_hint()?.checked_mul(self.acting.order_hint()?)
    }
}

/// `N ⋊ H` with `(n, h)(n', h') = (n · ʰn', h h')`, after checking that
/// every generator of `H` acts by an automorphism and that the action is
/// compatible with multiplication in `H`.
pub fn semidirect_product(normal: &Group, acting: &Group, act: Action) -> Result<Group> {
    verify_action(normal, acting, &act)?;
    Ok(semidirect_product_unchecked(normal, acting, act))
}

/// As [`semidirect_product`] without the action check, for structural
/// actions already known to be valid or too large to verify exhaustively.
pub fn semidirect_product_unchecked(normal: &Group, acting: &Group, act: Action) -> Group {
    let cap = normal.cap().max(acting.cap());
    Group::with_cap(Semidirect { normal: normal.clone(), acting: acting.clone(), act }, cap)
}

pub(crate) fn verify_action(normal: &Group, acting: &Group, act: &Action) -> Result<()> {
    let ns = normal.elements()?;
    let ngens = normal.generators();
    let hgens = acting.generators();
    let en = normal.identity();
    for h in &hgens {
        if act(h, &en) != en {
            return Err(Error::NotAnAction(format!("{h:?} moves the identity")));
        }
        let mut seen = rustc_hash::FxHashSet::default();
        for x in &ns.list {
            let hx = act(h, x);
            if !ns.contains(&hx) {
                return Err(Error::NotAnAction(format!("{h:?} sends {x:?} outside the group")));
            }
            seen.insert(hx.clone());
            for y in &ngens {
                if act(h, &normal.mul(x, y)) != normal.mul(&hx, &act(h, y)) {
                    return Err(Error::NotAnAction(format!("{h:?} is not multiplicative at ({x:?}, {y:?})")));
                }
            }
        }
        if seen.len() != ns.len() {
            return Err(Error::NotAnAction(format!("{h:?} is not bijective")));
        }
    }
    let hs = acting.elements()?;
    for h in &hs.list {
        for g in &hgens {
            let hg = acting.mul(h, g);
            for n in &ngens {
                if act(&hg, n) != act(h, &act(g, n)) {
                    return Err(Error::NotAnAction(format!("action of {h:?}·{g:?} differs on {n:?}")));
                }
            }
        }
    }
    Ok(())
}

struct QuotientGroup {
    parent: Group,
    rep: Arc<FxHashMap<Elem, Elem>>,
    gens: Vec<Elem>,
    order: usize,
}

impl QuotientGroup {
    fn rep(&self, x: &Elem) -> Elem {
        self.rep.get(x).cloned().unwrap_or_else(|| panic!("{x:?} is not an element of {:?}", self.parent))
    }
}

impl GroupImpl for QuotientGroup {
    fn width(&self) -> usize {
        self.parent.width()
    }
    fn identity(&self) -> Elem {
        self.parent.identity()
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.rep(&self.parent.mul(a, b))
    }
    fn inv(&self, a: &Elem) -> Elem {
        self.rep(&self.parent.inv(a))
    }
    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
    fn label(&self) -> String {
        format!("{} / (order {})", self.parent.label(), self.parent.order().unwrap_or(0) / self.order.max(1))
    }
    fn known_order(&self) -> Option<u128> {
        Some(self.order as u128)
    }
}

/// A quotient `G/N` together with its projection. Cosets are represented
/// by their least member in the canonical order.
#[derive(Clone)]
pub struct QuotientMap {
    pub group: Group,
    pub projection: GroupHom,
    pub kernel: Subgroup,
    rep: Arc<FxHashMap<Elem, Elem>>,
}

impl QuotientMap {
    /// The canonical representative of the coset of `x`.
    pub fn rep(&self, x: &Elem) -> Elem {
        self.rep[x].clone()
    }
}

impl std::fmt::Debug for QuotientMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QuotientMap({:?} -> {:?})", self.projection.source(), self.group)
    }
}

pub fn quotient(g: &Group, n: &Subgroup) -> Result<QuotientMap> {
    if !n.is_normalized_by(&g.generators()) {
        return Err(Error::NotNormal(format!("subgroup of order {} in {}", n.order(), g.label())));
    }
    let els = g.elements()?;
    let mut rep: FxHashMap<Elem, Elem> = FxHashMap::default();
    rep.reserve(els.len());
    let mut reps = Vec::with_capacity(els.len() / n.order());
    for x in &els.list {
        if rep.contains_key(x) {
            continue;
        }
        for k in n.members() {
            rep.insert(g.mul(x, k), x.clone());
        }
        reps.push(x.clone());
    }
    let rep = Arc::new(rep);
    let mut gens: Vec<Elem> = g.generators().iter().map(|x| rep[x].clone()).filter(|x| !g.is_identity(x)).collect();
    gens.sort_unstable();
    gens.dedup();
    let order = reps.len();
    let q = Group::with_elements(QuotientGroup { parent: g.clone(), rep: rep.clone(), gens, order }, g.cap(), reps);
    let r2 = rep.clone();
    let projection = GroupHom::from_fn(g, &q, move |x| r2[x].clone());
    Ok(QuotientMap { group: q, projection, kernel: n.clone(), rep })
}
