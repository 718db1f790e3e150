//! Finite groups with opaque, canonically ordered elements and the
//! subgroup calculus built on top of them.

mod ad;
mod calculus;
pub mod catalog;
pub(crate) mod constructions;
mod hom;
mod invariants;
mod subgroup;

pub use ad::{check_d_k_splitting, check_prefix_intersection, find_simplicity_witness, is_simple_ad, IndexSet,
    NormalAd, SimplicityVerdict};
pub use calculus::{commutator_subgroup, intersect, lower_central, lower_central_by_products,
    normal_closure, normal_closure_under, product_subgroup, z_k};
pub use constructions::{direct_product, fiber_product, quotient, semidirect_product,
    semidirect_product_unchecked, Action, QuotientMap};
pub use hom::GroupHom;
pub use invariants::{abelian_invariants, AbelianInvariants, GroupSignature};
pub use subgroup::{all_subgroups, closure, Subgroup};

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use rand::Rng;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Default bound on the number of elements any enumeration may produce.
pub const DEFAULT_ORDER_CAP: usize = 2_000_000;

/// The enumeration cap in effect: `HOPF_ORDER_CAP` if set and valid,
/// otherwise [`DEFAULT_ORDER_CAP`].
pub fn default_order_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("HOPF_ORDER_CAP")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
            .unwrap_or(DEFAULT_ORDER_CAP)
    })
}

/// A group element: a flat vector of small integers whose meaning is
/// private to the group that produced it. The derived ordering is the
/// canonical total order used for coset representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(SmallVec<[u32; 16]>);

impl Elem {
    pub fn from_slice(data: &[u32]) -> Self {
        Elem(SmallVec::from_slice(data))
    }

    pub fn scalar(x: u32) -> Self {
        Elem(SmallVec::from_slice(&[x]))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Elem>) -> Self {
        let mut out = SmallVec::new();
        for p in parts {
            out.extend_from_slice(&p.0);
        }
        Elem(out)
    }

    pub fn slice(&self, start: usize, len: usize) -> Self {
        Elem::from_slice(&self.0[start..start + len])
    }

    /// Splits into consecutive pieces of the given widths.
    pub fn split(&self, widths: &[usize]) -> Vec<Elem> {
        let mut out = Vec::with_capacity(widths.len());
        let mut at = 0;
        for &w in widths {
            out.push(self.slice(at, w));
            at += w;
        }
        out
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The operations a concrete group family provides. All elements of one
/// group share the same encoded width.
pub trait GroupImpl: Send + Sync {
    fn width(&self) -> usize;
    fn identity(&self) -> Elem;
    fn mul(&self, a: &Elem, b: &Elem) -> Elem;
    fn inv(&self, a: &Elem) -> Elem;
    fn generators(&self) -> Vec<Elem>;
    fn label(&self) -> String;
    /// Exact order when it is known without enumeration.
    fn known_order(&self) -> Option<u128> {
        None
    }
}

/// The enumerated element set of a group, sorted canonically.
pub struct ElementSet {
    pub list: Vec<Elem>,
    pub index: FxHashMap<Elem, u32>,
}

impl ElementSet {
    pub(crate) fn from_sorted(list: Vec<Elem>) -> Self {
        let index = list.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        ElementSet { list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.index.contains_key(x)
    }
}

struct GroupInner {
    id: u64,
    imp: Box<dyn GroupImpl>,
    cap: usize,
    elements: OnceLock<Arc<ElementSet>>,
}

/// A finite group handle. Cloning is cheap and clones share the cached
/// enumeration.
#[derive(Clone)]
pub struct Group(Arc<GroupInner>);

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

impl Group {
    pub fn new(imp: impl GroupImpl + 'static) -> Self {
        Self::with_cap(imp, default_order_cap())
    }

    pub fn with_cap(imp: impl GroupImpl + 'static, cap: usize) -> Self {
        Group(Arc::new(GroupInner {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            imp: Box::new(imp),
            cap,
            elements: OnceLock::new(),
        }))
    }

    /// Builds a group whose element set is already known (sorted).
    pub(crate) fn with_elements(imp: impl GroupImpl + 'static, cap: usize, sorted: Vec<Elem>) -> Self {
        let g = Self::with_cap(imp, cap);
        let _ = g.0.elements.set(Arc::new(ElementSet::from_sorted(sorted)));
        g
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn same(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn cap(&self) -> usize {
        self.0.cap
    }

    pub fn width(&self) -> usize {
        self.0.imp.width()
    }

    pub fn label(&self) -> String {
        self.0.imp.label()
    }

    pub fn identity(&self) -> Elem {
        self.0.imp.identity()
    }

    pub fn is_identity(&self, x: &Elem) -> bool {
        *x == self.identity()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.0.imp.mul(a, b)
    }

    pub fn inv(&self, a: &Elem) -> Elem {
        self.0.imp.inv(a)
    }

    pub fn generators(&self) -> Vec<Elem> {
        self.0.imp.generators()
    }

    /// Left conjugation `a b a⁻¹`.
    pub fn conj(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(&self.mul(a, b), &self.inv(a))
    }

    /// Commutator `a b a⁻¹ b⁻¹`.
    pub fn comm(&self, a: &Elem, b: &Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&ab, &self.inv(&ba))
    }

    pub fn mul_all<'a>(&self, xs: impl IntoIterator<Item = &'a Elem>) -> Elem {
        xs.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, x: &Elem, e: i64) -> Elem {
        let base = if e < 0 { self.inv(x) } else { x.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            n >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: &Elem) -> u64 {
        let e = self.identity();
        let mut y = x.clone();
        let mut k = 1;
        while y != e {
            y = self.mul(&y, x);
            k += 1;
        }
        k
    }

    /// Full enumeration, cached. Fails with `CapExceeded` rather than
    /// producing more than `cap` elements.
    pub fn elements(&self) -> Result<Arc<ElementSet>> {
        if let Some(e) = self.0.elements.get() {
            return Ok(e.clone());
        }
        if let Some(n) = self.0.imp.known_order() {
            if n > self.0.cap as u128 {
                return Err(Error::CapExceeded { cap: self.0.cap });
            }
        }
        let gens = self.generators();
        let list = subgroup::bfs_closure(self, &gens, self.0.cap)?;
        let set = Arc::new(ElementSet::from_sorted(list));
        let _ = self.0.elements.set(set);
        Ok(self.0.elements.get().expect("just set").clone())
    }

    /// Order if known without enumerating: from the implementation or from
    /// a cached enumeration.
    pub fn order_hint(&self) -> Option<u128> {
        self.0.imp.known_order().or_else(|| self.0.elements.get().map(|e| e.len() as u128))
    }

    pub fn is_enumerated(&self) -> bool {
        self.0.elements.get().is_some()
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn contains(&self, x: &Elem) -> Result<bool> {
        Ok(self.elements()?.contains(x))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|a| gens.iter().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Uniform element when enumerable, otherwise a long random word in
    /// the generators.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Elem {
        if let Ok(els) = self.elements() {
            return els.list[rng.gen_range(0..els.len())].clone();
        }
        let gens = self.generators();
        let mut x = self.identity();
        if gens.is_empty() {
            return x;
        }
        for _ in 0..64 {
            let g = &gens[rng.gen_range(0..gens.len())];
            x = if rng.gen_bool(0.5) { self.mul(&x, g) } else { self.mul(&x, &self.inv(g)) };
        }
        x
    }

    /// Evaluates a word given as (generator index, exponent) pairs.
    pub fn eval_word(&self, word: &[(usize, i64)]) -> Elem {
        let gens = self.generators();
        word.iter().fold(self.identity(), |acc, &(g, e)| self.mul(&acc, &self.pow(&gens[g], e)))
    }

    /// Checks the group axioms: identity and inverses on every element,
    /// associativity on all triples up to `full_limit` elements, otherwise
    /// on `samples` seeded random triples.
    pub fn check_axioms(&self, full_limit: usize, samples: usize, seed: u64) -> Result<()> {
        use rand::SeedableRng;
        let els = self.elements()?;
        let e = self.identity();
        for x in &els.list {
            if self.mul(&e, x) != *x || self.mul(x, &e) != *x {
                return Err(Error::AxiomViolation { axiom: "identity".into(), witness: format!("{x:?}") });
            }
            if self.mul(&self.inv(x), x) != e {
                return Err(Error::AxiomViolation { axiom: "inverse".into(), witness: format!("{x:?}") });
            }
        }
        let assoc = |a: &Elem, b: &Elem, c: &Elem| -> Result<()> {
            if self.mul(&self.mul(a, b), c) != self.mul(a, &self.mul(b, c)) {
                return Err(Error::AxiomViolation {
                    axiom: "associativity".into(),
                    witness: format!("({a:?}, {b:?}, {c:?})"),
                });
            }
            Ok(())
        };
        if els.len() <= full_limit {
            for a in &els.list {
                for b in &els.list {
                    let ab = self.mul(a, b);
                    for c in &els.list {
                        if self.mul(&ab, c) != self.mul(a, &self.mul(b, c)) {
                            return assoc(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let pick = |rng: &mut rand_chacha::ChaCha8Rng| els.list[rng.gen_range(0..els.len())].clone();
                let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                assoc(&a, &b, &c)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group#{}({})", self.0.id, self.label())
    }
}
