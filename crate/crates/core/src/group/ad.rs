use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use super::{all_subgroups, closure, commutator_subgroup, intersect, lower_central, product_subgroup, Elem, Group, Subgroup};
use crate::error::{Error, Result};

/// A set of part indices `1..=n`, stored as a bitmask (bit `i - 1` for
/// part `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(pub u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        IndexSet(((1u64 << n) - 1) as u32)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        IndexSet(indices.iter().fold(0, |acc, &i| acc | 1 << (i - 1)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        IndexSet(self.0 | 1 << (i - 1))
    }

    pub fn without(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << (i - 1)))
    }

    pub fn union(self, other: IndexSet) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: IndexSet) -> Self {
        IndexSet(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> Vec<usize> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }

    /// Every subset, in increasing bitmask order.
    pub fn subsets(self) -> Vec<IndexSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut s = 0u32;
        loop {
            out.push(IndexSet(s));
            if s == self.0 {
                break;
            }
            s = (s.wrapping_sub(self.0)) & self.0;
        }
        out
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A group `F` with an ordered list of normal subgroups `R_1, …, R_n`.
/// Intersections over index sets and the iterated-commutator subgroups
/// `D_k(F; A)` are memoized.
#[derive(Clone)]
pub struct NormalAd {
    ambient: Group,
    parts: Vec<Subgroup>,
    meets: Arc<Vec<OnceLock<Subgroup>>>,
    d_cache: Arc<Mutex<FxHashMap<(u32, usize), Subgroup>>>,
}

impl NormalAd {
    pub fn new(ambient: &Group, parts: Vec<Subgroup>) -> Result<Self> {
        if parts.len() > 16 {
            return Err(Error::SearchSpaceExceeded(format!("{} parts; at most 16 are supported", parts.len())));
        }
        let gens = ambient.generators();
        for (i, r) in parts.iter().enumerate() {
            if !r.ambient().same(ambient) {
                return Err(Error::NotASubgroup(format!("part {} lives in a different group", i + 1)));
            }
            if !r.is_normalized_by(&gens) {
                return Err(Error::NotNormal(format!("part {} of order {}", i + 1, r.order())));
            }
        }
        let meets = (0..1usize << parts.len()).map(|_| OnceLock::new()).collect();
        Ok(NormalAd { ambient: ambient.clone(), parts, meets: Arc::new(meets), d_cache: Arc::default() })
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn parts(&self) -> &[Subgroup] {
        &self.parts
    }

    /// Part `R_i`, 1-based.
    pub fn part(&self, i: usize) -> &Subgroup {
        &self.parts[i - 1]
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn full_set(&self) -> IndexSet {
        IndexSet::full(self.parts.len())
    }

    /// `∩_{i∈A} R_i`, with the empty intersection equal to `F`.
    pub fn meet(&self, a: IndexSet) -> Result<Subgroup> {
        let slot = &self.meets[a.0 as usize];
        if let Some(s) = slot.get() {
            return Ok(s.clone());
        }
        let s = match a.indices().as_slice() {
            [] => Subgroup::whole(&self.ambient)?,
            [i] => self.parts[i - 1].clone(),
            [.., last] => intersect(&self.meet(a.without(*last))?, &self.parts[last - 1])?,
        };
        Ok(slot.get_or_init(|| s).clone())
    }

    /// `∏_{i∈A} R_i`.
    pub fn join(&self, a: IndexSet) -> Result<Subgroup> {
        let gens: Vec<Elem> = a.indices().iter().flat_map(|&i| self.parts[i - 1].gens().to_vec()).collect();
        closure(&self.ambient, &gens)
    }

    /// `D_k(F; A)`: the product over all ordered covers `A_1 ∪ … ∪ A_k = A`
    /// (empty pieces allowed) of `[∩_{A_1}R, [∩_{A_2}R, …, ∩_{A_k}R]…]`.
    pub fn d_k(&self, a: IndexSet, k: usize) -> Result<Subgroup> {
        assert!(k >= 1, "D_k is defined for k >= 1");
        assert!(a.is_subset_of(self.full_set()), "index set {a:?} outside the ad");
        if let Some(s) = self.d_cache.lock().expect("poisoned").get(&(a.0, k)) {
            return Ok(s.clone());
        }
        let subsets = a.subsets();
        let mut memo: FxHashMap<Vec<IndexSet>, Subgroup> = FxHashMap::default();
        let mut gens = Vec::new();
        let mut tuple = vec![IndexSet::EMPTY; k];
        let mut counters = vec![0usize; k];
        loop {
            for (slot, &c) in tuple.iter_mut().zip(&counters) {
                *slot = subsets[c];
            }
            let union = tuple.iter().fold(IndexSet::EMPTY, |u, s| u.union(*s));
            if union == a {
                let term = self.nested_commutator(&tuple, &mut memo)?;
                gens.extend_from_slice(term.gens());
            }
            let mut pos = 0;
            while pos < k {
                counters[pos] += 1;
                if counters[pos] < subsets.len() {
                    break;
                }
                counters[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
        gens.sort_unstable();
        gens.dedup();
        let d = closure(&self.ambient, &gens)?;
        self.d_cache.lock().expect("poisoned").insert((a.0, k), d.clone());
        Ok(d)
    }

    fn nested_commutator(&self, tuple: &[IndexSet], memo: &mut FxHashMap<Vec<IndexSet>, Subgroup>) -> Result<Subgroup> {
        if let Some(s) = memo.get(tuple) {
            return Ok(s.clone());
        }
        let s = if tuple.len() == 1 {
            self.meet(tuple[0])?
        } else {
            let inner = self.nested_commutator(&tuple[1..], memo)?;
            commutator_subgroup(&self.meet(tuple[0])?, &inner)?
        };
        memo.insert(tuple.to_vec(), s.clone());
        Ok(s)
    }
}

impl fmt::Debug for NormalAd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<usize> = self.parts.iter().map(|r| r.order()).collect();
        write!(f, "NormalAd({:?}; part orders {:?})", self.ambient, orders)
    }
}

/// Outcome of a simplicity test relative to one part.
#[derive(Clone, Debug)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub witness: Option<Subgroup>,
    /// The first index set at which the supplied witness failed to split.
    pub failed_at: Option<IndexSet>,
    pub candidates_examined: usize,
}

fn splits(ad: &NormalAd, j: usize, witness: &Subgroup) -> Result<Option<IndexSet>> {
    let rj = ad.part(j);
    if !intersect(witness, rj)?.is_trivial() {
        return Ok(Some(IndexSet::EMPTY));
    }
    for a in ad.full_set().without(j).subsets() {
        let meet = ad.meet(a)?;
        let x = intersect(&meet, witness)?;
        let y = intersect(&meet, rj)?;
        if x.order() * y.order() != meet.order() {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Tests whether the ad is simple relative to `R_j`. With a witness `F′`
/// this checks `F′ ∩ R_j = 1` and `∩_A R = (∩_A R ∩ F′)(∩_A R ∩ R_j)` for
/// every `A` avoiding `j`. Without one it searches the subgroup lattice,
/// refusing groups above `max_order`.
pub fn is_simple_ad(ad: &NormalAd, j: usize, witness: Option<&Subgroup>, max_order: usize) -> Result<SimplicityVerdict> {
    assert!((1..=ad.len()).contains(&j), "part index {j} out of range");
    if let Some(w) = witness {
        let failed_at = splits(ad, j, w)?;
        return Ok(SimplicityVerdict {
            simple: failed_at.is_none(),
            witness: failed_at.is_none().then(|| w.clone()),
            failed_at,
            candidates_examined: 1,
        });
    }
    match search_witness(ad, j, max_order) {
        Ok((w, examined)) => {
            Ok(SimplicityVerdict { simple: true, witness: Some(w), failed_at: None, candidates_examined: examined })
        }
        Err((Error::NotFound(_), examined)) => {
            Ok(SimplicityVerdict { simple: false, witness: None, failed_at: None, candidates_examined: examined })
        }
        Err((e, _)) => Err(e),
    }
}

/// Searches for a complement-like subgroup witnessing simplicity relative
/// to `R_j`; `NotFound` when none exists.
pub fn find_simplicity_witness(ad: &NormalAd, j: usize, max_order: usize) -> Result<Subgroup> {
    search_witness(ad, j, max_order).map(|(w, _)| w).map_err(|(e, _)| e)
}

const MAX_LATTICE: usize = 100_000;

fn search_witness(ad: &NormalAd, j: usize, max_order: usize) -> std::result::Result<(Subgroup, usize), (Error, usize)> {
    let f = ad.ambient();
    let target = f.order().map_err(|e| (e, 0))? / ad.part(j).order();
    let lattice = all_subgroups(f, max_order, MAX_LATTICE).map_err(|e| (e, 0))?;
    let mut examined = 0;
    for cand in lattice.into_iter().filter(|s| s.order() == target) {
        examined += 1;
        if splits(ad, j, &cand).map_err(|e| (e, examined))?.is_none() {
            return Ok((cand, examined));
        }
    }
    Err((Error::NotFound(format!("no splitting subgroup relative to part {j}")), examined))
}

/// For an ad simple relative to `R_j` with witness `F′`, checks
/// `D_k(F;A) = (D_k(F;A) ∩ F′) · D_k(F; A ∪ {j})` for every `A` avoiding
/// `j`. Returns the first failing `A`.
pub fn check_d_k_splitting(ad: &NormalAd, j: usize, witness: &Subgroup, k: usize) -> Result<Option<IndexSet>> {
    for a in ad.full_set().without(j).subsets() {
        let d = ad.d_k(a, k)?;
        let left = intersect(&d, witness)?;
        let right = ad.d_k(a.with(j), k)?;
        let prod = product_subgroup(&left, &right)?;
        if !prod.same_set(&d) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// For an ad whose every prefix `(F; R_1, …, R_j)` is simple relative to
/// `R_j`, checks `∩_{i≤n} R_i ∩ Γ_k(F) = D_k(F; {1..n})`, in the given
/// order of the parts.
pub fn check_prefix_intersection(ad: &NormalAd, k: usize) -> Result<bool> {
    let full = ad.full_set();
    let gamma = lower_central(ad.ambient(), k)?;
    let lhs = intersect(&ad.meet(full)?, &gamma)?;
    Ok(lhs.same_set(&ad.d_k(full, k)?))
}
