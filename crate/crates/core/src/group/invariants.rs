use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::{lower_central, quotient, Elem, Group};
use crate::error::{Error, Result};
use crate::homology::{smith_normal_form, IntMatrix};

/// Invariant factors `d_1 | d_2 | …` of a finitely generated abelian
/// group, trivial factors omitted; `0` stands for a copy of `Z`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct AbelianInvariants(Vec<u64>);

impl AbelianInvariants {
    /// Normalizes an arbitrary list of cyclic orders into invariant-factor
    /// form (dropping ones).
    pub fn new(mut factors: Vec<u64>) -> Self {
        factors.retain(|&d| d != 1);
        let free = factors.iter().filter(|&&d| d == 0).count();
        factors.retain(|&d| d != 0);
        let mut primes: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for d in factors {
            let mut rest = d;
            let mut p = 2;
            while p * p <= rest {
                if rest % p == 0 {
                    let mut q = 1;
                    while rest % p == 0 {
                        rest /= p;
                        q *= p;
                    }
                    primes.entry(p).or_default().push(q);
                }
                p += 1;
            }
            if rest > 1 {
                primes.entry(rest).or_default().push(rest);
            }
        }
        let len = primes.values().map(|v| v.len()).max().unwrap_or(0);
        let mut out = vec![1u64; len];
        for powers in primes.values_mut() {
            powers.sort_unstable();
            let off = len - powers.len();
            for (i, q) in powers.iter().enumerate() {
                out[off + i] *= q;
            }
        }
        out.extend(std::iter::repeat(0).take(free));
        AbelianInvariants(out)
    }

    pub fn trivial() -> Self {
        AbelianInvariants(Vec::new())
    }

    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        self.0.iter().try_fold(1u128, |acc, &d| (d != 0).then(|| acc * d as u128))
    }

    pub fn is_cyclic(&self) -> bool {
        self.0.len() <= 1
    }
}

impl fmt::Debug for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Invariant factors of an abelian group, from the relation lattice of
/// its generators: `g_i^{k_i}` is expressed in the earlier generators, and
/// the resulting triangular relation matrix is put in Smith form.
pub fn abelian_invariants(g: &Group) -> Result<AbelianInvariants> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let gens: Vec<Elem> = g.generators().into_iter().filter(|x| !g.is_identity(x)).collect();
    let t = gens.len();
    let mut coords: FxHashMap<Elem, Vec<i64>> = FxHashMap::default();
    coords.insert(g.identity(), vec![0; t]);
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for (i, x) in gens.iter().enumerate() {
        let mut k = 1i64;
        let mut y = x.clone();
        while !coords.contains_key(&y) {
            y = g.mul(&y, x);
            k += 1;
        }
        let mut rel: Vec<i64> = coords[&y].iter().map(|c| -c).collect();
        rel[i] += k;
        relations.push(rel);
        if k > 1 {
            let old: Vec<(Elem, Vec<i64>)> = coords.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
            if old.len() * k as usize > g.cap() {
                return Err(Error::CapExceeded { cap: g.cap() });
            }
            let mut step = x.clone();
            for e in 1..k {
                for (z, c) in &old {
                    let mut c2 = c.clone();
                    c2[i] = e;
                    coords.insert(g.mul(z, &step), c2);
                }
                step = g.mul(&step, x);
            }
        }
    }
    if t == 0 {
        return Ok(AbelianInvariants::trivial());
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(&relations));
    Ok(AbelianInvariants::new(snf.diagonal.iter().map(|d| d.to_u64().expect("factor fits in u64")).collect()))
}

/// Isomorphism-invariant data used to compare non-abelian results.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSignature {
    pub order: usize,
    pub abelian: bool,
    /// Invariant factors when the group is abelian.
    pub invariants: Option<AbelianInvariants>,
    pub abelianization: AbelianInvariants,
    /// Element order to number of elements of that order.
    pub element_orders: BTreeMap<u64, usize>,
}

impl GroupSignature {
    pub fn of(g: &Group) -> Result<Self> {
        let els = g.elements()?;
        let abelian = g.is_abelian();
        let invariants = if abelian { Some(abelian_invariants(g)?) } else { None };
        let abelianization = match &invariants {
            Some(inv) => inv.clone(),
            None => abelian_invariants(&quotient(g, &lower_central(g, 2)?)?.group)?,
        };
        let mut element_orders = BTreeMap::new();
        for x in &els.list {
            *element_orders.entry(g.element_order(x)).or_insert(0) += 1;
        }
        Ok(GroupSignature { order: els.len(), abelian, invariants, abelianization, element_orders })
    }
}
