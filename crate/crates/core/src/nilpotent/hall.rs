use std::fmt;

use rustc_hash::FxHashMap;

/// One basic commutator: a generator, or `[left, right]` of two earlier
/// basis entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasicCommutator {
    pub weight: usize,
    /// `(left, right)` basis indices, `None` for generators.
    pub parts: Option<(usize, usize)>,
}

/// The Hall basis of the free nilpotent group of given rank and class,
/// ordered by weight and, within a weight, by construction order.
#[derive(Clone)]
pub struct HallBasis {
    rank: usize,
    class: usize,
    entries: Vec<BasicCommutator>,
    lookup: FxHashMap<(usize, usize), usize>,
}

impl HallBasis {
    pub fn new(rank: usize, class: usize) -> Self {
        assert!(rank >= 1 && class >= 1, "rank and class must be positive");
        let mut entries: Vec<BasicCommutator> =
            (0..rank).map(|_| BasicCommutator { weight: 1, parts: None }).collect();
        let mut lookup = FxHashMap::default();
        for w in 2..=class {
            let existing = entries.len();
            for u in 0..existing {
                let wu = entries[u].weight;
                if wu >= w {
                    continue;
                }
                for v in 0..u {
                    if entries[v].weight + wu != w {
                        continue;
                    }
                    if let Some((_, y)) = entries[u].parts {
                        if y > v {
                            continue;
                        }
                    }
                    lookup.insert((u, v), entries.len());
                    entries.push(BasicCommutator { weight: w, parts: Some((u, v)) });
                }
            }
        }
        HallBasis { rank, class, entries, lookup }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BasicCommutator] {
        &self.entries
    }

    pub fn weight(&self, i: usize) -> usize {
        self.entries[i].weight
    }

    /// Index of the basic commutator `[u, v]`, if it is basic.
    pub fn index_of(&self, u: usize, v: usize) -> Option<usize> {
        self.lookup.get(&(u, v)).copied()
    }

    /// Number of basis entries of each weight `1..=class`.
    pub fn layer_sizes(&self) -> Vec<usize> {
        (1..=self.class).map(|w| self.entries.iter().filter(|e| e.weight == w).count()).collect()
    }

    /// Bracket notation for entry `i`, generators written `x1, x2, …`.
    pub fn describe(&self, i: usize) -> String {
        match self.entries[i].parts {
            None => format!("x{}", i + 1),
            Some((u, v)) => format!("[{},{}]", self.describe(u), self.describe(v)),
        }
    }
}

impl fmt::Debug for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.len()).map(|i| self.describe(i)).collect();
        write!(f, "HallBasis(rank {}, class {}: {})", self.rank, self.class, names.join(", "))
    }
}

fn mobius(mut n: usize) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Rank of the weight-`w` layer of the free Lie ring on `r` generators:
/// `(1/w) Σ_{d | w} μ(d) r^{w/d}`.
pub fn witt_number(r: usize, w: usize) -> usize {
    assert!(w >= 1);
    let mut total: i128 = 0;
    for d in 1..=w {
        if w % d == 0 {
            total += mobius(d) as i128 * (r as i128).pow((w / d) as u32);
        }
    }
    (total / w as i128) as usize
}
