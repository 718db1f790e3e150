use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cube::CrossedCube;
use super::PAIR_BUDGET;
use crate::error::{Error, Result};
use crate::group::{Elem, IndexSet};

/// Outcome of one identity of the crossed cube axiom list.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub axiom: String,
    pub passed: bool,
    /// Number of element tuples evaluated.
    pub checked: u64,
    /// `false` when the tuples were a seeded sample.
    pub exhaustive: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomReport {
    pub dim: usize,
    pub seed: u64,
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn exhaustive(&self) -> bool {
        self.outcomes.iter().all(|o| o.exhaustive)
    }

    pub fn outcome(&self, axiom: &str) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| o.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    /// The first failure as an error.
    pub fn into_result(self) -> Result<AxiomReport> {
        let err = self.failures().next().map(|o| Error::AxiomViolation {
            axiom: o.axiom.clone(),
            witness: o.witness.clone().unwrap_or_default(),
        });
        match err {
            Some(e) => Err(e),
            None => Ok(self),
        }
    }
}

pub const AXIOM_MU_OUTSIDE: &str = "μ_i(a) = a if i ∉ A";
pub const AXIOM_MU_COMMUTE: &str = "μ_i μ_j = μ_j μ_i";
pub const AXIOM_MU_H: &str = "μ_i h(a,b) = h(μ_i a, μ_i b)";
pub const AXIOM_H_ABSORBS_MU: &str = "h(a,b) = h(μ_i a, b) = h(a, μ_i b) if i ∈ A∩B";
pub const AXIOM_H_COMMUTATOR: &str = "h(a,a') = [a,a']";
pub const AXIOM_H_ANTISYMMETRIC: &str = "h(a,b) = h(b,a)^{-1}";
pub const AXIOM_H_UNIT: &str = "h(a,b) = 1 if a = 1 or b = 1";
pub const AXIOM_H_LEFT: &str = "h(aa',b) = ^a h(a',b) h(a,b)";
pub const AXIOM_H_RIGHT: &str = "h(a,bb') = h(a,b) ^b h(a,b')";
pub const AXIOM_HALL_WITT: &str = "^a h(h(a^{-1},b),c) ^c h(h(c^{-1},a),b) ^b h(h(b^{-1},c),a) = 1";
pub const AXIOM_ACTION_H: &str = "^a h(b,c) = h(^a b, ^a c) if A ⊆ B∩C";

/// The default seed for sampled axiom checks.
pub const DEFAULT_AXIOM_SEED: u64 = 0x5eed_c0be;

/// How many tuples a sampled axiom check draws.
const SAMPLES: u64 = 20_000;

/// Checks every axiom of a crossed `n`-cube. Each axiom is checked on all
/// element tuples when their number is within the pair budget, otherwise on
/// a seeded sample whose tuples are drawn proportionally to the number of
/// tuples per choice of index sets.
pub fn verify_cube_axioms(cube: &CrossedCube) -> Result<AxiomReport> {
    verify_cube_axioms_with(cube, PAIR_BUDGET as u64, DEFAULT_AXIOM_SEED)
}

pub fn verify_cube_axioms_with(cube: &CrossedCube, budget: u64, seed: u64) -> Result<AxiomReport> {
    let n = cube.dim();
    let mut elements = Vec::with_capacity(1 << n);
    for g in cube.groups() {
        elements.push(g.elements()?.list.clone());
    }
    let checker = Checker { cube, elements, budget, seed };
    let c = cube;
    let all_i = |a: IndexSet| (1..=n).filter(move |&i| !a.contains(i));
    let mut outcomes = Vec::new();

    outcomes.push(checker.run(AXIOM_MU_OUTSIDE, 1, |_| true, |t| {
        let (a, x) = t[0];
        all_i(a).find(|&i| c.mu(i, a, x) != *x).map(|i| format!("i = {i}"))
    }));
    outcomes.push(checker.run(AXIOM_MU_COMMUTE, 1, |_| true, |t| {
        let (a, x) = t[0];
        for i in a.indices() {
            for j in a.indices() {
                if i < j {
                    let ij = c.mu(i, a.without(j), &c.mu(j, a, x));
                    let ji = c.mu(j, a.without(i), &c.mu(i, a, x));
                    if ij != ji {
                        return Some(format!("i = {i}, j = {j}"));
                    }
                }
            }
        }
        None
    }));
    outcomes.push(checker.run(AXIOM_MU_H, 2, |_| true, |t| {
        let ((a, x), (b, y)) = (t[0], t[1]);
        for i in 1..=n {
            let lhs = c.mu(i, a.union(b), &c.h(a, x, b, y));
            let rhs = c.h(a.without(i), &c.mu(i, a, x), b.without(i), &c.mu(i, b, y));
            if lhs != rhs {
                return Some(format!("i = {i}"));
            }
        }
        None
    }));
    outcomes.push(checker.run(AXIOM_H_ABSORBS_MU, 2, |s| !s[0].intersection(s[1]).is_empty(), |t| {
        let ((a, x), (b, y)) = (t[0], t[1]);
        let h = c.h(a, x, b, y);
        for i in a.intersection(b).indices() {
            if c.h(a.without(i), &c.mu(i, a, x), b, y) != h || c.h(a, x, b.without(i), &c.mu(i, b, y)) != h {
                return Some(format!("i = {i}"));
            }
        }
        None
    }));
    outcomes.push(checker.run(AXIOM_H_COMMUTATOR, 2, |s| s[0] == s[1], |t| {
        let ((a, x), (_, y)) = (t[0], t[1]);
        (c.h(a, x, a, y) != c.group(a).comm(x, y)).then(String::new)
    }));
    outcomes.push(checker.run(AXIOM_H_ANTISYMMETRIC, 2, |_| true, |t| {
        let ((a, x), (b, y)) = (t[0], t[1]);
        let g = c.group(a.union(b));
        (c.h(a, x, b, y) != g.inv(&c.h(b, y, a, x))).then(String::new)
    }));
    outcomes.push(checker.run(AXIOM_H_UNIT, 1, |_| true, |t| {
        let (a, x) = t[0];
        for b in c.full_set().subsets() {
            let e = c.group(b).identity();
            let g = c.group(a.union(b));
            if !g.is_identity(&c.h(a, x, b, &e)) || !g.is_identity(&c.h(b, &e, a, x)) {
                return Some(format!("against the identity of {b:?}"));
            }
        }
        None
    }));
    outcomes.push(checker.run(AXIOM_H_LEFT, 3, |s| s[0] == s[1], |t| {
        let ((a, x), (_, x2), (b, y)) = (t[0], t[1], t[2]);
        let ab = a.union(b);
        let g = c.group(ab);
        let lhs = c.h(a, &c.group(a).mul(x, x2), b, y);
        let rhs = g.mul(&c.act(a, x, ab, &c.h(a, x2, b, y)), &c.h(a, x, b, y));
        (lhs != rhs).then(String::new)
    }));
    outcomes.push(checker.run(AXIOM_H_RIGHT, 3, |s| s[1] == s[2], |t| {
        let ((a, x), (b, y), (_, y2)) = (t[0], t[1], t[2]);
        let ab = a.union(b);
        let g = c.group(ab);
        let lhs = c.h(a, x, b, &c.group(b).mul(y, y2));
        let rhs = g.mul(&c.h(a, x, b, y), &c.act(b, y, ab, &c.h(a, x, b, y2)));
        (lhs != rhs).then(String::new)
    }));
    outcomes.push(checker.run(AXIOM_HALL_WITT, 3, |_| true, |t| {
        let ((a, x), (b, y), (cc, z)) = (t[0], t[1], t[2]);
        let all = a.union(b).union(cc);
        let g = c.group(all);
        let term = |s1: IndexSet, u: &Elem, s2: IndexSet, v: &Elem, s3: IndexSet, w: &Elem| -> Elem {
            let inner = c.h(s1, &c.group(s1).inv(u), s2, v);
            c.act(s1, u, all, &c.h(s1.union(s2), &inner, s3, w))
        };
        let prod = g.mul_all([&term(a, x, b, y, cc, z), &term(cc, z, a, x, b, y), &term(b, y, cc, z, a, x)]);
        (!g.is_identity(&prod)).then(String::new)
    }));
    outcomes.push(checker.run(AXIOM_ACTION_H, 3, |s| s[0].is_subset_of(s[1].intersection(s[2])), |t| {
        let ((a, x), (b, y), (cc, z)) = (t[0], t[1], t[2]);
        let bc = b.union(cc);
        let lhs = c.act(a, x, bc, &c.h(b, y, cc, z));
        let rhs = c.h(b, &c.act(a, x, b, y), cc, &c.act(a, x, cc, z));
        (lhs != rhs).then(String::new)
    }));
    Ok(AxiomReport { dim: n, seed, outcomes })
}

struct Checker<'a> {
    cube: &'a CrossedCube,
    elements: Vec<Vec<Elem>>,
    budget: u64,
    seed: u64,
}

impl Checker<'_> {
    /// Runs `pred` over tuples `((A_1, x_1), …, (A_arity, x_arity))` with
    /// `x_j ∈ M_{A_j}` and the index sets accepted by `sets_ok`. `pred`
    /// returns a detail string on failure.
    fn run(
        &self,
        axiom: &str,
        arity: usize,
        sets_ok: impl Fn(&[IndexSet]) -> bool,
        pred: impl Fn(&[(IndexSet, &Elem)]) -> Option<String>,
    ) -> AxiomOutcome {
        let subsets = self.cube.full_set().subsets();
        let mut combos: Vec<(Vec<IndexSet>, u64)> = Vec::new();
        let mut idx = vec![0usize; arity];
        loop {
            let sets: Vec<IndexSet> = idx.iter().map(|&i| subsets[i]).collect();
            if sets_ok(&sets) {
                let count = sets.iter().fold(1u64, |acc, s| acc.saturating_mul(self.elements[s.0 as usize].len() as u64));
                combos.push((sets, count));
            }
            if !advance(&mut idx, subsets.len()) {
                break;
            }
        }
        let total: u64 = combos.iter().fold(0u64, |acc, c| acc.saturating_add(c.1));
        let mut outcome =
            AxiomOutcome { axiom: axiom.to_string(), passed: true, checked: 0, exhaustive: true, witness: None };
        let mut evaluate = |sets: &[IndexSet], picks: &[usize]| -> bool {
            let tuple: Vec<(IndexSet, &Elem)> =
                sets.iter().zip(picks).map(|(s, &p)| (*s, &self.elements[s.0 as usize][p])).collect();
            outcome.checked += 1;
            if let Some(detail) = pred(&tuple) {
                let mut w: Vec<String> = tuple.iter().map(|(s, x)| format!("{s:?} {x:?}")).collect();
                if !detail.is_empty() {
                    w.push(detail);
                }
                outcome.passed = false;
                outcome.witness = Some(w.join(", "));
                return false;
            }
            true
        };
        if total <= self.budget {
            for (sets, _) in &combos {
                let sizes: Vec<usize> = sets.iter().map(|s| self.elements[s.0 as usize].len()).collect();
                let mut picks = vec![0usize; arity];
                loop {
                    if !evaluate(sets, &picks) {
                        return outcome;
                    }
                    if !advance_mixed(&mut picks, &sizes) {
                        break;
                    }
                }
            }
            return outcome;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a(axiom));
        for _ in 0..SAMPLES {
            let mut r = rng.gen_range(0..total);
            let (sets, _) = combos
                .iter()
                .find(|(_, c)| {
                    if r < *c {
                        true
                    } else {
                        r -= c;
                        false
                    }
                })
                .expect("weighted pick");
            let picks: Vec<usize> =
                sets.iter().map(|s| rng.gen_range(0..self.elements[s.0 as usize].len())).collect();
            if !evaluate(sets, &picks) {
                break;
            }
        }
        outcome.exhaustive = false;
        outcome
    }
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn advance_mixed(idx: &mut [usize], sizes: &[usize]) -> bool {
    for (d, &s) in idx.iter_mut().zip(sizes).rev() {
        *d += 1;
        if *d < s {
            return true;
        }
        *d = 0;
    }
    false
}

/// Stable per-axiom seed offset.
fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}
