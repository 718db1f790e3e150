use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::SimplicialGroup;
use crate::error::Result;
use crate::group::Elem;

/// Levels up to this order are checked element by element.
pub const LEVEL_BUDGET: usize = 50_000;
/// Seeded samples per level above the budget.
pub const LEVEL_SAMPLES: usize = 2_000;
const SEED: u64 = 0x5eed_5111;

pub const FACE_FACE: &str = "d_i d_j = d_{j-1} d_i (i < j)";
pub const FACE_DEGEN_BELOW: &str = "d_i s_j = s_{j-1} d_i (i < j)";
pub const FACE_DEGEN_EQUAL: &str = "d_j s_j = d_{j+1} s_j = 1";
pub const FACE_DEGEN_ABOVE: &str = "d_i s_j = s_j d_{i-1} (i > j+1)";
pub const DEGEN_DEGEN: &str = "s_i s_j = s_{j+1} s_i (i ≤ j)";
pub const FACE_HOM: &str = "d_i is a homomorphism";
pub const DEGEN_HOM: &str = "s_i is a homomorphism";

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub identity: String,
    /// The level the checked elements come from.
    pub level: usize,
    pub passed: bool,
    pub checked: u64,
    pub exhaustive: bool,
    /// Allowed to fail because the group is only pseudosimplicial.
    pub exempt: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityReport {
    pub label: String,
    pub pseudo: bool,
    pub seed: u64,
    pub outcomes: Vec<IdentityOutcome>,
}

impl IdentityReport {
    /// Every non-exempt identity holds.
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed || o.exempt)
    }

    pub fn exhaustive(&self) -> bool {
        self.outcomes.iter().all(|o| o.exhaustive)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityOutcome> {
        self.outcomes.iter().filter(|o| !o.passed && !o.exempt)
    }

    pub fn exempt(&self) -> impl Iterator<Item = &IdentityOutcome> {
        self.outcomes.iter().filter(|o| o.exempt)
    }
}

struct Tally {
    outcome: IdentityOutcome,
}

impl Tally {
    fn new(identity: &str, level: usize, exhaustive: bool, exempt: bool) -> Self {
        Tally {
            outcome: IdentityOutcome {
                identity: identity.into(),
                level,
                passed: true,
                checked: 0,
                exhaustive,
                exempt,
                witness: None,
            },
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.outcome.checked += 1;
        if !ok && self.outcome.passed {
            self.outcome.passed = false;
            self.outcome.witness = Some(witness());
        }
    }
}

/// Checks every simplicial identity on every element of each level within
/// [`LEVEL_BUDGET`], and on seeded samples above it. The identity
/// `s_i s_j = s_{j+1} s_i` is reported but exempt for pseudosimplicial
/// groups.
pub fn verify_simplicial_identities(s: &SimplicialGroup) -> Result<IdentityReport> {
    let depth = s.depth();
    let mut outcomes = Vec::new();
    for n in 0..=depth {
        let level = s.level(n);
        let enumerable = level.order_hint().map_or(true, |o| o <= LEVEL_BUDGET as u128);
        let elements: Vec<Elem> = if enumerable && level.order()? <= LEVEL_BUDGET {
            level.elements()?.list.clone()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n as u64);
            (0..LEVEL_SAMPLES).map(|_| level.random_element(&mut rng)).collect()
        };
        let exhaustive = enumerable && elements.len() == level.order_hint().unwrap_or(0) as usize;
        let gens = level.generators();
        let mut tallies = [
            Tally::new(FACE_HOM, n, exhaustive, false),
            Tally::new(DEGEN_HOM, n, exhaustive, false),
            Tally::new(FACE_FACE, n, exhaustive, false),
            Tally::new(FACE_DEGEN_BELOW, n, exhaustive, false),
            Tally::new(FACE_DEGEN_EQUAL, n, exhaustive, false),
            Tally::new(FACE_DEGEN_ABOVE, n, exhaustive, false),
            Tally::new(DEGEN_DEGEN, n, exhaustive, s.is_pseudo()),
        ];
        for x in &elements {
            let w = || format!("level {n}, x = {x:?}");
            for i in 0..=n {
                for g in &gens {
                    let xg = level.mul(x, g);
                    if n >= 1 {
                        let lower = s.level(n - 1);
                        let ok = s.face(n, i, &xg) == lower.mul(&s.face(n, i, x), &s.face(n, i, g));
                        tallies[0].check(ok, || format!("d_{i} at {x:?} · {g:?}"));
                    }
                    if n < depth {
                        let upper = s.level(n + 1);
                        let ok = s.degeneracy(n, i, &xg) == upper.mul(&s.degeneracy(n, i, x), &s.degeneracy(n, i, g));
                        tallies[1].check(ok, || format!("s_{i} at {x:?} · {g:?}"));
                    }
                }
            }
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        let ok = s.face(n - 1, i, &s.face(n, j, x)) == s.face(n - 1, j - 1, &s.face(n, i, x));
                        tallies[2].check(ok, || format!("i = {i}, j = {j}, {}", w()));
                    }
                }
            }
            if n < depth {
                for j in 0..=n {
                    let sx = s.degeneracy(n, j, x);
                    let ok = s.face(n + 1, j, &sx) == *x && s.face(n + 1, j + 1, &sx) == *x;
                    tallies[4].check(ok, || format!("j = {j}, {}", w()));
                    for i in 0..=n + 1 {
                        if i < j {
                            let ok = s.face(n + 1, i, &sx) == s.degeneracy(n - 1, j - 1, &s.face(n, i, x));
                            tallies[3].check(ok, || format!("i = {i}, j = {j}, {}", w()));
                        } else if i > j + 1 {
                            let ok = s.face(n + 1, i, &sx) == s.degeneracy(n - 1, j, &s.face(n, i - 1, x));
                            tallies[5].check(ok, || format!("i = {i}, j = {j}, {}", w()));
                        }
                    }
                    if n + 2 <= depth {
                        for i in 0..=j {
                            let ok = s.degeneracy(n + 1, i, &sx) == s.degeneracy(n + 1, j + 1, &s.degeneracy(n, i, x));
                            tallies[6].check(ok, || format!("i = {i}, j = {j}, {}", w()));
                        }
                    }
                }
            }
        }
        outcomes.extend(tallies.into_iter().map(|t| t.outcome).filter(|o| o.checked > 0));
    }
    Ok(IdentityReport { label: s.label().to_string(), pseudo: s.is_pseudo(), seed: SEED, outcomes })
}
