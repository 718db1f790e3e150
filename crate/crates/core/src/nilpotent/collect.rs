use std::sync::Arc;

use super::{HallBasis, Letter};
use crate::error::{Error, Result};
use crate::group::{Elem, Group, GroupImpl};

/// Exponents of a normal form `b_1^{e_1} ⋯ b_N^{e_N}` over a Hall basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CollectedWord(pub Vec<i64>);

impl CollectedWord {
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Coordinates reduced into `[0, m)`.
    pub fn reduced(&self, m: u64) -> CollectedWord {
        CollectedWord(self.0.iter().map(|&e| e.rem_euclid(m as i64)).collect())
    }
}

/// A normal form written sparsely as `(basis index, exponent)` pairs.
type Sparse = Vec<(usize, i64)>;

/// Collection from the left over a Hall basis. For each pair `i < j` the
/// normal forms of `b_i⁻¹ b_j b_i` and `b_i b_j b_i⁻¹` are tabulated once;
/// collecting a letter `b_i^{±1}` conjugates the already-collected tail
/// past it using these tables.
pub struct Collector {
    basis: HallBasis,
    /// `conj_up[i][j - i - 1]` is `b_i⁻¹ b_j b_i`.
    conj_up: Vec<Vec<Sparse>>,
    /// `conj_down[i][j - i - 1]` is `b_i b_j b_i⁻¹`.
    conj_down: Vec<Vec<Sparse>>,
}

impl Collector {
    pub fn new(rank: usize, class: usize) -> Self {
        let basis = HallBasis::new(rank, class);
        let n = basis.len();
        let mut c = Collector { basis, conj_up: vec![Vec::new(); n], conj_down: vec![Vec::new(); n] };
        for i in (0..n).rev() {
            c.build_tables(i);
        }
        c
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Fills the tables for index `i`; tables for all larger indices must
    /// already exist, since every word involved uses only letters above `i`.
    fn build_tables(&mut self, i: usize) {
        let n = self.basis.len();
        let wi = self.basis.weight(i);
        let mut up: Vec<Sparse> = Vec::with_capacity(n - i - 1);
        for j in i + 1..n {
            let wj = self.basis.weight(j);
            let img = if wi + wj > self.basis.class() {
                vec![(j, 1)]
            } else {
                match self.basis.entries()[j].parts {
                    Some((s, t)) if t > i => {
                        // b_j = [b_s, b_t] with both above i: conjugation is an
                        // automorphism, so conjugate the constituents.
                        let us = &up[s - i - 1];
                        let ut = &up[t - i - 1];
                        self.commutator(us, ut)
                    }
                    _ => {
                        let k = self.basis.index_of(j, i).expect("Hall condition holds");
                        vec![(j, 1), (k, 1)]
                    }
                }
            };
            up.push(img);
        }
        // b_i b_j b_i⁻¹ = b_j · φ⁻(t_j⁻¹) where φ⁺(b_j) = b_j t_j, filled
        // from the top so that φ⁻ is known on every letter of t_j.
        let mut down: Vec<Sparse> = vec![Vec::new(); n - i - 1];
        for j in (i + 1..n).rev() {
            let mut tail = vec![0i64; n];
            tail[j] = -1;
            let mut stack = Vec::new();
            push_sparse(&mut stack, &up[j - i - 1]);
            self.run(&mut tail, stack);
            let t_inv = invert_sparse(&dense_to_sparse(&tail));
            let mut word: Vec<(usize, i64)> = vec![(j, 1)];
            for &(k, e) in &t_inv {
                let img = &down[k - i - 1];
                for _ in 0..e.unsigned_abs() {
                    if e > 0 {
                        word.extend_from_slice(img);
                    } else {
                        word.extend(invert_sparse(img));
                    }
                }
            }
            down[j - i - 1] = self.collect_sparse(&word);
        }
        self.conj_up[i] = up;
        self.conj_down[i] = down;
    }

    fn commutator(&self, u: &Sparse, v: &Sparse) -> Sparse {
        let mut word = invert_sparse(u);
        word.extend(invert_sparse(v));
        word.extend_from_slice(u);
        word.extend_from_slice(v);
        self.collect_sparse(&word)
    }

    fn collect_sparse(&self, word: &[(usize, i64)]) -> Sparse {
        let mut e = vec![0i64; self.basis.len()];
        let mut stack = Vec::new();
        push_sparse(&mut stack, word);
        self.run(&mut e, stack);
        dense_to_sparse(&e)
    }

    /// Multiplies the collected word `e` on the right by the letters on the
    /// stack (top of stack first).
    fn run(&self, e: &mut [i64], mut stack: Vec<(usize, i64)>) {
        let n = e.len();
        while let Some((i, s)) = stack.pop() {
            let top = (i + 1..n).rev().find(|&j| e[j] != 0);
            let Some(top) = top else {
                e[i] += s;
                continue;
            };
            let table = if s > 0 { &self.conj_up[i] } else { &self.conj_down[i] };
            let start = stack.len();
            for j in i + 1..=top {
                let ej = std::mem::take(&mut e[j]);
                if ej == 0 {
                    continue;
                }
                let img = &table[j - i - 1];
                for _ in 0..ej.unsigned_abs() {
                    if ej > 0 {
                        for &(k, x) in img {
                            push_letter(&mut stack, k, x);
                        }
                    } else {
                        for &(k, x) in img.iter().rev() {
                            push_letter(&mut stack, k, -x);
                        }
                    }
                }
            }
            e[i] += s;
            stack[start..].reverse();
        }
    }

    /// Normal form of a word in the generators over the integers.
    pub fn collect(&self, word: &[Letter]) -> CollectedWord {
        let n = self.basis.len();
        let mut e = vec![0i64; n];
        let stack: Vec<(usize, i64)> = word
            .iter()
            .rev()
            .map(|l| {
                assert!(l.generator <= self.basis.rank(), "letter {l:?} outside rank {}", self.basis.rank());
                (l.generator - 1, if l.inverse { -1 } else { 1 })
            })
            .collect();
        self.run(&mut e, stack);
        CollectedWord(e)
    }

    /// Normal form with coordinates reduced mod `m`.
    pub fn collect_mod(&self, word: &[Letter], m: u64) -> CollectedWord {
        self.collect(word).reduced(m)
    }

    /// Integer product of two normal forms.
    pub fn multiply(&self, a: &CollectedWord, b: &CollectedWord) -> CollectedWord {
        let mut e = a.0.clone();
        let mut stack = Vec::new();
        push_sparse(&mut stack, &dense_to_sparse(&b.0));
        self.run(&mut e, stack);
        CollectedWord(e)
    }

    /// Integer inverse of a normal form.
    pub fn inverse(&self, a: &CollectedWord) -> CollectedWord {
        let mut e = vec![0i64; a.0.len()];
        let mut stack = Vec::new();
        push_sparse(&mut stack, &invert_sparse(&dense_to_sparse(&a.0)));
        self.run(&mut e, stack);
        CollectedWord(e)
    }
}

fn push_letter(stack: &mut Vec<(usize, i64)>, k: usize, x: i64) {
    let s = x.signum();
    for _ in 0..x.unsigned_abs() {
        stack.push((k, s));
    }
}

/// Pushes a sparse word as unit letters so that its first letter ends on
/// top.
fn push_sparse(stack: &mut Vec<(usize, i64)>, word: &[(usize, i64)]) {
    for &(k, x) in word.iter().rev() {
        push_letter(stack, k, x);
    }
}

fn dense_to_sparse(e: &[i64]) -> Sparse {
    e.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect()
}

fn invert_sparse(w: &[(usize, i64)]) -> Sparse {
    w.iter().rev().map(|&(k, x)| (k, -x)).collect()
}

struct FreeNilpotent {
    collector: Arc<Collector>,
    exponent: u64,
}

impl FreeNilpotent {
    fn decode(&self, x: &Elem) -> CollectedWord {
        CollectedWord(x.as_slice().iter().map(|&v| v as i64).collect())
    }

    fn encode(&self, w: &CollectedWord) -> Elem {
        let m = self.exponent as i64;
        let v: Vec<u32> = w.0.iter().map(|&e| e.rem_euclid(m) as u32).collect();
        Elem::from_slice(&v)
    }
}

impl GroupImpl for FreeNilpotent {
    fn width(&self) -> usize {
        self.collector.len()
    }
    fn identity(&self) -> Elem {
        Elem::from_slice(&vec![0; self.collector.len()])
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.encode(&self.collector.multiply(&self.decode(a), &self.decode(b)))
    }
    fn inv(&self, a: &Elem) -> Elem {
        self.encode(&self.collector.inverse(&self.decode(a)))
    }
    fn generators(&self) -> Vec<Elem> {
        let n = self.collector.len();
        (0..self.collector.basis().rank())
            .map(|i| {
                let mut v = vec![0u32; n];
                v[i] = 1;
                Elem::from_slice(&v)
            })
            .collect()
    }
    fn label(&self) -> String {
        let b = self.collector.basis();
        format!("FreeNilpotent(rank {}, class {}, exponent {})", b.rank(), b.class(), self.exponent)
    }
    fn known_order(&self) -> Option<u128> {
        (self.exponent as u128).checked_pow(self.collector.len() as u32)
    }
}

/// The free nilpotent group of the given rank and class with every
/// normal-form coordinate reduced mod `exponent`, multiplied by integer
/// collection followed by reduction. Generators are `x_1, …, x_rank`.
///
/// The collection formulas involve binomial coefficients `C(n, k)` with
/// `k < class`, so reduction is only a group law when `exponent` is prime
/// to `(class - 1)!`; other exponents are rejected when `rank >= 2`.
pub fn free_nilpotent_group(rank: usize, class: usize, exponent: u64) -> Result<Group> {
    if exponent < 2 {
        return Err(Error::InvalidParameter("exponent must be at least 2".into()));
    }
    let lower = if rank >= 2 { class as u64 } else { 2 };
    if let Some(p) = (2..lower).find(|p| exponent % p == 0) {
        return Err(Error::InvalidParameter(format!(
            "exponent {exponent} is divisible by {p}; class-{class} truncation needs an exponent prime to {}!",
            class - 1
        )));
    }
    let collector = Arc::new(Collector::new(rank, class));
    let g = Group::new(FreeNilpotent { collector, exponent });
    if let Some(n) = g.order_hint() {
        if n > g.cap() as u128 {
            return Err(Error::CapExceeded { cap: g.cap() });
        }
    }
    Ok(g)
}

/// Image of a word in a truncated free nilpotent group, as an element.
pub fn word_element(g: &Group, word: &[Letter]) -> Elem {
    let gens = g.generators();
    word.iter().fold(g.identity(), |acc, l| {
        let x = &gens[l.generator - 1];
        if l.inverse {
            g.mul(&acc, &g.inv(x))
        } else {
            g.mul(&acc, x)
        }
    })
}
