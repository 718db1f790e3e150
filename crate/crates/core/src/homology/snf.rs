use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::{FxHashMap, FxHashSet};

/// A dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += q · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c];
            if !v.is_zero() {
                let add = v * q;
                self.data[dst * self.cols + c] += add;
            }
        }
    }

    /// `col[dst] += q · col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src];
            if !v.is_zero() {
                let add = v * q;
                self.data[r * self.cols + dst] += add;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = std::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = -v;
        }
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Smith normal form with certificates: `left · input · right = diagonal`,
/// both transforms unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// `d_1 | d_2 | …`, nonnegative, of length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Re-multiplies the certificates against `input`.
    pub fn verify(&self, input: &IntMatrix) -> bool {
        let d = self.left.mul(input).mul(&self.right);
        (0..d.rows()).all(|r| {
            (0..d.cols()).all(|c| {
                let expect = if r == c { self.diagonal[r].clone() } else { BigInt::zero() };
                *d.get(r, c) == expect
            })
        })
    }
}

pub fn smith_normal_form(input: &IntMatrix) -> SmithForm {
    let mut m = input.clone();
    let mut left = IntMatrix::identity(input.rows);
    let mut right = IntMatrix::identity(input.cols);
    diagonalize(&mut m, Some(&mut left), Some(&mut right));
    let diagonal = (0..input.rows.min(input.cols)).map(|i| m.get(i, i).clone()).collect();
    SmithForm { diagonal, left, right }
}

/// Row and column reduction to Smith form in place, mirroring every row
/// operation on `left` and every column operation on `right`.
fn diagonalize(m: &mut IntMatrix, mut left: Option<&mut IntMatrix>, mut right: Option<&mut IntMatrix>) {
    let (rows, cols) = (m.rows, m.cols);
    let swap = |m: &mut IntMatrix, left: &mut Option<&mut IntMatrix>, right: &mut Option<&mut IntMatrix>, t: usize, (pr, pc): (usize, usize)| {
        m.swap_rows(t, pr);
        m.swap_cols(t, pc);
        if let Some(l) = left.as_deref_mut() {
            l.swap_rows(t, pr);
        }
        if let Some(r) = right.as_deref_mut() {
            r.swap_cols(t, pc);
        }
    };
    for t in 0..rows.min(cols) {
        let Some(p) = min_abs_entry(m, t) else { break };
        swap(m, &mut left, &mut right, t, p);
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if !m.get(r, t).is_zero() {
                    let q = -m.get(r, t).div_floor(m.get(t, t));
                    m.add_row(r, t, &q);
                    if let Some(l) = left.as_deref_mut() {
                        l.add_row(r, t, &q);
                    }
                    dirty |= !m.get(r, t).is_zero();
                }
            }
            for c in t + 1..cols {
                if !m.get(t, c).is_zero() {
                    let q = -m.get(t, c).div_floor(m.get(t, t));
                    m.add_col(c, t, &q);
                    if let Some(rt) = right.as_deref_mut() {
                        rt.add_col(c, t, &q);
                    }
                    dirty |= !m.get(t, c).is_zero();
                }
            }
            if dirty {
                let p = min_abs_in_cross(m, t);
                swap(m, &mut left, &mut right, t, p);
                continue;
            }
            let pivot = m.get(t, t).clone();
            match (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !m.get(r, c).is_multiple_of(&pivot))) {
                Some(r) => {
                    let one = BigInt::one();
                    m.add_row(t, r, &one);
                    if let Some(l) = left.as_deref_mut() {
                        l.add_row(t, r, &one);
                    }
                }
                None => break,
            }
        }
        if m.get(t, t).is_negative() {
            m.negate_row(t);
            if let Some(l) = left.as_deref_mut() {
                l.negate_row(t);
            }
        }
    }
}

fn min_abs_entry(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..m.rows {
        for c in t..m.cols {
            let v = m.get(r, c);
            if !v.is_zero() && best.map_or(true, |(br, bc)| v.abs() < m.get(br, bc).abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

fn min_abs_in_cross(m: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let better = |v: &BigInt, b: (usize, usize)| !v.is_zero() && (m.get(b.0, b.1).is_zero() || v.abs() < m.get(b.0, b.1).abs());
    for r in t..m.rows {
        if better(m.get(r, t), best) {
            best = (r, t);
        }
    }
    for c in t..m.cols {
        if better(m.get(t, c), best) {
            best = (t, c);
        }
    }
    best
}

/// A sparse integer row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, i64)>;

/// Nonzero invariant factors of the row lattice of a sparse matrix,
/// ascending. Unit pivots are eliminated sparsely first (cheapest column
/// first), and the remainder goes through the dense algorithm.
pub fn sparse_invariant_factors(rows: &[SparseRow], cols: usize) -> Vec<BigInt> {
    let mut rows: Vec<Option<FxHashMap<usize, i128>>> =
        rows.iter().map(|r| Some(r.iter().filter(|e| e.1 != 0).map(|&(c, v)| (c, v as i128)).collect())).collect();
    let mut col_rows: Vec<FxHashSet<usize>> = vec![FxHashSet::default(); cols];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.as_ref().expect("fresh").keys() {
            col_rows[c].insert(i);
        }
    }
    let mut units = 0usize;
    'passes: loop {
        let mut order: Vec<usize> = (0..cols).filter(|&c| !col_rows[c].is_empty()).collect();
        order.sort_by_key(|&c| (col_rows[c].len(), c));
        let mut progress = false;
        for c in order {
            let pivot = col_rows[c]
                .iter()
                .copied()
                .filter(|&i| rows[i].as_ref().expect("live")[&c].abs() == 1)
                .min_by_key(|&i| (rows[i].as_ref().expect("live").len(), i));
            let Some(p) = pivot else { continue };
            let prow = rows[p].take().expect("live");
            let sign = prow[&c];
            for &cc in prow.keys() {
                col_rows[cc].remove(&p);
            }
            let mut others: Vec<usize> = col_rows[c].iter().copied().collect();
            others.sort_unstable();
            for i in others {
                let row = rows[i].as_ref().expect("live");
                let q = row[&c] * sign;
                let mut updated = row.clone();
                for (&cc, &v) in &prow {
                    let cur = updated.get(&cc).copied().unwrap_or(0);
                    let Some(nv) = v.checked_mul(q).and_then(|x| cur.checked_sub(x)) else {
                        for &cc in prow.keys() {
                            col_rows[cc].insert(p);
                        }
                        rows[p] = Some(prow);
                        break 'passes;
                    };
                    if nv == 0 {
                        updated.remove(&cc);
                        col_rows[cc].remove(&i);
                    } else {
                        updated.insert(cc, nv);
                        col_rows[cc].insert(i);
                    }
                }
                rows[i] = (!updated.is_empty()).then_some(updated);
            }
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live: Vec<&FxHashMap<usize, i128>> = rows.iter().flatten().filter(|r| !r.is_empty()).collect();
    let mut used: Vec<usize> = live.iter().flat_map(|r| r.keys().copied()).collect();
    used.sort_unstable();
    used.dedup();
    let pos: FxHashMap<usize, usize> = used.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense = IntMatrix::zeros(live.len(), used.len());
    for (i, r) in live.iter().enumerate() {
        for (&c, &v) in r.iter() {
            dense.set(i, pos[&c], BigInt::from(v));
        }
    }
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_invariants(dense).into_iter().filter(|d| !d.is_zero()));
    out.sort();
    out
}

/// Diagonal of the Smith form without tracking transforms.
fn dense_invariants(mut m: IntMatrix) -> Vec<BigInt> {
    diagonalize(&mut m, None, None);
    (0..m.rows.min(m.cols)).map(|i| m.get(i, i).clone()).collect()
}
