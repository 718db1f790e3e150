use num_traits::{One, ToPrimitive};

use super::snf::{sparse_invariant_factors, SparseRow};
use crate::error::{Error, Result};
use crate::group::{AbelianInvariants, Group};

/// Largest group order the bar-complex oracle accepts.
pub const BAR_ORDER_LIMIT: usize = 64;

/// Multiplication table on element indices; index 0 is the identity.
fn index_table(g: &Group) -> Result<Vec<Vec<usize>>> {
    let els = g.elements()?;
    if els.len() > BAR_ORDER_LIMIT {
        return Err(Error::CapExceeded { cap: BAR_ORDER_LIMIT });
    }
    debug_assert!(g.is_identity(&els.list[0]));
    Ok(els
        .list
        .iter()
        .map(|a| els.list.iter().map(|b| els.index[&g.mul(a, b)] as usize).collect())
        .collect())
}

fn push(row: &mut Vec<(usize, i64)>, col: Option<usize>, v: i64) {
    if let Some(c) = col {
        match row.iter_mut().find(|e| e.0 == c) {
            Some(e) => e.1 += v,
            None => row.push((c, v)),
        }
    }
}

fn finish(mut row: Vec<(usize, i64)>) -> SparseRow {
    row.retain(|e| e.1 != 0);
    row.sort_unstable();
    row
}

/// Torsion of the cokernel of a row lattice in `Z^cols`, plus one zero per
/// free summand when `keep_free` is set.
fn cokernel(rows: &[SparseRow], cols: usize, keep_free: bool) -> AbelianInvariants {
    let diag = sparse_invariant_factors(rows, cols);
    let mut factors: Vec<u64> = diag
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().expect("invariant factor fits in u64"))
        .collect();
    if keep_free {
        factors.extend(std::iter::repeat(0).take(cols - diag.len()));
    }
    AbelianInvariants::new(factors)
}

/// `H_1(G; Z)` from the normalized bar complex: `C_1 / ∂C_2` with
/// `∂[g|h] = [h] − [gh] + [g]`.
pub fn bar_h1(g: &Group) -> Result<AbelianInvariants> {
    let t = index_table(g)?;
    let n = t.len();
    let one = |x: usize| (x != 0).then(|| x - 1);
    let mut rows = Vec::new();
    for a in 1..n {
        for b in 1..n {
            let mut row = Vec::new();
            push(&mut row, one(b), 1);
            push(&mut row, one(t[a][b]), -1);
            push(&mut row, one(a), 1);
            rows.push(finish(row));
        }
    }
    Ok(cokernel(&rows, n - 1, true))
}

/// `H_2(G; Z)` from the normalized bar complex: the torsion of
/// `C_2 / ∂C_3` with `∂[g|h|k] = [h|k] − [gh|k] + [g|hk] − [g|h]`. For a
/// finite group this torsion is all of `H_2`.
pub fn bar_h2(g: &Group) -> Result<AbelianInvariants> {
    let t = index_table(g)?;
    let n = t.len();
    let two = |x: usize, y: usize| (x != 0 && y != 0).then(|| (x - 1) * (n - 1) + (y - 1));
    let mut rows = Vec::with_capacity((n - 1).pow(3));
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                let mut row = Vec::with_capacity(4);
                push(&mut row, two(b, c), 1);
                push(&mut row, two(t[a][b], c), -1);
                push(&mut row, two(a, t[b][c]), 1);
                push(&mut row, two(a, b), -1);
                rows.push(finish(row));
            }
        }
    }
    Ok(cokernel(&rows, (n - 1) * (n - 1), false))
}


/// Largest number of bar cells `(|G| - 1)^{n+1}` fed to [`bar_homology`].
pub const BAR_CELL_LIMIT: usize = 500_000;

/// `H_n(G; Z)` for `n ≥ 1` as the torsion of `C_n / ∂C_{n+1}` in the
/// normalized bar complex, with
/// `∂[g_1|…|g_{n+1}] = [g_2|…] + Σ (-1)^i […|g_i g_{i+1}|…] + (-1)^{n+1} […|g_n]`.
pub fn bar_homology(g: &Group, n: usize) -> Result<AbelianInvariants> {
    if n == 0 {
        return Err(Error::InvalidParameter("the bar oracle starts in degree 1".into()));
    }
    let t = index_table(g)?;
    let base = t.len() - 1;
    let cells = base.checked_pow(n as u32 + 1).filter(|&c| c <= BAR_CELL_LIMIT);
    let Some(cells) = cells else {
        return Err(Error::CapExceeded { cap: BAR_CELL_LIMIT });
    };
    // A cell is a tuple of non-identity indices, numbered in base |G| - 1.
    let index = |tuple: &[usize]| -> Option<usize> {
        tuple.iter().try_fold(0, |acc, &x| (x != 0).then(|| acc * base + (x - 1)))
    };
    let mut rows = Vec::with_capacity(cells);
    let mut tuple = vec![1usize; n + 1];
    for _ in 0..cells {
        let mut row = Vec::with_capacity(n + 2);
        push(&mut row, index(&tuple[1..]), 1);
        for i in 1..=n {
            let mut merged = tuple[..i - 1].to_vec();
            merged.push(t[tuple[i - 1]][tuple[i]]);
            merged.extend_from_slice(&tuple[i + 1..]);
            push(&mut row, index(&merged), if i % 2 == 0 { 1 } else { -1 });
        }
        push(&mut row, index(&tuple[..n]), if (n + 1) % 2 == 0 { 1 } else { -1 });
        rows.push(finish(row));
        for slot in tuple.iter_mut().rev() {
            if *slot < base {
                *slot += 1;
                break;
            }
            *slot = 1;
        }
    }
    Ok(cokernel(&rows, base.pow(n as u32), false))
}
