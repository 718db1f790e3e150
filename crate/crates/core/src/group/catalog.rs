//! Concrete group families: cyclic groups, permutation groups and groups
//! given by a multiplication table.

use super::{direct_product, Elem, Group, GroupImpl};
use crate::error::{Error, Result};

struct Cyclic {
    n: u32,
}

impl GroupImpl for Cyclic {
    fn width(&self) -> usize {
        1
    }
    fn identity(&self) -> Elem {
        Elem::scalar(0)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Elem::scalar(((a.as_slice()[0] as u64 + b.as_slice()[0] as u64) % self.n as u64) as u32)
    }
    fn inv(&self, a: &Elem) -> Elem {
        Elem::scalar((self.n - a.as_slice()[0]) % self.n)
    }
    fn generators(&self) -> Vec<Elem> {
        if self.n == 1 {
            Vec::new()
        } else {
            vec![Elem::scalar(1)]
        }
    }
    fn label(&self) -> String {
        format!("Z/{}", self.n)
    }
    fn known_order(&self) -> Option<u128> {
        Some(self.n as u128)
    }
}

/// `Z/n` with elements `0..n` and generator `1`.
pub fn cyclic(n: u32) -> Group {
    assert!(n >= 1, "cyclic group needs n >= 1");
    Group::new(Cyclic { n })
}

pub fn trivial() -> Group {
    cyclic(1)
}

/// `Z/n_1 × … × Z/n_t`.
pub fn abelian(orders: &[u32]) -> Group {
    let factors: Vec<Group> = orders.iter().map(|&n| cyclic(n)).collect();
    direct_product(&factors)
}

struct Perm {
    degree: usize,
    gens: Vec<Elem>,
    label: String,
}

impl GroupImpl for Perm {
    fn width(&self) -> usize {
        self.degree
    }
    fn identity(&self) -> Elem {
        let id: Vec<u32> = (0..self.degree as u32).collect();
        Elem::from_slice(&id)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let (a, b) = (a.as_slice(), b.as_slice());
        let out: Vec<u32> = b.iter().map(|&x| a[x as usize]).collect();
        Elem::from_slice(&out)
    }
    fn inv(&self, a: &Elem) -> Elem {
        let mut out = vec![0u32; self.degree];
        for (i, &x) in a.as_slice().iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Elem::from_slice(&out)
    }
    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Permutation group on `0..degree`, generators in one-line image
/// notation. The product `ab` applies `b` first.
pub fn permutation_group(degree: usize, gens: &[Vec<u32>], label: &str) -> Result<Group> {
    let mut out = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let mut seen = vec![false; degree];
        if g.len() != degree || g.iter().any(|&x| (x as usize) >= degree || std::mem::replace(&mut seen[x as usize], true)) {
            return Err(Error::ParseError {
                location: format!("generator {}", i + 1),
                message: format!("{g:?} is not a permutation of {degree} points"),
            });
        }
        out.push(Elem::from_slice(g));
    }
    Ok(Group::new(Perm { degree, gens: out, label: label.to_string() }))
}

/// Permutation group from generators given on points `1..=degree`.
pub fn permutation_group_one_based(degree: usize, gens: &[Vec<u32>], label: &str) -> Result<Group> {
    let shifted: Vec<Vec<u32>> = gens.iter().map(|g| g.iter().map(|&x| x.wrapping_sub(1)).collect()).collect();
    permutation_group(degree, &shifted, label)
}

/// `S_n`, generated by a transposition and an `n`-cycle.
pub fn symmetric(n: usize) -> Group {
    if n < 2 {
        return permutation_group(n, &[], &format!("S{n}")).expect("valid");
    }
    let mut swap: Vec<u32> = (0..n as u32).collect();
    swap.swap(0, 1);
    let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    permutation_group(n, &[swap, cycle], &format!("S{n}")).expect("valid")
}

/// The dihedral group of order `2n` acting on an `n`-gon, generated by
/// the rotation `r` and the reflection `s`, in that order.
pub fn dihedral(n: usize) -> Group {
    assert!(n >= 3, "dihedral group needs n >= 3");
    let rot: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    permutation_group(n, &[rot, refl], &format!("D{n}")).expect("valid")
}

/// Quaternion unit `±1, ±i, ±j, ±k` as (sign bit, unit index).
fn quaternion_mul(a: usize, b: usize) -> usize {
    const UNIT: [[(u8, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let (sa, ua) = (a / 4, a % 4);
    let (sb, ub) = (b / 4, b % 4);
    let (s, u) = UNIT[ua][ub];
    ((sa + sb + s as usize) % 2) * 4 + u
}

/// `Q8` in its regular permutation representation, generated by `i` and
/// `j`. Points `0..8` stand for `1, i, j, k, -1, -i, -j, -k`.
pub fn quaternion() -> Group {
    let left = |x: usize| -> Vec<u32> { (0..8).map(|y| quaternion_mul(x, y) as u32).collect() };
    permutation_group(8, &[left(1), left(2)], "Q8").expect("valid")
}

/// The Klein four-group as `Z/2 × Z/2`.
pub fn klein_four() -> Group {
    abelian(&[2, 2])
}

struct Table {
    table: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    gens: Vec<Elem>,
    label: String,
}

impl GroupImpl for Table {
    fn width(&self) -> usize {
        1
    }
    fn identity(&self) -> Elem {
        Elem::scalar(0)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Elem::scalar(self.table[a.as_slice()[0] as usize][b.as_slice()[0] as usize])
    }
    fn inv(&self, a: &Elem) -> Elem {
        Elem::scalar(self.inverse[a.as_slice()[0] as usize])
    }
    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
    fn label(&self) -> String {
        self.label.clone()
    }
    fn known_order(&self) -> Option<u128> {
        Some(self.table.len() as u128)
    }
}

/// A group given by its multiplication table on `0..n`. Elements are
/// relabelled so the identity is `0`; the returned vector maps each
/// original label to its new one. Associativity is checked in full.
pub fn table_group(table: &[Vec<u32>], label: &str) -> Result<(Group, Vec<u32>)> {
    let n = table.len();
    let bad = |message: String| Error::ParseError { location: "table".into(), message };
    if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x as usize >= n)) {
        return Err(bad(format!("table must be a square over 0..{n}")));
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] as usize == x && table[x][e] as usize == x))
        .ok_or_else(|| bad("no two-sided identity".into()))?;
    let relabel = |x: usize| -> u32 {
        if x == e {
            0
        } else if x == 0 {
            e as u32
        } else {
            x as u32
        }
    };
    let mut t = vec![vec![0u32; n]; n];
    for a in 0..n {
        for b in 0..n {
            t[relabel(a) as usize][relabel(b) as usize] = relabel(table[a][b] as usize);
        }
    }
    let mut inverse = vec![0u32; n];
    for a in 0..n {
        let row = &t[a];
        let mut seen = vec![false; n];
        for &x in row {
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(bad(format!("row {a} repeats an entry")));
            }
        }
        inverse[a] = row.iter().position(|&x| x == 0).expect("latin row contains identity") as u32;
    }
    for a in 0..n {
        for b in 0..n {
            let ab = t[a][b] as usize;
            for c in 0..n {
                if t[ab][c] != t[a][t[b][c] as usize] {
                    return Err(Error::AxiomViolation { axiom: "associativity".into(), witness: format!("({a}, {b}, {c})") });
                }
            }
        }
    }
    let mut gens = Vec::new();
    let mut reached = vec![false; n];
    reached[0] = true;
    for x in 1..n {
        if reached[x] {
            continue;
        }
        gens.push(Elem::scalar(x as u32));
        let mut frontier: Vec<usize> = (0..n).filter(|&y| reached[y]).collect();
        while let Some(y) = frontier.pop() {
            for g in &gens {
                let z = t[y][g.as_slice()[0] as usize] as usize;
                if !reached[z] {
                    reached[z] = true;
                    frontier.push(z);
                }
            }
        }
    }
    let map = (0..n).map(relabel).collect();
    Ok((Group::new(Table { table: t, inverse, gens, label: label.to_string() }), map))
}
