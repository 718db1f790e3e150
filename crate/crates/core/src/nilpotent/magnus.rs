use super::Letter;

/// A noncommutative power series in `X_1..X_r` truncated above degree
/// `class`, with exact integer coefficients. Monomials of degree `d` are
/// indexed in base `r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MagnusSeries {
    rank: usize,
    class: usize,
    coeffs: Vec<i128>,
    offsets: Vec<usize>,
}

impl MagnusSeries {
    pub fn one(rank: usize, class: usize) -> Self {
        let mut offsets = vec![0usize];
        let mut size = 1usize;
        for _ in 0..class {
            offsets.push(offsets.last().unwrap() + size);
            size *= rank;
        }
        let total = offsets.last().unwrap() + size;
        let mut coeffs = vec![0i128; total];
        coeffs[0] = 1;
        MagnusSeries { rank, class, coeffs, offsets }
    }

    /// Image of a letter: `1 + X_k`, or `1 − X_k + X_k² − …` for `x_k⁻¹`.
    pub fn of_letter(rank: usize, class: usize, l: Letter) -> Self {
        let mut s = Self::one(rank, class);
        let k = l.generator - 1;
        assert!(k < rank, "letter {l:?} outside rank {rank}");
        let mut mono = 0usize;
        for d in 1..=class {
            mono = mono * rank + k;
            let sign = if l.inverse && d % 2 == 1 { -1 } else { 1 };
            if !l.inverse && d > 1 {
                break;
            }
            s.coeffs[s.offsets[d] + mono] = sign;
        }
        s
    }

    pub fn of_word(rank: usize, class: usize, w: &[Letter]) -> Self {
        w.iter().fold(Self::one(rank, class), |acc, &l| acc.mul(&Self::of_letter(rank, class, l)))
    }

    fn degree_size(&self, d: usize) -> usize {
        self.rank.pow(d as u32)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::one(self.rank, self.class);
        out.coeffs[0] = 0;
        for da in 0..=self.class {
            for db in 0..=self.class - da {
                let sb = other.degree_size(db);
                for ia in 0..self.degree_size(da) {
                    let a = self.coeffs[self.offsets[da] + ia];
                    if a == 0 {
                        continue;
                    }
                    for ib in 0..sb {
                        let b = other.coeffs[other.offsets[db] + ib];
                        if b == 0 {
                            continue;
                        }
                        let idx = out.offsets[da + db] + ia * sb + ib;
                        let prod = a.checked_mul(b).expect("Magnus coefficient overflow");
                        out.coeffs[idx] = out.coeffs[idx].checked_add(prod).expect("Magnus coefficient overflow");
                    }
                }
            }
        }
        out
    }
}

/// Whether two words are equal in the free nilpotent group of the given
/// rank and class, decided through the truncated Magnus embedding.
pub fn magnus_equal(a: &[Letter], b: &[Letter], rank: usize, class: usize) -> bool {
    MagnusSeries::of_word(rank, class, a) == MagnusSeries::of_word(rank, class, b)
}
