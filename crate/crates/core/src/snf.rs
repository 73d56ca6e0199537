//! Smith and Hermite normal forms over the integers, and the integer kernels
//! built on top of them. All elimination runs on `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::matrix::IntMatrix;

type BigMat = Vec<Vec<BigInt>>;

fn identity(n: usize) -> BigMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// `S = P·A·Q` with `P`, `Q` unimodular and `S` diagonal with `s1 | s2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `s_ii` (including trailing zeros up to `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.s.nrows().min(self.s.ncols())).map(|i| self.s[(i, i)]).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&d| d != 0).count()
    }
}

struct SmithState {
    a: BigMat,
    p: BigMat,
    q: BigMat,
    m: usize,
    n: usize,
}

impl SmithState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.p.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.q.iter_mut() {
            row.swap(i, j);
        }
    }

    /// row_i -= f * row_j
    fn row_axpy(&mut self, i: usize, j: usize, f: &BigInt) {
        for c in 0..self.n {
            let v = &self.a[j][c] * f;
            self.a[i][c] -= v;
        }
        for c in 0..self.m {
            let v = &self.p[j][c] * f;
            self.p[i][c] -= v;
        }
    }

    /// col_i -= f * col_j
    fn col_axpy(&mut self, i: usize, j: usize, f: &BigInt) {
        for r in 0..self.m {
            let v = &self.a[r][j] * f;
            self.a[r][i] -= v;
        }
        for r in 0..self.n {
            let v = &self.q[r][j] * f;
            self.q[r][i] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -x.clone();
        }
        for x in self.p[i].iter_mut() {
            *x = -x.clone();
        }
    }

    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                if self.a[i][j].is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= self.a[i][j].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let diag = self.m.min(self.n);
        for t in 0..diag {
            let Some((pi, pj)) = self.min_nonzero(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let f = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_axpy(i, t, &f);
                        if !self.a[i][t].is_zero() {
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let f = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_axpy(j, t, &f);
                        if !self.a[t][j].is_zero() {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    // A smaller remainder appeared in row/column t: move it to the pivot.
                    let mut best = (t, t);
                    for i in t..self.m {
                        if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t..self.n {
                        if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // Divisibility chain: the pivot must divide the remaining block.
                let bad = (t + 1..self.m)
                    .flat_map(|i| (t + 1..self.n).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&self.a[i][j] % &self.a[t][t]).is_zero());
                match bad {
                    Some((i, _)) => {
                        let minus_one = -BigInt::one();
                        self.row_axpy(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithForm> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut st = SmithState { a: a.to_big(), p: identity(m), q: identity(n), m, n };
    st.run();
    Ok(SmithForm {
        s: IntMatrix::from_big(m, n, &st.a)?,
        p: IntMatrix::from_big(m, m, &st.p)?,
        q: IntMatrix::from_big(n, n, &st.q)?,
    })
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`.
///
/// Returns only the nonzero rows: an echelon basis with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(a: &IntMatrix) -> Result<IntMatrix> {
    let n = a.ncols();
    let mut rows: BigMat = a.to_big();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == rows.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if !rows[i][c].is_zero() && best.is_none_or(|b| rows[i][c].abs() < rows[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in r + 1..rows.len() {
                if !rows[i][c].is_zero() {
                    let f = rows[i][c].div_floor(&rows[r][c]);
                    for j in c..n {
                        let v = &rows[r][j] * &f;
                        rows[i][j] -= v;
                    }
                    if !rows[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let f = rows[i][c].div_floor(&rows[r][c]);
                if !f.is_zero() {
                    for j in c..n {
                        let v = &rows[r][j] * &f;
                        rows[i][j] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    rows.truncate(r);
    IntMatrix::from_big(r, n, &rows)
}

/// Basis (rows, Hermite-reduced) of the integer right kernel `{x ∈ Z^n : A x = 0}`.
/// The result is always a saturated sublattice of `Z^n`.
pub fn integer_kernel(a: &IntMatrix) -> Result<IntMatrix> {
    let n = a.ncols();
    if a.nrows() == 0 {
        return Ok(IntMatrix::identity(n));
    }
    let snf = smith_normal_form(a)?;
    let r = snf.rank();
    let qt = snf.q.transpose();
    let rows: Vec<Vec<i64>> = (r..n).map(|i| qt.row(i).to_vec()).collect();
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(0, n));
    }
    hermite_rows(&IntMatrix::from_rows(&rows)?)
}

/// Basis of `span_Q(rows of b) ∩ Z^n`.
pub fn saturate_rows(b: &IntMatrix) -> Result<IntMatrix> {
    let n = b.ncols();
    if b.nrows() == 0 {
        return Ok(IntMatrix::zeros(0, n));
    }
    let annihilator = integer_kernel(b)?;
    if annihilator.nrows() == 0 {
        return Ok(IntMatrix::identity(n));
    }
    integer_kernel(&annihilator)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(a).unwrap();
        assert_eq!(f.p.mul(a).mul(&f.q), f.s);
        assert_eq!(f.p.det().abs(), BigInt::one());
        assert_eq!(f.q.det().abs(), BigInt::one());
        let d = f.diagonal();
        for w in d.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        f
    }

    #[test]
    fn snf_identity() {
        let f = check(&IntMatrix::identity(3));
        assert_eq!(f.s, IntMatrix::identity(3));
    }

    #[test]
    fn snf_antidiagonal_two() {
        let f = check(&IntMatrix::from_row_slices(&[&[0, 2], &[2, 0]]));
        assert_eq!(f.diagonal(), vec![2, 2]);
    }

    #[test]
    fn snf_diag_1_6_4() {
        let f = check(&IntMatrix::diagonal(&[1, 6, 4]));
        assert_eq!(f.diagonal(), vec![1, 2, 12]);
    }

    #[test]
    fn snf_rectangular() {
        let f = check(&IntMatrix::from_row_slices(&[&[2, 4, 4], &[-6, 6, 12]]));
        assert_eq!(f.diagonal(), vec![2, 6]);
    }

    #[test]
    fn hermite_example() {
        let h = hermite_rows(&IntMatrix::from_row_slices(&[&[2, 0], &[0, 2], &[1, 1]])).unwrap();
        assert_eq!(h, IntMatrix::from_row_slices(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn kernel_and_saturation() {
        let a = IntMatrix::from_row_slices(&[&[1, 1, 1]]);
        let k = integer_kernel(&a).unwrap();
        assert_eq!(k.nrows(), 2);
        for i in 0..2 {
            assert_eq!(a.mul_vec(k.row(i)), vec![0]);
        }
        let s = saturate_rows(&IntMatrix::from_row_slices(&[&[2, 4, 0]])).unwrap();
        assert_eq!(s, IntMatrix::from_row_slices(&[&[1, 2, 0]]));
    }
}
