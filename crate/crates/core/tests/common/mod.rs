//! Independent oracles and random generators shared by the integration tests.
//!
//! Nothing here calls the enumeration, normal-form or decomposition code of
//! the library; the oracles are deliberately naive.

#![allow(dead_code)]

use nielsen_core::lattice::IntegerLattice;
use nielsen_core::matrix::IntMatrix;
use num_rational::Ratio;
use rand::Rng;

pub type Q = Ratio<i128>;

/// Fraction-free determinant.
pub fn det_i128(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn minor(m: &[Vec<i64>], skip_row: usize, skip_col: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != skip_col).map(|(_, &x)| x).collect())
        .collect()
}

/// Sylvester: `−G` positive definite.
pub fn is_negative_definite(g: &[Vec<i64>]) -> bool {
    let n = g.len();
    (1..=n).all(|k| {
        let lead: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| -g[i][j]).collect()).collect();
        det_i128(&lead) > 0
    })
}

fn isqrt(x: i128) -> i128 {
    if x <= 0 {
        return 0;
    }
    let mut r = (x as f64).sqrt() as i128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// `|x_i| <= floor(sqrt(|t| · cof_ii / det))` for the positive form `−G`.
pub fn cofactor_bounds(g: &[Vec<i64>], t: i64) -> Vec<i64> {
    let a: Vec<Vec<i64>> = g.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let det = det_i128(&a);
    (0..a.len())
        .map(|i| {
            let cof = det_i128(&minor(&a, i, i));
            isqrt((t.unsigned_abs() as i128 * cof) / det) as i64
        })
        .collect()
}

/// All `x` with `xᵀGx = t` inside the box given by [`cofactor_bounds`].
pub fn brute_force_shell(g: &[Vec<i64>], t: i64) -> Vec<Vec<i64>> {
    let n = g.len();
    let b = cofactor_bounds(g, t);
    let mut out = Vec::new();
    let mut x: Vec<i64> = b.iter().map(|v| -v).collect();
    loop {
        let mut q: i128 = 0;
        for i in 0..n {
            for j in 0..n {
                q += g[i][j] as i128 * x[i] as i128 * x[j] as i128;
            }
        }
        if q == t as i128 {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            if x[i] < b[i] {
                x[i] += 1;
                break;
            }
            x[i] = -b[i];
            i += 1;
        }
    }
}

/// Roots of E8 in the model `{x ∈ ℤ⁸ ∪ (ℤ+½)⁸ : Σx ∈ 2ℤ}`, counted by scanning
/// doubled coordinates `y = 2x ∈ {−2,…,2}⁸` with `Σy² = 8`.
pub fn e8_root_count_d8_model() -> usize {
    let mut count = 0;
    let mut y = [-2i64; 8];
    loop {
        let all_even = y.iter().all(|v| v % 2 == 0);
        let all_odd = y.iter().all(|v| v % 2 != 0);
        let norm: i64 = y.iter().map(|v| v * v).sum();
        let sum: i64 = y.iter().sum();
        if (all_even || all_odd) && norm == 8 && sum % 4 == 0 {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == 8 {
                return count;
            }
            if y[i] < 2 {
                y[i] += 1;
                break;
            }
            y[i] = -2;
            i += 1;
        }
    }
}

/// Random symmetric negative-definite integer matrix, rank `n`, entries in `[−20, 20]`.
pub fn random_negative_definite(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    loop {
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = -2 * rng.gen_range(1..=10);
            for j in i + 1..n {
                let v = rng.gen_range(-10..=10);
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        if is_negative_definite(&g) {
            return g;
        }
    }
}

/// Exact rank over `ℚ` by Gaussian elimination.
pub fn rank_q(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != Q::from_integer(0)) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != Q::from_integer(0) {
                let f = m[i][c] / m[r][c];
                for j in 0..cols {
                    let v = m[r][j] * f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{x : A x = 0}` over `ℚ`, as rows.
pub fn kernel_q(a: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let rows = a.len();
    let cols = a[0].len();
    let mut m: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != Q::from_integer(0)) else { continue };
        m.swap(r, p);
        let inv = Q::from_integer(1) / m[r][c];
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && m[i][c] != Q::from_integer(0) {
                let f = m[i][c];
                for j in 0..cols {
                    let v = m[r][j] * f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Q::from_integer(0); cols];
            v[f] = Q::from_integer(1);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f];
            }
            v
        })
        .collect()
}

/// Whether two families of rational vectors span the same subspace.
pub fn same_span_q(a: &[Vec<Q>], b: &[Vec<Q>]) -> bool {
    let ra = rank_q(a);
    let rb = rank_q(b);
    let both: Vec<Vec<Q>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank_q(&both) == ra
}

/// Rank over `𝔽_p`.
pub fn rank_mod_p(a: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = (1..p).find(|x| x * m[r][c] % p == 1).unwrap();
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = b.len();
    let cols = b[0].len();
    a.iter().map(|r| (0..cols).map(|j| (0..k).map(|l| r[l] * b[l][j]).sum()).collect()).collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// `s_r s_{r'}` on `M = U ⊕ E8(−1)` with `r` an E8 root and `r' = r + 2w`,
/// `⟨r, w⟩ + q(w) = 0`: a product of two reflections in (−2)-vectors that are
/// congruent modulo 2.
pub fn random_gamma2(rng: &mut impl Rng, m: &IntegerLattice) -> IntMatrix {
    let g = m.gram();
    let n = m.rank();
    let root_index = rng.gen_range(0..8);
    let mut r = vec![0i64; n];
    r[2 + root_index] = 1;
    loop {
        let mut w = vec![0i64; n];
        for i in 2..n {
            w[i] = rng.gen_range(-1..=1);
        }
        let rz = m.inner(&r, &w).unwrap();
        let qz = m.square(&w).unwrap();
        if rz % 2 != 0 {
            continue;
        }
        w[0] = 1;
        w[1] = -(rz + qz) / 2;
        assert_eq!(m.inner(&r, &w).unwrap() + m.square(&w).unwrap(), 0);
        let r2: Vec<i64> = r.iter().zip(&w).map(|(a, b)| a + 2 * b).collect();
        let refl = |v: &[i64]| {
            let gv = g.mul_vec(v);
            IntMatrix::from_fn(n, n, |i, j| i64::from(i == j) + v[i] * gv[j])
        };
        let prod = refl(&r).mul(&refl(&r2));
        if rng.gen_bool(0.3) {
            return prod.mul(&e8_negation(n));
        }
        return prod;
    }
}

/// `id_U ⊕ −id_E8`.
pub fn e8_negation(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, n, |i, j| if i != j { 0 } else if i < 2 { 1 } else { -1 })
}
