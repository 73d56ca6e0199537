//! Exact enumeration of vectors of prescribed square in definite lattices.
//!
//! The pipeline is LLL reduction with exact rational Gram–Schmidt followed by
//! Fincke–Pohst traversal of the reduced basis. Every rational quantity is
//! exact, so an empty shell is a proof, not an estimate. A box-scanning oracle
//! with a documented coordinate bound is provided for cross-checking.
//!
//! Coordinate bound: for a positive-definite Gram matrix `A` and `xᵀAx <= T`,
//! Cauchy–Schwarz against the dual basis gives `|x_i| <= sqrt(T · (A⁻¹)_ii)`.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{diagonalize, IntegerLattice};
use crate::matrix::{floor_sqrt, rat, rat_frac, IntMatrix, Rational};

pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

/// LLL parameter 3/4.
pub fn default_delta() -> Rational {
    rat_frac(3, 4)
}

/// A definite integral Gram matrix, optionally with an LLL basis change.
#[derive(Clone, Debug)]
pub struct DefiniteLattice {
    gram: IntMatrix,
    negative: bool,
    reduction: Option<IntMatrix>,
}

impl DefiniteLattice {
    /// Certifies definiteness by exact diagonalization.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() || gram.nrows() == 0 {
            return Err(Error::NotDefinite);
        }
        let d = diagonalize(&gram.to_rat());
        let n = gram.nrows();
        let (pos, neg, _) = d.counts();
        let negative = match (pos, neg) {
            (0, k) if k == n => true,
            (k, 0) if k == n => false,
            _ => return Err(Error::NotDefinite),
        };
        Ok(DefiniteLattice { gram, negative, reduction: None })
    }

    pub fn from_lattice(l: &IntegerLattice) -> Result<Self> {
        Self::new(l.gram().clone())
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn reduction(&self) -> Option<&IntMatrix> {
        self.reduction.as_ref()
    }

    /// The sign-flipped Gram matrix, positive definite.
    pub fn positive_gram(&self) -> IntMatrix {
        if self.negative {
            self.gram.neg()
        } else {
            self.gram.clone()
        }
    }

    fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// Copy carrying an LLL-reduced basis change.
    pub fn reduced(&self, delta: &Rational) -> Result<DefiniteLattice> {
        let u = lll_reduce(self, delta)?;
        Ok(DefiniteLattice { gram: self.gram.clone(), negative: self.negative, reduction: Some(u) })
    }
}

/// Vectors of one fixed square, in the original basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormShell {
    pub target_square: i64,
    pub vectors: Vec<Vec<i64>>,
}

impl NormShell {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn sorted_vectors(&self) -> Vec<Vec<i64>> {
        let mut v = self.vectors.clone();
        v.sort();
        v
    }
}

/// Gram–Schmidt data of a positive-definite Gram matrix:
/// `xᵀAx = Σ_i b*_i (x_i + Σ_{j>i} μ_{ji} x_j)²`.
struct GramSchmidt {
    mu: Vec<Vec<Rational>>,
    bstar: Vec<Rational>,
}

fn gram_schmidt(gram: &[Vec<BigInt>]) -> GramSchmidt {
    let n = gram.len();
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut bstar = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut v = Rational::from_integer(gram[i][j].clone());
            for l in 0..j {
                v -= &mu[j][l] * &mu[i][l] * &bstar[l];
            }
            mu[i][j] = v / &bstar[j];
        }
        let mut b = Rational::from_integer(gram[i][i].clone());
        for l in 0..i {
            b -= &mu[i][l] * &mu[i][l] * &bstar[l];
        }
        mu[i][i] = Rational::one();
        bstar[i] = b;
    }
    GramSchmidt { mu, bstar }
}

fn round_rational(x: &Rational) -> BigInt {
    (x + rat_frac(1, 2)).floor().to_integer()
}

/// LLL reduction. Returns a unimodular `U` whose columns are the reduced basis
/// in original coordinates, so the reduced Gram matrix is `Uᵀ G U`.
pub fn lll_reduce(l: &DefiniteLattice, delta: &Rational) -> Result<IntMatrix> {
    if *delta <= rat_frac(1, 4) || *delta > rat(1) {
        return Err(Error::Input("LLL parameter must lie in (1/4, 1]".into()));
    }
    let n = l.rank();
    let mut g: Vec<Vec<BigInt>> = l.positive_gram().to_big();
    // basis[i] = coordinates of the i-th reduced vector.
    let mut basis: Vec<Vec<BigInt>> = IntMatrix::identity(n).to_big();
    let mut gs = gram_schmidt(&g);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = round_rational(&gs.mu[k][j]);
            if q.is_zero() {
                continue;
            }
            for c in 0..n {
                let v = &basis[j][c] * &q;
                basis[k][c] -= v;
            }
            for c in 0..n {
                let v = &g[j][c] * &q;
                g[k][c] -= v;
            }
            for r in 0..n {
                let v = &g[r][j] * &q;
                g[r][k] -= v;
            }
            let qr = Rational::from_integer(q);
            for i in 0..j {
                let v = &gs.mu[j][i] * &qr;
                gs.mu[k][i] -= v;
            }
            gs.mu[k][j] -= &qr;
        }
        let lhs = &gs.bstar[k];
        let rhs = (delta - &gs.mu[k][k - 1] * &gs.mu[k][k - 1]) * &gs.bstar[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            gs = gram_schmidt(&g);
            k = (k - 1).max(1);
        }
    }
    let rows = IntMatrix::from_big(n, n, &basis)?;
    Ok(rows.transpose())
}

struct NodeBudget {
    used: AtomicU64,
    cap: u64,
}

impl NodeBudget {
    fn tick(&self) -> Result<()> {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(Error::NodeCapExceeded(self.cap));
        }
        Ok(())
    }
}

struct Traversal<'a> {
    gs: &'a GramSchmidt,
    target: Rational,
    budget: &'a NodeBudget,
}

impl Traversal<'_> {
    /// Integers `v` with `(v - c)² <= bound`.
    fn range(center: &Rational, bound: &Rational) -> Option<(i64, i64)> {
        if bound.is_negative() {
            return None;
        }
        let ok = |v: i64| {
            let d = rat(v) - center;
            &d * &d <= *bound
        };
        let cf = center.to_f64().unwrap_or(0.0);
        let sf = bound.to_f64().unwrap_or(0.0).sqrt();
        let mut lo = (cf - sf).ceil() as i64;
        let mut hi = (cf + sf).floor() as i64;
        while ok(lo - 1) {
            lo -= 1;
        }
        while lo <= hi && !ok(lo) {
            lo += 1;
        }
        while ok(hi + 1) {
            hi += 1;
        }
        while hi >= lo && !ok(hi) {
            hi -= 1;
        }
        if lo > hi {
            // Rounding may put both ends past a single admissible integer.
            let c = round_rational(center).to_i64()?;
            return ok(c).then_some((c, c));
        }
        Some((lo, hi))
    }

    fn center(&self, level: usize, x: &[i64]) -> Rational {
        let n = x.len();
        let mut c = Rational::zero();
        for j in level + 1..n {
            if x[j] != 0 {
                c -= &self.gs.mu[j][level] * rat(x[j]);
            }
        }
        c
    }

    fn level_range(&self, level: usize, x: &[i64], partial: &Rational) -> Option<(i64, i64, Rational)> {
        let center = self.center(level, x);
        let bound = (&self.target - partial) / &self.gs.bstar[level];
        let (lo, hi) = Self::range(&center, &bound)?;
        Some((lo, hi, center))
    }

    fn search(&self, level: usize, x: &mut Vec<i64>, partial: &Rational, out: &mut Vec<Vec<i64>>) -> Result<()> {
        let Some((lo, hi, center)) = self.level_range(level, x, partial) else {
            return Ok(());
        };
        for v in lo..=hi {
            self.budget.tick()?;
            let d = rat(v) - &center;
            let next = partial + &self.gs.bstar[level] * &d * &d;
            if next > self.target {
                continue;
            }
            x[level] = v;
            if level == 0 {
                if next == self.target {
                    out.push(x.clone());
                }
            } else {
                self.search(level - 1, x, &next, out)?;
            }
        }
        x[level] = 0;
        Ok(())
    }
}

/// Options for [`enumerate_norm_with`].
#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    pub node_cap: u64,
    /// Worker threads for the top-level split; 1 means sequential.
    pub jobs: usize,
    pub delta: Rational,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { node_cap: DEFAULT_NODE_CAP, jobs: 1, delta: default_delta() }
    }
}

fn check_target(l: &DefiniteLattice, t: i64) -> Result<()> {
    if t == 0 || (t < 0) != l.is_negative() {
        return Err(Error::BadTarget(t));
    }
    Ok(())
}

/// All `v` with `vᵀGv = t` (sequential, default LLL parameter).
pub fn enumerate_norm(l: &DefiniteLattice, t: i64, node_cap: u64) -> Result<NormShell> {
    enumerate_norm_with(l, t, &EnumerationOptions { node_cap, ..Default::default() })
}

pub fn enumerate_norm_with(l: &DefiniteLattice, t: i64, opts: &EnumerationOptions) -> Result<NormShell> {
    check_target(l, t)?;
    let n = l.rank();
    let u = match l.reduction() {
        Some(u) => u.clone(),
        None => lll_reduce(l, &opts.delta)?,
    };
    let reduced = u.transpose().mul(&l.positive_gram()).mul(&u);
    let gs = gram_schmidt(&reduced.to_big());
    let budget = NodeBudget { used: AtomicU64::new(0), cap: opts.node_cap };
    let trav = Traversal { gs: &gs, target: rat(t.abs()), budget: &budget };

    let top = n - 1;
    let zero = Rational::zero();
    let mut found: Vec<Vec<i64>> = Vec::new();
    if let Some((lo, hi, center)) = trav.level_range(top, &vec![0; n], &zero) {
        let branch = |v: i64| -> Result<Vec<Vec<i64>>> {
            trav.budget.tick()?;
            let mut out = Vec::new();
            let d = rat(v) - &center;
            let partial = &gs.bstar[top] * &d * &d;
            if partial > trav.target {
                return Ok(out);
            }
            let mut x = vec![0; n];
            x[top] = v;
            if top == 0 {
                if partial == trav.target {
                    out.push(x);
                }
            } else {
                trav.search(top - 1, &mut x, &partial, &mut out)?;
            }
            Ok(out)
        };
        if opts.jobs > 1 {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.jobs)
                .build()
                .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
            let parts: Vec<Result<Vec<Vec<i64>>>> = pool.install(|| (lo..=hi).into_par_iter().map(branch).collect());
            for p in parts {
                found.extend(p?);
            }
        } else {
            for v in lo..=hi {
                found.extend(branch(v)?);
            }
        }
    }
    found.sort();
    let vectors: Vec<Vec<i64>> = found.iter().map(|x| u.mul_vec(x)).collect();
    let shell = NormShell { target_square: t, vectors };
    verify_shell(l, &shell);
    Ok(shell)
}

/// Negation-closed, duplicate-free, every square re-verified.
fn verify_shell(l: &DefiniteLattice, shell: &NormShell) {
    let mut sorted = shell.sorted_vectors();
    let before = sorted.len();
    sorted.dedup();
    assert_eq!(before, sorted.len(), "shell contains duplicates");
    for v in &shell.vectors {
        let gv = l.gram().mul_vec(v);
        let sq: i128 = v.iter().zip(&gv).map(|(a, b)| *a as i128 * *b as i128).sum();
        assert_eq!(sq, shell.target_square as i128, "shell vector has the wrong square");
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        assert!(sorted.binary_search(&neg).is_ok(), "shell is not closed under negation");
    }
}

/// Exhaustive scan of `[-box, box]^n` in the original basis.
pub fn brute_force_oracle(l: &DefiniteLattice, t: i64, bx: i64) -> Result<NormShell> {
    brute_force_bounded(l, t, &vec![bx; l.rank()])
}

/// Exhaustive scan of `Π [-b_i, b_i]`. Complete when `b_i >= coordinate_bounds(l, t)[i]`.
pub fn brute_force_bounded(l: &DefiniteLattice, t: i64, bounds: &[i64]) -> Result<NormShell> {
    check_target(l, t)?;
    let n = l.rank();
    if bounds.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: bounds.len() });
    }
    let g = l.gram();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    let mut out = Vec::new();
    loop {
        let mut sq: i128 = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for j in 0..n {
                row += g[(i, j)] as i128 * x[j] as i128;
            }
            sq += x[i] as i128 * row;
        }
        if sq == t as i128 {
            out.push(x.clone());
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return Ok(NormShell { target_square: t, vectors: out });
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}

/// `floor(sqrt(|t| · (A⁻¹)_ii))` for the positive-definite form `A`.
pub fn coordinate_bounds(l: &DefiniteLattice, t: i64) -> Result<Vec<i64>> {
    let inv = l.positive_gram().to_rat().inverse().ok_or(Error::NotDefinite)?;
    (0..l.rank())
        .map(|i| {
            let b = floor_sqrt(&(&inv[(i, i)] * rat(t.abs())));
            b.to_i64().ok_or(Error::Overflow("coordinate bound"))
        })
        .collect()
}

/// The nonzero square closest to zero (negative for negative-definite input).
pub fn minimal_square(l: &DefiniteLattice) -> Result<i64> {
    minimal_square_capped(l, DEFAULT_NODE_CAP)
}

pub fn minimal_square_capped(l: &DefiniteLattice, node_cap: u64) -> Result<i64> {
    let reduced = l.reduced(&default_delta())?;
    let pg = l.positive_gram();
    let upper = (0..l.rank()).map(|i| pg[(i, i)]).min().expect("rank >= 1");
    for m in 1..=upper {
        let t = l.sign() * m;
        if !enumerate_norm(&reduced, t, node_cap)?.is_empty() {
            return Ok(t);
        }
    }
    unreachable!("a basis vector has square at most the smallest diagonal entry")
}
