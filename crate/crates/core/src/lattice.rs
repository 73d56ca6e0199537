//! Even integral lattices and their basic invariants.
//!
//! A lattice is stored as its Gram matrix in a fixed basis. Vectors are
//! integer coordinate vectors in that basis. Everything here is exact:
//! signatures come from a rational congruence diagonalization, discriminant
//! groups from the Smith form of the Gram matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{dot, gcd_slice, rat, IntMatrix, RatMatrix, Rational};
use crate::snf::{hermite_rows, integer_kernel, saturate_rows, smith_normal_form};

/// Edges of the E8 Dynkin diagram in Bourbaki numbering (1-based).
const E8_EDGES: [(usize, usize); 7] = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];

/// Gram matrix of `E8(-1)`: the negated Bourbaki Cartan matrix of E8.
///
/// Basis vector `i` is the simple root `α_{i+1}`; the diagram is
/// `α1 - α3 - α4 - α5 - α6 - α7 - α8` with `α2` attached to `α4`.
pub fn e8_negative_gram() -> IntMatrix {
    let mut g = IntMatrix::scalar(8, -2);
    for &(a, b) in &E8_EDGES {
        g[(a - 1, b - 1)] = 1;
        g[(b - 1, a - 1)] = 1;
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.positive, self.negative)
    }
}

/// Exact congruence diagonalization `T · A · Tᵀ = D` of a symmetric rational matrix.
///
/// Pivoting rule: take the first nonzero diagonal entry at or after the current
/// index; if the remaining diagonal is zero, add the first row with a nonzero
/// coupling into the current one. Zero rows stay zero, so degenerate forms are
/// allowed and produce zero entries in `D`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub transform: RatMatrix,
    pub diagonal: Vec<Rational>,
}

impl Diagonalization {
    pub fn counts(&self) -> (usize, usize, usize) {
        let pos = self.diagonal.iter().filter(|d| d.is_positive()).count();
        let neg = self.diagonal.iter().filter(|d| d.is_negative()).count();
        (pos, neg, self.diagonal.len() - pos - neg)
    }
}

pub fn diagonalize(form: &RatMatrix) -> Diagonalization {
    let n = form.nrows();
    let mut a = form.clone();
    let mut t = RatMatrix::identity(n);
    for i in 0..n {
        if a[(i, i)].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                swap_sym(&mut a, &mut t, i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !a[(i, j)].is_zero()) {
                // row_i += row_j (and columns), making a_ii = 2 a_ij.
                add_sym(&mut a, &mut t, i, j, &Rational::one());
            }
        }
        if a[(i, i)].is_zero() {
            continue;
        }
        let piv = a[(i, i)].clone();
        for j in i + 1..n {
            if !a[(j, i)].is_zero() {
                let f = -(&a[(j, i)] / &piv);
                add_sym(&mut a, &mut t, j, i, &f);
            }
        }
    }
    let diagonal = (0..n).map(|i| a[(i, i)].clone()).collect();
    Diagonalization { transform: t, diagonal }
}

fn swap_sym(a: &mut RatMatrix, t: &mut RatMatrix, i: usize, j: usize) {
    a.swap_rows(i, j);
    let n = a.nrows();
    for r in 0..n {
        let tmp = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = tmp;
    }
    t.swap_rows(i, j);
}

/// `row_i += f·row_j`, `col_i += f·col_j`, tracked in `t`.
fn add_sym(a: &mut RatMatrix, t: &mut RatMatrix, i: usize, j: usize, f: &Rational) {
    let n = a.nrows();
    for c in 0..n {
        let v = &a[(j, c)] * f;
        a[(i, c)] += v;
    }
    for r in 0..n {
        let v = &a[(r, j)] * f;
        a[(r, i)] += v;
    }
    for c in 0..t.ncols() {
        let v = &t[(j, c)] * f;
        t[(i, c)] += v;
    }
}

/// Counts of positive, negative and zero directions of a symmetric rational form.
pub fn inertia(form: &RatMatrix) -> (usize, usize, usize) {
    diagonalize(form).counts()
}

/// A nondegenerate even integral lattice given by its Gram matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    gram: IntMatrix,
    label: String,
}

impl fmt::Debug for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerLattice({}, rank {})", self.label, self.rank())
    }
}

/// Named building blocks.
#[derive(Clone, Debug)]
pub enum StandardKind {
    U,
    E8Neg,
    Rank1(i64),
    Rescale(Box<IntegerLattice>, i64),
    DirectSum(Vec<IntegerLattice>),
}

pub fn make_standard(kind: StandardKind) -> Result<IntegerLattice> {
    match kind {
        StandardKind::U => Ok(IntegerLattice::hyperbolic_plane()),
        StandardKind::E8Neg => Ok(IntegerLattice::e8_negative()),
        StandardKind::Rank1(k) => IntegerLattice::rank_one(k),
        StandardKind::Rescale(l, m) => l.rescale(m),
        StandardKind::DirectSum(parts) => {
            let refs: Vec<&IntegerLattice> = parts.iter().collect();
            IntegerLattice::direct_sum(&refs)
        }
    }
}

impl IntegerLattice {
    /// Validates symmetry, evenness and nondegeneracy.
    pub fn new(gram: IntMatrix, label: impl Into<String>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch { expected: gram.nrows(), found: gram.ncols() });
        }
        let n = gram.nrows();
        for i in 0..n {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
            if gram[(i, i)] % 2 != 0 {
                return Err(Error::NotEven(i));
            }
        }
        if n == 0 || gram.det().is_zero() {
            return Err(Error::DegenerateLattice);
        }
        Ok(IntegerLattice { gram, label: label.into() })
    }

    pub fn hyperbolic_plane() -> Self {
        IntegerLattice { gram: IntMatrix::from_row_slices(&[&[0, 1], &[1, 0]]), label: "U".into() }
    }

    pub fn e8_negative() -> Self {
        IntegerLattice { gram: e8_negative_gram(), label: "E8(-1)".into() }
    }

    /// The rank-one lattice `[k]`.
    pub fn rank_one(k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::DegenerateLattice);
        }
        if k % 2 != 0 {
            return Err(Error::OddRank1Parameter(k));
        }
        Ok(IntegerLattice { gram: IntMatrix::diagonal(&[k]), label: format!("[{k}]") })
    }

    /// `L(m)`: every Gram entry multiplied by `m`.
    pub fn rescale(&self, m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroScale);
        }
        Ok(IntegerLattice { gram: self.gram.scale(m), label: format!("{}({m})", self.label) })
    }

    pub fn direct_sum(parts: &[&IntegerLattice]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::DegenerateLattice);
        }
        let grams: Vec<&IntMatrix> = parts.iter().map(|p| &p.gram).collect();
        let label = parts.iter().map(|p| p.label.as_str()).collect::<Vec<_>>().join("+");
        Ok(IntegerLattice { gram: IntMatrix::block_diag(&grams), label })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    fn check_dim(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: v.len() });
        }
        Ok(())
    }

    /// `vᵀ G w`.
    pub fn inner(&self, v: &[i64], w: &[i64]) -> Result<i64> {
        self.check_dim(v)?;
        self.check_dim(w)?;
        let gw = self.gram.try_mul_vec(w)?;
        i64::try_from(dot(v, &gw)).map_err(|_| Error::Overflow("inner product"))
    }

    pub fn square(&self, v: &[i64]) -> Result<i64> {
        self.inner(v, v)
    }

    /// Pairings `⟨v, e_i⟩` with every basis vector.
    pub fn pairings(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.check_dim(v)?;
        self.gram.try_mul_vec(v)
    }

    pub fn vector(&self, coords: Vec<i64>) -> Result<LatticeVector<'_>> {
        self.check_dim(&coords)?;
        Ok(LatticeVector { lattice: self, coords })
    }

    pub fn basis_vector(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn diagonalization(&self) -> Diagonalization {
        diagonalize(&self.gram.to_rat())
    }

    pub fn signature(&self) -> Signature {
        let (positive, negative, zero) = self.diagonalization().counts();
        debug_assert_eq!(zero, 0, "lattices are nondegenerate by construction");
        Signature { positive, negative }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        DiscriminantGroup::of(self)
    }

    /// Positive generator of the ideal `⟨v, Λ⟩`.
    pub fn divisibility(&self, v: &[i64]) -> Result<i64> {
        self.check_dim(v)?;
        if v.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        Ok(gcd_slice(&self.pairings(v)?))
    }

    /// The ambient sublattice spanned by the given rows, as-is.
    pub fn sublattice(&self, basis: IntMatrix) -> Result<Sublattice> {
        if basis.ncols() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: basis.ncols() });
        }
        if basis.nrows() > 0 && basis.to_rat().rank() != basis.nrows() {
            return Err(Error::Input("sublattice basis is linearly dependent".into()));
        }
        Ok(Sublattice { ambient: self.clone(), basis, saturated: false })
    }

    pub fn full_sublattice(&self) -> Sublattice {
        Sublattice { ambient: self.clone(), basis: IntMatrix::identity(self.rank()), saturated: true }
    }
}

/// `v = content · primitive` with `gcd(primitive) = 1`.
pub fn primitive_part(v: &[i64]) -> Result<(Vec<i64>, i64)> {
    let g = gcd_slice(v);
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok((v.iter().map(|x| x / g).collect(), g))
}

/// A coordinate vector tied to its ambient lattice.
#[derive(Clone, Debug)]
pub struct LatticeVector<'a> {
    lattice: &'a IntegerLattice,
    coords: Vec<i64>,
}

impl<'a> LatticeVector<'a> {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn ambient(&self) -> &'a IntegerLattice {
        self.lattice
    }

    pub fn inner(&self, other: &LatticeVector<'_>) -> Result<i64> {
        if !std::ptr::eq(self.lattice, other.lattice) && self.lattice != other.lattice {
            return Err(Error::AmbientMismatch);
        }
        self.lattice.inner(&self.coords, &other.coords)
    }

    pub fn square(&self) -> Result<i64> {
        self.lattice.square(&self.coords)
    }

    pub fn divisibility(&self) -> Result<i64> {
        self.lattice.divisibility(&self.coords)
    }

    pub fn primitive_part(&self) -> Result<(LatticeVector<'a>, i64)> {
        let (p, c) = primitive_part(&self.coords)?;
        Ok((LatticeVector { lattice: self.lattice, coords: p }, c))
    }
}

/// `Λ^∨/Λ` with its discriminant quadratic form.
///
/// With `P·G·Q = S` the Smith form of the Gram matrix, the dual lattice is
/// `Q·diag(1/s_i)·Z^n` in coordinates, so the classes `Q e_i / s_i` for the
/// invariant factors `s_i > 1` generate the quotient.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<i64>,
    pub generators: Vec<Vec<Rational>>,
    pub q_values: Vec<Rational>,
    /// Indices `i` (into the Smith diagonal) of the nontrivial factors.
    positions: Vec<usize>,
    q_inverse: IntMatrix,
}

impl DiscriminantGroup {
    fn of(l: &IntegerLattice) -> Result<Self> {
        let snf = smith_normal_form(l.gram())?;
        let diag = snf.diagonal();
        if diag.contains(&0) {
            return Err(Error::DegenerateLattice);
        }
        let q_inverse = snf
            .q
            .to_rat()
            .inverse()
            .and_then(|m| m.to_int())
            .ok_or(Error::Overflow("Smith transform inverse"))?;
        let gram = l.gram().to_rat();
        let mut invariant_factors = Vec::new();
        let mut generators = Vec::new();
        let mut q_values = Vec::new();
        let mut positions = Vec::new();
        for (i, &s) in diag.iter().enumerate() {
            if s == 1 {
                continue;
            }
            let g: Vec<Rational> = snf.q.column(i).iter().map(|&x| Rational::new(x.into(), s.into())).collect();
            let gg = gram.mul_vec(&g);
            let q = g.iter().zip(&gg).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
            invariant_factors.push(s);
            q_values.push(mod_two(&q));
            generators.push(g);
            positions.push(i);
        }
        Ok(DiscriminantGroup { invariant_factors, generators, q_values, positions, q_inverse })
    }

    pub fn order(&self) -> i64 {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> i64 {
        self.invariant_factors.iter().fold(1, |acc, &s| acc.lcm(&s))
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// Coordinates of a dual vector (rational coordinates in the lattice basis)
    /// with respect to the generators, each reduced modulo its invariant factor.
    pub fn coordinates(&self, x: &[Rational]) -> Result<Vec<i64>> {
        let y = self.q_inverse.to_rat().mul_vec(x);
        let mut out = Vec::with_capacity(self.positions.len());
        for (k, &pos) in self.positions.iter().enumerate() {
            let s = self.invariant_factors[k];
            let c = &y[pos] * rat(s);
            if !c.is_integer() {
                return Err(Error::Input("vector is not in the dual lattice".into()));
            }
            let c: i64 = crate::matrix::rat_to_i64(&c).ok_or(Error::Overflow("discriminant coordinates"))?;
            out.push(c.rem_euclid(s));
        }
        Ok(out)
    }
}

/// Reduce a rational into `[0, 2)`.
pub fn mod_two(q: &Rational) -> Rational {
    let two = rat(2);
    let k = (q / &two).floor();
    q - k * two
}

/// A sublattice given by a row basis inside an ambient lattice.
#[derive(Clone, Debug)]
pub struct Sublattice {
    pub ambient: IntegerLattice,
    pub basis: IntMatrix,
    pub saturated: bool,
}

impl Sublattice {
    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    /// Gram matrix of the restricted form in this basis.
    pub fn gram(&self) -> IntMatrix {
        self.basis.mul(self.ambient.gram()).mul(&self.basis.transpose())
    }

    pub fn signature(&self) -> (usize, usize, usize) {
        inertia(&self.gram().to_rat())
    }

    /// Basis of `span_Q(S) ∩ Λ`, Hermite-reduced.
    pub fn saturate(&self) -> Result<Sublattice> {
        let basis = saturate_rows(&self.basis)?;
        Ok(Sublattice { ambient: self.ambient.clone(), basis, saturated: true })
    }

    /// `{v ∈ Λ : ⟨v, s⟩ = 0 for all s ∈ S}`, always saturated.
    pub fn orthogonal_complement(&self) -> Result<Sublattice> {
        let n = self.ambient.rank();
        let basis = if self.rank() == 0 {
            IntMatrix::identity(n)
        } else {
            integer_kernel(&self.basis.mul(self.ambient.gram()))?
        };
        Ok(Sublattice { ambient: self.ambient.clone(), basis, saturated: true })
    }

    /// Whether `v` is an integral combination of the basis rows.
    pub fn contains(&self, v: &[i64]) -> bool {
        if self.rank() == 0 {
            return v.iter().all(|&x| x == 0);
        }
        let mut rows = self.basis.to_rows();
        rows.push(v.to_vec());
        let stacked = IntMatrix::from_rows(&rows).expect("rectangular");
        match hermite_rows(&stacked) {
            Ok(h) => h.nrows() == self.rank() && hermite_rows(&self.basis).map(|b| b == h).unwrap_or(false),
            Err(_) => false,
        }
    }

    /// Same lattice as `other` (possibly a different basis).
    pub fn same_lattice(&self, other: &Sublattice) -> bool {
        match (hermite_rows(&self.basis), hermite_rows(&other.basis)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// True if every invariant factor of the coordinate matrix is 1.
    pub fn is_saturated(&self) -> Result<bool> {
        if self.rank() == 0 {
            return Ok(true);
        }
        let snf = smith_normal_form(&self.basis)?;
        Ok(snf.diagonal().iter().all(|&d| d == 1))
    }
}
