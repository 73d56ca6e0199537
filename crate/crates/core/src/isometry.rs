//! Integer isometries of a fixed lattice.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DiscriminantGroup, IntegerLattice};
use crate::matrix::{IntMatrix, RatMatrix, Rational};

/// Default bound for [`Isometry::order`].
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// An integer matrix `A` (acting on column coordinate vectors) with `Aᵀ G A = G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    lattice: IntegerLattice,
    matrix: IntMatrix,
}

impl std::hash::Hash for IntegerLattice {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gram().hash(state);
    }
}

/// Result of [`Isometry::order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    Infinite,
}

/// Rows of a rational basis spanning a maximal positive-definite subspace,
/// mutually orthogonal. Its ordering fixes the orientation.
#[derive(Clone, Debug)]
pub struct PositiveFrame {
    pub basis: Vec<Vec<Rational>>,
    norms: Vec<Rational>,
}

impl PositiveFrame {
    /// Taken from the deterministic congruence diagonalization of the Gram matrix.
    pub fn of(lattice: &IntegerLattice) -> Self {
        let d = lattice.diagonalization();
        let mut basis = Vec::new();
        let mut norms = Vec::new();
        for (i, q) in d.diagonal.iter().enumerate() {
            if q.is_positive() {
                basis.push(d.transform.row(i).to_vec());
                norms.push(q.clone());
            }
        }
        PositiveFrame { basis, norms }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Sign of the determinant of the projected action on the frame.
    pub fn orientation_sign(&self, lattice: &IntegerLattice, m: &IntMatrix) -> i32 {
        let p = self.len();
        if p == 0 {
            return 1;
        }
        let gram = lattice.gram().to_rat();
        let mr = m.to_rat();
        let images: Vec<Vec<Rational>> = self.basis.iter().map(|f| mr.mul_vec(f)).collect();
        let gf: Vec<Vec<Rational>> = self.basis.iter().map(|f| gram.mul_vec(f)).collect();
        let proj = RatMatrix::from_fn(p, p, |i, j| {
            let ip = images[i].iter().zip(&gf[j]).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
            ip / &self.norms[j]
        });
        let det = proj.det();
        debug_assert!(!det.is_zero(), "an isometry maps positive space isomorphically");
        if det.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Isometry {
    /// Accepts `a` if `aᵀ G a = G`.
    pub fn new(lattice: &IntegerLattice, a: IntMatrix) -> Result<Self> {
        let n = lattice.rank();
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.nrows().max(a.ncols()) });
        }
        let pulled = a.transpose().try_mul(lattice.gram())?.try_mul(&a)?;
        for i in 0..n {
            for j in 0..n {
                if pulled[(i, j)] != lattice.gram()[(i, j)] {
                    return Err(Error::NotAnIsometry { row: i, col: j });
                }
            }
        }
        debug_assert!(a.det().abs() == 1.into());
        Ok(Isometry { lattice: lattice.clone(), matrix: a })
    }

    pub fn identity(lattice: &IntegerLattice) -> Self {
        Isometry { lattice: lattice.clone(), matrix: IntMatrix::identity(lattice.rank()) }
    }

    pub(crate) fn from_trusted(lattice: &IntegerLattice, matrix: IntMatrix) -> Self {
        Isometry { lattice: lattice.clone(), matrix }
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if self.lattice != other.lattice {
            return Err(Error::AmbientMismatch);
        }
        Ok(Isometry { lattice: self.lattice.clone(), matrix: self.matrix.try_mul(&other.matrix)? })
    }

    /// `G⁻¹ Aᵀ G`, integral for any isometry.
    pub fn inverse(&self) -> Isometry {
        let g = self.lattice.gram().to_rat();
        let ginv = g.inverse().expect("nondegenerate");
        let inv = ginv.mul(&self.matrix.transpose().to_rat()).mul(&g);
        let matrix = inv.to_int().expect("inverse of an isometry is integral");
        Isometry { lattice: self.lattice.clone(), matrix }
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.matrix.try_mul_vec(v)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Membership in `O⁺`: the projected action on a positive frame has positive determinant.
    pub fn is_orientation_preserving(&self) -> Result<bool> {
        let frame = PositiveFrame::of(&self.lattice);
        Ok(frame.orientation_sign(&self.lattice, &self.matrix) > 0)
    }

    /// `A ≡ I (mod 2)` entrywise.
    pub fn is_two_congruence(&self) -> bool {
        let n = self.matrix.nrows();
        (0..n).all(|i| (0..n).all(|j| (self.matrix[(i, j)] - i64::from(i == j)).rem_euclid(2) == 0))
    }

    /// Induced map on `Λ^∨/Λ`: column `a` holds the image of generator `a`,
    /// entry `(b, a)` reduced modulo the `b`-th invariant factor.
    pub fn discriminant_action(&self) -> Result<IntMatrix> {
        let disc = self.lattice.discriminant_group()?;
        discriminant_action_with(&disc, &self.matrix)
    }

    /// Whether the discriminant action is `+1` or `-1`.
    pub fn is_pm1_on_discriminant(&self) -> Result<bool> {
        let disc = self.lattice.discriminant_group()?;
        let action = discriminant_action_with(&disc, &self.matrix)?;
        Ok(is_scalar_action(&disc, &action, 1) || is_scalar_action(&disc, &action, -1))
    }

    /// Smallest `k <= cap` with `A^k = I`.
    pub fn order(&self, cap: usize) -> Order {
        let mut acc = self.matrix.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Order::Finite(k);
            }
            match acc.try_mul(&self.matrix) {
                Ok(next) => acc = next,
                Err(_) => return Order::Infinite,
            }
        }
        Order::Infinite
    }
}

pub fn discriminant_action_with(disc: &DiscriminantGroup, m: &IntMatrix) -> Result<IntMatrix> {
    let k = disc.invariant_factors.len();
    let mr = m.to_rat();
    let mut out = IntMatrix::zeros(k, k);
    for (a, g) in disc.generators.iter().enumerate() {
        let image = mr.mul_vec(g);
        let coords = disc.coordinates(&image)?;
        for (b, c) in coords.into_iter().enumerate() {
            out[(b, a)] = c;
        }
    }
    Ok(out)
}

/// Whether `action` is multiplication by `s` on every generator.
pub fn is_scalar_action(disc: &DiscriminantGroup, action: &IntMatrix, s: i64) -> bool {
    let k = disc.invariant_factors.len();
    (0..k).all(|b| {
        let modulus = disc.invariant_factors[b];
        (0..k).all(|a| {
            let expected = if a == b { s.rem_euclid(modulus) } else { 0 };
            action[(b, a)] == expected
        })
    })
}

/// Reflection `x ↦ x - 2⟨x,v⟩/⟨v,v⟩ v`, defined over the integers when `⟨v,v⟩ | 2⟨v,Λ⟩`.
pub fn reflection(lattice: &IntegerLattice, v: &[i64]) -> Result<Isometry> {
    let q = lattice.square(v)?;
    if q == 0 {
        return Err(Error::ZeroVector);
    }
    let pair = lattice.pairings(v)?;
    let n = lattice.rank();
    let mut m = IntMatrix::identity(n);
    for j in 0..n {
        let num = 2 * pair[j];
        if num % q != 0 {
            return Err(Error::IntegralityFailure);
        }
        let c = num / q;
        for i in 0..n {
            m[(i, j)] -= c * v[i];
        }
    }
    Isometry::new(lattice, m)
}
