//! The two families of Enriques manifolds as lattice data: the pair
//! `(Λ_X, Λ_Y)`, the deck action on `Λ_X`, the covering maps `p*` and `p_!`,
//! and the extension of isometries from the quotient side to `Λ_X`.
//!
//! Basis orders: `U₁,U₂,U₃,E8⁽¹⁾,E8⁽²⁾,δ` for `Λ_X` of K3^[n] type and
//! `U,E8,δ` for its `Λ_Y`; `U₁,U₂,U₃,δ` and `U,δ` for the Kummer type.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{invariant_lattice, MatrixGroup};
use crate::isometry::{is_scalar_action, reflection, Isometry};
use crate::lattice::IntegerLattice;
use crate::matrix::{gcd_slice, rat_frac, IntMatrix, RatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    K3n { n: i64 },
    Kumn { n: i64, d: i64 },
}

impl Family {
    /// Order of the deck group.
    pub fn degree(&self) -> i64 {
        match *self {
            Family::K3n { .. } => 2,
            Family::Kumn { d, .. } => d,
        }
    }
}

/// Which classes count as walls: indivisible negative classes of a given shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WallPredicate {
    /// Square −2 with divisibility 1, or any negative square with divisibility ≠ 1.
    K3nWalls,
    /// Explicit `(square, divisibility)` pairs.
    UserSupplied(Vec<(i64, i64)>),
    Vacuous,
}

#[derive(Clone, Debug)]
pub struct EnriquesSetup {
    pub family: Family,
    pub lambda_x: IntegerLattice,
    pub lambda_y: IntegerLattice,
    /// `U ⊕ E8(−1)`, the unimodular part of `Λ_Y` (K3^[n] type only).
    pub m: Option<IntegerLattice>,
    pub deck: MatrixGroup,
    pub deck_generator: Isometry,
    /// `p* : Λ_Y → Λ_X`, columns are images of the `Λ_Y` basis.
    pub pullback: IntMatrix,
    /// `p_! : Λ_X → Λ_Y`, the adjoint of `p*`.
    pub pushforward: IntMatrix,
    pub walls: WallPredicate,
}

fn u() -> IntegerLattice {
    IntegerLattice::hyperbolic_plane()
}

/// `G_Y⁻¹ p*ᵀ G_X`.
fn adjoint(lambda_x: &IntegerLattice, lambda_y: &IntegerLattice, pullback: &IntMatrix) -> Result<IntMatrix> {
    let gy_inv = lambda_y.gram().to_rat().inverse().ok_or(Error::DegenerateLattice)?;
    let m = gy_inv.mul(&pullback.transpose().to_rat()).mul(&lambda_x.gram().to_rat());
    m.to_int().ok_or(Error::IntegralityFailure)
}

/// `(−a, c, b, y, x, δ)` on `U₁⊕U₂⊕U₃⊕E8⊕E8⊕[−2(n−1)]`.
fn k3n_deck_matrix() -> IntMatrix {
    let mut m = IntMatrix::zeros(23, 23);
    m[(0, 0)] = -1;
    m[(1, 1)] = -1;
    for i in 0..2 {
        m[(2 + i, 4 + i)] = 1;
        m[(4 + i, 2 + i)] = 1;
    }
    for i in 0..8 {
        m[(6 + i, 14 + i)] = 1;
        m[(14 + i, 6 + i)] = 1;
    }
    m[(22, 22)] = 1;
    m
}

pub fn build_k3n_setup(n: i64) -> Result<EnriquesSetup> {
    if n % 2 == 0 {
        return Err(Error::EvenN(n));
    }
    if n < 3 {
        return Err(Error::NTooSmall { n, min: 3 });
    }
    let e8 = IntegerLattice::e8_negative();
    let lambda_x = IntegerLattice::direct_sum(&[&u(), &u(), &u(), &e8, &e8, &IntegerLattice::rank_one(-2 * (n - 1))?])?
        .with_label(format!("Lambda_X(K3[{n}])"));
    let lambda_y = IntegerLattice::direct_sum(&[&u(), &e8, &IntegerLattice::rank_one(-(n - 1))?])?
        .with_label(format!("Lambda_Y(K3[{n}])"));
    let m = IntegerLattice::direct_sum(&[&u(), &e8])?.with_label("M");

    // (u, e, m) ↦ (0, u, u, e, e, mδ)
    let mut pullback = IntMatrix::zeros(23, 11);
    for i in 0..2 {
        pullback[(2 + i, i)] = 1;
        pullback[(4 + i, i)] = 1;
    }
    for i in 0..8 {
        pullback[(6 + i, 2 + i)] = 1;
        pullback[(14 + i, 2 + i)] = 1;
    }
    pullback[(22, 10)] = 1;
    let pushforward = adjoint(&lambda_x, &lambda_y, &pullback)?;
    let rho = Isometry::new(&lambda_x, k3n_deck_matrix())?;
    let deck = MatrixGroup::generate(&lambda_x, std::slice::from_ref(&rho), 2)?;
    let setup = EnriquesSetup {
        family: Family::K3n { n },
        lambda_x,
        lambda_y,
        m: Some(m),
        deck,
        deck_generator: rho,
        pullback,
        pushforward,
        walls: WallPredicate::K3nWalls,
    };
    setup.check_invariants()?;
    Ok(setup)
}

fn companion(d: i64) -> IntMatrix {
    match d {
        2 => IntMatrix::scalar(2, -1),
        3 => IntMatrix::from_row_slices(&[&[0, -1], &[1, -1]]),
        4 => IntMatrix::from_row_slices(&[&[0, -1], &[1, 0]]),
        _ => unreachable!("index checked by the caller"),
    }
}

/// `e₁₂, e₃₄, e₁₃, −e₂₄, e₁₄, e₂₃`: three hyperbolic planes under the wedge pairing.
const WEDGE_BASIS: [(usize, usize, i64); 6] = [(0, 1, 1), (2, 3, 1), (0, 2, 1), (1, 3, -1), (0, 3, 1), (1, 2, 1)];

/// Second exterior power of a 4×4 matrix in [`WEDGE_BASIS`].
pub fn exterior_square(a: &IntMatrix) -> IntMatrix {
    let coord = |i: usize, j: usize| -> (usize, i64) {
        let (lo, hi, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let k = WEDGE_BASIS.iter().position(|&(x, y, _)| x == lo && y == hi).expect("pair");
        (k, s * WEDGE_BASIS[k].2)
    };
    let mut out = IntMatrix::zeros(6, 6);
    for (col, &(i, j, s)) in WEDGE_BASIS.iter().enumerate() {
        // A e_i ∧ A e_j = Σ_{p<q} (A_pi A_qj − A_qi A_pj) e_p ∧ e_q
        for p in 0..4 {
            for q in p + 1..4 {
                let c = a[(p, i)] * a[(q, j)] - a[(q, i)] * a[(p, j)];
                if c != 0 {
                    let (row, sign) = coord(p, q);
                    out[(row, col)] += s * sign * c;
                }
            }
        }
    }
    out
}

pub fn build_kumn_setup(n: i64, d: i64) -> Result<EnriquesSetup> {
    if n < 2 {
        return Err(Error::NTooSmall { n, min: 2 });
    }
    if !(2..=4).contains(&d) || (n + 1) % d != 0 {
        return Err(Error::BadIndex { n, d });
    }
    let k = 2 * (n + 1);
    let lambda_x = IntegerLattice::direct_sum(&[&u(), &u(), &u(), &IntegerLattice::rank_one(-k)?])?
        .with_label(format!("Lambda_X(Kum{n})"));
    let lambda_y =
        IntegerLattice::direct_sum(&[&u(), &IntegerLattice::rank_one(-k / d)?])?.with_label(format!("Lambda_Y(Kum{n},d={d})"));

    let linear = IntMatrix::block_diag(&[&companion(d), &IntMatrix::identity(2)]);
    let deck_matrix = IntMatrix::block_diag(&[&exterior_square(&linear), &IntMatrix::identity(1)]);
    let psi = Isometry::new(&lambda_x, deck_matrix)?;
    let deck = MatrixGroup::generate(&lambda_x, std::slice::from_ref(&psi), d as usize)?;

    // e ↦ d·e₁₂, f ↦ e₃₄, δ ↦ δ
    let mut pullback = IntMatrix::zeros(7, 3);
    pullback[(0, 0)] = d;
    pullback[(1, 1)] = 1;
    pullback[(6, 2)] = 1;
    let pushforward = adjoint(&lambda_x, &lambda_y, &pullback)?;
    let setup = EnriquesSetup {
        family: Family::Kumn { n, d },
        lambda_x,
        lambda_y,
        m: None,
        deck,
        deck_generator: psi,
        pullback,
        pushforward,
        walls: WallPredicate::Vacuous,
    };
    setup.check_invariants()?;
    Ok(setup)
}

impl EnriquesSetup {
    pub fn degree(&self) -> i64 {
        self.family.degree()
    }

    pub fn with_walls(mut self, walls: WallPredicate) -> Result<Self> {
        if walls == WallPredicate::K3nWalls && !matches!(self.family, Family::K3n { .. }) {
            return Err(Error::UnsupportedFamily("the K3^[n] wall rule applies only to K3^[n] type"));
        }
        self.walls = walls;
        Ok(self)
    }

    /// Whether verdicts depend on an assumed wall predicate.
    pub fn is_conditional(&self) -> bool {
        self.walls != WallPredicate::K3nWalls
    }

    fn check_invariants(&self) -> Result<()> {
        let d = self.degree();
        let ry = self.lambda_y.rank();
        assert_eq!(self.pushforward.mul(&self.pullback), IntMatrix::scalar(ry, d), "p_! p* = d");
        let pulled = self.pullback.transpose().mul(self.lambda_x.gram()).mul(&self.pullback);
        assert_eq!(pulled, self.lambda_y.gram().scale(d), "p* scales the form by d");
        assert_eq!(self.deck.order() as i64, d, "deck group has order d");
        for g in self.deck.isometries() {
            assert!(g.is_orientation_preserving()?, "deck transformations preserve orientation");
            assert_eq!(g.matrix().mul(&self.pullback), self.pullback, "deck group fixes the image of p*");
        }
        let inv = invariant_lattice(&self.deck)?;
        assert_eq!(inv.rank(), ry, "the image of p* has finite index in the invariant lattice");
        if let Family::K3n { n } = self.family {
            let disc = self.lambda_x.discriminant_group()?;
            assert!(disc.is_cyclic() && disc.order() == 2 * (n - 1));
            let action = self.deck_generator.discriminant_action()?;
            assert!(is_scalar_action(&disc, &action, 1));
        }
        Ok(())
    }

    /// `j = p* ∘ ι_M : M → Λ_X`.
    fn m_embedding(&self) -> Result<(IntegerLattice, IntMatrix)> {
        let m = self.m.clone().ok_or(Error::UnsupportedFamily("M is defined for K3^[n] type only"))?;
        let r = m.rank();
        let incl = IntMatrix::from_fn(self.lambda_y.rank(), r, |i, j| i64::from(i == j));
        Ok((m, self.pullback.mul(&incl)))
    }

    /// The isometry of `Λ_X` acting as `g` on `j(M) ≅ M(2)` and trivially on its complement.
    pub fn nikulin_extend(&self, g: &Isometry) -> Result<Isometry> {
        let (m, j) = self.m_embedding()?;
        if g.lattice() != &m {
            return Err(Error::AmbientMismatch);
        }
        if !g.is_two_congruence() {
            return Err(Error::NotTwoCongruence);
        }
        if !g.is_orientation_preserving()? {
            return Err(Error::NotOrientationPreserving(0));
        }
        let gm_inv = m.gram().to_rat().inverse().ok_or(Error::DegenerateLattice)?;
        let n = self.lambda_x.rank();
        let delta = g.matrix().sub(&IntMatrix::identity(m.rank())).to_rat();
        let correction = j
            .to_rat()
            .mul(&delta)
            .mul(&gm_inv)
            .mul(&j.transpose().to_rat())
            .mul(&self.lambda_x.gram().to_rat())
            .scale(&rat_frac(1, 2));
        let ext = RatMatrix::identity(n).add(&correction).to_int().ok_or(Error::IntegralityFailure)?;
        let ext = Isometry::new(&self.lambda_x, ext)?;
        self.check_extension(&ext)?;
        assert_eq!(ext.matrix().mul(&j), j.mul(g.matrix()), "extension restricts to g on M(2)");
        Ok(ext)
    }

    /// `I + (1/d) p*(h − I) p_!`: `h` on the image of `p*`, identity on its complement.
    pub fn extend_from_lambda_y(&self, h: &Isometry) -> Result<Isometry> {
        if h.lattice() != &self.lambda_y {
            return Err(Error::AmbientMismatch);
        }
        let n = self.lambda_x.rank();
        let d = self.degree();
        let delta = h.matrix().sub(&IntMatrix::identity(self.lambda_y.rank()));
        let correction = self.pullback.mul(&delta).mul(&self.pushforward);
        let mut ext = IntMatrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                if correction[(r, c)] % d != 0 {
                    return Err(Error::IntegralityFailure);
                }
                ext[(r, c)] += correction[(r, c)] / d;
            }
        }
        let ext = Isometry::new(&self.lambda_x, ext)?;
        assert_eq!(ext.matrix().mul(&self.pullback), self.pullback.mul(h.matrix()));
        Ok(ext)
    }

    /// Commutes with the deck group and preserves orientation.
    fn check_extension(&self, ext: &Isometry) -> Result<()> {
        let rho = self.deck_generator.matrix();
        assert_eq!(ext.matrix().mul(rho), rho.mul(ext.matrix()), "extension commutes with the deck group");
        assert!(ext.is_orientation_preserving()?);
        let disc = self.lambda_x.discriminant_group()?;
        assert!(is_scalar_action(&disc, &ext.discriminant_action()?, 1));
        Ok(())
    }

    /// `s_{v₁} s_{v₂}` for orthogonal (−2)-classes swapped by the deck group.
    pub fn simultaneous_reflection(&self, v1: &[i64], v2: &[i64]) -> Result<Isometry> {
        let l = &self.lambda_x;
        if v1.len() != l.rank() || v2.len() != l.rank() {
            return Err(Error::DimensionMismatch { expected: l.rank(), found: v1.len().min(v2.len()) });
        }
        if l.square(v1)? != -2 || l.square(v2)? != -2 {
            return Err(Error::BadSpheres("both classes must have square -2"));
        }
        if l.inner(v1, v2)? != 0 {
            return Err(Error::BadSpheres("the classes must be orthogonal"));
        }
        let rho = &self.deck_generator;
        if rho.apply(v1)? != v2 || rho.apply(v2)? != v1 {
            return Err(Error::BadSpheres("the deck group must swap the classes"));
        }
        let t = reflection(l, v1)?.compose(&reflection(l, v2)?)?;
        assert_eq!(t.matrix().mul(rho.matrix()), rho.matrix().mul(t.matrix()));
        Ok(t)
    }

    /// Wall membership under the setup's predicate.
    pub fn is_wall_class(&self, v: &[i64]) -> Result<bool> {
        let l = &self.lambda_x;
        if v.len() != l.rank() {
            return Err(Error::DimensionMismatch { expected: l.rank(), found: v.len() });
        }
        if v.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        if gcd_slice(v) != 1 {
            return Ok(false);
        }
        let q = l.square(v)?;
        let div = l.divisibility(v)?;
        Ok(match &self.walls {
            WallPredicate::K3nWalls => (q == -2 && div == 1) || (div != 1 && q < 0),
            WallPredicate::UserSupplied(pairs) => pairs.contains(&(q, div)),
            WallPredicate::Vacuous => false,
        })
    }
}

/// Squared Mukai vector and the resulting dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MukaiDimension {
    pub v_square: i64,
    pub dim: i64,
    pub n: i64,
}

/// `v² = l² − 2r(r − χ)`, `dim = v² + 2`, `n = dim / 2`.
pub fn mukai_dimension(r: i64, l_square: i64, chi: i64) -> Result<MukaiDimension> {
    if chi % 2 == 0 {
        return Err(Error::EvenChi(chi));
    }
    let v_square = l_square - 2 * r * (r - chi);
    if v_square < 0 {
        return Err(Error::NegativeMukaiSquare(v_square));
    }
    if v_square % 2 != 0 {
        return Err(Error::OddMukaiSquare(v_square));
    }
    let dim = v_square + 2;
    Ok(MukaiDimension { v_square, dim, n: dim / 2 })
}
