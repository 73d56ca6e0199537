//! The realizability test for a finite group acting on an Enriques manifold,
//! and the splitting test for cyclic central extensions.
//!
//! Walls of large divisibility are found without enumeration. For a saturated
//! `L ⊂ Λ` and a prime `p`, put `K_p = {v ∈ L : ⟨v, Λ⟩ ⊂ pℤ}`. An indivisible
//! class of divisibility divisible by `p` lies in `K_p \ pΛ`, and since `L` is
//! saturated `K_p ⊄ pΛ` exactly when the reduction of `K_p` modulo `p` is
//! nonzero. Every divisibility of a primitive vector divides the exponent of
//! `Λ^∨/Λ`, so finitely many primes suffice.

use serde::{Deserialize, Serialize};

use crate::enumeration::{enumerate_norm_with, DefiniteLattice, EnumerationOptions, DEFAULT_NODE_CAP};
use crate::enriques::{EnriquesSetup, Family, WallPredicate};
use crate::error::{Error, Result};
use crate::group::{compute_lg, invariant_lattice, trivial_rep_in_ig, MatrixGroup, DEFAULT_GROUP_CAP};
use crate::isometry::{discriminant_action_with, is_scalar_action, Isometry};
use crate::lattice::{primitive_part, IntegerLattice, Signature, Sublattice};
use crate::matrix::{gcd_slice, IntMatrix};

/// How the generators of the group are given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupMode {
    /// Isometries of `Λ_X`.
    DirectOnLambdaX(Vec<IntMatrix>),
    /// Elements of `Γ₂⁺(M)`, lifted through the Nikulin extension.
    FromGamma2M(Vec<IntMatrix>),
    /// Isometries of `Λ_Y`, lifted through the image of `p*`.
    FromLambdaY(Vec<IntMatrix>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub mode: GroupMode,
    pub cap: usize,
}

impl GroupSpec {
    pub fn direct(generators: Vec<IntMatrix>) -> Self {
        GroupSpec { mode: GroupMode::DirectOnLambdaX(generators), cap: DEFAULT_GROUP_CAP }
    }

    pub fn gamma2m(generators: Vec<IntMatrix>) -> Self {
        GroupSpec { mode: GroupMode::FromGamma2M(generators), cap: DEFAULT_GROUP_CAP }
    }

    pub fn lambda_y(generators: Vec<IntMatrix>) -> Self {
        GroupSpec { mode: GroupMode::FromLambdaY(generators), cap: DEFAULT_GROUP_CAP }
    }
}

/// A class in `Λ_X` with its square and divisibility.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub coords: Vec<i64>,
    pub square: i64,
    pub divisibility: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    WallWitness { vector: Vec<i64>, square: i64, divisibility: i64 },
    NoTrivialRep { invariant_signature: Signature },
    ComponentObstruction { element: usize, discriminant_action: Vec<Vec<i64>> },
    Realized { ig_basis: Vec<Vec<i64>>, lg_gram: Vec<Vec<i64>>, note: String },
}

/// Sizes that describe how the verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDetails {
    pub group_order: usize,
    pub lg_rank: usize,
    pub primes: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub realizable: bool,
    pub conditional: bool,
    pub certificate: Certificate,
    pub witness: Option<Witness>,
    pub details: VerdictDetails,
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub node_cap: u64,
    pub jobs: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { node_cap: DEFAULT_NODE_CAP, jobs: 1 }
    }
}

fn isometries(lattice: &IntegerLattice, gens: &[IntMatrix]) -> Result<Vec<Isometry>> {
    gens.iter().map(|m| Isometry::new(lattice, m.clone())).collect()
}

/// The group generated by the lifted generators together with the deck group.
pub fn lift_group(setup: &EnriquesSetup, spec: &GroupSpec) -> Result<MatrixGroup> {
    let mut gens: Vec<Isometry> = match &spec.mode {
        GroupMode::DirectOnLambdaX(g) => isometries(&setup.lambda_x, g)?,
        GroupMode::FromGamma2M(g) => {
            let m = setup.m.as_ref().ok_or(Error::UnsupportedFamily("M is defined for K3^[n] type only"))?;
            isometries(m, g)?.iter().map(|h| setup.nikulin_extend(h)).collect::<Result<_>>()?
        }
        GroupMode::FromLambdaY(g) => {
            isometries(&setup.lambda_y, g)?.iter().map(|h| setup.extend_from_lambda_y(h)).collect::<Result<_>>()?
        }
    };
    gens.push(setup.deck_generator.clone());
    let group = MatrixGroup::generate(&setup.lambda_x, &gens, spec.cap)?;
    let rho = setup.deck_generator.matrix();
    for (i, g) in group.elements().iter().enumerate() {
        if g.mul(rho) != rho.mul(g) {
            return Err(Error::NotCentralizing(i));
        }
    }
    for (i, g) in group.isometries().iter().enumerate() {
        if !g.is_orientation_preserving()? {
            return Err(Error::NotOrientationPreserving(i));
        }
    }
    Ok(group)
}

/// First element that is not `±1` on `Λ^∨/Λ`, with its action.
pub fn discriminant_obstruction(lattice: &IntegerLattice, elements: &[IntMatrix]) -> Result<Option<(usize, IntMatrix)>> {
    let disc = lattice.discriminant_group()?;
    for (i, g) in elements.iter().enumerate() {
        let action = discriminant_action_with(&disc, g)?;
        if !is_scalar_action(&disc, &action, 1) && !is_scalar_action(&disc, &action, -1) {
            return Ok(Some((i, action)));
        }
    }
    Ok(None)
}

/// Monodromy test: every element acts by `±1` on the discriminant group.
pub fn fixes_component(setup: &EnriquesSetup, group: &MatrixGroup) -> Result<bool> {
    if !matches!(setup.family, Family::K3n { .. }) {
        return Err(Error::UnsupportedFamily("no monodromy criterion is available for Kummer type"));
    }
    Ok(discriminant_obstruction(&setup.lambda_x, group.elements())?.is_none())
}

fn prime_divisors(mut m: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// A nonzero vector of the kernel of `a` over `ℤ/p` (entries in `[0, p)`).
fn kernel_vector_mod_p(a: &IntMatrix, p: i64) -> Option<Vec<i64>> {
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut m: Vec<Vec<i64>> = (0..rows).map(|i| a.row(i).iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let inv = |x: i64| -> i64 {
        // p is prime: x^(p−2)
        let (mut base, mut e, mut acc) = (x, p - 2, 1i64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let iv = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * iv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[r][j]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![0; cols];
    v[free] = 1;
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = (-m[i][free]).rem_euclid(p);
    }
    Some(v)
}

/// An indivisible class of `L` with divisibility divisible by `p`, if one exists.
pub fn high_divisibility_witness(lg: &Sublattice, p: i64) -> Result<Option<Vec<i64>>> {
    if lg.rank() == 0 {
        return Ok(None);
    }
    // c ∈ K_p  ⇔  (B G)ᵀ c ≡ 0 (mod p)
    let bg = lg.basis.try_mul(lg.ambient.gram())?;
    let Some(c) = kernel_vector_mod_p(&bg.transpose(), p) else {
        return Ok(None);
    };
    let v = lg.basis.transpose().try_mul_vec(&c)?;
    let (w, _) = primitive_part(&v)?;
    Ok(Some(w))
}

fn lg_to_ambient(lg: &Sublattice, x: &[i64]) -> Vec<i64> {
    lg.basis.transpose().mul_vec(x)
}

/// Shell of `L` at `square`, mapped into `Λ_X` coordinates.
fn ambient_shell(lg: &Sublattice, square: i64, opts: &CheckOptions) -> Result<Vec<Vec<i64>>> {
    let definite = DefiniteLattice::new(lg.gram())?;
    let shell = enumerate_norm_with(
        &definite,
        square,
        &EnumerationOptions { node_cap: opts.node_cap, jobs: opts.jobs, ..Default::default() },
    )?;
    Ok(shell.vectors.iter().map(|x| lg_to_ambient(lg, x)).collect())
}

fn witness_of(lattice: &IntegerLattice, v: Vec<i64>) -> Result<Witness> {
    Ok(Witness { square: lattice.square(&v)?, divisibility: lattice.divisibility(&v)?, coords: v })
}

/// First wall class in `L`, or `None` after a complete search.
fn find_wall(setup: &EnriquesSetup, lg: &Sublattice, opts: &CheckOptions) -> Result<Option<Witness>> {
    let l = &setup.lambda_x;
    if lg.rank() == 0 {
        return Ok(None);
    }
    match &setup.walls {
        WallPredicate::Vacuous => Ok(None),
        WallPredicate::K3nWalls => {
            for v in ambient_shell(lg, -2, opts)? {
                if l.divisibility(&v)? == 1 {
                    return Ok(Some(witness_of(l, v)?));
                }
            }
            let exponent = l.discriminant_group()?.exponent();
            for p in prime_divisors(exponent) {
                if let Some(v) = high_divisibility_witness(lg, p)? {
                    return Ok(Some(witness_of(l, v)?));
                }
            }
            Ok(None)
        }
        WallPredicate::UserSupplied(pairs) => {
            for &(square, div) in pairs {
                if square >= 0 {
                    continue;
                }
                for v in ambient_shell(lg, square, opts)? {
                    if gcd_slice(&v) == 1 && l.divisibility(&v)? == div {
                        return Ok(Some(witness_of(l, v)?));
                    }
                }
            }
            Ok(None)
        }
    }
}

pub fn check_realizability(setup: &EnriquesSetup, spec: &GroupSpec) -> Result<Verdict> {
    check_realizability_with(setup, spec, &CheckOptions::default())
}

pub fn check_realizability_with(setup: &EnriquesSetup, spec: &GroupSpec, opts: &CheckOptions) -> Result<Verdict> {
    let group = lift_group(setup, spec)?;
    let k3n = matches!(setup.family, Family::K3n { .. });
    let conditional = !k3n || setup.is_conditional();
    let primes = if setup.walls == WallPredicate::K3nWalls {
        prime_divisors(setup.lambda_x.discriminant_group()?.exponent())
    } else {
        Vec::new()
    };
    let mut details = VerdictDetails { group_order: group.order(), lg_rank: 0, primes };

    if k3n {
        if let Some((element, action)) = discriminant_obstruction(&setup.lambda_x, group.elements())? {
            return Ok(Verdict {
                realizable: false,
                conditional,
                certificate: Certificate::ComponentObstruction { element, discriminant_action: action.to_rows() },
                witness: None,
                details,
            });
        }
    }
    if !trivial_rep_in_ig(&group)? {
        let (p, q, _) = invariant_lattice(&group)?.signature();
        return Ok(Verdict {
            realizable: false,
            conditional,
            certificate: Certificate::NoTrivialRep { invariant_signature: Signature { positive: p, negative: q } },
            witness: None,
            details,
        });
    }
    let lg = compute_lg(&group)?;
    details.lg_rank = lg.rank();
    if let Some(w) = find_wall(setup, &lg, opts)? {
        assert!(setup.is_wall_class(&w.coords)?, "witness must be a wall");
        let full = Sublattice { ambient: setup.lambda_x.clone(), basis: lg.basis.clone(), saturated: true };
        assert!(full.contains(&w.coords), "witness must lie in L_G");
        return Ok(Verdict {
            realizable: false,
            conditional,
            certificate: Certificate::WallWitness {
                vector: w.coords.clone(),
                square: w.square,
                divisibility: w.divisibility,
            },
            witness: Some(w),
            details,
        });
    }
    if setup.walls == WallPredicate::K3nWalls && lg.rank() > 0 {
        for p in &details.primes {
            assert!(high_divisibility_witness(&lg, *p)?.is_none());
        }
    }
    let ig = crate::group::compute_ig(&group)?;
    let ig_basis = (0..ig.dim())
        .map(|i| crate::matrix::primitive_integer_vector(ig.basis.row(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict {
        realizable: true,
        conditional,
        certificate: Certificate::Realized {
            ig_basis,
            lg_gram: if lg.rank() == 0 { Vec::new() } else { lg.gram().to_rows() },
            note: "Kähler–Einstein".into(),
        },
        witness: None,
        details,
    })
}

/// Whether `0 → ℤ/k → ℤ/d → ℤ/(d/k) → 0` splits.
pub fn cyclic_extension_splits(k: i64, d: i64) -> Result<bool> {
    if k < 1 || d < 1 || d % k != 0 {
        return Err(Error::NotDividing { k, d });
    }
    let m = d / k;
    Ok(num_integer::gcd(k, m) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriques::{build_k3n_setup, build_kumn_setup};

    fn delta_negation_y() -> IntMatrix {
        let mut h = IntMatrix::identity(11);
        h[(10, 10)] = -1;
        h
    }

    fn e8_negation_m() -> IntMatrix {
        IntMatrix::block_diag(&[&IntMatrix::identity(2), &IntMatrix::scalar(8, -1)])
    }

    #[test]
    fn lift_of_nothing_is_the_deck_group() {
        let s = build_k3n_setup(3).unwrap();
        let g = lift_group(&s, &GroupSpec::direct(vec![])).unwrap();
        assert_eq!(g.order(), 2);
        assert!(fixes_component(&s, &g).unwrap());
    }

    #[test]
    fn lifts_have_order_four() {
        let s = build_k3n_setup(3).unwrap();
        assert_eq!(lift_group(&s, &GroupSpec::gamma2m(vec![e8_negation_m()])).unwrap().order(), 4);
        let g = lift_group(&s, &GroupSpec::lambda_y(vec![delta_negation_y()])).unwrap();
        assert_eq!(g.order(), 4);
        assert!(fixes_component(&s, &g).unwrap());
    }

    #[test]
    fn delta_negation_is_not_realizable() {
        let s = build_k3n_setup(3).unwrap();
        let v = check_realizability(&s, &GroupSpec::lambda_y(vec![delta_negation_y()])).unwrap();
        assert!(!v.realizable);
        let w = v.witness.unwrap();
        assert_eq!((w.square, w.divisibility), (-4, 4));
        let mut delta = vec![0; 23];
        delta[22] = 1;
        assert!(w.coords == delta || w.coords.iter().map(|x| -x).collect::<Vec<_>>() == delta);
    }

    #[test]
    fn congruence_e8_is_realizable() {
        let s = build_k3n_setup(3).unwrap();
        let v = check_realizability(&s, &GroupSpec::gamma2m(vec![e8_negation_m()])).unwrap();
        assert!(v.realizable);
        assert!(!v.conditional);
        assert_eq!(v.details.lg_rank, 8);
    }

    #[test]
    fn kum_trivial_action_is_conditionally_realizable() {
        let s = build_kumn_setup(3, 2).unwrap();
        let v = check_realizability(&s, &GroupSpec::direct(vec![])).unwrap();
        assert!(v.realizable && v.conditional);
        assert_eq!(v.details.lg_rank, 0);
        let g = lift_group(&s, &GroupSpec::direct(vec![])).unwrap();
        assert!(matches!(fixes_component(&s, &g), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn component_obstruction_on_a_two_by_two_discriminant() {
        let l = IntegerLattice::direct_sum(&[
            &IntegerLattice::hyperbolic_plane(),
            &IntegerLattice::rank_one(-2).unwrap(),
            &IntegerLattice::rank_one(-2).unwrap(),
        ])
        .unwrap();
        let mut swap = IntMatrix::identity(4);
        swap[(2, 2)] = 0;
        swap[(3, 3)] = 0;
        swap[(2, 3)] = 1;
        swap[(3, 2)] = 1;
        let obstruction = discriminant_obstruction(&l, &[IntMatrix::identity(4), swap]).unwrap();
        assert_eq!(obstruction.map(|(i, _)| i), Some(1));
    }

    #[test]
    fn mod_p_kernel() {
        let a = IntMatrix::from_row_slices(&[&[2, 4], &[6, 8]]);
        let v = kernel_vector_mod_p(&a, 2).unwrap();
        assert!(v.iter().any(|&x| x != 0));
        assert!(kernel_vector_mod_p(&IntMatrix::identity(3), 5).is_none());
    }

    #[test]
    fn splitting() {
        assert!(!cyclic_extension_splits(2, 4).unwrap());
        assert!(cyclic_extension_splits(1, 7).unwrap());
        assert!(cyclic_extension_splits(3, 6).unwrap());
        assert_eq!(cyclic_extension_splits(4, 6).unwrap_err(), Error::NotDividing { k: 4, d: 6 });
    }
}
