mod common;

use nielsen_core::criterion::{check_realizability, high_divisibility_witness, lift_group, GroupSpec};
use nielsen_core::enriques::{build_k3n_setup, EnriquesSetup};
use nielsen_core::enumeration::{default_delta, enumerate_norm, lll_reduce, DefiniteLattice, DEFAULT_NODE_CAP};
use nielsen_core::group::{compute_ig, MatrixGroup};
use nielsen_core::isometry::{reflection, Isometry};
use nielsen_core::lattice::IntegerLattice;
use nielsen_core::matrix::{IntMatrix, Rational};
use nielsen_core::scenarios::{delta_negation_spec, twist_classes};
use nielsen_core::snf::{saturate_rows, smith_normal_form};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn k3n3() -> &'static EnriquesSetup {
    static SETUP: OnceLock<EnriquesSetup> = OnceLock::new();
    SETUP.get_or_init(|| build_k3n_setup(3).unwrap())
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-9i64..=9, cols), rows)
}

fn definite_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, any::<u64>()).prop_map(|(n, seed)| common::random_negative_definite(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

/// A few orientation-preserving isometries of `Λ_X` for K3^[3].
fn k3n_isometries() -> Vec<Isometry> {
    let s = k3n3();
    let mut out = vec![s.deck_generator.clone()];
    for i in [6, 9, 14, 21] {
        let mut v = vec![0; 23];
        v[i] = 1;
        out.push(reflection(&s.lambda_x, &v).unwrap());
    }
    let (v1, v2) = twist_classes();
    out.push(s.simultaneous_reflection(&v1, &v2).unwrap());
    out.push(Isometry::new(&s.lambda_x, IntMatrix::scalar(23, -1)).unwrap());
    out
}

fn word(gens: &[Isometry], letters: &[usize]) -> Isometry {
    letters.iter().fold(Isometry::identity(gens[0].lattice()), |acc, &i| acc.compose(&gens[i % gens.len()]).unwrap())
}

fn gamma2_sample(seed: u64) -> IntMatrix {
    common::random_gamma2(&mut ChaCha8Rng::seed_from_u64(seed), k3n3().m.as_ref().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_form_is_equivalent_and_divisible(a in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix_strategy(r, c))) {
        let m = IntMatrix::from_rows(&a).unwrap();
        let snf = smith_normal_form(&m).unwrap();
        prop_assert_eq!(snf.p.mul(&m).mul(&snf.q), snf.s.clone());
        prop_assert_eq!(common::det_i128(&snf.p.to_rows()).abs(), 1);
        prop_assert_eq!(common::det_i128(&snf.q.to_rows()).abs(), 1);
        let d = snf.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[0] >= 0 && (w[0] == 0 && w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0));
        }
        for i in 0..snf.s.nrows() {
            for j in 0..snf.s.ncols() {
                prop_assert!(i == j || snf.s[(i, j)] == 0);
            }
        }
        if m.nrows() == m.ncols() {
            prop_assert_eq!(d.iter().map(|&x| x as i128).product::<i128>(), common::det_i128(&a).abs());
        }
    }

    #[test]
    fn saturation_is_idempotent(a in (1usize..=3, 2usize..=5).prop_flat_map(|(r, c)| matrix_strategy(r, c))) {
        let b = IntMatrix::from_rows(&a).unwrap();
        let sat = saturate_rows(&b).unwrap();
        let again = saturate_rows(&sat).unwrap();
        prop_assert_eq!(&again, &sat);
        let to_q = |m: &IntMatrix| -> Vec<Vec<common::Q>> {
            m.to_rows().iter().map(|r| r.iter().map(|&x| common::Q::from_integer(x as i128)).collect()).collect()
        };
        prop_assert!(common::same_span_q(&to_q(&b), &to_q(&sat)));
    }

    #[test]
    fn divisibility_divides_square(v in prop::collection::vec(-5i64..=5, 23)) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let l = &k3n3().lambda_x;
        let div = l.divisibility(&v).unwrap();
        prop_assert_eq!(l.square(&v).unwrap() % div, 0);
        if nielsen_core::matrix::gcd_slice(&v) == 1 {
            prop_assert_eq!(4 % div, 0);
        }
    }

    #[test]
    fn rank_one_discriminant(h in prop_oneof![-30i64..=-1, 1i64..=30]) {
        let m = 2 * h;
        let l = IntegerLattice::rank_one(m).unwrap();
        let disc = l.discriminant_group().unwrap();
        prop_assert!(disc.is_cyclic());
        prop_assert_eq!(disc.order(), m.abs());
        // the generator is k/m·e for some unit k, with q = k²/m
        let units = (1..m.abs()).filter(|k| num_integer::gcd(*k, m) == 1);
        let allowed: Vec<Rational> = units.map(|k| nielsen_core::lattice::mod_two(&Rational::new((k * k).into(), m.into()))).collect();
        prop_assert!(allowed.contains(&disc.q_values[0]));
    }

    #[test]
    fn orientation_is_a_homomorphism(a in prop::collection::vec(0usize..7, 0..5), b in prop::collection::vec(0usize..7, 0..5)) {
        let gens = k3n_isometries();
        let g = word(&gens, &a);
        let h = word(&gens, &b);
        let gh = g.compose(&h).unwrap();
        let sign = |x: &Isometry| x.is_orientation_preserving().unwrap();
        prop_assert_eq!(sign(&gh), sign(&g) == sign(&h));
        let inv = g.inverse();
        prop_assert!(g.compose(&inv).unwrap().is_identity());
        prop_assert_eq!(sign(&inv), sign(&g));
    }

    #[test]
    fn two_congruence_is_a_subgroup(s1 in any::<u64>(), s2 in any::<u64>()) {
        let m = k3n3().m.as_ref().unwrap();
        let g = Isometry::new(m, gamma2_sample(s1)).unwrap();
        let h = Isometry::new(m, gamma2_sample(s2)).unwrap();
        prop_assert!(g.is_two_congruence() && h.is_two_congruence());
        prop_assert!(g.compose(&h).unwrap().is_two_congruence());
        prop_assert!(g.inverse().is_two_congruence());
    }

    #[test]
    fn lll_preserves_the_lattice(g in definite_strategy()) {
        let l = DefiniteLattice::new(IntMatrix::from_rows(&g).unwrap()).unwrap();
        let u = lll_reduce(&l, &default_delta()).unwrap();
        prop_assert_eq!(common::det_i128(&u.to_rows()).abs(), 1);
        let reduced = u.transpose().mul(l.gram()).mul(&u);
        prop_assert_eq!(common::det_i128(&reduced.to_rows()), common::det_i128(&g));
        // first reduced square is within 2^{n-1} of the minimum
        let min = (1..).map(|k| -2 * k).find(|&t| !common::brute_force_shell(&g, t).is_empty()).unwrap();
        let n = g.len() as u32;
        prop_assert!((reduced[(0, 0)] as i128).abs() <= (min as i128).abs() << (n - 1));
    }

    #[test]
    fn shells_match_oracle_and_are_symmetric(g in definite_strategy(), k in 1i64..=4) {
        let t = -2 * k;
        let l = DefiniteLattice::new(IntMatrix::from_rows(&g).unwrap()).unwrap();
        let shell = enumerate_norm(&l, t, DEFAULT_NODE_CAP).unwrap().sorted_vectors();
        prop_assert_eq!(&shell, &common::brute_force_shell(&g, t));
        for v in &shell {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            prop_assert!(shell.binary_search(&neg).is_ok());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn nikulin_extension_is_multiplicative(s1 in any::<u64>(), s2 in any::<u64>()) {
        let s = k3n3();
        let m = s.m.as_ref().unwrap();
        let (g, h) = (gamma2_sample(s1), gamma2_sample(s2));
        let ext = |x: &IntMatrix| s.nikulin_extend(&Isometry::new(m, x.clone()).unwrap()).unwrap().into_matrix();
        prop_assert_eq!(ext(&g.mul(&h)), ext(&g).mul(&ext(&h)));
    }

    #[test]
    fn verdict_is_conjugation_invariant(seed in any::<u64>()) {
        let s = k3n3();
        let m = s.m.as_ref().unwrap();
        let c = s.nikulin_extend(&Isometry::new(m, gamma2_sample(seed)).unwrap()).unwrap();
        let base = lift_group(s, &delta_negation_spec(s)).unwrap();
        let conj: Vec<IntMatrix> = base.generators().iter().map(|g| c.matrix().mul(g).mul(c.inverse().matrix())).collect();
        let v0 = check_realizability(s, &GroupSpec::direct(base.generators().to_vec())).unwrap();
        let v1 = check_realizability(s, &GroupSpec::direct(conj.clone())).unwrap();
        prop_assert_eq!(v0.realizable, v1.realizable);
        prop_assert_eq!(v0.details.lg_rank, v1.details.lg_rank);
        let (w0, w1) = (v0.witness.unwrap(), v1.witness.unwrap());
        prop_assert_eq!((w0.square, w0.divisibility), (w1.square, w1.divisibility));

        // I_G moves with the conjugating element
        let isos: Vec<Isometry> = conj.iter().map(|g| Isometry::new(&s.lambda_x, g.clone()).unwrap()).collect();
        let conj_group = MatrixGroup::generate(&s.lambda_x, &isos, 64).unwrap();
        let ig0 = compute_ig(&base).unwrap();
        let ig1 = compute_ig(&conj_group).unwrap();
        let cq = c.matrix().to_rat();
        let moved: Vec<Vec<common::Q>> = (0..ig0.dim())
            .map(|i| cq.mul_vec(ig0.basis.row(i)).iter().map(|x| common::Q::new(x.numer().to_i128().unwrap(), x.denom().to_i128().unwrap())).collect())
            .collect();
        let target: Vec<Vec<common::Q>> = ig1.basis.to_rows().iter()
            .map(|r| r.iter().map(|x| common::Q::new(x.numer().to_i128().unwrap(), x.denom().to_i128().unwrap())).collect())
            .collect();
        prop_assert!(common::same_span_q(&moved, &target));
    }

    #[test]
    fn high_divisibility_matches_scan(g in definite_strategy(), p in prop_oneof![Just(2i64), Just(3), Just(5)]) {
        let l = IntegerLattice::new(IntMatrix::from_rows(&g).unwrap(), "L").unwrap();
        let full = l.full_sublattice();
        let found = high_divisibility_witness(&full, p).unwrap();
        // scan residues modulo p for a class with ⟨v, L⟩ ⊂ pℤ outside pL
        let n = g.len();
        let mut x = vec![0i64; n];
        let mut scan = false;
        'outer: loop {
            if x.iter().any(|&c| c != 0) && (0..n).all(|i| (0..n).map(|j| g[i][j] * x[j]).sum::<i64>() % p == 0) {
                scan = true;
                break;
            }
            let mut i = 0;
            loop {
                if i == n {
                    break 'outer;
                }
                if x[i] < p - 1 {
                    x[i] += 1;
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
        prop_assert_eq!(found.is_some(), scan);
        if let Some(v) = found {
            prop_assert_eq!(nielsen_core::matrix::gcd_slice(&v), 1);
            prop_assert_eq!(l.divisibility(&v).unwrap() % p, 0);
        }
    }
}
