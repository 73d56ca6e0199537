//! The extension of id_U + (-id_E8) is realizable; L_G is E8(-2).
use nielsen_core::criterion::{check_realizability, Certificate};
use nielsen_core::enriques::build_k3n_setup;
use nielsen_core::enumeration::{minimal_square, DefiniteLattice};
use nielsen_core::matrix::IntMatrix;
use nielsen_core::scenarios::e8_negation_spec;

fn main() -> Result<(), nielsen_core::Error> {
    let s = build_k3n_setup(3)?;
    let v = check_realizability(&s, &e8_negation_spec())?;
    let Certificate::Realized { lg_gram, note, .. } = &v.certificate else {
        panic!("expected a realization certificate");
    };
    let lg = DefiniteLattice::new(IntMatrix::from_rows(lg_gram)?)?;
    println!("realizable ({note}), group order {}", v.details.group_order);
    println!("L_G rank {}, minimal square {}", lg.rank(), minimal_square(&lg)?);
    println!("primes checked for high divisibility: {:?}", v.details.primes);
    Ok(())
}
