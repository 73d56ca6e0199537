//! Extend an element of the 2-congruence subgroup of O+(M) to Lambda_X.
use nielsen_core::enriques::build_k3n_setup;
use nielsen_core::isometry::{reflection, Isometry};
use nielsen_core::matrix::IntMatrix;

fn main() -> Result<(), nielsen_core::Error> {
    let s = build_k3n_setup(3)?;
    let m = s.m.clone().expect("K3^[n] setups carry M");
    let minus_e8 = IntMatrix::block_diag(&[&IntMatrix::identity(2), &IntMatrix::scalar(8, -1)]);
    let g = Isometry::new(&m, minus_e8)?;
    let ext = s.nikulin_extend(&g)?;
    println!("extension has order {:?}", ext.order(16));
    println!("commutes with rho: {}", ext.matrix().mul(s.deck_generator.matrix()) == s.deck_generator.matrix().mul(ext.matrix()));

    let mut root = vec![0; 10];
    root[2] = 1;
    let r = reflection(&m, &root)?;
    match s.nikulin_extend(&r) {
        Ok(_) => println!("reflection extended"),
        Err(e) => println!("reflection rejected: {e}"),
    }
    Ok(())
}
