//! Count the roots of E8(-1) and the vectors of square -4.
use nielsen_core::enumeration::{enumerate_norm, DefiniteLattice, DEFAULT_NODE_CAP};
use nielsen_core::lattice::IntegerLattice;

fn main() -> Result<(), nielsen_core::Error> {
    let e8 = DefiniteLattice::from_lattice(&IntegerLattice::e8_negative())?;
    for t in [-2, -4, -6] {
        let shell = enumerate_norm(&e8, t, DEFAULT_NODE_CAP)?;
        println!("square {t}: {} vectors", shell.len());
    }
    Ok(())
}
