//! The same shell with one and with several worker threads.
use std::time::Instant;

use nielsen_core::enumeration::{enumerate_norm_with, DefiniteLattice, EnumerationOptions};
use nielsen_core::lattice::IntegerLattice;

fn main() -> Result<(), nielsen_core::Error> {
    let e8 = IntegerLattice::e8_negative();
    let l = DefiniteLattice::from_lattice(&IntegerLattice::direct_sum(&[&e8, &e8])?)?;
    let mut previous = None;
    for jobs in [1, 2, 4] {
        let start = Instant::now();
        let shell = enumerate_norm_with(&l, -4, &EnumerationOptions { jobs, ..Default::default() })?;
        println!("jobs={jobs}: {} vectors in {:?}", shell.len(), start.elapsed());
        if let Some(prev) = previous.replace(shell.vectors.clone()) {
            assert_eq!(prev, shell.vectors);
        }
    }
    Ok(())
}
