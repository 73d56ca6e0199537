//! Discriminant forms of the lattices that show up for K3^[n] and Kum_n.
use nielsen_core::io::{lattice_report, named_lattice};

fn main() -> Result<(), nielsen_core::Error> {
    for name in ["U", "E8", "rank1:-8", "k3n-x:3", "k3n-y:5", "kumn-x:3", "kumn-y:3:4"] {
        let r = lattice_report(&named_lattice(name)?)?;
        println!(
            "{:<24} rank {:>2}  sig {}  det {:>4}  A = {:?}  q = {:?}",
            r.label, r.rank, r.signature, r.det, r.discriminant.invariant_factors, r.discriminant.q_values
        );
    }
    Ok(())
}
