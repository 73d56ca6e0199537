//! Isotypic pieces of Lambda_X under a few finite groups.
use nielsen_core::criterion::lift_group;
use nielsen_core::enriques::{build_k3n_setup, build_kumn_setup};
use nielsen_core::group::{compute_ig, isotypic_decomposition, MatrixGroup};
use nielsen_core::scenarios::e8_negation_spec;

fn show(name: &str, g: &MatrixGroup) -> Result<(), nielsen_core::Error> {
    println!("{name}: order {}", g.order());
    for c in isotypic_decomposition(g)? {
        println!("  dim {:>2} sig {} trivial {}", c.dim(), c.signature, c.is_trivial_type);
    }
    let ig = compute_ig(g)?;
    println!("  I_G dim {} sig {} fast path {}", ig.dim(), ig.signature, ig.fast_path);
    Ok(())
}

fn main() -> Result<(), nielsen_core::Error> {
    let s = build_k3n_setup(3)?;
    show("deck group of K3^[3]", &s.deck)?;
    show("E8 negation with deck", &lift_group(&s, &e8_negation_spec())?)?;
    show("deck group of Kum_3, d=4", &build_kumn_setup(3, 4)?.deck)?;
    show("deck group of Kum_5, d=3", &build_kumn_setup(5, 3)?.deck)?;
    Ok(())
}
