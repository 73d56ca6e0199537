//! A group acting trivially on Lambda_Y of a Kum_n-type Enriques manifold.
use nielsen_core::criterion::check_realizability;
use nielsen_core::enriques::build_kumn_setup;
use nielsen_core::scenarios::trivial_lambda_y_spec;

fn main() -> Result<(), nielsen_core::Error> {
    for (n, d) in [(3, 2), (3, 4), (5, 2), (5, 3)] {
        let s = build_kumn_setup(n, d)?;
        let v = check_realizability(&s, &trivial_lambda_y_spec(&s))?;
        println!("Kum_{n} d={d}: realizable={} conditional={} L_G rank {}", v.realizable, v.conditional, v.details.lg_rank);
    }
    Ok(())
}
