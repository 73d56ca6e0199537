//! -1 on the [-2(n-1)] summand of Lambda_Y is not realizable.
use nielsen_core::criterion::check_realizability;
use nielsen_core::enriques::build_k3n_setup;
use nielsen_core::scenarios::delta_negation_spec;

fn main() -> Result<(), nielsen_core::Error> {
    for n in [3, 5, 7, 9] {
        let s = build_k3n_setup(n)?;
        let v = check_realizability(&s, &delta_negation_spec(&s))?;
        let w = v.witness.expect("a wall witness");
        println!("n={n}: realizable={} witness square {} divisibility {}", v.realizable, w.square, w.divisibility);
    }
    Ok(())
}
