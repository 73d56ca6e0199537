//! The simultaneous reflection swapping two copies of a root is not realizable.
use nielsen_core::criterion::{check_realizability, Certificate};
use nielsen_core::enriques::build_k3n_setup;
use nielsen_core::scenarios::{twist_classes, twist_spec};

fn main() -> Result<(), nielsen_core::Error> {
    let s = build_k3n_setup(3)?;
    let (v1, v2) = twist_classes();
    let t = s.simultaneous_reflection(&v1, &v2)?;
    println!("twist orientation preserving: {}", t.is_orientation_preserving()?);
    let v = check_realizability(&s, &twist_spec(&s)?)?;
    if let Certificate::WallWitness { vector, square, divisibility } = &v.certificate {
        println!("wall {vector:?} square {square} div {divisibility}");
    }
    println!("L_G rank {}", v.details.lg_rank);
    Ok(())
}
