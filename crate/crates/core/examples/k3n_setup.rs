//! Build the K3^[n] and Kum_n setups and print the covering data.
use nielsen_core::enriques::{build_k3n_setup, build_kumn_setup};

fn main() -> Result<(), nielsen_core::Error> {
    for n in [3, 5, 7] {
        let s = build_k3n_setup(n)?;
        println!(
            "K3^[{n}]: X {} {}, Y {} {}, deck order {}",
            s.lambda_x.label(),
            s.lambda_x.signature(),
            s.lambda_y.label(),
            s.lambda_y.signature(),
            s.deck.order()
        );
    }
    for (n, d) in [(3, 2), (3, 4), (5, 3)] {
        let s = build_kumn_setup(n, d)?;
        let pp = s.pushforward.mul(&s.pullback);
        println!("Kum_{n}, d={d}: p_! p* = {} * id, deck order {}", pp[(0, 0)], s.deck.order());
    }
    Ok(())
}
