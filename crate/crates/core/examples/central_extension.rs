//! Splitting of 1 -> Z/k -> Z/d -> Z/(d/k) -> 1.
use nielsen_core::criterion::cyclic_extension_splits;

fn main() -> Result<(), nielsen_core::Error> {
    for (k, d) in [(2, 4), (1, 4), (3, 6), (2, 6), (2, 8), (4, 12)] {
        let text = if cyclic_extension_splits(k, d)? { "split" } else { "no section" };
        println!("k={k} d={d}: {text}");
    }
    Ok(())
}
