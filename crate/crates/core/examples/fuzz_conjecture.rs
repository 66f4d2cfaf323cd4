//! Random search for counterexamples to a few conjectures.

use ringlab::theorems::{self, Catalog, FuzzOptions};

fn main() -> ringlab::Result<()> {
    let catalog = Catalog::small();
    let options = FuzzOptions { seed: 1, trials: 2000, workers: 2, ..FuzzOptions::default() };
    for conj in ["F-W2C", "T-NIL", "wprime => wdprimary", "W & !C => unb", "abs => sabs"] {
        let report = theorems::fuzz(&catalog, conj, &options)?;
        println!("{}", report.to_text());
    }
    Ok(())
}
