//! Checks the registry over the built-in catalog on four workers.

use ringlab::theorems::{Catalog, Verifier, VerifyOptions};

fn main() -> ringlab::Result<()> {
    let catalog = Catalog::small();
    let verifier = Verifier::new(&catalog, VerifyOptions { workers: 4, ..VerifyOptions::default() })?;
    let report = verifier.run_all(true)?;
    print!("{}", report.to_text());
    for t in &report.theorems {
        if t.known_false {
            if let Some(cx) = t.counterexamples.first() {
                println!("{}: {}", t.id, cx.describe());
            }
        }
    }
    Ok(())
}
