//! Quotients, localizations, trivial extensions and amalgamated duplications.

use ringlab::construct::{self, MultSet, RModule};
use ringlab::{ideal, ring};

fn main() -> ringlab::Result<()> {
    let z12 = ring::zmod(12)?;

    let four = ideal::ideal_closure(&z12, &[4])?;
    let (q, _) = ideal::quotient_ring(&z12, &four)?;
    println!("Z12/(4): {} elements, isomorphic to Z4: {}", q.size(), construct::are_isomorphic(&q, &ring::zmod(4)?));

    let two = ideal::ideal_closure(&z12, &[2])?;
    let (loc, _) = construct::localize(&z12, &MultSet::complement(&two)?)?;
    println!("Z12 localized at (2): {} elements, {}", loc.size(), loc.expr());

    let z4 = ring::zmod(4)?;
    let triv = construct::trivial_extension(&z4, &RModule::new(&z4, &[2])?)?;
    println!("{}: {} elements, nilradical of size {}", triv.expr(), triv.size(), triv.nilradical().len());

    let k = ideal::ideal_closure(&z4, &[2])?;
    let dup = construct::duplicate(&z4, &k)?;
    println!("{}: {} = |Z4|·|(2)| elements", dup.ring().expr(), dup.size());
    for x in dup.ring().elements() {
        let (a, b) = dup.pair(x);
        print!(" ({a},{b})");
    }
    println!();
    Ok(())
}
