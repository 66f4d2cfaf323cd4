//! Building expansion functions from the DSL and checking their axioms and FIP.

use ringlab::{dsl, expansion, ideal};

fn main() -> ringlab::Result<()> {
    let r = dsl::parse_ring("triv(Z2, M[2,2])")?;
    let lattice = ideal::lattice(&r)?;
    for text in ["id", "rad", "addk({1})", "comp(rad,addk({1}))", "plus(rad)"] {
        let d = dsl::parse_delta_expr(text, &r)?;
        print!("{text:<20}");
        for i in lattice.ideals() {
            print!(" {}->{}", i.gens_expr(), d.eval(i)?.gens_expr());
        }
        match expansion::check_fip(&d) {
            None => println!("  FIP"),
            Some((a, b)) => println!("  FIP fails on {} and {}", a.gens_expr(), b.gens_expr()),
        }
    }
    let zero_map = expansion::check_expansion_axioms(&r, |i| ideal::Ideal::zero(i.ring()))?;
    println!("constant zero map: {}", zero_map.map(|v| v.to_string()).unwrap_or("an expansion".into()));
    match dsl::parse_delta_expr("prod(id,id)", &r) {
        Ok(_) => println!("prod accepted"),
        Err(e) => println!("prod(id,id) on a trivial extension: {e}"),
    }
    Ok(())
}
