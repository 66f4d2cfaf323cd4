//! Ideal lattice of Z12 x Z2, with primes, radicals and the two radicals of the ring.

use ringlab::{dsl, ideal};

fn main() -> ringlab::Result<()> {
    let r = dsl::parse_ring("Z12 x Z2")?;
    let lattice = ideal::lattice(&r)?;
    let primes = lattice.primes();
    println!("{} has {} elements and {} ideals", r.expr(), r.size(), lattice.len());
    for i in lattice.ideals() {
        let tag = if primes.contains(i) { " prime" } else { "" };
        println!("  {:<14} size {:>2}  radical {}{tag}", i.gens_expr(), i.len(), i.radical().gens_expr());
    }
    println!("Nil(R) = {}", r.nilradical().gens_expr());
    println!("J(R)   = {}", r.jacobson_radical().gens_expr());
    Ok(())
}
