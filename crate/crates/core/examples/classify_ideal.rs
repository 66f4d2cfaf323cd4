//! Full classification of {0,4} in Z8 and of 0 in Z4.

use ringlab::{classify, dsl, MnParams};

fn main() -> ringlab::Result<()> {
    for (ring, gens) in [("Z8", "{4}"), ("Z4", "{}")] {
        let r = dsl::parse_ring(ring)?;
        let i = dsl::parse_ideal(gens, &r)?;
        for delta in ["id", "rad"] {
            let d = dsl::parse_delta_expr(delta, &r)?;
            let report = classify::classify_full(&i, &d, MnParams::new(2, 1)?)?;
            println!("{report}\n");
        }
    }
    Ok(())
}
