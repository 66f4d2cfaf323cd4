//! Parsing ring, ideal and expansion expressions, including error positions.

use ringlab::dsl;

fn main() {
    let exprs = ["Z2 x Z4", "quot(Z16, {8})", "loc(Z12, {1,5,7,11})", "dup(Z4, {2})", "triv(Z3, M[3,3])"];
    for text in exprs {
        match dsl::parse_ring(text) {
            Ok(r) => println!("{text:<24} -> {} ({} elements)", r.expr(), r.size()),
            Err(e) => println!("{text:<24} -> {e}"),
        }
    }
    println!("{:?}", dsl::parse_delta_ast("comp(rad, addk({2}))").unwrap());
    for bad in ["Z0", "Z4 x", "quot(Z8, {3)", "triv(Z4, M[3])", "amal(Z4, Z2, id, {})"] {
        println!("{bad:<24} -> {}", dsl::parse_ring(bad).unwrap_err());
    }
}
