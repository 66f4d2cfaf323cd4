//! Ideals of the amalgamation Z8 ⋈ (0(+)M) along the inclusion into Z8(+)Z8.

use ringlab::classify;
use ringlab::construct::{self, AmalgamIdealShape};
use ringlab::{dsl, ideal, MnParams};

fn main() -> ringlab::Result<()> {
    let ring = dsl::parse_ring("amal(Z8, triv(Z8, M[8]), inj, {1})")?;
    let am = construct::Amalgam::from_ring(&ring)?;
    println!("{}: |A| = {}, |J| = {}, size {}", ring.expr(), am.a().size(), am.j().len(), am.size());

    let p = MnParams::new(3, 1)?;
    for delta in ["bow(id)", "bow(rad)"] {
        let d = dsl::parse_delta_expr(delta, &ring)?;
        for gens in [[0usize], [4], [2]] {
            let i = ideal::ideal_closure(am.a(), &gens)?;
            let x = construct::amalgam_ideal(&am, &AmalgamIdealShape::IJ(i.clone()))?;
            if !x.is_proper() {
                continue;
            }
            let v = classify::classify_mn(&x, p, Some(&d), true)?;
            let w = v.witness().map(|w| w.describe(&ring)).unwrap_or_default();
            println!("  I = {} in Z8, {delta}: weakly-(3,1)-closed = {} {w}", i.gens_expr(), v.holds());
        }
    }
    let sub = construct::subring_fa_plus_j(&am)?.0;
    println!("f(A)+J has {} elements", sub.size());
    Ok(())
}
