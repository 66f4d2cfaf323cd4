//! Library results against independent integer arithmetic on Z_n.

use ringlab::construct::{self, MultSet};
use ringlab::{classify, dsl, ideal, ring, MnParams};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn prime_factors(mut d: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        while d.is_multiple_of(p) {
            out.push(p);
            d /= p;
        }
        p += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

fn pow_mod(a: usize, k: usize, n: usize) -> usize {
    (0..k).fold(1 % n, |acc, _| acc * a % n)
}

/// `x ∈ dZ_n` for `d | n`.
fn in_ideal(x: usize, d: usize) -> bool {
    x.is_multiple_of(d)
}

/// Generator of the radical of `dZ_n`: the product of the distinct primes of `d`.
fn rad_gen(d: usize) -> usize {
    let mut ps = prime_factors(d);
    ps.dedup();
    ps.iter().product::<usize>().max(1)
}

fn mn_closed(n: usize, d: usize, target: usize, m: usize, k: usize, weakly: bool) -> bool {
    (0..n).all(|a| {
        let am = pow_mod(a, m, n);
        (weakly && am == 0) || !in_ideal(am, d) || in_ideal(pow_mod(a, k, n), target)
    })
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[test]
fn ideal_counts_are_divisor_counts() {
    for n in 1..=40 {
        let r = ring::zmod(n).unwrap();
        let lat = ideal::lattice(&r).unwrap();
        assert_eq!(lat.len(), divisors(n).len(), "Z{n}");
        for d in divisors(n) {
            let i = ideal::ideal_closure(&r, &[d % n]).unwrap();
            assert_eq!(i.len(), n / d, "({d}) in Z{n}");
        }
    }
}

#[test]
fn product_ideal_counts_multiply() {
    for (a, b) in [(2, 2), (2, 4), (3, 3), (4, 6), (2, 9)] {
        let r = dsl::parse_ring(&format!("Z{a} x Z{b}")).unwrap();
        let count = ideal::lattice(&r).unwrap().len();
        assert_eq!(count, divisors(a).len() * divisors(b).len());
    }
}

#[test]
fn units_radicals_and_jacobson() {
    for n in 2..=40 {
        let r = ring::zmod(n).unwrap();
        let phi = (0..n).filter(|&x| gcd(x, n) == 1).count();
        assert_eq!(r.elements().filter(|&x| r.is_unit(x)).count(), phi, "Z{n}");
        let g = rad_gen(n);
        let nil: Vec<usize> = (0..n).filter(|x| x % g == 0).collect();
        assert_eq!(r.nilradical().members(), &nil[..], "Nil(Z{n})");
        assert_eq!(r.jacobson_radical().members(), &nil[..], "J(Z{n})");
        for d in divisors(n).into_iter().filter(|&d| d > 1) {
            let i = ideal::ideal_closure(&r, &[d % n]).unwrap();
            let want: Vec<usize> = (0..n).filter(|x| x % rad_gen(d) == 0).collect();
            assert_eq!(i.radical().members(), &want[..], "rad({d}) in Z{n}");
        }
    }
}

#[test]
fn mn_closed_matches_integer_oracle() {
    for n in 2..=32 {
        let r = ring::zmod(n).unwrap();
        for d in divisors(n).into_iter().filter(|&d| d > 1) {
            let i = ideal::ideal_closure(&r, &[d % n]).unwrap();
            let id = dsl::parse_delta_expr("id", &r).unwrap();
            let rad = dsl::parse_delta_expr("rad", &r).unwrap();
            for m in 2..=4 {
                for k in 1..m {
                    let p = MnParams::new(m, k).unwrap();
                    for weakly in [false, true] {
                        let lib_id = classify::classify_mn(&i, p, Some(&id), weakly).unwrap().holds();
                        let lib_rad = classify::classify_mn(&i, p, Some(&rad), weakly).unwrap().holds();
                        assert_eq!(lib_id, mn_closed(n, d, d, m, k, weakly), "Z{n} ({d}) id {p} {weakly}");
                        assert_eq!(lib_rad, mn_closed(n, d, rad_gen(d), m, k, weakly), "Z{n} ({d}) rad {p} {weakly}");
                    }
                }
            }
        }
    }
}

#[test]
fn delta_primary_matches_integer_oracle() {
    for n in 2..=30 {
        let r = ring::zmod(n).unwrap();
        let rad = dsl::parse_delta_expr("rad", &r).unwrap();
        for d in divisors(n).into_iter().filter(|&d| d > 1) {
            let i = ideal::ideal_closure(&r, &[d % n]).unwrap();
            let g = rad_gen(d);
            for weakly in [false, true] {
                let want = (0..n).all(|x| {
                    (0..n).all(|y| {
                        let xy = x * y % n;
                        (weakly && xy == 0) || !in_ideal(xy, d) || in_ideal(x, d) || in_ideal(y, g)
                    })
                });
                let got = classify::is_delta_primary(&i, &rad, weakly).unwrap().holds();
                assert_eq!(got, want, "Z{n} ({d}) weakly={weakly}");
            }
        }
    }
}

#[test]
fn n_absorbing_counts_prime_factors() {
    // dZ_n with d | n is n-absorbing iff d has at most n prime factors with multiplicity.
    for n in 2..=36 {
        let r = ring::zmod(n).unwrap();
        for d in divisors(n).into_iter().filter(|&d| d > 1) {
            let i = ideal::ideal_closure(&r, &[d % n]).unwrap();
            let omega = prime_factors(d).len();
            for k in 1..=3 {
                if n.pow(k as u32 + 1) > 2_000_000 {
                    continue;
                }
                let got = classify::is_n_absorbing(&i, k, false).unwrap().holds();
                assert_eq!(got, omega <= k, "({d}) in Z{n}, n={k}");
            }
        }
    }
}

#[test]
fn localization_sizes_follow_crt() {
    for n in 2..=36 {
        let r = ring::zmod(n).unwrap();
        let mut ps = prime_factors(n);
        ps.dedup();
        for p in ps {
            let prime = ideal::ideal_closure(&r, &[p % n]).unwrap();
            let s = MultSet::complement(&prime).unwrap();
            let (loc, _) = construct::localize(&r, &s).unwrap();
            let v = prime_factors(n).iter().filter(|&&q| q == p).count();
            assert_eq!(loc.size(), p.pow(v as u32), "Z{n} at ({p})");
            assert!(construct::are_isomorphic(&loc, &ring::zmod(p.pow(v as u32)).unwrap()));
        }
    }
}

#[test]
fn quotients_of_zn_are_zd() {
    for n in 2..=30 {
        let r = ring::zmod(n).unwrap();
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            let i = ideal::ideal_closure(&r, &[d]).unwrap();
            let (q, _) = ideal::quotient_ring(&r, &i).unwrap();
            assert!(construct::are_isomorphic(&q, &ring::zmod(d).unwrap()), "Z{n}/({d})");
        }
    }
}

#[test]
fn primes_of_zn_are_prime_divisors() {
    for n in 2..=40 {
        let r = ring::zmod(n).unwrap();
        let mut want: Vec<usize> = prime_factors(n);
        want.dedup();
        let mut got: Vec<usize> = ideal::lattice(&r)
            .unwrap()
            .primes()
            .iter()
            .map(|p| n / p.len())
            .collect();
        got.sort();
        assert_eq!(got, want, "Z{n}");
    }
}
