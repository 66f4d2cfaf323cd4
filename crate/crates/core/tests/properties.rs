use proptest::prelude::*;

use ringlab::theorems::{self, Catalog, FuzzOptions};
use ringlab::{classify, dsl, ideal, ring, FiniteRing, MnParams};

fn small_ring() -> impl Strategy<Value = FiniteRing> {
    prop_oneof![
        (2usize..=24).prop_map(|n| ring::zmod(n).unwrap()),
        (2usize..=5, 2usize..=5).prop_map(|(a, b)| dsl::parse_ring(&format!("Z{a} x Z{b}")).unwrap()),
        (2usize..=6).prop_map(|n| dsl::parse_ring(&format!("triv(Z{n}, M[{n}])")).unwrap()),
        prop::sample::select(vec!["dup(Z4, {2})", "dup(Z8, {4})", "triv(Z2, M[2,2])", "quot(Z16, {4})"])
            .prop_map(|e| dsl::parse_ring(e).unwrap()),
    ]
}

fn ring_and_gens() -> impl Strategy<Value = (FiniteRing, Vec<usize>)> {
    small_ring().prop_flat_map(|r| {
        let n = r.size();
        (Just(r), prop::collection::vec(0..n, 0..3))
    })
}

fn mn() -> impl Strategy<Value = MnParams> {
    (2usize..=4).prop_flat_map(|m| (Just(m), 1..m)).prop_map(|(m, n)| MnParams::new(m, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rings_satisfy_axioms(r in small_ring()) {
        prop_assert!(r.verify_ring_axioms().is_ok());
        prop_assert_eq!(dsl::parse_ring(&r.expr()).unwrap(), r);
    }

    #[test]
    fn closure_is_smallest_ideal((r, gens) in ring_and_gens()) {
        let i = ideal::ideal_closure(&r, &gens).unwrap();
        prop_assert!(i.verify().is_ok());
        prop_assert!(gens.iter().all(|&g| i.contains(g)));
        for j in ideal::lattice(&r).unwrap().ideals() {
            if gens.iter().all(|&g| j.contains(g)) {
                prop_assert!(i.is_subset_of(j));
            }
        }
        prop_assert_eq!(ideal::ideal_closure(&r, &i.generators()).unwrap(), i);
    }

    #[test]
    fn radical_is_closure_operator((r, gens) in ring_and_gens()) {
        let i = ideal::ideal_closure(&r, &gens).unwrap();
        let rad = i.radical();
        prop_assert!(i.is_subset_of(&rad));
        prop_assert_eq!(rad.radical(), rad.clone());
        prop_assert!(r.nilradical().is_subset_of(&rad));
        prop_assert!(r.nilradical().is_subset_of(&r.jacobson_radical()));
    }

    #[test]
    fn lattice_operations((r, g1) in ring_and_gens(), g2 in prop::collection::vec(0usize..4, 0..3)) {
        let g2: Vec<usize> = g2.into_iter().map(|g| g % r.size()).collect();
        let a = ideal::ideal_closure(&r, &g1).unwrap();
        let b = ideal::ideal_closure(&r, &g2).unwrap();
        let meet = a.intersect(&b).unwrap();
        let join = a.sum(&b).unwrap();
        let prod = a.product(&b).unwrap();
        prop_assert!(meet.is_subset_of(&a) && meet.is_subset_of(&b));
        prop_assert!(a.is_subset_of(&join) && b.is_subset_of(&join));
        prop_assert!(prod.is_subset_of(&meet));
        prop_assert_eq!(a.sum(&b).unwrap(), b.sum(&a).unwrap());
    }

    #[test]
    fn quotient_sizes((r, gens) in ring_and_gens()) {
        let i = ideal::ideal_closure(&r, &gens).unwrap();
        let (q, pi) = ideal::quotient_ring(&r, &i).unwrap();
        prop_assert_eq!(q.size() * i.len(), r.size());
        prop_assert_eq!(pi.kernel(), i);
        prop_assert!(pi.is_surjective());
    }

    #[test]
    fn closed_implies_weakly((r, gens) in ring_and_gens(), p in mn(), rad in any::<bool>()) {
        let i = ideal::ideal_closure(&r, &gens).unwrap();
        prop_assume!(i.is_proper());
        let d = dsl::parse_delta_expr(if rad { "rad" } else { "id" }, &r).unwrap();
        let closed = classify::classify_mn(&i, p, Some(&d), false).unwrap().holds();
        let weakly = classify::classify_mn(&i, p, Some(&d), true).unwrap().holds();
        prop_assert!(!closed || weakly);
        if i.is_zero() {
            prop_assert!(weakly);
        }
    }

    #[test]
    fn larger_expansion_is_weaker((r, gens) in ring_and_gens(), p in mn(), weakly in any::<bool>()) {
        let i = ideal::ideal_closure(&r, &gens).unwrap();
        prop_assume!(i.is_proper());
        let id = dsl::parse_delta_expr("id", &r).unwrap();
        let rad = dsl::parse_delta_expr("rad", &r).unwrap();
        let plain = classify::classify_mn(&i, p, None, weakly).unwrap().holds();
        let with_id = classify::classify_mn(&i, p, Some(&id), weakly).unwrap().holds();
        let with_rad = classify::classify_mn(&i, p, Some(&rad), weakly).unwrap().holds();
        prop_assert_eq!(plain, with_id);
        prop_assert!(!with_id || with_rad);
    }

    #[test]
    fn witnesses_refute((r, gens) in ring_and_gens(), p in mn(), weakly in any::<bool>()) {
        let i = ideal::ideal_closure(&r, &gens).unwrap();
        prop_assume!(i.is_proper());
        if let Some(w) = classify::classify_mn(&i, p, None, weakly).unwrap().witness() {
            let a = w.elements()[0];
            let am = r.pow(a, p.m);
            prop_assert!(i.contains(am));
            prop_assert!(!i.contains(r.pow(a, p.n)));
            prop_assert!(!weakly || am != r.zero());
        }
    }

    #[test]
    fn larger_n_is_weaker((r, gens) in ring_and_gens(), p in mn()) {
        let i = ideal::ideal_closure(&r, &gens).unwrap();
        prop_assume!(i.is_proper());
        let holds = classify::classify_mn(&i, p, None, true).unwrap().holds();
        for k in p.n..p.m {
            let q = MnParams::new(p.m, k).unwrap();
            prop_assert!(!holds || classify::classify_mn(&i, q, None, true).unwrap().holds());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn fuzz_is_reproducible(seed in any::<u64>(), workers in 1usize..4) {
        let catalog = Catalog::small();
        let one = FuzzOptions { seed, trials: 150, ..FuzzOptions::default() };
        let many = FuzzOptions { workers, ..one.clone() };
        let a = theorems::fuzz(&catalog, "W => C", &one).unwrap();
        let b = theorems::fuzz(&catalog, "W => C", &many).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
        let t = theorems::fuzz(&catalog, "T-NIL", &one).unwrap();
        prop_assert_eq!(t.failures, 0);
    }
}
