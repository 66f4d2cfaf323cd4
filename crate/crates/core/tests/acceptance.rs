//! Acceptance criteria. Runs as a plain binary so every criterion prints
//! one `PASS` or `FAIL` line; any failure makes the process exit 1.

use std::time::{Duration, Instant};

use ringlab::construct::{self, Amalgam, MultSet};
use ringlab::expansion::{self, ExpansionFn};
use ringlab::ring::Provenance;
use ringlab::theorems::{self, Catalog, ParamRanges, Verifier, VerifyOptions};
use ringlab::{classify, cli, dsl, ideal, ring, FiniteRing};
use serde_json::Value;

/// Wall-time limits, pinned.
const LIMIT_EXAMPLES: Duration = Duration::from_secs(1);
const LIMIT_DISCREPANCY: Duration = Duration::from_secs(1);
const LIMIT_SUITE: Duration = Duration::from_secs(120);
/// Vacuity guard and parameter ranges of the theorem suite.
const MIN_HITS: usize = 5;
const MIN_THEOREMS: usize = 24;
const PARAMS: ParamRanges = ParamRanges { max_m: 4, max_absorbing_n: 3 };
/// Largest ring allowed for the F-W2C counterexample.
const W2C_MAX_SIZE: usize = 4;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(args: &[&str]) -> cli::RunOutput {
    cli::run(std::iter::once("ringlab").chain(args.iter().copied()))
}

fn entry<'a>(report: &'a Value, class: &str) -> std::result::Result<&'a Value, String> {
    report["entries"]
        .as_array()
        .and_then(|es| es.iter().find(|e| e["class"] == class))
        .ok_or_else(|| format!("no entry {class}"))
}

fn classify_json(ring: &str, ideal: &str) -> std::result::Result<Value, String> {
    let out = run(&["classify", ring, "--ideal", ideal, "--format", "json"]);
    ensure(out.code == 0, || format!("classify {ring} exited {}: {}", out.code, out.stderr))?;
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn c1_examples() -> Check {
    let start = Instant::now();
    let z8 = classify_json("Z8", "{0,4}")?;
    let w31 = entry(&z8, "weakly-(3,1)-closed-δ_id")?;
    ensure(w31["holds"] == true, || "Z8 {0,4} should be weakly-(3,1)-closed-δ_id".into())?;
    let w21 = entry(&z8, "weakly-(2,1)-closed-δ_id")?;
    ensure(w21["holds"] == false, || "Z8 {0,4} should not be weakly-(2,1)-closed-δ_id".into())?;
    ensure(w21["witness_label"] == "2", || format!("witness {}", w21["witness_label"]))?;
    let z4 = classify_json("Z4", "{0}")?;
    ensure(entry(&z4, "weakly-(2,1)-closed-δ_id")?["holds"] == true, || "Z4 0 weakly".into())?;
    ensure(entry(&z4, "(2,1)-closed-δ_id")?["holds"] == false, || "Z4 0 closed".into())?;
    let t = start.elapsed();
    ensure(t < LIMIT_EXAMPLES, || format!("took {t:?}"))?;
    Ok(format!("Z8 {{0,4}} witness 2, Z4 0 weakly-not-closed ({t:?})"))
}

fn c2_discrepancy() -> Check {
    let start = Instant::now();
    let catalog = Catalog::small();
    let verifier = Verifier::new(&catalog, VerifyOptions::default()).map_err(|e| e.to_string())?;
    let ex35 = verifier.run("F-EX35").map_err(|e| e.to_string())?;
    let hit = ex35.counterexamples.iter().find(|cx| {
        cx.ring == "Z8" && cx.delta == "rad" && cx.m == 3 && cx.n == 1 && cx.witness_labels == ["2"]
    });
    ensure(hit.is_some(), || "F-EX35: no Z8 rad witness 2".into())?;
    let rmk = verifier.run("F-RMK45").map_err(|e| e.to_string())?;
    let z8 = ring::zmod(8).map_err(|e| e.to_string())?;
    let two_nil = z8.is_nilpotent(2);
    let hit = rmk.counterexamples.iter().find(|cx| {
        cx.delta == "bow(rad)" && cx.witness_labels.first().is_some_and(|w| w.starts_with("(2,"))
    });
    ensure(hit.is_some() && two_nil, || "F-RMK45: no bow(rad) witness over 2".into())?;
    let t = start.elapsed();
    ensure(t < LIMIT_DISCREPANCY, || format!("took {t:?}"))?;
    Ok(format!("both refuted by 2 ∈ √(0) in Z8 ({t:?})"))
}

fn c3_suite() -> Check {
    let start = Instant::now();
    let options = VerifyOptions { workers: 1, min_hits: MIN_HITS, seed: 0, params: PARAMS };
    let verifier = Verifier::new(&Catalog::small(), options).map_err(|e| e.to_string())?;
    let report = verifier.run_all(false).map_err(|e| e.to_string())?;
    ensure(report.theorems.len() >= MIN_THEOREMS, || format!("{} theorems", report.theorems.len()))?;
    for t in &report.theorems {
        ensure(t.counterexamples.is_empty(), || format!("{} has counterexamples", t.id))?;
        ensure(t.hits >= MIN_HITS, || format!("{} has {} hits", t.id, t.hits))?;
    }
    let least = report.theorems.iter().map(|t| t.hits).min().unwrap_or(0);
    let t = start.elapsed();
    ensure(t < LIMIT_SUITE, || format!("took {t:?}"))?;
    Ok(format!("{} theorems, 0 counterexamples, min hits {least} ({t:?})", report.theorems.len()))
}

fn c4_known_false() -> Check {
    let out = run(&["verify", "--catalog", "small", "--theorem", "F-W2C", "--format", "json"]);
    ensure(out.code == 1, || format!("exit {}", out.code))?;
    let v: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let cxs = v["theorems"][0]["counterexamples"].as_array().cloned().unwrap_or_default();
    let mut smallest = usize::MAX;
    for cx in &cxs {
        let r = dsl::parse_ring(cx["ring"].as_str().unwrap_or("")).map_err(|e| e.to_string())?;
        smallest = smallest.min(r.size());
    }
    ensure(smallest <= W2C_MAX_SIZE, || format!("smallest counterexample ring has {smallest} elements"))?;
    Ok(format!("exit 1, smallest counterexample ring has {smallest} elements"))
}

fn delta_pool(r: &FiniteRing) -> Vec<ExpansionFn> {
    ["id", "rad"].iter().map(|d| dsl::parse_delta_expr(d, r).unwrap()).collect()
}

fn c5_products() -> Check {
    let mut agree = 0;
    for r in Catalog::small().rings() {
        let Provenance::Product(r1, r2) = r.provenance() else { continue };
        let lat = ideal::lattice(r).map_err(|e| e.to_string())?;
        let mut combos = Vec::new();
        for d1 in delta_pool(r1) {
            for d2 in delta_pool(r2) {
                let on_product = expansion::delta_product(&d1, &d2).map_err(|e| e.to_string())?;
                combos.push((d1.clone(), d2.clone(), on_product));
            }
        }
        // id and rad of the product itself coincide with prod(id,id), prod(rad,rad).
        for (k, d) in delta_pool(r).into_iter().enumerate() {
            let (d1, d2) = (delta_pool(r1).swap_remove(k), delta_pool(r2).swap_remove(k));
            combos.push((d1, d2, d));
        }
        for (d1, d2, d) in &combos {
            for x in lat.proper() {
                for p in PARAMS.mn_pairs() {
                    let weakly = classify::classify_mn(x, p, Some(d), true).map_err(|e| e.to_string())?;
                    let closed = classify::classify_mn(x, p, Some(d), false).map_err(|e| e.to_string())?;
                    let predicted = theorems::predict_product(x, d1, d2, p).map_err(|e| e.to_string())?;
                    ensure(predicted == (weakly.holds(), closed.holds()), || {
                        format!("{} {x} {} {p}: predicted {predicted:?}", r.expr(), d.label())
                    })?;
                    agree += 1;
                }
            }
        }
    }
    ensure(agree > 0, || "no product instances".into())?;
    Ok(format!("{agree}/{agree} instances agree"))
}

fn c6_constructions() -> Check {
    let mut amalgams: Vec<FiniteRing> = Catalog::small()
        .rings()
        .iter()
        .filter(|r| matches!(r.provenance(), Provenance::Amalgamation(_)))
        .cloned()
        .collect();
    for e in ["dup(Z8, {2})", "dup(Z8, {4})", "amal(Z8, triv(Z8, M[8]), inj, {1})", "amal(Z2, triv(Z2, M[2]), inj, {1})"] {
        amalgams.push(dsl::parse_ring(e).map_err(|e| e.to_string())?);
    }
    for r in &amalgams {
        let am = Amalgam::from_ring(r).map_err(|e| e.to_string())?;
        ensure(am.size() == am.a().size() * am.j().len(), || format!("{} size {}", r.expr(), am.size()))?;
    }
    let triv = dsl::parse_ring("triv(Z2, M[2])").map_err(|e| e.to_string())?;
    let amal = dsl::parse_ring("amal(Z2, triv(Z2, M[2]), inj, {1})").map_err(|e| e.to_string())?;
    let iso = construct::find_isomorphism(&triv, &amal);
    ensure(iso.is_some(), || "triv(Z2,M[2]) and its amalgam are not isomorphic".into())?;

    let z12 = ring::zmod(12).map_err(|e| e.to_string())?;
    let loc_size = |members: Vec<usize>| -> std::result::Result<usize, String> {
        let s = MultSet::new(&z12, &members).map_err(|e| e.to_string())?;
        Ok(construct::localize(&z12, &s).map_err(|e| e.to_string())?.0.size())
    };
    let odds = loc_size((1..12).step_by(2).collect())?;
    let off3 = loc_size((1..12).filter(|x| x % 3 != 0).collect())?;
    ensure(odds == 4 && off3 == 3, || format!("loc sizes {odds}, {off3}"))?;
    Ok(format!("{} amalgams sized, isomorphism found, loc(Z12) sizes 4 and 3", amalgams.len()))
}

/// Extensive and monotone on every pair of ideals where δ is defined.
fn axioms_hold(d: &ExpansionFn) -> bool {
    let lat = d.lattice();
    let n = lat.len();
    (0..n).all(|i| {
        let Some(di) = d.eval_index(i) else { return true };
        lat.get(i).is_subset_of(lat.get(di))
            && (0..n).all(|j| match d.eval_index(j) {
                Some(dj) => !lat.get(i).is_subset_of(lat.get(j)) || lat.get(di).is_subset_of(lat.get(dj)),
                None => true,
            })
    })
}

fn dsl_deltas(r: &FiniteRing) -> Vec<String> {
    let mut base = vec!["id".to_string(), "rad".to_string()];
    base.extend(r.elements().take(6).map(|g| format!("addk({{{g}}})")));
    let mut out = base.clone();
    for a in &base[..3] {
        for b in &base[..3] {
            out.push(format!("comp({a},{b})"));
        }
    }
    let wrap: &[&str] = match r.provenance() {
        Provenance::Product(..) => &["prod(id,id)", "prod(id,rad)", "prod(rad,id)", "prod(rad,rad)"],
        Provenance::TrivialExtension { .. } => &["plus(id)", "plus(rad)"],
        Provenance::Amalgamation(_) => &["bow(id)", "bow(rad)", "bow(id,id)", "bow(rad,rad)", "bow(rad,id)"],
        Provenance::Quotient { .. } => &["q(id)", "q(rad)"],
        Provenance::Localization { .. } => &["loc(id)", "loc(rad)"],
        _ => &[],
    };
    out.extend(wrap.iter().map(|s| s.to_string()));
    out
}

fn c7_expansions() -> Check {
    let mut checked = 0;
    for r in Catalog::small().rings() {
        for text in dsl_deltas(r) {
            match dsl::parse_delta_expr(&text, r) {
                Ok(d) => {
                    ensure(axioms_hold(&d), || format!("{text} on {} violates the axioms", r.expr()))?;
                    checked += 1;
                }
                // Shape mismatches and inconsistent pairs are rejected, not built.
                Err(e) if matches!(e.root(), ringlab::Error::InvalidParams(_) | ringlab::Error::ShapeMismatch { .. }) => {}
                Err(e) => return Err(format!("{text} on {}: {e}", r.expr())),
            }
        }
        if matches!(r.provenance(), Provenance::ZMod(_)) {
            for d in delta_pool(r) {
                ensure(expansion::check_fip(&d).is_none(), || format!("{} on {} lacks FIP", d.label(), r.expr()))?;
            }
        }
    }
    let t = dsl::parse_ring("triv(Z2, M[2,2])").map_err(|e| e.to_string())?;
    for d in delta_pool(&t) {
        ensure(expansion::check_fip(&d).is_none(), || format!("{} lacks FIP on M_3", d.label()))?;
    }
    let d = dsl::parse_delta_expr("addk({1})", &t).map_err(|e| e.to_string())?;
    let (a, b) = expansion::check_fip(&d).ok_or("addk({1}) should fail FIP on M_3")?;
    let meet = a.intersect(&b).map_err(|e| e.to_string())?;
    let join = a.sum(&b).map_err(|e| e.to_string())?;
    let atoms = a.len() == 2 && b.len() == 2 && a != b;
    ensure(atoms && meet.is_zero() && join.len() == 4, || format!("witness {a}, {b}"))?;
    Ok(format!("{checked} DSL expansions satisfy the axioms, FIP fails only on the M_3 atoms {a}, {b}"))
}

fn c8_determinism() -> Check {
    let args = |w: &'static str| ["verify", "--catalog", "small", "--seed", "7", "--workers", w, "--format", "json"];
    let one = run(&args("1"));
    let four = run(&args("4"));
    ensure(one.code == 0 && four.code == 0, || format!("exit codes {} {}", one.code, four.code))?;
    ensure(one.stdout == four.stdout, || "reports differ".into())?;
    let mut with_false = args("1").to_vec();
    with_false.push("--include-known-false");
    let a = run(&with_false);
    with_false[6] = "4";
    let b = run(&with_false);
    ensure(a.stdout == b.stdout, || "known-false reports differ".into())?;
    Ok(format!("{} byte reports identical", one.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("1 example reproduction", c1_examples),
        ("2 discrepancy detection", c2_discrepancy),
        ("3 theorem suite", c3_suite),
        ("4 known-false suite", c4_known_false),
        ("5 product oracle equivalence", c5_products),
        ("6 construction invariants", c6_constructions),
        ("7 expansion axioms and FIP", c7_expansions),
        ("8 determinism", c8_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(msg) => println!("PASS  criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
