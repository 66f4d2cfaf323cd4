use ringlab::cli::{run, RunOutput};

fn ringlab(args: &[&str]) -> RunOutput {
    run(std::iter::once("ringlab").chain(args.iter().copied()))
}

#[test]
fn classify_headline() {
    let out = ringlab(&["classify", "Z8", "--ideal", "{4}", "--delta", "id", "-m", "3", "-n", "1", "--weakly"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("weakly-(3,1)-closed-δ_id: true\n"), "{}", out.stdout);
    let out = ringlab(&["classify", "Z8", "--ideal", "{4}", "-m", "2", "-n", "1", "--weakly"]);
    assert!(out.stdout.starts_with("weakly-(2,1)-closed-δ_id: false\n"));
    assert!(out.stdout.contains("witness 2"));
}

#[test]
fn verify_exit_codes() {
    let out = ringlab(&["verify", "--theorem", "T-NIL"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("T-NIL") && out.stdout.contains("PASS"));
    let out = ringlab(&["verify", "--theorem", "f-w2c"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("REFUTED"));
    let out = ringlab(&["verify", "--theorem", "T-NOPE"]);
    assert_eq!(out.code, 2);
    let out = ringlab(&["verify", "--theorem", "T-NIL", "--min-hits", "100000"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("LOW-COVERAGE"));
}

#[test]
fn construction_errors_exit_2() {
    let out = ringlab(&["ideals", "Z0"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error:"), "{}", out.stderr);
    assert_eq!(ringlab(&["classify", "Z8", "--ideal", "{1}"]).code, 2);
    assert_eq!(ringlab(&["classify", "Z8", "--delta", "prod(id,id)"]).code, 2);
    assert_eq!(ringlab(&["bogus"]).code, 2);
    assert_eq!(ringlab(&["--help"]).code, 0);
}

#[test]
fn fuzz_finds_w2c() {
    let out = ringlab(&["fuzz", "--conjecture", "F-W2C", "--seed", "1", "--format", "json"]);
    assert_eq!(out.code, 1);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["counterexamples"][0]["ring"], "Z4");
    let out = ringlab(&["fuzz", "--conjecture", "T-NIL", "--seed", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("no counterexample found"));
    let out = ringlab(&["fuzz", "--conjecture", "W => C", "--trials", "0"]);
    assert_eq!(out.code, 0);
    assert_eq!(ringlab(&["fuzz", "--conjecture", "W => => C"]).code, 2);
}

#[test]
fn catalog_files() {
    let dir = std::env::temp_dir().join(format!("ringlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.cat");
    std::fs::write(&good, "# tiny\nZ4\nZ2 x Z2   # product\n\nZ9\n").unwrap();
    let out = ringlab(&["verify", "--catalog", good.to_str().unwrap(), "--theorem", "F-W2C"]);
    assert_eq!(out.code, 1);
    let bad = dir.join("bad.cat");
    std::fs::write(&bad, "Z4\nZ(\n").unwrap();
    let out = ringlab(&["verify", "--catalog", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn listings() {
    let out = ringlab(&["theorems"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().any(|l| l.starts_with("F-W2C") && l.contains("[known false]")));
    let out = ringlab(&["ideals", "Z12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["ideals"].as_array().unwrap().len(), 6);
}

#[test]
fn shipped_catalog_matches_builtin() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/catalogs/small.cat");
    let file = ringlab::theorems::Catalog::load(path).unwrap();
    assert_eq!(file.exprs(), ringlab::theorems::Catalog::small().exprs());
}
