//! Machine-checkable theorem registry.
//!
//! Each entry turns a statement about weakly (m,n)-closed δ-primary ideals
//! into a generator of concrete instances (a ring, ideals, expansions,
//! parameters). An instance either fails the hypothesis (vacuous), is
//! skipped because a side condition cannot be met, or is a hit whose
//! conclusion is checked. Entries flagged `known_false` encode statements
//! that do not hold as written; their counterexamples are expected.

mod catalog;
mod checks;
mod fuzz;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::MnParams;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::FiniteRing;

pub use catalog::{Catalog, Env, ParamRanges, RingCtx, SMALL_CATALOG};
pub use checks::predict_product;
pub use fuzz::{fuzz, parse_conjecture, Conjecture, FuzzOptions, FuzzReport, FUZZ_ALIASES};

/// Minimum number of hits a true theorem needs on a catalog run.
pub const DEFAULT_MIN_HITS: usize = 5;

/// A concrete instance refuting a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub ring: String,
    /// Generators of the ideal under test.
    pub ideal: Vec<usize>,
    pub delta: String,
    pub m: usize,
    pub n: usize,
    pub witness: Vec<usize>,
    pub witness_labels: Vec<String>,
    pub detail: String,
}

impl Counterexample {
    pub(crate) fn new(
        i: &Ideal,
        delta: &str,
        p: MnParams,
        witness: Vec<usize>,
        detail: impl Into<String>,
    ) -> Counterexample {
        let ring = i.ring();
        Counterexample {
            ring: ring.expr(),
            ideal: i.generators(),
            delta: delta.to_string(),
            m: p.m,
            n: p.n,
            witness_labels: witness.iter().map(|&x| ring.label(x)).collect(),
            witness,
            detail: detail.into(),
        }
    }

    /// One-line summary.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.ideal.iter().map(|g| g.to_string()).collect();
        format!(
            "{}, I=({}), δ={}, (m,n)=({},{}), witness [{}]: {}",
            self.ring,
            gens.join(","),
            self.delta,
            self.m,
            self.n,
            self.witness_labels.join(", "),
            self.detail
        )
    }
}

/// Result of one instance.
#[derive(Clone, Debug)]
pub enum Outcome {
    Vacuous,
    Skipped,
    Pass,
    Fail(Box<Counterexample>),
}

/// A unit of parallel work producing outcomes in a fixed order.
pub(crate) type Job = Box<dyn Fn() -> Result<Vec<Outcome>> + Send + Sync>;

type Generator = fn(&Env) -> Result<Vec<Job>>;

/// Registry metadata.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremInfo {
    pub id: &'static str,
    pub summary: &'static str,
    pub known_false: bool,
}

struct Entry {
    info: TheoremInfo,
    generate: Generator,
}

macro_rules! entry {
    ($id:literal, $false:literal, $gen:path, $summary:literal) => {
        Entry {
            info: TheoremInfo {
                id: $id,
                summary: $summary,
                known_false: $false,
            },
            generate: $gen,
        }
    };
}

fn registry() -> Vec<Entry> {
    use checks::*;
    vec![
        entry!("T-3.2a", false, t32a, "weakly semi-n-absorbing δ-primary iff weakly (n+1,n)-closed δ-primary"),
        entry!("T-3.2b", false, t32b, "weakly n-absorbing δ-primary implies weakly semi-n-absorbing δ-primary"),
        entry!("T-3.2c", false, t32c, "weakly (m,n)-closed δ-primary implies weakly (m,k)-closed δ-primary for k ≥ n"),
        entry!("T-3.2d", false, t32d, "weakly n-absorbing implies weakly (m,n)-closed δ-primary for every m"),
        entry!("T-3.7a", false, t37a, "δ(I) ⊆ γ(I) and I weakly (m,n)-closed δ-primary imply weakly γ-primary"),
        entry!("T-3.7b", false, t37b, "δ(I) weakly (m,n)-closed implies I weakly (m,n)-closed δ-primary"),
        entry!("T-COMP", false, tcomp, "δ(0) (m,n)-closed γ-primary: weakly γ∘δ-primary iff γ∘δ-primary"),
        entry!("T-GAMMA", false, tgamma, "γ(I) weakly (m,n)-closed δ-primary implies I weakly δ∘γ-primary"),
        entry!("T-HOM1", false, thom1, "preimages of weakly γ-primary ideals under injective δγ-homomorphisms are weakly δ-primary"),
        entry!("T-HOM2", false, thom2, "images of weakly δ-primary ideals containing the kernel of a surjective δγ-homomorphism are weakly γ-primary"),
        entry!("T-QUOT1", false, tquot1, "J weakly δ-primary implies J/I weakly δ_q-primary"),
        entry!("T-QUOT2", false, tquot2, "I (m,n)-closed δ-primary and J/I weakly δ_q-primary imply J (m,n)-closed δ-primary"),
        entry!("T-QUOT3", false, tquot3, "I and J/I weakly δ-primary imply J weakly δ-primary"),
        entry!("T-LOC", false, tloc, "I weakly δ-primary with I ∩ S = ∅ implies I_S weakly δ_S-primary"),
        entry!("T-INT", false, tint, "under FIP, an intersection of weakly δ-primary ideals with equal δ-values is weakly δ-primary"),
        entry!("T-SHIFT", false, tshift, "for an unbreakable-zero x of a weakly δ-primary I, (x+i)^m = 0 for all i ∈ I"),
        entry!("T-NIL", false, tnil, "weakly but not (m,n)-closed δ-primary implies I ⊆ Nil(R), and x^m = 0 on I when char R = m is prime"),
        entry!("T-JRAD", false, tjrad, "for a ∈ J(R) and δ fixing a^{n+1}R: a^{n+1}R weakly semi-n-absorbing δ-primary iff a^{n+1} = 0"),
        entry!("T-PK", false, tpk, "numeric constraints on (p^k) in Z_{p^c} that are weakly but not (m,n)-closed δ-primary"),
        entry!("T-PROD1", false, tprod1, "I1 × R2 weakly δ×-primary iff I1 (m,n)-closed δ1-primary iff I1 × R2 (m,n)-closed δ×-primary"),
        entry!("T-PROD2", false, tprod2, "weakly but not (m,n)-closed δ×-primary ideals of R1 × R2 are J1 × J2 with condition (a) or (b)"),
        entry!("T-IDEAL", false, tideal, "I(+)M weakly-not-closed δ(+)-primary iff I weakly-not-closed and m(x^{m-1}M) = 0 for unbreakable x"),
        entry!("T-AM1", false, tam1, "I (m,n)-closed δ-primary iff I ⋈ J (m,n)-closed δ⋈-primary"),
        entry!("T-AM2", false, tam2, "I ⋈ J weakly-not-closed iff I weakly-not-closed and (f(a)+j)^m = 0 for unbreakable a"),
        entry!("T-AM3", false, tam3, "char(f(A)+J) = m and J^m = 0: I ⋈ J weakly-not-closed iff I weakly-not-closed"),
        entry!("T-AM4", false, tam4, "duplication: K ⋈ I weakly-not-closed iff K weakly-not-closed and (a+i)^m = 0 for unbreakable a"),
        entry!("T-AM5", false, tam5, "I(+)M and I ⋈ (0(+)M) agree on every (m,n)-closed class"),
        entry!("T-AM6", false, tam6, "K (m,n)-closed δ1-primary iff K̄ (m,n)-closed δ⋈-primary"),
        entry!("T-AM7", false, tam7, "K̄ weakly-not-closed iff K weakly-not-closed δ1-primary and a^m = 0 for unbreakable f(a)+j"),
        entry!("F-W2C", true, fw2c, "weakly (m,n)-closed δ-primary implies (m,n)-closed δ-primary"),
        entry!("F-EX35", true, fex35, "the zero ideal of Z_{2^{n+1}} is not (n+1,n)-closed radical-primary"),
        entry!("F-EX36", true, fex36, "{0,4} in Z8 is not weakly (2,1)-closed δ-primary for any δ"),
        entry!("F-RMK45", true, frmk45, "0 ⋈ (0(+)M) in Z8 ⋈ (Z8(+)Z8) is not weakly (3,1)-closed δ⋈-primary for any δ"),
        entry!("F-LOCCOR", true, floccor, "I_P weakly δ_P-primary for all primes P ⊇ I implies I weakly δ-primary"),
        entry!("F-JRAD", true, fjrad, "for a ∈ J(R) and any δ: a^{n+1}R weakly semi-n-absorbing δ-primary iff a^{n+1} = 0"),
    ]
}

/// All registered theorems, true ones first.
pub fn list_theorems() -> Vec<TheoremInfo> {
    registry().into_iter().map(|e| e.info).collect()
}

/// Outcome counts of one theorem over a catalog.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub summary: String,
    pub known_false: bool,
    pub instances: usize,
    pub hits: usize,
    pub vacuous: usize,
    pub skipped: usize,
    pub passes: usize,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TheoremReport {
    fn new(id: &str, summary: &str, known_false: bool) -> TheoremReport {
        TheoremReport {
            id: id.to_string(),
            summary: summary.to_string(),
            known_false,
            instances: 0,
            hits: 0,
            vacuous: 0,
            skipped: 0,
            passes: 0,
            counterexamples: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub(crate) fn record(&mut self, outcome: Outcome) {
        self.instances += 1;
        match outcome {
            Outcome::Vacuous => self.vacuous += 1,
            Outcome::Skipped => self.skipped += 1,
            Outcome::Pass => {
                self.hits += 1;
                self.passes += 1;
            }
            Outcome::Fail(cx) => {
                self.hits += 1;
                self.counterexamples.push(*cx);
            }
        }
    }

    /// `PASS`, `FAIL`, `LOW-COVERAGE`, `REFUTED` or `NOT-REFUTED`.
    pub fn status(&self, min_hits: usize) -> &'static str {
        match (self.known_false, self.counterexamples.is_empty()) {
            (true, false) => "REFUTED",
            (true, true) => "NOT-REFUTED",
            (false, false) => "FAIL",
            (false, true) if self.hits < min_hits => "LOW-COVERAGE",
            (false, true) => "PASS",
        }
    }

    /// Whether this report should make the run exit with status 1.
    pub fn is_failure(&self, min_hits: usize) -> bool {
        !self.counterexamples.is_empty() || (!self.known_false && self.hits < min_hits)
    }

    pub fn to_text(&self, min_hits: usize) -> String {
        let mut out = format!(
            "{:<9} {:<12} instances={} hits={} vacuous={} skipped={} passes={} counterexamples={}",
            self.id,
            self.status(min_hits),
            self.instances,
            self.hits,
            self.vacuous,
            self.skipped,
            self.passes,
            self.counterexamples.len()
        );
        const SHOWN: usize = 5;
        for cx in self.counterexamples.iter().take(SHOWN) {
            let _ = write!(out, "\n    {}", cx.describe());
        }
        if self.counterexamples.len() > SHOWN {
            let _ = write!(out, "\n    ... {} more", self.counterexamples.len() - SHOWN);
        }
        out
    }
}

/// Settings of a verification run.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub workers: usize,
    pub min_hits: usize,
    pub seed: u64,
    pub params: ParamRanges,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            workers: 1,
            min_hits: DEFAULT_MIN_HITS,
            seed: 0,
            params: ParamRanges::default(),
        }
    }
}

/// Reports of several theorems over one catalog.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub catalog: String,
    pub seed: u64,
    pub min_hits: usize,
    pub theorems: Vec<TheoremReport>,
}

impl VerifyReport {
    pub fn is_failure(&self) -> bool {
        self.theorems.iter().any(|t| t.is_failure(self.min_hits))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("catalog {} (seed {})\n", self.catalog, self.seed);
        for t in &self.theorems {
            out.push_str(&t.to_text(self.min_hits));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Runs registry entries over a catalog on a fixed-size thread pool.
pub struct Verifier {
    env: Env,
    catalog: String,
    pool: rayon::ThreadPool,
    options: VerifyOptions,
}

impl Verifier {
    pub fn new(catalog: &Catalog, options: VerifyOptions) -> Result<Verifier> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.workers.max(1))
            .build()
            .map_err(|e| Error::InvalidParams(format!("cannot start workers: {e}")))?;
        let env = pool.install(|| Env::new(catalog, options.params))?;
        Ok(Verifier {
            env,
            catalog: catalog.name().to_string(),
            pool,
            options,
        })
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    /// Verifies one theorem by id.
    pub fn run(&self, id: &str) -> Result<TheoremReport> {
        let entry = registry()
            .into_iter()
            .find(|e| e.info.id.eq_ignore_ascii_case(id))
            .ok_or_else(|| Error::UnknownTheorem(id.to_string()))?;
        self.run_entry(&entry)
    }

    fn run_entry(&self, entry: &Entry) -> Result<TheoremReport> {
        let start = Instant::now();
        let mut report = TheoremReport::new(entry.info.id, entry.info.summary, entry.info.known_false);
        let results: Vec<Result<Vec<Outcome>>> = self.pool.install(|| {
            let jobs = (entry.generate)(&self.env)?;
            Ok::<_, Error>(jobs.par_iter().map(|job| job()).collect())
        })?;
        for outcomes in results {
            for outcome in outcomes? {
                report.record(outcome);
            }
        }
        report.elapsed = start.elapsed();
        Ok(report)
    }

    /// Verifies every true theorem, and the known-false entries on request.
    pub fn run_all(&self, include_known_false: bool) -> Result<VerifyReport> {
        let theorems = registry()
            .iter()
            .filter(|e| include_known_false || !e.info.known_false)
            .map(|e| self.run_entry(e))
            .collect::<Result<_>>()?;
        Ok(self.wrap(theorems))
    }

    /// Wraps reports with the run metadata.
    pub fn wrap(&self, theorems: Vec<TheoremReport>) -> VerifyReport {
        VerifyReport {
            catalog: self.catalog.clone(),
            seed: self.options.seed,
            min_hits: self.options.min_hits,
            theorems,
        }
    }
}

/// Verifies one theorem over a catalog with default options.
pub fn verify_theorem(id: &str, catalog: &Catalog) -> Result<TheoremReport> {
    Verifier::new(catalog, VerifyOptions::default())?.run(id)
}

/// Whether `ring` is `Z_n`, returning `n`.
pub(crate) fn zmod_modulus(ring: &FiniteRing) -> Option<usize> {
    match ring.provenance() {
        crate::ring::Provenance::ZMod(n) => Some(*n),
        _ => None,
    }
}
