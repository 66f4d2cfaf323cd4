//! Random search for counterexamples to user conjectures.
//!
//! A conjecture is a boolean formula over atoms describing an instance
//! `(R, I, δ, m, n)`:
//!
//! | atom | meaning |
//! |------|---------|
//! | `W`, `C` | weakly / plain (m,n)-closed δ-primary |
//! | `wclosed`, `closed` | weakly / plain (m,n)-closed |
//! | `wsemi`, `semi` | weakly / plain semi-n-absorbing δ-primary |
//! | `wprime`, `prime` | weakly / plain prime |
//! | `wdprimary`, `dprimary` | weakly / plain δ-primary |
//! | `wabs`, `abs` | weakly / plain n-absorbing |
//! | `swabs`, `sabs` | strongly weakly / strongly n-absorbing |
//! | `wadp`, `adp` | weakly / plain n-absorbing δ-primary |
//! | `nil` | `I ⊆ Nil(R)` |
//! | `zero` | `I = 0` |
//! | `unb` | `I` has a δ-(m,n)-unbreakable-zero element |
//! | `radical` | `I = √I` |
//!
//! Operators, loosest first: `=>` (right associative), `|`, `&`, `!`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{Catalog, Env, ParamRanges, RingCtx};
use super::Counterexample;
use crate::classify::{self, MnParams, Verdict};
use crate::error::{Error, Result};
use crate::expansion::ExpansionFn;
use crate::ideal::Ideal;

/// Named conjectures accepted in place of a formula.
pub const FUZZ_ALIASES: &[(&str, &str)] = &[("F-W2C", "W => C"), ("T-NIL", "W & !C => nil")];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Atom {
    W,
    C,
    WClosed,
    Closed,
    WSemi,
    Semi,
    WPrime,
    Prime,
    WDPrimary,
    DPrimary,
    WAbs,
    Abs,
    SWAbs,
    SAbs,
    WAdp,
    Adp,
    Nil,
    Zero,
    Unb,
    Radical,
}

const ATOMS: &[(&str, Atom)] = &[
    ("W", Atom::W),
    ("C", Atom::C),
    ("wclosed", Atom::WClosed),
    ("closed", Atom::Closed),
    ("wsemi", Atom::WSemi),
    ("semi", Atom::Semi),
    ("wprime", Atom::WPrime),
    ("prime", Atom::Prime),
    ("wdprimary", Atom::WDPrimary),
    ("dprimary", Atom::DPrimary),
    ("wabs", Atom::WAbs),
    ("abs", Atom::Abs),
    ("swabs", Atom::SWAbs),
    ("sabs", Atom::SAbs),
    ("wadp", Atom::WAdp),
    ("adp", Atom::Adp),
    ("nil", Atom::Nil),
    ("zero", Atom::Zero),
    ("unb", Atom::Unb),
    ("radical", Atom::Radical),
];

/// A parsed conjecture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjecture {
    Atom(&'static str),
    Not(Box<Conjecture>),
    And(Box<Conjecture>, Box<Conjecture>),
    Or(Box<Conjecture>, Box<Conjecture>),
    Implies(Box<Conjecture>, Box<Conjecture>),
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conjecture::Atom(a) => f.write_str(a),
            Conjecture::Not(x) => write!(f, "!{x}"),
            Conjecture::And(a, b) => write!(f, "({a} & {b})"),
            Conjecture::Or(a, b) => write!(f, "({a} | {b})"),
            Conjecture::Implies(a, b) => write!(f, "({a} => {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        let single = match ch {
            '!' => Some(Tok::Not),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            _ => None,
        };
        if let Some(t) = single {
            toks.push(t);
            i += 1;
            continue;
        }
        match ch {
            c if c.is_ascii_whitespace() => i += 1,
            '=' if bytes.get(i + 1) == Some(&b'>') => {
                toks.push(Tok::Implies);
                i += 2;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                toks.push(Tok::Ident(text[start..i].to_string()));
            }
            other => {
                return Err(Error::BadConjecture(format!(
                    "unexpected character `{other}` at position {}",
                    i + 1
                )))
            }
        }
    }
    Ok(toks)
}

struct ConjParser {
    toks: Vec<Tok>,
    pos: usize,
}

impl ConjParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Conjecture> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            return Ok(Conjecture::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Conjecture> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            lhs = Conjecture::Or(Box::new(lhs), Box::new(self.conjunction()?));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Conjecture> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            lhs = Conjecture::And(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Conjecture> {
        if self.eat(&Tok::Not) {
            return Ok(Conjecture::Not(Box::new(self.unary()?)));
        }
        if self.eat(&Tok::Open) {
            let inner = self.implication()?;
            if !self.eat(&Tok::Close) {
                return Err(Error::BadConjecture("missing `)`".into()));
            }
            return Ok(inner);
        }
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let (canon, _) = ATOMS
                    .iter()
                    .find(|(n, _)| *n == name)
                    .ok_or_else(|| Error::BadConjecture(format!("unknown atom `{name}`")))?;
                Ok(Conjecture::Atom(canon))
            }
            Some(t) => Err(Error::BadConjecture(format!("unexpected token {t:?}"))),
            None => Err(Error::BadConjecture("unexpected end of formula".into())),
        }
    }
}

/// Parses a formula or one of the [`FUZZ_ALIASES`].
pub fn parse_conjecture(text: &str) -> Result<Conjecture> {
    let text = FUZZ_ALIASES
        .iter()
        .find(|(alias, _)| alias.eq_ignore_ascii_case(text.trim()))
        .map(|(_, f)| *f)
        .unwrap_or(text);
    let mut parser = ConjParser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let conj = parser.implication()?;
    if parser.pos != parser.toks.len() {
        return Err(Error::BadConjecture(format!(
            "trailing input after token {}",
            parser.pos
        )));
    }
    Ok(conj)
}

fn atom_of(name: &str) -> Atom {
    ATOMS.iter().find(|(n, _)| *n == name).map(|(_, a)| *a).expect("parsed atoms are known")
}

struct Instance {
    ring_index: usize,
    ctx: Arc<RingCtx>,
    ideal: Ideal,
    delta_index: usize,
    p: MnParams,
}

impl Instance {
    fn delta(&self) -> &ExpansionFn {
        &self.ctx.deltas[self.delta_index]
    }

    fn atom(&self, atom: Atom) -> Result<(bool, Option<Vec<usize>>)> {
        let (i, d, p) = (&self.ideal, self.delta(), self.p);
        let r = i.ring();
        let verdict = |v: Verdict| (v.holds(), v.witness().map(|w| w.elements()));
        Ok(match atom {
            Atom::W => verdict(classify::classify_mn(i, p, Some(d), true)?),
            Atom::C => verdict(classify::classify_mn(i, p, Some(d), false)?),
            Atom::WClosed => verdict(classify::classify_mn(i, p, None, true)?),
            Atom::Closed => verdict(classify::classify_mn(i, p, None, false)?),
            Atom::WSemi => verdict(classify::is_semi_n_absorbing(i, p.n, Some(d), true)?),
            Atom::Semi => verdict(classify::is_semi_n_absorbing(i, p.n, Some(d), false)?),
            Atom::WPrime => verdict(classify::is_prime(i, true)?),
            Atom::Prime => verdict(classify::is_prime(i, false)?),
            Atom::WDPrimary => verdict(classify::is_delta_primary(i, d, true)?),
            Atom::DPrimary => verdict(classify::is_delta_primary(i, d, false)?),
            Atom::WAbs => verdict(classify::is_n_absorbing(i, p.n, true)?),
            Atom::Abs => verdict(classify::is_n_absorbing(i, p.n, false)?),
            Atom::SWAbs => verdict(classify::is_strongly_n_absorbing(i, p.n, true)?),
            Atom::SAbs => verdict(classify::is_strongly_n_absorbing(i, p.n, false)?),
            Atom::WAdp => verdict(classify::is_n_absorbing_delta_primary(i, p.n, d, true)?),
            Atom::Adp => verdict(classify::is_n_absorbing_delta_primary(i, p.n, d, false)?),
            Atom::Nil => {
                let bad = i.members().iter().copied().find(|&x| !r.is_nilpotent(x));
                (bad.is_none(), bad.map(|x| vec![x]))
            }
            Atom::Zero => (i.is_zero(), None),
            Atom::Unb => {
                let u = classify::unbreakable_zero_set(i, d, p)?;
                (!u.is_empty(), u.first().map(|&x| vec![x]))
            }
            Atom::Radical => (i.radical() == *i, None),
        })
    }

    /// Value of the formula and the witness of the first false atom.
    fn eval(&self, c: &Conjecture) -> Result<(bool, Option<Vec<usize>>)> {
        Ok(match c {
            Conjecture::Atom(a) => {
                let (v, w) = self.atom(atom_of(a))?;
                (v, if v { None } else { w })
            }
            Conjecture::Not(x) => (!self.eval(x)?.0, None),
            Conjecture::And(a, b) => {
                let (va, wa) = self.eval(a)?;
                if !va {
                    return Ok((false, wa));
                }
                self.eval(b)?
            }
            Conjecture::Or(a, b) => {
                let (va, wa) = self.eval(a)?;
                let (vb, wb) = self.eval(b)?;
                (va || vb, wa.or(wb))
            }
            Conjecture::Implies(a, b) => {
                if !self.eval(a)?.0 {
                    return Ok((true, None));
                }
                self.eval(b)?
            }
        })
    }

    fn hypothesis(&self, c: &Conjecture) -> Result<bool> {
        match c {
            Conjecture::Implies(a, _) => Ok(self.eval(a)?.0),
            _ => Ok(true),
        }
    }

    /// Smallest ring first, then catalog order, ideal, δ and parameters.
    fn key(&self) -> (usize, usize, Vec<usize>, usize, usize, usize) {
        (
            self.ctx.ring.size(),
            self.ring_index,
            self.ideal.members().to_vec(),
            self.delta_index,
            self.p.m,
            self.p.n,
        )
    }
}

/// Settings of a fuzz run.
#[derive(Clone, Debug)]
pub struct FuzzOptions {
    pub seed: u64,
    pub trials: usize,
    pub workers: usize,
    pub params: ParamRanges,
}

impl Default for FuzzOptions {
    fn default() -> Self {
        FuzzOptions {
            seed: 0,
            trials: 1000,
            workers: 1,
            params: ParamRanges::default(),
        }
    }
}

/// Outcome of a fuzz run. Counterexamples are distinct and sorted by
/// minimality; the first is the minimal one.
#[derive(Clone, Debug, Serialize)]
pub struct FuzzReport {
    pub conjecture: String,
    pub catalog: String,
    pub seed: u64,
    pub trials: usize,
    pub hits: usize,
    pub passes: usize,
    pub failures: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl FuzzReport {
    pub fn minimal(&self) -> Option<&Counterexample> {
        self.counterexamples.first()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "fuzz {} on {} (seed {}): trials={} hits={} passes={} failures={}",
            self.conjecture, self.catalog, self.seed, self.trials, self.hits, self.passes, self.failures
        );
        match self.minimal() {
            Some(cx) => out.push_str(&format!("\nminimal counterexample: {}", cx.describe())),
            None => out.push_str("\nno counterexample found"),
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Hypothesis value, formula value and witness of one instance.
type Evaluated = (bool, bool, Option<Vec<usize>>);

/// Samples `trials` random instances from the catalog and evaluates the
/// conjecture on each.
pub fn fuzz(catalog: &Catalog, conjecture: &str, options: &FuzzOptions) -> Result<FuzzReport> {
    let conj = parse_conjecture(conjecture)?;
    let mut report = FuzzReport {
        conjecture: conj.to_string(),
        catalog: catalog.name().to_string(),
        seed: options.seed,
        trials: options.trials,
        hits: 0,
        passes: 0,
        failures: 0,
        counterexamples: Vec::new(),
    };
    if options.trials == 0 {
        return Ok(report);
    }
    if options.params.max_m < 2 {
        return Err(Error::InvalidParams("fuzzing needs max m ≥ 2".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot start workers: {e}")))?;
    let env = pool.install(|| Env::new(catalog, options.params))?;
    let rings: Vec<(usize, &Arc<RingCtx>)> = env
        .rings
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.ring.is_zero_ring())
        .collect();
    if rings.is_empty() {
        return Err(Error::Catalog("no ring with a proper ideal".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let instances: Vec<Instance> = (0..options.trials)
        .map(|_| {
            let (ring_index, ctx) = rings[rng.gen_range(0..rings.len())];
            let ideal = ctx.proper[rng.gen_range(0..ctx.proper.len())].clone();
            let delta_index = rng.gen_range(0..ctx.deltas.len());
            let m = rng.gen_range(2..=options.params.max_m);
            let n = rng.gen_range(1..m);
            Instance {
                ring_index,
                ctx: ctx.clone(),
                ideal,
                delta_index,
                p: MnParams { m, n },
            }
        })
        .collect();
    let results: Vec<Result<Evaluated>> = pool.install(|| {
        instances
            .par_iter()
            .map(|inst| {
                let hyp = inst.hypothesis(&conj)?;
                let (value, witness) = inst.eval(&conj)?;
                Ok((hyp, value, witness))
            })
            .collect()
    });
    let mut failing = Vec::new();
    for (inst, result) in instances.iter().zip(results) {
        let (hyp, value, witness) = result?;
        if hyp {
            report.hits += 1;
        }
        if value {
            if hyp {
                report.passes += 1;
            }
        } else {
            report.failures += 1;
            failing.push((inst.key(), inst, witness.unwrap_or_default()));
        }
    }
    failing.sort_by(|a, b| a.0.cmp(&b.0));
    failing.dedup_by(|a, b| a.0 == b.0);
    report.counterexamples = failing
        .into_iter()
        .map(|(_, inst, witness)| {
            Counterexample::new(&inst.ideal, inst.delta().label(), inst.p, witness, format!("{} fails", report.conjecture))
        })
        .collect();
    Ok(report)
}
