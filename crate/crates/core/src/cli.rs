//! Command-line front end. [`run`] does all the work and returns the exit
//! code and output, so the binary is a thin wrapper and tests can drive it
//! in process.
//!
//! Exit codes: 0 success, 1 counterexample found, 2 usage or construction
//! error.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{self, MnParams};
use crate::dsl;
use crate::error::Result;
use crate::ideal;
use crate::theorems::{self, Catalog, FuzzOptions, ParamRanges, Verifier, VerifyOptions};

#[derive(Parser, Debug, Clone)]
#[command(name = "ringlab", version, about = "Finite rings, ideals and (m,n)-closed δ-primary classification")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// List the ideal lattice of a ring.
    Ideals {
        ring: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every classifier on one ideal.
    Classify(ClassifyArgs),
    /// Check registry theorems over a catalog.
    Verify(VerifyArgs),
    /// Search for counterexamples to a conjecture.
    Fuzz(FuzzArgs),
    /// List the theorem registry.
    Theorems {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    pub ring: String,
    /// Generators, e.g. `{4}` or `2,3`.
    #[arg(long, default_value = "{}")]
    pub ideal: String,
    #[arg(long, default_value = "id")]
    pub delta: String,
    #[arg(short, default_value_t = 2)]
    pub m: usize,
    #[arg(short, default_value_t = 1)]
    pub n: usize,
    /// Headline the weakly variant.
    #[arg(long)]
    pub weakly: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct CatalogArgs {
    /// `small` or a catalog file.
    #[arg(long, default_value = "small")]
    pub catalog: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = 4)]
    pub max_m: usize,
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl CatalogArgs {
    fn params(&self) -> ParamRanges {
        ParamRanges {
            max_m: self.max_m,
            max_absorbing_n: self.max_n,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// A single theorem id; all true theorems when omitted.
    #[arg(long)]
    pub theorem: Option<String>,
    /// Also run the entries known to be false.
    #[arg(long)]
    pub include_known_false: bool,
    #[arg(long, default_value_t = theorems::DEFAULT_MIN_HITS)]
    pub min_hits: usize,
    #[command(flatten)]
    pub common: CatalogArgs,
}

#[derive(Args, Debug, Clone)]
pub struct FuzzArgs {
    /// A formula such as `W & !C => nil`, or an alias like `F-W2C`.
    #[arg(long)]
    pub conjecture: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[command(flatten)]
    pub common: CatalogArgs,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn ok(code: i32, stdout: String) -> RunOutput {
        RunOutput {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => execute(&config),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                RunOutput::ok(0, text)
            } else {
                RunOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

/// Runs an already parsed configuration.
pub fn execute(config: &RunConfig) -> RunOutput {
    let result = match &config.command {
        Command::Ideals { ring, format } => ideals(ring, *format),
        Command::Classify(args) => classify(args),
        Command::Verify(args) => verify(args),
        Command::Fuzz(args) => fuzz(args),
        Command::Theorems { format } => Ok(list(*format)),
    };
    match result {
        Ok((code, stdout)) => RunOutput::ok(code, stdout),
        Err(e) => RunOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn ideals(ring: &str, format: Format) -> Result<(i32, String)> {
    let r = dsl::parse_ring(ring)?;
    let lattice = ideal::lattice(&r)?;
    let primes = lattice.primes();
    #[derive(serde::Serialize)]
    struct Row {
        gens: Vec<usize>,
        members: Vec<String>,
        prime: bool,
    }
    let rows: Vec<Row> = lattice
        .ideals()
        .iter()
        .map(|i| Row {
            gens: i.generators(),
            members: i.members().iter().map(|&x| r.label(x)).collect(),
            prime: primes.contains(i),
        })
        .collect();
    if format == Format::Json {
        return Ok((0, json(&serde_json::json!({ "ring": r.expr(), "size": r.size(), "ideals": rows }))));
    }
    let mut out = format!("{} ({} elements, {} ideals)\n", r.expr(), r.size(), rows.len());
    for (k, row) in rows.iter().enumerate() {
        let gens: Vec<String> = row.gens.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(
            out,
            "{k:>3}  ({})  {{{}}}{}",
            gens.join(","),
            row.members.join(","),
            if row.prime { "  prime" } else { "" }
        );
    }
    Ok((0, out))
}

fn classify(args: &ClassifyArgs) -> Result<(i32, String)> {
    let r = dsl::parse_ring(&args.ring)?;
    let i = dsl::parse_ideal(&args.ideal, &r)?;
    let delta = dsl::parse_delta_expr(&args.delta, &r)?;
    let p = MnParams::new(args.m, args.n)?;
    let report = classify::classify_full(&i, &delta, p)?;
    if args.format == Format::Json {
        return Ok((0, json(&report)));
    }
    let prefix = if args.weakly { "weakly-" } else { "" };
    let headline = format!("{prefix}({},{})-closed-δ_{}", p.m, p.n, delta.label());
    let holds = report.get(&headline).map(|e| e.holds).unwrap_or(false);
    Ok((0, format!("{headline}: {holds}\n{report}\n")))
}

fn verify(args: &VerifyArgs) -> Result<(i32, String)> {
    let catalog = Catalog::load(&args.common.catalog)?;
    let options = VerifyOptions {
        workers: args.common.workers,
        min_hits: args.min_hits,
        seed: args.common.seed,
        params: args.common.params(),
    };
    let verifier = Verifier::new(&catalog, options)?;
    let report = match &args.theorem {
        Some(id) => {
            let t = verifier.run(id)?;
            verifier.wrap(vec![t])
        }
        None => verifier.run_all(args.include_known_false)?,
    };
    let code = if report.is_failure() { 1 } else { 0 };
    let text = match args.common.format {
        Format::Json => json(&report),
        Format::Text => report.to_text(),
    };
    Ok((code, text))
}

fn fuzz(args: &FuzzArgs) -> Result<(i32, String)> {
    let catalog = Catalog::load(&args.common.catalog)?;
    let options = FuzzOptions {
        seed: args.common.seed,
        trials: args.trials,
        workers: args.common.workers,
        params: args.common.params(),
    };
    let report = theorems::fuzz(&catalog, &args.conjecture, &options)?;
    let code = if report.failures > 0 { 1 } else { 0 };
    let text = match args.common.format {
        Format::Json => json(&report),
        Format::Text => format!("{}\n", report.to_text()),
    };
    Ok((code, text))
}

fn list(format: Format) -> (i32, String) {
    let infos = theorems::list_theorems();
    if format == Format::Json {
        return (0, json(&infos));
    }
    let mut out = String::new();
    for t in infos {
        let tag = if t.known_false { "  [known false]" } else { "" };
        let _ = writeln!(out, "{:<9} {}{}", t.id, t.summary, tag);
    }
    (0, out)
}
