//! Ring catalogs and the per-ring data shared by theorem checks.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex};

use crate::classify::MnParams;
use crate::dsl;
use crate::error::{Error, Result};
use crate::expansion::{builtin_delta, DeltaKind, ExpansionFn};
use crate::ideal::{self, Ideal, IdealLattice};
use crate::ring::FiniteRing;

/// The default catalog.
pub const SMALL_CATALOG: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12", "Z13", "Z14",
    "Z15", "Z16",
    "Z2 x Z2",
    "Z2 x Z4",
    "Z4 x Z2",
    "Z3 x Z3",
    "triv(Z2, M[2])",
    "triv(Z4, M[4])",
    "triv(Z2, M[2,2])",
    "triv(Z8, M[8])",
    "dup(Z4, {2})",
    "amal(Z4, Z4, id, {2})",
    "quot(Z16, {8})",
    "loc(Z12, {1,5,7,11})",
];

/// Parameter ranges for theorem instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamRanges {
    /// Largest `m` in (m,n) pairs; `n` ranges over `1..m`.
    pub max_m: usize,
    /// Largest `n` for the n-absorbing family.
    pub max_absorbing_n: usize,
}

impl Default for ParamRanges {
    fn default() -> Self {
        ParamRanges {
            max_m: 4,
            max_absorbing_n: 3,
        }
    }
}

impl ParamRanges {
    /// All `(m, n)` with `1 ≤ n < m ≤ max_m`.
    pub fn mn_pairs(&self) -> Vec<MnParams> {
        (2..=self.max_m)
            .flat_map(|m| (1..m).map(move |n| MnParams { m, n }))
            .collect()
    }
}

/// A named list of rings.
#[derive(Clone, Debug)]
pub struct Catalog {
    name: String,
    exprs: Vec<String>,
    rings: Vec<FiniteRing>,
}

impl Catalog {
    /// The built-in small catalog.
    pub fn small() -> Catalog {
        Catalog::from_exprs("small", SMALL_CATALOG.iter().map(|s| s.to_string()))
            .expect("the built-in catalog parses")
    }

    /// `small` or a path to a catalog file.
    pub fn load(source: &str) -> Result<Catalog> {
        if source == "small" {
            return Ok(Catalog::small());
        }
        let text = std::fs::read_to_string(Path::new(source))
            .map_err(|e| Error::Catalog(format!("cannot read {source}: {e}")))?;
        Catalog::parse(source, &text)
    }

    /// Parses catalog text: one ring expression per line, `#` starts a
    /// comment, blank lines are ignored.
    pub fn parse(name: &str, text: &str) -> Result<Catalog> {
        let mut exprs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                dsl::parse_ring_expr(line)
                    .map_err(|e| Error::Catalog(format!("line {}: {e}", lineno + 1)))?;
                exprs.push(line.to_string());
            }
        }
        Catalog::from_exprs(name, exprs)
    }

    pub fn from_exprs(name: &str, exprs: impl IntoIterator<Item = String>) -> Result<Catalog> {
        let exprs: Vec<String> = exprs.into_iter().collect();
        let rings = exprs
            .iter()
            .map(|e| dsl::parse_ring(e).map_err(|err| Error::Catalog(format!("{e}: {err}"))))
            .collect::<Result<_>>()?;
        Ok(Catalog {
            name: name.to_string(),
            exprs,
            rings,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn exprs(&self) -> &[String] {
        &self.exprs
    }

    pub fn rings(&self) -> &[FiniteRing] {
        &self.rings
    }
}

/// A ring with its lattice, proper ideals and expansion pool.
pub struct RingCtx {
    pub ring: FiniteRing,
    pub lattice: Arc<IdealLattice>,
    pub proper: Vec<Ideal>,
    /// `id`, `rad` and up to three `addk(K)` for the smallest nonzero proper
    /// ideals `K`.
    pub deltas: Vec<ExpansionFn>,
}

impl RingCtx {
    pub fn new(ring: &FiniteRing) -> Result<RingCtx> {
        let lattice = ideal::lattice(ring)?;
        let proper: Vec<Ideal> = lattice.proper().cloned().collect();
        let mut deltas = vec![
            builtin_delta(ring, DeltaKind::Identity)?,
            builtin_delta(ring, DeltaKind::Radical)?,
        ];
        for k in proper.iter().filter(|k| !k.is_zero()).take(3) {
            deltas.push(builtin_delta(ring, DeltaKind::AddK(k.generators()))?);
        }
        Ok(RingCtx {
            ring: ring.clone(),
            lattice,
            proper,
            deltas,
        })
    }

    pub fn delta(&self, label: &str) -> Option<&ExpansionFn> {
        self.deltas.iter().find(|d| d.label() == label)
    }
}

/// Shared state for one verification run.
pub struct Env {
    pub params: ParamRanges,
    pub rings: Vec<Arc<RingCtx>>,
    cache: Mutex<HashMap<String, Arc<RingCtx>>>,
}

impl Env {
    pub fn new(catalog: &Catalog, params: ParamRanges) -> Result<Env> {
        let env = Env {
            params,
            rings: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        };
        let rings = catalog
            .rings()
            .iter()
            .map(|r| env.ctx(r))
            .collect::<Result<_>>()?;
        Ok(Env { rings, ..env })
    }

    /// The (cached) context of any ring.
    pub fn ctx(&self, ring: &FiniteRing) -> Result<Arc<RingCtx>> {
        let key = ring.expr();
        if let Some(c) = self.cache.lock().expect("cache lock").get(&key) {
            if &c.ring == ring {
                return Ok(c.clone());
            }
        }
        let ctx = Arc::new(RingCtx::new(ring)?);
        self.cache
            .lock()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| ctx.clone());
        Ok(ctx)
    }

    /// Catalog rings with at least one proper ideal.
    pub fn nonzero_rings(&self) -> impl Iterator<Item = &Arc<RingCtx>> {
        self.rings.iter().filter(|c| !c.ring.is_zero_ring())
    }
}
