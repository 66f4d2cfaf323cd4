//! Finite commutative rings with identity, their ideal lattices, expansion
//! functions on ideals, and brute-force decision procedures for the
//! weakly (m,n)-closed δ-primary family of ideal classes.
//!
//! Everything is computed by exhaustive search over explicit operation
//! tables, so every answer can be re-checked against the definitions.
//! The [`theorems`] module packages ideal-theoretic statements as
//! machine-checkable registry entries and verifies them over catalogs of
//! small rings.
//!
//! ```
//! use ringlab::{classify, ideal, ring, MnParams};
//!
//! let z8 = ring::zmod(8).unwrap();
//! let i = ideal::ideal_closure(&z8, &[4]).unwrap();
//! let weakly = classify::classify_mn(&i, MnParams::new(3, 1).unwrap(), None, true).unwrap();
//! assert!(weakly.holds());
//! ```

pub mod classify;
pub mod cli;
pub mod construct;
pub mod dsl;
mod error;
pub mod expansion;
pub mod ideal;
pub mod ring;
pub mod theorems;

use std::sync::OnceLock;

pub use classify::{MnParams, Verdict, Witness};
pub use error::{Error, Result};
pub use expansion::ExpansionFn;
pub use ideal::{Ideal, IdealLattice};
pub use ring::{FiniteRing, RingHom};

/// Default upper bound on the number of elements of a constructed ring.
pub const DEFAULT_SIZE_BOUND: usize = 4096;

/// Global limits applied by constructions and classifiers.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest ring any construction may produce.
    pub max_ring_size: usize,
    /// Largest `n` accepted by the n-absorbing family of classifiers.
    pub max_absorbing_n: usize,
    /// Rings above this size get sampled rather than exhaustive axiom checks
    /// for expansion functions.
    pub exhaustive_axiom_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ring_size: DEFAULT_SIZE_BOUND,
            max_absorbing_n: 3,
            exhaustive_axiom_limit: 512,
        }
    }
}

/// Process-wide limits. `RINGLAB_SIZE_BOUND` overrides the size bound.
pub fn limits() -> &'static Limits {
    static LIMITS: OnceLock<Limits> = OnceLock::new();
    LIMITS.get_or_init(|| {
        let mut limits = Limits::default();
        if let Some(bound) = std::env::var("RINGLAB_SIZE_BOUND")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&b| b > 0)
        {
            limits.max_ring_size = bound;
        }
        limits
    })
}

pub(crate) fn check_size(size: usize) -> Result<()> {
    let bound = limits().max_ring_size;
    if size > bound {
        return Err(Error::SizeBoundExceeded { size, bound });
    }
    Ok(())
}
