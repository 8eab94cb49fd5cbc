//! Exact computations on finite lattices.
//!
//! The crate covers the join-cover calculus (irredundant, tight and minimal
//! covers and their refinement), brute-force identity and quasi-identity
//! checking, seeds and spatiality tests, congruences, the `K(D)` family of
//! lattices built from a bounded distributive lattice `D`, and exhaustive
//! enumeration of small lattices up to isomorphism.
//!
//! In a finite lattice every element is compact and every join-irreducible
//! element is completely join-irreducible, so the ideal and filter lattices
//! are isomorphic to the lattice itself. None of that machinery is modelled
//! separately.

use std::sync::OnceLock;

pub mod claims;
pub mod congruence;
pub mod construct;
pub mod covers;
pub mod enumerate;
mod error;
pub mod io;
pub mod kd;
pub mod lattice;
pub mod named;
pub mod seeds;
mod set;
pub mod terms;

pub use error::{LatticeError, Result};
pub use lattice::Lattice;
pub use set::ElementSet;

/// Default number of term evaluations an exhaustive check may perform.
pub const DEFAULT_EVAL_BUDGET: u128 = 100_000_000;

/// Cost ceilings for the brute-force procedures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest lattice on which subset-enumerating procedures run.
    pub max_subset_lattice: usize,
    /// Largest number of assignments an identity check may visit.
    pub eval_budget: u128,
    /// Largest lattice whose whole congruence lattice is computed.
    pub max_congruence_lattice: usize,
    /// Largest size accepted by the lattice enumerator.
    pub max_enumeration_size: usize,
}

impl Default for Limits {
    /// The stock limits. `LATKIT_BUDGET` overrides the evaluation budget.
    fn default() -> Self {
        static BUDGET: OnceLock<u128> = OnceLock::new();
        let eval_budget = *BUDGET.get_or_init(|| {
            std::env::var("LATKIT_BUDGET")
                .ok()
                .and_then(|v| v.trim().replace('_', "").parse().ok())
                .unwrap_or(DEFAULT_EVAL_BUDGET)
        });
        Limits { max_subset_lattice: 64, eval_budget, max_congruence_lattice: 40, max_enumeration_size: 7 }
    }
}

impl Limits {
    /// Lifts the size guards while keeping the evaluation budget.
    pub fn overridden() -> Self {
        Limits {
            max_subset_lattice: usize::MAX,
            max_congruence_lattice: usize::MAX,
            max_enumeration_size: enumerate::MAX_ENUMERATION_SIZE,
            ..Limits::default()
        }
    }

    pub(crate) fn guard(&self, what: &'static str, size: u128, limit: u128) -> Result<()> {
        if size > limit {
            Err(LatticeError::SizeGuard { what, size, limit })
        } else {
            Ok(())
        }
    }

    pub(crate) fn guard_subsets(&self, l: &Lattice) -> Result<()> {
        self.guard("subset enumeration", l.len() as u128, self.max_subset_lattice as u128)
    }
}

/// Outcome of a universally quantified check: either it holds, or here is
/// a witness against it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }
}
