//! Exact computation of unrestricted Kostka polynomials and verification of
//! fermionic q-series identities.
//!
//! The crate evaluates both sides of the fermionic identity for tensor
//! products of single-row crystals: a sum over unrestricted rigged
//! configurations weighted by cocharge, and a sum over all crystal paths
//! weighted by intrinsic energy. The two are linked by an explicit
//! statistic-preserving bijection. The [`qseries`] module carries the
//! q-series side: Bailey pairs, generic fermionic and bosonic evaluators,
//! and character presets.

pub mod qalg;
pub mod combinat;
pub mod crystals;
pub mod rc;
pub mod bijection;
pub mod kostka;
pub mod qseries;
mod error;

pub use error::{Error, Result};

/// Library version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
