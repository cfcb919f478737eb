//! Nonadditive measures, conditional aggregation operators and the
//! Choquet-Sugeno-like operator on finite ground sets.
//!
//! The crate is organized around a handful of modules:
//!
//! - [`setfn`] - ground sets, set functions, monotone measures, the Möbius
//!   and zeta transforms, duals, and seeded samplers;
//! - [`condagg`] - conditional aggregation operators `A(·|D)`, built-in
//!   families and axiom/property checkers;
//! - [`decomp`] - collections, decomposition systems (partitions, chains,
//!   singletons), and relations on `D ∪ {∅}`;
//! - [`csop`] - the Choquet-Sugeno-like operator, the L-function catalog
//!   and the operators directly expressible as CS configurations;
//! - [`integrals`] - the four discrete Choquet forms and the ordered-sum
//!   Choquet-like family (fC, reverse, d-Choquet, (F1,F2), decomposition,
//!   inclusion-exclusion) together with their level-set variants;
//! - [`laws`] - machine verification: condition checkers, equivalence
//!   sweeps and counterexample search with replayable witnesses;
//! - [`json`] - the JSON descriptors and problem-file format used by the
//!   CLI and the FFI layer.

pub mod condagg;
pub mod csop;
pub mod decomp;
pub mod integrals;
pub mod json;
pub mod laws;
pub mod setfn;

/// Global comparison tolerance for equality checks on reals.
pub const TOL: f64 = 1e-9;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid ground set size {0}: supported range is 1..=12")]
    InvalidGroundSize(usize),
    #[error("ground set mismatch: n={0} vs n={1}")]
    GroundMismatch(usize, usize),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("capacity guard: {0}")]
    Capacity(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// `true` when `a` and `b` agree within [`TOL`].
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL
}
