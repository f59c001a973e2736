//! Exact calculus for the diagrammatic Hecke category in its bimodule model,
//! and reduction of Rouquier complexes by large-scale Gaussian elimination.
//!
//! The crate is organized bottom-up:
//!
//! - [`coxeter`]: Coxeter systems and all word/subword/subexpression/multiword
//!   combinatorics.
//! - [`realization`]: realizations (roots, coroots, chosen degree-2 elements
//!   `δ_s`) as validated data, loaded from JSON.
//! - [`poly`] and [`ring`]: the exact graded polynomial ring `R = S(𝔥*)` over
//!   `ℚ`, with the reflection action and Demazure operators `∂_s`.
//! - [`bimod`]: Bott-Samelson objects `B_w` as free left `R`-modules of rank
//!   `2^{ℓ(w)}`, morphisms as matrices in the `{1, δ_s}` slot basis, and the
//!   one-color diagram generators (dots, trivalents, decorations) realized as
//!   exact matrices.
//! - [`complex`]: bounded complexes of shifted Bott-Samelson summands, tensor
//!   products with the Koszul sign, chain maps, homotopies, and the Gaussian
//!   elimination engine with certificate accumulation.
//! - [`polytope`]: polytopal sets of multisimplices, collapse schedules, and
//!   edge/path isomorphisms.
//! - [`hecke`]: the Hecke algebra in the standard basis, used as a
//!   decategorified cross-check (Euler characteristics).
//! - [`rouquier`]: cube and reduced Rouquier complexes, the multiword
//!   refinement, the projection `π`, and the end-to-end reduction pipeline.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and all
//! verification is by equality of matrices, never by numerical tolerance.

pub mod bimod;
pub mod complex;
pub mod coxeter;
pub mod hecke;
pub mod io;
pub mod poly;
pub mod polytope;
pub mod realization;
pub mod ring;
pub mod rouquier;



pub use coxeter::{BraidWord, CoxeterSystem, Gen, Multiword, Subexpr, Word};
pub use poly::{Coeff, Poly};
pub use realization::Realization;
pub use ring::RingCtx;

/// Crate-wide error type for fallible operations.
///
/// Contract violations in hot algebraic paths (mismatched composition shapes,
/// inhomogeneous entries) panic instead; those indicate bugs, not bad input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("block is not invertible: {0}")]
    NotInvertible(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("collapse schedule stuck: {0}")]
    ScheduleStuck(String),
    #[error("group enumeration exceeded cap of {0}")]
    CapExceeded(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
