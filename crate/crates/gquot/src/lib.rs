//! Exact-arithmetic toolkit for torus actions on Plücker coordinates.
//!
//! The crate builds, at desk scale, the combinatorial index sets attached to a
//! block decomposition of a ground set (compositions, weakly increasing
//! strings, sorted pairs, fibers), the polynomial families they index
//! (Plücker relations, straightening binomials, orbit-closure Gröbner bases,
//! coordinate ideals), and the monomial maps between the associated rings,
//! together with a small exact Gröbner engine (Buchberger, reduction,
//! elimination, toric kernels, Hilbert functions) used to verify everything.
//!
//! All arithmetic is over arbitrary-precision rationals; there is no floating
//! point anywhere.

pub mod index;
pub mod io;
pub mod maps;
pub mod poly;
pub mod relations;
pub mod verify;

use std::time::Duration;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resource budget exceeded: {0}")]
    ResourceExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema mismatch: expected {expected}, found {found}")]
    SchemaMismatch { expected: u32, found: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Caps on Gröbner-style computations. Exceeding any cap aborts with
/// [`Error::ResourceExceeded`] instead of hanging.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Maximum number of S-pairs processed in one Buchberger run.
    pub max_spairs: u64,
    /// Maximum number of basis elements accumulated.
    pub max_basis: usize,
    /// Maximum total degree of any S-pair lcm considered.
    pub max_degree: u32,
    /// Optional wall-clock cap. `None` keeps runs machine-independent.
    pub wall: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_spairs: 2_000_000,
            max_basis: 20_000,
            max_degree: 64,
            wall: None,
        }
    }
}

impl Budget {
    /// A small budget for runs where giving up quickly is acceptable.
    pub fn tight() -> Self {
        Budget {
            max_spairs: 50_000,
            max_basis: 2_000,
            max_degree: 32,
            wall: None,
        }
    }
}
