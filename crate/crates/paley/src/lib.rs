//! Generalized Paley graphs of quadratic characters.
//!
//! For every fundamental discriminant delta, the Kronecker symbol
//! `a -> (delta/a)` is a primitive quadratic character chi of conductor
//! D = |delta|, and the circulant (di)graph P_delta on Z/D with arcs
//! u -> v whenever chi(v - u) = 1 generalizes the classical Paley graph of
//! a prime p = 1 (mod 4). This crate builds those graphs and makes their
//! structure theory computable, exactly:
//!
//! - [`ntheory`]: the integer kernel (factorization, Mobius, totient,
//!   Legendre/Kronecker symbols, Ramanujan sums, coprime half-sums).
//! - [`qchar`]: fundamental discriminants, character tables, Gauss sums,
//!   and L(2, chi) both in closed form and as a truncated series.
//! - [`graph`]: the circulant graph itself plus DOT / edge-list / JSON
//!   exports.
//! - [`spectral`]: the closed-form spectrum as exact elements of
//!   Q(sqrt(delta)), a numeric DFT oracle, and the exact spectral gap
//!   witness lambda(G).
//! - [`ramanujan`]: the Ramanujan property decided twice — spectrally and
//!   by an arithmetic classification of the conductor — with exact
//!   comparisons throughout.
//! - [`cheeger`]: the exact rational alpha upper bound on the Cheeger
//!   number, its L-function form, and exhaustive verification for small D.
//! - [`scan`] and [`verify`]: bulk sweeps over discriminant ranges and the
//!   cross-check suite behind `cargo test` and the CLI `verify`
//!   subcommand.
//!
//! Heavy sweeps are data-parallel via rayon when the default `parallel`
//! feature is enabled; disabling it yields a fully sequential build with
//! the same results.

pub mod cheeger;
pub mod error;
pub mod graph;
pub mod ntheory;
pub mod qchar;
pub mod ramanujan;
pub mod scan;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{ExportFormat, PaleyGraph};
pub use qchar::{FundamentalDiscriminant, QuadraticCharacter};

/// Exact rational type used for eigenvalues, bounds, and Cheeger numbers.
pub type Rational = num_rational::Ratio<i64>;

/// Configures the size of the global worker pool used by parallel sweeps.
/// A no-op when called twice or when the `parallel` feature is off.
pub fn set_parallelism(jobs: usize) {
    #[cfg(feature = "parallel")]
    {
        if jobs > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
    }
}
