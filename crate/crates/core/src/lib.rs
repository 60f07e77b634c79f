//! Rational approximants to `n^(1/m)` by rewriting words and counting symbols.
//!
//! The root-family substitution on an `m`-letter alphabet,
//!
//! ```text
//! 0 -> 0 1,  1 -> 1 2,  ...,  m-2 -> (m-2) (m-1),  m-1 -> (m-1) 0 0 ... 0   (n zeros)
//! ```
//!
//! generates words whose symbol frequencies satisfy `n_j / n_{j+1} -> n^(1/m)`.
//! The crate iterates it either literally ([`substitution`]) or through its
//! incidence matrix acting on count vectors ([`engine`]), checks the dominant
//! eigenpair exactly ([`spectral`]), and emits exact rational approximant
//! tables ([`approx`]).
//!
//! Matrix and vector code is generic over the entry type; the aliases below
//! fix the arbitrary-precision choices used throughout.
//!
//! ```
//! use rootsub::{approximants, ApproxConfig, Counts};
//!
//! let seed = Counts::unit(2, 0);
//! let config = ApproxConfig { max_iters: 16, ..Default::default() };
//! let last = approximants(2, 2, seed, config).unwrap().last().unwrap();
//! assert_eq!(last.decimals[0], "1.41421356237469");
//! ```

pub mod approx;
pub mod engine;
pub mod error;
pub mod scalar;
pub mod spectral;
pub mod substitution;

pub use approx::{
    abs_error, approximants, decimal, ratio, reference_digits, ApproxConfig, ApproximantRow,
    Approximants, Ratio, RootTarget, StopReason,
};
pub use engine::{incidence, matrix_power, power_counts, step, IncidenceMatrix};
pub use error::{Error, Result};
pub use scalar::{Reach, Semiring};
pub use spectral::{
    dominant_eigenvalue_root_family, integer_root_floor, is_primitive, perron_vector_root_family,
    power_iteration, EigenEstimate, FixedPointDecimal, PowerIteration,
};
pub use substitution::{
    count, iterate_words, make_root_rules, rewrite, CountVector, RuleSet, Symbol, Word,
    WordSequence, DEFAULT_LENGTH_CAP,
};

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision count vector.
pub type Counts = CountVector<num_bigint::BigUint>;
/// Arbitrary-precision incidence matrix.
pub type Matrix = IncidenceMatrix<num_bigint::BigUint>;
/// Machine-word count vector, for shallow iterates.
pub type Counts64 = CountVector<u64>;
/// Machine-word incidence matrix, for shallow iterates.
pub type Matrix64 = IncidenceMatrix<u64>;
/// Zero-pattern matrix used for reachability.
pub type ReachMatrix = IncidenceMatrix<Reach>;
/// Double-precision eigenpair estimate.
pub type Eigen64 = EigenEstimate<f64>;
/// Single-precision eigenpair estimate.
pub type Eigen32 = EigenEstimate<f32>;
