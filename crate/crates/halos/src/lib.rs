//! Exact arithmetic for generalized seminorms ("places") and their value halos.
//!
//! A halo is a commutative semiring with a partial order compatible with both
//! operations. The places catalogued here take values in positive totally
//! ordered halos built from four bricks: the trivial halo, tropical halos over
//! lexicographic rational groups, nonnegative rationals, and nonnegative surd
//! sums, closed under lexicographic products. Everything is exact: no floats
//! in any decision path.
//!
//! Module map:
//! - [`halo`]: value halos, their arithmetic, comparisons, tempered growth.
//! - [`group`]: lexicographic ordered groups, convex subgroups, the
//!   compatibility subgroup of a place and its retraction.
//! - [`ring`]: elements of the supported coefficient rings (Z, Q, Fp[X],
//!   Z[X], Q[X], Q(X)) and Gaussian rationals.
//! - [`place`]: the seminorm catalog, evaluation, kernels, property checks,
//!   classification and equivalence oracles.
//! - [`line`]: points of the affine line over a p-adic or archimedean base,
//!   disc-filter classification, analyticity.
//! - [`spectra`]: harmonious spectra of Z, rational domains and their
//!   topology, Berkovich comparison.
//! - [`sheaf`]: sections and germs of the structure sheaf on Spe(Z),
//!   completions at exact precision, adele-style germ data.
//! - [`json`]: the documented JSON schema for every public type.
//! - [`suites`]: seeded randomized check suites shared by tests and the CLI.

pub mod arith;
pub mod error;
pub mod group;
pub mod halo;
pub mod json;
pub mod line;
pub mod place;
pub mod ring;
pub mod sheaf;
pub mod spectra;
pub mod suites;

pub use error::Error;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
