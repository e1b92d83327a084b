//! Exact symbolic algebra for expressing integers as sums of cubes of
//! integer-coefficient polynomials.
//!
//! The crate provides:
//!
//! - [`poly`]: exact sparse multivariate polynomial arithmetic over
//!   arbitrary-precision integers, with canonical text, JSON, and LaTeX
//!   forms;
//! - [`catalog`]: constructors for the catalog of cube identities, fixed and
//!   parametrized;
//! - [`derivation`]: symbolic re-derivation of each identity family from its
//!   ansatz, with an auditable step-by-step trace;
//! - [`verify`]: exact verification that a representation's cubes sum to its
//!   target, plus numeric spot checks;
//! - [`search`]: bounded exhaustive search for cube representations of small
//!   integers, shardable and deterministic;
//! - [`represent`]: four- and five-cube representations of a given integer.

pub mod catalog;
pub mod derivation;
pub mod poly;
pub mod represent;
pub mod representation;
pub mod search;
pub mod verify;

pub use catalog::{
    catalog_fixed, families, five_cubes_residue, five_cubes_with_shift, four_cubes_sum_pq,
    four_cubes_two_diff, one_bivariate, two_trivariate, CatalogError, IdentityFamily, FIXED_IDS,
};
pub use derivation::{
    derive_five_residue, derive_four_even, derive_four_pq, derive_one_bivariate,
    derive_two_trivariate, DerivationError, DerivationTrace,
};
pub use poly::{Monomial, PolyError, Polynomial};
pub use represent::{represent_five, represent_four, RepresentError};
pub use representation::{scale_representation, ParamValue, Representation};
pub use search::{
    merge_results, search, search_shard, SearchError, SearchResult, SearchSpace, SymmetryMode,
};
pub use verify::{
    residual_via_mul, residual_via_pow, verifier_check, verifier_spot_check, SpotCheck,
    VerificationReport,
};
