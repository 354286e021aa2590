//! Exact diffeomorphism invariants of doubling Calabi-Yau threefolds built
//! from the seventeen Fano threefold families of Picard rank one.
//!
//! The pipeline is catalog row -> triple-product tensor -> cubic cup form and
//! `c2` pairing on `H^2(M, Z)` -> kernel generator -> lambda invariant. All
//! arithmetic is over arbitrary-precision integers and rationals.

pub mod catalog;
pub mod equivalence;
pub mod error;
pub mod export;
pub mod intersection;
pub mod invariants;
mod json;
pub mod verify;

pub use catalog::{
    chern_series_ci, derive_c2_coeffs, fano_genus, hodge_numbers, load_catalog, Catalog, FanoFamily, PublishedRow,
    TensorProvenance,
};
pub use equivalence::{equivalence_search, transform, UnimodularMatrix, Verdict, DEFAULT_BOUND};
pub use error::{Error, Result};
pub use intersection::{pair_c2, triple_product, Deg2Class, Rational, TripleTensor};
pub use invariants::{
    chern_pairing, cubic_form, generators, geometric_tensor, invariant_record, invert_tensor, kernel_generator,
    lambda_invariant, ChernPairing, CubicForm, InvariantRecord,
};
pub use verify::{verify, CheckName, Status, VerificationReport};
