//! Algebraic theories (abstract clones), semi-closed λ-theories, Λ-algebras
//! and their representations, with every equation decided on term
//! representatives by fuel-bounded normalization.
//!
//! Modules, bottom-up:
//!
//! - [`term`]: de Bruijn λ-terms, parsing, printing, substitution, normal-order
//!   reduction and three-valued equality.
//! - [`clone`]: the abstract clone interface, a law harness, finite
//!   endomorphism clones and theories of extensions.
//! - [`lambda_theory`]: semi-closed structure, the initial λ-theory, the
//!   interpreter and theory-map checks.
//! - [`algebra`]: Λ-algebras presented by constants, homomorphisms, the monoid
//!   `M_A` and the retracts `A(n)`.
//! - [`representation`]: the function-space isomorphism `A(2) ≅ U^U`, product
//!   witnesses and the endomorphism λ-theory `U_A`.
//! - [`karoubi`]: the category of retracts of `M_A` and its cartesian closed
//!   structure.
//! - [`fundamental`]: the comparison maps `η` and `ε` and their identities.
//! - [`suite`]: deterministic check suites and their JSON reports.

pub mod algebra;
pub mod clone;
pub mod error;
pub mod fundamental;
pub mod karoubi;
pub mod lambda_theory;
pub mod report;
pub mod representation;
pub mod suite;
pub mod term;

pub use error::Error;
pub use term::{EqVerdict, Reducer, Term};

/// The generator behind every seeded suite.
pub type SuiteRng = rand_chacha::ChaCha8Rng;

pub fn suite_rng(seed: u64) -> SuiteRng {
    use rand::SeedableRng;
    SuiteRng::seed_from_u64(seed)
}
