//! Deterministic primality testing with the AKS algorithm, plus the tooling
//! around it: a Miller-Rabin baseline, a storage-cost model for the
//! polynomial congruence step, and an auditor for `(n, r)` parameter pairs.
//!
//! All integers are arbitrary precision ([`Natural`]). Nothing on a decision
//! path uses floating point.

pub mod aks;
pub mod error;
pub mod estimator;
pub mod miller_rabin;
pub mod number_theory;
pub mod parse;
pub mod poly_ring;
pub mod validator;

pub use aks::{
    aks_test, aks_test_verbose, find_r, AksTrace, CompositeWitness, Outcome, ProgressEvent, Verdict,
};
pub use error::{Error, Result};
pub use estimator::{
    aks_storage_bits, compare_table, estimate, ResourceEstimate, Scenario, ScenarioKind,
};
pub use miller_rabin::{
    decompose, default_bases, mr_round, mr_test, random_bases, MrDecomposition, MrOutcome,
    DEFAULT_BASES,
};
pub use number_theory::{
    bit_length, euler_phi, gcd, integer_sqrt, is_perfect_power, multiplicative_order,
    witness_bound, PerfectPowerWitness,
};
pub use parse::parse_natural;
pub use poly_ring::{congruence_holds, peak_intermediate_coefficients, RingElement};
pub use validator::{audit_batch, parse_pairs, validate, ValidationReport};

/// Arbitrary-precision non-negative integer used for every quantity in the crate.
pub type Natural = num_bigint::BigUint;
