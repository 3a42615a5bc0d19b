//! Exponent-selective integers.
//!
//! Given a finite set `P` of primes, `x = 2^(m+1)` with `m` the product of `P`
//! is a sum of two `p`-th powers of positive integers exactly when `p` is in
//! `P`. This crate builds such witnesses, searches and decides
//! representations `n = a^p + b^p`, emits re-checkable certificates, and
//! solves `a^k + b^k = c` for the exponent `k`.
//!
//! ```
//! use expsel::{make_witness, represent_all, PrimeSet, Nat, DEFAULT_SEARCH_CAP};
//!
//! let w = make_witness(&PrimeSet::parse("2,3").unwrap()).unwrap();
//! assert_eq!(w.x_value(), Nat::from(128u64));
//!
//! let reps = represent_all(&Nat::from(1729u64), 3, DEFAULT_SEARCH_CAP).unwrap();
//! assert_eq!(reps.len(), 2);
//! ```

pub mod arith;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod powersum;
pub mod primes;
pub mod solver;
pub mod theorem;

pub use arith::{as_pow2, inth_root, ipow, ipow_capped, two_adic_split, Nat, Pow2Form, DEFAULT_BIT_CAP};
pub use certificate::{check_certificate, Certificate, NegativeCase, PositiveCase};
pub use error::{Error, Result};
pub use powersum::{
    odd_cofactor, pow2_representable, represent_all, search, search_bound, verify_representation, EvidenceKind,
    NonRepEvidence, Pow2Decision, Representation, SearchOutcome, DEFAULT_SEARCH_CAP,
};
pub use primes::{is_prime, primes_up_to, radical_product, PrimeSet};
pub use solver::{enumerate_natural_k, fermat_variant_k, solve_real_k, RealSolveResult};
pub use theorem::{make_witness, make_witness_guarded, verify_certificate, witness_representation, Mode, Witness};
