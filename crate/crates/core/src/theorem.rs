//! Witness construction and certificate generation.
//!
//! For a finite prime set `P` with product `m`, the integer `x = 2^(m+1)` is a
//! sum of two `p`-th powers exactly for the primes `p` dividing `m`, that is
//! for `p` in `P`: `x = 2^m + 2^m = (2^(m/p))^p + (2^(m/p))^p`. For any other
//! prime `q` the structural criterion of [`pow2_representable`] fails because
//! `q` does not divide `m`. That negative argument holds for every prime; the
//! bound `B` of a certificate only limits which primes are listed and which are
//! cross-checked by exhaustive search.
//!
//! The empty set is accepted: `m = 1`, `x = 4`, and `4` is not a sum of two
//! `q`-th powers for any prime `q`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{Nat, Pow2Form};
use crate::certificate::{Certificate, NegativeCase, PositiveCase};
use crate::error::{Error, Result};
use crate::powersum::{pow2_representable, search, search_bound, NonRepEvidence, Pow2Decision, Representation};
use crate::primes::{primes_up_to, radical_product, PrimeSet};

/// Default upper limit on the witness exponent `t = m + 1`.
pub const DEFAULT_WITNESS_GUARD: u64 = 1_000_000;

/// Values of `t` up to this also carry `x` in decimal.
pub const DECIMAL_EXPONENT_LIMIT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub primes: PrimeSet,
    /// Product of `primes`.
    pub m: Nat,
    /// `m + 1`.
    pub t: u64,
    /// `2^t`.
    pub x: Pow2Form,
}

impl Witness {
    pub fn x_value(&self) -> Nat {
        self.x.to_nat()
    }

    /// `x` in decimal, when `t` is small enough to be worth printing.
    pub fn x_decimal(&self) -> Option<String> {
        (self.t <= DECIMAL_EXPONENT_LIMIT).then(|| self.x_value().to_string())
    }
}

pub fn make_witness(primes: &PrimeSet) -> Result<Witness> {
    make_witness_guarded(primes, DEFAULT_WITNESS_GUARD)
}

/// Builds `x = 2^(m+1)`, failing if `m + 1` exceeds `guard`.
pub fn make_witness_guarded(primes: &PrimeSet, guard: u64) -> Result<Witness> {
    let m = radical_product(primes);
    let t = m
        .to_u64()
        .and_then(|v| v.checked_add(1))
        .filter(|&t| t <= guard)
        .ok_or(Error::WitnessTooLarge { limit: guard })?;
    Ok(Witness {
        primes: primes.clone(),
        m,
        t,
        x: Pow2Form::new(t),
    })
}

/// The representation `x = (2^(m/p))^p + (2^(m/p))^p` for `p` in the witness set.
pub fn witness_representation(w: &Witness, p: u64) -> Result<Representation> {
    if !w.primes.contains(p) {
        return Err(Error::PrimeNotInSet(p));
    }
    let m = w.t - 1;
    debug_assert_eq!(m % p, 0);
    let a = Pow2Form::new(m / p).to_nat();
    let p = u32::try_from(p).expect("p <= m fits in u32");
    Ok(Representation {
        n: w.x_value(),
        p,
        a: a.clone(),
        b: a,
    })
}

/// Which kind of negative evidence a certificate carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Structural,
    Exhaustive,
    Both,
}

impl Mode {
    pub fn needs_search(self) -> bool {
        matches!(self, Mode::Exhaustive | Mode::Both)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Structural => "structural",
            Mode::Exhaustive => "exhaustive",
            Mode::Both => "both",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "structural" => Ok(Mode::Structural),
            "exhaustive" => Ok(Mode::Exhaustive),
            "both" => Ok(Mode::Both),
            other => Err(Error::InvalidInput(format!("unknown mode {other:?}"))),
        }
    }
}

/// Builds and evaluates a certificate for `primes` against every prime `q <= prime_bound`.
///
/// In the exhaustive modes the largest required search (smallest `q`) is
/// projected first, so an infeasible request fails before any work is done.
pub fn verify_certificate(primes: &PrimeSet, prime_bound: u64, mode: Mode, cap: u64) -> Result<Certificate> {
    if prime_bound < 2 {
        return Err(Error::InvalidInput(format!(
            "prime bound must be at least 2, got {prime_bound}"
        )));
    }
    let witness = make_witness(primes)?;
    let x = witness.x_value();

    let positive_cases = primes
        .iter()
        .map(|p| {
            let rep = witness_representation(&witness, p)?;
            Ok(PositiveCase { p, a: rep.a, b: rep.b })
        })
        .collect::<Result<Vec<_>>>()?;

    let others: Vec<u64> = primes_up_to(prime_bound)?
        .into_iter()
        .filter(|&q| !primes.contains(q))
        .collect();

    if mode.needs_search() {
        if let Some(&q) = others.first() {
            let bound = search_bound(&x, exponent(q)?)?;
            if bound.to_u64().is_none_or(|b| b > cap) {
                return Err(Error::ExhaustiveInfeasible {
                    q,
                    bound: bound.to_string(),
                    cap,
                });
            }
        }
    }

    let negative_cases = others
        .par_iter()
        .map(|&q| {
            let evidence = negative_evidence(&witness, &x, q, mode, cap)?;
            Ok(NegativeCase { q, evidence })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut cert = Certificate {
        witness,
        prime_bound,
        mode,
        positive_cases,
        negative_cases,
        verified: false,
    };
    cert.verified = cert.evaluate().is_ok();
    Ok(cert)
}

fn exponent(q: u64) -> Result<u32> {
    u32::try_from(q).map_err(|_| Error::InvalidInput(format!("exponent {q} too large")))
}

fn negative_evidence(w: &Witness, x: &Nat, q: u64, mode: Mode, cap: u64) -> Result<NonRepEvidence> {
    let remainder = match mode {
        Mode::Structural | Mode::Both => match pow2_representable(w.t, q)? {
            Pow2Decision::NotRepresentable { remainder } => Some(remainder),
            Pow2Decision::Representable(_) => return Err(Error::InconsistentEvidence { q }),
        },
        Mode::Exhaustive => None,
    };
    let iterations = if mode.needs_search() {
        let outcome = search(x, exponent(q)?, cap).map_err(|e| match e {
            Error::SearchTooLarge { bound, cap } => Error::ExhaustiveInfeasible { q, bound, cap },
            other => other,
        })?;
        if !outcome.representations.is_empty() {
            return Err(Error::InconsistentEvidence { q });
        }
        Some(outcome.iterations)
    } else {
        None
    };
    Ok(match (remainder, iterations) {
        (Some(r), None) => NonRepEvidence::structural(r),
        (None, Some(i)) => NonRepEvidence::exhaustive(cap, i),
        (Some(r), Some(i)) => NonRepEvidence::both(r, cap, i),
        (None, None) => unreachable!("every mode produces some evidence"),
    })
}
