//! Prime validation, enumeration and the radical product of a prime set.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::Nat;
use crate::error::{Error, Result};

/// Largest bound accepted by [`primes_up_to`].
pub const SIEVE_LIMIT: u64 = 100_000_000;

// The first twelve primes as bases make Miller-Rabin exact below 3.3 * 10^24,
// which covers every u64.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Result<Vec<u64>> {
    if bound > SIEVE_LIMIT {
        return Err(Error::SieveBoundTooLarge {
            bound,
            limit: SIEVE_LIMIT,
        });
    }
    if bound < 2 {
        return Ok(Vec::new());
    }
    let len = bound as usize + 1;
    let mut composite = vec![false; len];
    let mut i = 2usize;
    while i * i < len {
        if !composite[i] {
            for j in (i * i..len).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    Ok((2..len).filter(|&k| !composite[k]).map(|k| k as u64).collect())
}

/// A finite set of primes, stored strictly increasing. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet(Vec::new())
    }

    /// Sorts and deduplicates; any non-prime entry is an error.
    pub fn new<I: IntoIterator<Item = u64>>(items: I) -> Result<Self> {
        let mut v: Vec<u64> = items.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(bad));
        }
        v.sort_unstable();
        v.dedup();
        Ok(PrimeSet(v))
    }

    /// Parses a comma-separated list such as `"2,3,5"`. Blank input is the empty set.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PrimeSet::empty());
        }
        let items = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("not a prime list entry: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PrimeSet::new(items)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for PrimeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// Product of the primes in `set`; 1 for the empty set.
pub fn radical_product(set: &PrimeSet) -> Nat {
    set.iter().fold(Nat::one(), |acc, p| &acc * &Nat::from(p))
}
