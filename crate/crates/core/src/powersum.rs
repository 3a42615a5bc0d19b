//! Representations `n = a^p + b^p` with `1 <= a <= b`.
//!
//! Two routes decide representability. [`represent_all`] is an exhaustive
//! search that works for any `n` and any exponent `p >= 1`. For `n = 2^t` and
//! prime `q`, [`pow2_representable`] decides in constant time: writing
//! `a = 2^k1 c`, `b = 2^k2 d` with `c, d` odd forces `k1 = k2`, and then the
//! odd cofactor `(c^q + d^q) / (c + d)` must be an odd divisor of a power of two,
//! so `c = d = 1`. Hence `2^t = 2 * 2^(qk)` and `q | t - 1`. The exhaustive
//! route is the oracle the structural one is checked against.

use serde::{Deserialize, Serialize};

use crate::arith::{inth_root, ipow, ipow_capped, two_adic_split, Nat, Pow2Form, DEFAULT_BIT_CAP};
use crate::error::{Error, Result};
use crate::primes::is_prime;

/// Default iteration cap for exhaustive searches.
pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

/// `a^p + b^p = n` with `1 <= a <= b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Representation {
    pub n: Nat,
    pub p: u32,
    pub a: Nat,
    pub b: Nat,
}

/// Recomputes `a^p + b^p` and checks it against `n`, along with `1 <= a <= b`.
pub fn verify_representation(r: &Representation) -> bool {
    if r.a.is_zero() || r.a > r.b {
        return false;
    }
    // Any term needing more bits than n already overshoots.
    let cap = r.n.bits().max(1);
    let (Ok(ap), Ok(bp)) = (
        ipow_capped(&r.a, u64::from(r.p), cap),
        ipow_capped(&r.b, u64::from(r.p), cap),
    ) else {
        return false;
    };
    &ap + &bp == r.n
}

/// Result of an exhaustive search, including how many candidates were tried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub representations: Vec<Representation>,
    pub iterations: u64,
}

/// Number of candidates `a` that [`represent_all`] examines: the largest `a`
/// with `2 a^p <= n`.
pub fn search_bound(n: &Nat, p: u32) -> Result<Nat> {
    let half = n.div_rem(&Nat::from(2u64)).expect("nonzero divisor").0;
    Ok(inth_root(&half, p)?.0)
}

/// All representations of `n` as `a^p + b^p`, ascending in `a`.
pub fn represent_all(n: &Nat, p: u32, cap: u64) -> Result<Vec<Representation>> {
    Ok(search(n, p, cap)?.representations)
}

/// [`represent_all`] plus the iteration count.
pub fn search(n: &Nat, p: u32, cap: u64) -> Result<SearchOutcome> {
    if *n < Nat::from(2u64) {
        return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
    }
    if p == 0 {
        return Err(Error::InvalidInput("exponent must be at least 1".into()));
    }
    let bound = search_bound(n, p)?;
    let iterations = match bound.to_u64() {
        Some(b) if b <= cap => b,
        _ => {
            return Err(Error::SearchTooLarge {
                bound: bound.to_string(),
                cap,
            })
        }
    };
    let term_cap = n.bits();
    let mut representations = Vec::new();
    for a in 1..=iterations {
        let a = Nat::from(a);
        let ap = ipow_capped(&a, u64::from(p), term_cap)?;
        let rest = n - &ap;
        let (b, exact) = inth_root(&rest, p)?;
        if exact && b >= a {
            representations.push(Representation { n: n.clone(), p, a, b });
        }
    }
    Ok(SearchOutcome {
        representations,
        iterations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pow2Decision {
    /// The unique representation, `a = b = 2^((t-1)/q)`.
    Representable(Representation),
    /// `(t - 1) mod q`, never zero.
    NotRepresentable { remainder: u64 },
}

impl Pow2Decision {
    pub fn is_representable(&self) -> bool {
        matches!(self, Pow2Decision::Representable(_))
    }
}

/// Decides whether `2^t = a^q + b^q` has a solution for prime `q`.
///
/// A solution exists iff `q | t - 1`. Materializing the representation needs
/// `t` within [`DEFAULT_BIT_CAP`]; the negative verdict has no size limit.
pub fn pow2_representable(t: u64, q: u64) -> Result<Pow2Decision> {
    if t == 0 {
        return Err(Error::InvalidInput("t must be at least 1".into()));
    }
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let remainder = (t - 1) % q;
    if remainder != 0 {
        return Ok(Pow2Decision::NotRepresentable { remainder });
    }
    if t > DEFAULT_BIT_CAP {
        return Err(Error::BitCapExceeded {
            base_bits: 2,
            exp: t,
            cap: DEFAULT_BIT_CAP,
        });
    }
    let k = (t - 1) / q;
    let a = Pow2Form::new(k).to_nat();
    // c = d = 1: the odd part of each base is trivial.
    let (k1, odd) = two_adic_split(&a)?;
    assert!(k1 == k && odd.is_one(), "2^{k} split as 2^{k1} * {odd}");
    let p = u32::try_from(q).expect("q <= t - 1 fits in u32");
    let rep = Representation {
        n: Pow2Form::new(t).to_nat(),
        p,
        a: a.clone(),
        b: a,
    };
    assert!(verify_representation(&rep));
    Ok(Pow2Decision::Representable(rep))
}

/// `(c^p + d^p) / (c + d)` for odd `c`, `d` and odd prime `p`.
///
/// Computed by exact division and by the alternating sum
/// `sum_{i<p} (-1)^i c^(p-1-i) d^i`; the two must agree and the value must be odd.
pub fn odd_cofactor(c: &Nat, d: &Nat, p: u64) -> Result<Nat> {
    if !c.is_odd() || !d.is_odd() {
        return Err(Error::InvalidInput(format!("c and d must be odd, got c={c}, d={d}")));
    }
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let mismatch = || Error::CofactorMismatch {
        c: c.to_string(),
        d: d.to_string(),
        p,
    };

    let total = &ipow(c, p)? + &ipow(d, p)?;
    let (by_division, rem) = total.div_rem(&(c + d)).expect("c + d >= 2");
    if !rem.is_zero() {
        return Err(mismatch());
    }

    let mut plus = Nat::zero();
    let mut minus = Nat::zero();
    for i in 0..p {
        let term = &ipow(c, p - 1 - i)? * &ipow(d, i)?;
        if i % 2 == 0 {
            plus = plus + term;
        } else {
            minus = minus + term;
        }
    }
    let by_sum = plus.checked_sub(&minus).ok_or_else(mismatch)?;

    if by_division != by_sum || !by_division.is_odd() {
        return Err(mismatch());
    }
    Ok(by_division)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvidenceKind {
    Structural,
    Exhaustive,
    /// Both of the above, cross-checked.
    Both,
}

/// Why `2^t` has no representation for a given exponent.
///
/// Structural evidence is the nonzero remainder `(t - 1) mod q`. Exhaustive
/// evidence records the cap in force and the number of candidates searched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonRepEvidence {
    pub kind: EvidenceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remainder: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
}

impl NonRepEvidence {
    pub fn structural(remainder: u64) -> Self {
        NonRepEvidence {
            kind: EvidenceKind::Structural,
            remainder: Some(remainder),
            cap: None,
            iterations: None,
        }
    }

    pub fn exhaustive(cap: u64, iterations: u64) -> Self {
        NonRepEvidence {
            kind: EvidenceKind::Exhaustive,
            remainder: None,
            cap: Some(cap),
            iterations: Some(iterations),
        }
    }

    pub fn both(remainder: u64, cap: u64, iterations: u64) -> Self {
        NonRepEvidence {
            kind: EvidenceKind::Both,
            remainder: Some(remainder),
            cap: Some(cap),
            iterations: Some(iterations),
        }
    }
}
