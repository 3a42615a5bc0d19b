//! Exact non-negative integer arithmetic.
//!
//! [`Nat`] wraps an arbitrary-precision unsigned integer and is the magnitude
//! type used everywhere else in the crate. It serializes as a decimal string so
//! values of any size cross file boundaries losslessly.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default result-size cap for [`ipow`], in bits.
pub const DEFAULT_BIT_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Nat(BigUint);

impl Nat {
    pub fn zero() -> Self {
        Nat(BigUint::zero())
    }

    pub fn one() -> Self {
        Nat(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_odd(&self) -> bool {
        self.0.is_odd()
    }

    /// Number of significant bits; zero for zero.
    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Lossy conversion, saturating to infinity for very large values.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    /// `self - rhs`, or `None` when it would go negative.
    pub fn checked_sub(&self, rhs: &Nat) -> Option<Nat> {
        if self.0 >= rhs.0 {
            Some(Nat(&self.0 - &rhs.0))
        } else {
            None
        }
    }

    /// Quotient and remainder; `None` for a zero divisor.
    pub fn div_rem(&self, rhs: &Nat) -> Option<(Nat, Nat)> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.0.div_rem(&rhs.0);
        Some((Nat(q), Nat(r)))
    }

    /// `self mod m` for a machine-word modulus.
    pub fn rem_u64(&self, m: u64) -> u64 {
        assert!(m != 0, "modulus must be nonzero");
        (&self.0 % m).to_u64().expect("remainder fits in u64")
    }

    /// Left shift by `k` bits, i.e. multiplication by `2^k`.
    pub fn shl(&self, k: u64) -> Nat {
        Nat(&self.0 << k)
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat(BigUint::from(v))
    }
}

impl From<u32> for Nat {
    fn from(v: u32) -> Self {
        Nat(BigUint::from(v))
    }
}

impl From<BigUint> for Nat {
    fn from(v: BigUint) -> Self {
        Nat(v)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Nat {
    type Err = Error;

    /// Accepts plain ASCII decimal digits only; no sign, no separators.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidInput(format!("not a decimal natural number: {s:?}")));
        }
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(Nat)
            .ok_or_else(|| Error::InvalidInput(format!("not a decimal natural number: {s:?}")))
    }
}

impl Serialize for Nat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_str_radix(10))
    }
}

/// Deserialization accepts canonical decimals only (no leading zeros).
impl<'de> Deserialize<'de> for Nat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s.len() > 1 && s.starts_with('0') {
            return Err(serde::de::Error::custom(format!("non-canonical decimal {s:?}")));
        }
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a Nat> for &'a Nat {
    type Output = Nat;
    fn add(self, rhs: &Nat) -> Nat {
        Nat(&self.0 + &rhs.0)
    }
}

impl Add for Nat {
    type Output = Nat;
    fn add(self, rhs: Nat) -> Nat {
        Nat(self.0 + rhs.0)
    }
}

impl<'a> Mul<&'a Nat> for &'a Nat {
    type Output = Nat;
    fn mul(self, rhs: &Nat) -> Nat {
        Nat(&self.0 * &rhs.0)
    }
}

impl Mul for Nat {
    type Output = Nat;
    fn mul(self, rhs: Nat) -> Nat {
        Nat(self.0 * rhs.0)
    }
}

/// Panics on underflow, like the primitive integer types in debug builds.
impl<'a> Sub<&'a Nat> for &'a Nat {
    type Output = Nat;
    fn sub(self, rhs: &Nat) -> Nat {
        self.checked_sub(rhs).expect("Nat subtraction underflow")
    }
}

/// The integer `2^t`, kept in exponent form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pow2Form {
    pub exponent: u64,
}

impl Pow2Form {
    pub fn new(exponent: u64) -> Self {
        Pow2Form { exponent }
    }

    pub fn to_nat(self) -> Nat {
        Nat::one().shl(self.exponent)
    }
}

/// `base^exp` under the default [`DEFAULT_BIT_CAP`]. `0^0` is 1.
pub fn ipow(base: &Nat, exp: u64) -> Result<Nat> {
    ipow_capped(base, exp, DEFAULT_BIT_CAP)
}

/// `base^exp`, failing if the result would need more than `max_bits` bits.
pub fn ipow_capped(base: &Nat, exp: u64, max_bits: u64) -> Result<Nat> {
    if exp == 0 {
        return Ok(Nat::one());
    }
    if base.is_zero() || base.is_one() {
        return Ok(base.clone());
    }
    let base_bits = base.bits();
    let over = Error::BitCapExceeded {
        base_bits,
        exp,
        cap: max_bits,
    };
    // base >= 2^(bits-1), so the result has at least (bits-1)*exp + 1 bits.
    let lower = (base_bits - 1).checked_mul(exp).and_then(|v| v.checked_add(1));
    match lower {
        Some(l) if l <= max_bits => {}
        _ => return Err(over),
    }
    let e = u32::try_from(exp).map_err(|_| over.clone())?;
    let out = Nat(Pow::pow(&base.0, e));
    if out.bits() > max_bits {
        return Err(over);
    }
    Ok(out)
}

/// Integer k-th root: the largest `r` with `r^k <= n`, plus whether `r^k == n`.
pub fn inth_root(n: &Nat, k: u32) -> Result<(Nat, bool)> {
    if k == 0 {
        return Err(Error::ZeroRootDegree);
    }
    let root = n.0.nth_root(k);
    let exact = Pow::pow(&root, k) == n.0;
    Ok((Nat(root), exact))
}

/// Splits `n = 2^k * odd` with `odd` odd. Fails on zero.
pub fn two_adic_split(n: &Nat) -> Result<(u64, Nat)> {
    let k = n.0.trailing_zeros().ok_or(Error::ZeroValuation)?;
    Ok((k, Nat(&n.0 >> k)))
}

/// `Some(t)` iff `n == 2^t`.
pub fn as_pow2(n: &Nat) -> Option<u64> {
    let k = n.0.trailing_zeros()?;
    (n.bits() == k + 1).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn ipow_examples() {
        assert_eq!(ipow(&n(2), 7).unwrap(), n(128));
        assert_eq!(ipow(&n(3), 0).unwrap(), n(1));
        assert_eq!(ipow(&n(12), 3).unwrap(), n(1728));
        assert_eq!(ipow(&n(0), 0).unwrap(), n(1));
        assert_eq!(ipow(&n(0), 5).unwrap(), n(0));
        assert_eq!(ipow(&n(1), u64::MAX).unwrap(), n(1));
    }

    #[test]
    fn ipow_bit_cap() {
        assert!(matches!(ipow(&n(2), 1 << 21), Err(Error::BitCapExceeded { .. })));
        assert!(matches!(ipow(&n(3), u64::MAX), Err(Error::BitCapExceeded { .. })));
        // 2^(cap-1) has exactly `cap` bits.
        assert_eq!(ipow_capped(&n(2), 9, 10).unwrap(), n(512));
        assert!(ipow_capped(&n(2), 10, 10).is_err());
        // lower bound passes, actual size does not: 3^7 = 2187 has 12 bits
        assert!(ipow_capped(&n(3), 7, 11).is_err());
        assert_eq!(ipow_capped(&n(3), 7, 12).unwrap(), n(2187));
    }

    #[test]
    fn inth_root_examples() {
        assert_eq!(inth_root(&n(1728), 3).unwrap(), (n(12), true));
        assert_eq!(inth_root(&n(1729), 3).unwrap(), (n(12), false));
        assert_eq!(inth_root(&n(0), 5).unwrap(), (n(0), true));
        assert_eq!(inth_root(&n(7), 1).unwrap(), (n(7), true));
        assert_eq!(inth_root(&n(7), 0), Err(Error::ZeroRootDegree));
    }

    #[test]
    fn inth_root_large() {
        let base: Nat = "123456789012345678901234567890".parse().unwrap();
        let p = ipow(&base, 7).unwrap();
        assert_eq!(inth_root(&p, 7).unwrap(), (base.clone(), true));
        let (r, e) = inth_root(&(&p - &n(1)), 7).unwrap();
        assert_eq!(r, &base - &n(1));
        assert!(!e);
    }

    #[test]
    fn two_adic_split_examples() {
        assert_eq!(two_adic_split(&n(12)).unwrap(), (2, n(3)));
        assert_eq!(two_adic_split(&n(1)).unwrap(), (0, n(1)));
        assert_eq!(two_adic_split(&n(1024)).unwrap(), (10, n(1)));
        assert_eq!(two_adic_split(&n(0)), Err(Error::ZeroValuation));
    }

    #[test]
    fn as_pow2_examples() {
        assert_eq!(as_pow2(&n(128)), Some(7));
        assert_eq!(as_pow2(&n(0)), None);
        assert_eq!(as_pow2(&n(96)), None);
        assert_eq!(as_pow2(&n(1)), Some(0));
        assert_eq!(as_pow2(&Pow2Form::new(5000).to_nat()), Some(5000));
    }

    #[test]
    fn nat_parsing() {
        assert_eq!("0".parse::<Nat>().unwrap(), n(0));
        assert!("".parse::<Nat>().is_err());
        assert!("-3".parse::<Nat>().is_err());
        assert!("+3".parse::<Nat>().is_err());
        assert!("1_000".parse::<Nat>().is_err());
        assert_eq!(serde_json::to_string(&n(42)).unwrap(), "\"42\"");
        assert_eq!(serde_json::from_str::<Nat>("\"42\"").unwrap(), n(42));
        assert!(serde_json::from_str::<Nat>("42").is_err());
        assert!(serde_json::from_str::<Nat>("\"042\"").is_err());
        assert_eq!(serde_json::from_str::<Nat>("\"0\"").unwrap(), n(0));
        assert_eq!("042".parse::<Nat>().unwrap(), n(42));
    }

    #[test]
    fn checked_ops() {
        assert_eq!(n(3).checked_sub(&n(5)), None);
        assert_eq!(n(17).div_rem(&n(5)), Some((n(3), n(2))));
        assert_eq!(n(17).div_rem(&n(0)), None);
        assert_eq!(n(17).rem_u64(5), 2);
    }
}
