//! Solving `a^k + b^k = c` for the exponent `k`.
//!
//! Over the reals, `f(k) = a^k + b^k` is strictly monotone whenever both bases
//! sit on the same side of 1 (or one of them is exactly 1), so the root is
//! unique and bisection finds it. The mixed case (one base above 1, one below)
//! is convex with a minimum and can have two roots; it is rejected.
//!
//! Over the naturals, [`enumerate_natural_k`] and [`fermat_variant_k`] compare
//! exact integer powers.

use serde::Serialize;

use crate::arith::Nat;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ITER: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealSolveResult {
    pub k: f64,
    /// `a^k + b^k - c` at the returned `k`.
    pub residual: f64,
    pub bracket: (f64, f64),
    pub iterations: u64,
    /// The root is exactly zero (c = 2), which the original question excludes.
    pub zero_root: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Increasing,
    Decreasing,
}

/// Solves `a^k + b^k = c` for real `k` by bracketing and bisection.
///
/// The bracket starts at `[-1, 1]` and both endpoints are doubled until the
/// target is straddled; each doubling and each halving counts toward `max_iter`.
pub fn solve_real_k(a: f64, b: f64, c: f64, tol_k: f64, max_iter: u64) -> Result<RealSolveResult> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidInput(format!(
                "{name} must be finite and positive, got {v}"
            )));
        }
    }
    if !(tol_k.is_finite() && tol_k > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be finite and positive, got {tol_k}"
        )));
    }

    let direction = match (a.partial_cmp(&1.0), b.partial_cmp(&1.0)) {
        (Some(std::cmp::Ordering::Equal), Some(std::cmp::Ordering::Equal)) => return Err(Error::DegenerateAllOnes),
        (Some(x), Some(y)) if x != y && x != std::cmp::Ordering::Equal && y != std::cmp::Ordering::Equal => {
            return Err(Error::NonMonotoneMixed)
        }
        _ if a > 1.0 || b > 1.0 => Direction::Increasing,
        _ => Direction::Decreasing,
    };
    // Infimum of a^k + b^k over k: 1 if one base is exactly 1, else 0.
    let lower = if a == 1.0 || b == 1.0 { 1.0 } else { 0.0 };
    if c <= lower {
        return Err(Error::TargetOutOfRange { c, lower });
    }

    // g is increasing in k in both regimes.
    let g = |k: f64| {
        let v = a.powf(k) + b.powf(k) - c;
        match direction {
            Direction::Increasing => v,
            Direction::Decreasing => -v,
        }
    };

    let mut iterations = 0u64;
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    let (mut g_lo, mut g_hi) = (g(lo), g(hi));
    while !(g_lo <= 0.0 && g_hi >= 0.0) {
        if iterations >= max_iter || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::NoConvergence { max_iter });
        }
        iterations += 1;
        if g_lo > 0.0 {
            lo *= 2.0;
            g_lo = g(lo);
        }
        if g_hi < 0.0 {
            hi *= 2.0;
            g_hi = g(hi);
        }
    }

    if g_lo == 0.0 {
        hi = lo;
    } else if g_hi == 0.0 {
        lo = hi;
    }
    while hi - lo > tol_k {
        if iterations >= max_iter {
            return Err(Error::NoConvergence { max_iter });
        }
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            // tolerance below the float spacing at this magnitude
            return Err(Error::NoConvergence { max_iter });
        }
        iterations += 1;
        let gm = g(mid);
        if gm == 0.0 {
            lo = mid;
            hi = mid;
        } else if gm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let k = if lo == hi { lo } else { lo + (hi - lo) / 2.0 };
    Ok(RealSolveResult {
        k,
        residual: a.powf(k) + b.powf(k) - c,
        bracket: (lo, hi),
        iterations,
        zero_root: k == 0.0,
    })
}

/// All `k` in `[1, k_max]` with `a^k + b^k = c`.
pub fn enumerate_natural_k(a: &Nat, b: &Nat, c: &Nat, k_max: u64) -> Result<Vec<u64>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput("a and b must be at least 1".into()));
    }
    if *c < Nat::from(2u64) {
        return Err(Error::InvalidInput("c must be at least 2".into()));
    }
    if a.is_one() && b.is_one() {
        // 1 + 1 = 2 for every k
        return if *c == Nat::from(2u64) {
            Err(Error::InfiniteSolutions)
        } else {
            Ok(Vec::new())
        };
    }
    // From here the sum strictly increases with k, so stop once it passes c.
    let mut out = Vec::new();
    let (mut ap, mut bp) = (a.clone(), b.clone());
    for k in 1..=k_max {
        let sum = &ap + &bp;
        if sum == *c {
            out.push(k);
        } else if sum > *c {
            break;
        }
        ap = &ap * a;
        bp = &bp * b;
    }
    Ok(out)
}

/// All `k` in `[1, k_max]` with `a^k + b^k = c^k`.
pub fn fermat_variant_k(a: &Nat, b: &Nat, c: &Nat, k_max: u64) -> Result<Vec<u64>> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::InvalidInput("a, b and c must be at least 1".into()));
    }
    if k_max == 0 {
        return Err(Error::InvalidInput("k_max must be at least 1".into()));
    }
    // c <= max(a, b) gives a^k + b^k > max(a, b)^k >= c^k for every k.
    if c <= a.max(b) {
        return Ok(Vec::new());
    }
    // Now (a/c)^k + (b/c)^k strictly decreases; once below 1 it stays there.
    let mut out = Vec::new();
    let (mut ap, mut bp, mut cp) = (a.clone(), b.clone(), c.clone());
    for k in 1..=k_max {
        let sum = &ap + &bp;
        if sum == cp {
            out.push(k);
        } else if sum < cp {
            break;
        }
        ap = &ap * a;
        bp = &bp * b;
        cp = &cp * c;
    }
    Ok(out)
}
