//! Exact arithmetic substrate.
//!
//! Natural and rational values are backed by `num-bigint` / `num-rational`,
//! which keep integers canonical and fractions in lowest terms with a
//! positive denominator. Everything in here is exact; no floating point.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type Natural = BigUint;
pub type Integer = BigInt;
pub type Rational = BigRational;

/// Floor square root: the unique `s` with `s² ≤ x < (s+1)²`.
pub fn isqrt(x: &Natural) -> Natural {
    x.sqrt()
}

/// `base^exp` as a natural number.
pub fn pow(base: u32, exp: u64) -> Natural {
    num_traits::pow(Natural::from(base), exp as usize)
}

/// Digits of `x` in `base`, most significant first. Zero yields `[0]`.
pub fn to_digits(x: &Natural, base: u32) -> Vec<u32> {
    if x.is_zero() {
        return vec![0];
    }
    if base <= 256 {
        let mut d: Vec<u32> = x.to_radix_be(base).into_iter().map(u32::from).collect();
        if d.is_empty() {
            d.push(0);
        }
        return d;
    }
    let b = Natural::from(base);
    let mut out = Vec::new();
    let mut rest = x.clone();
    while !rest.is_zero() {
        let (q, r) = num_integer::Integer::div_rem(&rest, &b);
        out.push(r.to_u32_digits().first().copied().unwrap_or(0));
        rest = q;
    }
    out.reverse();
    out
}

/// Inverse of [`to_digits`].
pub fn from_digits(digits: &[u32], base: u32) -> Natural {
    let b = Natural::from(base);
    digits
        .iter()
        .fold(Natural::zero(), |acc, &d| acc * &b + Natural::from(d))
}

/// Number of base-`base` digits of `x` (1 for zero).
pub fn digit_len(x: &Natural, base: u32) -> usize {
    to_digits(x, base).len()
}

pub fn rational_from_naturals(num: Natural, den: Natural) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

/// Compares `base^exp` with `num/den` (both positive).
fn cmp_power(base: u32, exp: i64, num: &Natural, den: &Natural) -> Ordering {
    if exp >= 0 {
        (pow(base, exp as u64) * den).cmp(num)
    } else {
        den.cmp(&(num * pow(base, exp.unsigned_abs())))
    }
}

/// Greatest integer `e` with `base^e ≤ |q|`.
///
/// Computed by exact comparisons only: a galloping search brackets the
/// exponent, then bisection pins it.
pub fn floor_log(base: u32, q: &Rational) -> Result<i64> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    if q.is_zero() {
        return Err(Error::ZeroArgument("floor_log"));
    }
    let num = q.numer().magnitude().clone();
    let den = q.denom().magnitude().clone();
    let fits = |e: i64| cmp_power(base, e, &num, &den) != Ordering::Greater;

    // Bracket: lo satisfies fits, hi does not.
    let (mut lo, mut hi);
    if fits(0) {
        lo = 0i64;
        let mut step = 1i64;
        loop {
            let cand = lo + step;
            if fits(cand) {
                lo = cand;
                step *= 2;
            } else {
                hi = cand;
                break;
            }
        }
    } else {
        hi = 0i64;
        let mut step = 1i64;
        loop {
            let cand = hi - step;
            if fits(cand) {
                lo = cand;
                break;
            }
            hi = cand;
            step *= 2;
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// 2-adic valuation of the reduced denominator of `q`.
pub fn v2_denominator(q: &Rational) -> Result<u64> {
    if q.is_zero() {
        return Err(Error::ZeroArgument("v2_denominator"));
    }
    Ok(q.denom().trailing_zeros().unwrap_or(0))
}

/// Splits a nonnegative rational into its floor and fractional remainder `(int, num, den)`
/// with `0 ≤ num < den`.
pub fn split_nonneg(q: &Rational) -> Result<(Natural, Natural, Natural)> {
    if q.numer().sign() == Sign::Minus {
        return Err(Error::InvalidArgument(
            "expected a nonnegative rational".into(),
        ));
    }
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    let (int, rem) = num_integer::Integer::div_rem(num, den);
    Ok((int, rem, den.clone()))
}
