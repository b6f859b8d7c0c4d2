//! Binomial-series decomposition of `√f_b(2k−1)`.
//!
//! With `c = (2k−1)(b−1) + b`,
//!
//! ```text
//! √f_b(2k−1) = b^k/(b−1) · Σ_l (−1)^l C(1/2, l) (c / b^{2k})^l
//! ```
//!
//! and the `l`-th term factors as `τ_l = τ_{l,1} · b^{k(1−2l)} · τ_{l,3}` with
//! `τ_{l,1} = (−1)^l C(1/2, l)` and `τ_{l,3} = c^l/(b−1)`.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expansion::rational_expansion_bounded;
use crate::numeric::{floor_log, pow, to_digits, v2_denominator, Integer, Rational};
use crate::recurrence::c_constant;

/// Longest repeating period computed before giving up.
pub const PERIOD_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorTerm {
    pub base: u32,
    pub l: u64,
    /// `(−1)^l·C(1/2, l)`
    pub tau1: Rational,
    /// `c^l/(b−1)`
    pub tau3: Rational,
    /// Exponent of `b` carried by the middle factor, `k(1−2l)`.
    pub shift: i64,
}

impl TaylorTerm {
    /// `τ_{l,1}·τ_{l,3}`, the term before the power-of-`b` shift.
    pub fn coefficient(&self) -> Rational {
        &self.tau1 * &self.tau3
    }

    pub fn magnitude(&self) -> Rational {
        self.coefficient().abs()
    }

    pub fn value(&self) -> Rational {
        scale(&self.coefficient(), self.base, self.shift)
    }
}

/// `q · b^e` for any sign of `e`.
pub(crate) fn scale(q: &Rational, b: u32, e: i64) -> Rational {
    let p = Integer::from(pow(b, e.unsigned_abs()));
    if e >= 0 {
        q * Rational::from_integer(p)
    } else {
        q / Rational::from_integer(p)
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Generalized binomial coefficient `C(1/2, l) = Π_{i<l} (1/2 − i) / l!`.
pub fn binom_half(l: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..l {
        // (1/2 − i)/(i + 1)
        acc *= rat(1 - 2 * i as i64, 2 * (i as i64 + 1));
    }
    acc
}

fn check(b: u32, k: u64) -> Result<()> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    if k == 0 {
        return Err(Error::InvalidK { min: 1, got: k });
    }
    Ok(())
}

pub fn term(b: u32, k: u64, l: u64) -> Result<TaylorTerm> {
    check(b, k)?;
    let c = c_constant(b, k)?;
    let sign = if l.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let tau1 = sign * binom_half(l);
    let tau3 = Rational::new(
        Integer::from(num_traits::pow(c, l as usize)),
        Integer::from(b - 1),
    );
    let shift = k as i64 * (1 - 2 * l as i64);
    Ok(TaylorTerm {
        base: b,
        l,
        tau1,
        tau3,
        shift,
    })
}

/// `Σ_{l=0}^{last} τ_l` as one exact rational.
pub fn partial_sum(b: u32, k: u64, last: u64) -> Result<Rational> {
    let mut sum = Rational::zero();
    for l in 0..=last {
        sum += term(b, k, l)?.value();
    }
    Ok(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftParams {
    /// 2-adic valuation of the denominator of `τ_{l,1}`.
    pub q: u64,
    /// Least `r ≥ 1` with `2^q | b^r` for even `b`; 0 for odd `b`.
    pub r: u64,
}

pub fn shift_params(b: u32, l: u64) -> Result<ShiftParams> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    if l == 0 {
        return Err(Error::InvalidArgument(
            "shift_params requires l >= 1".into(),
        ));
    }
    let q = v2_denominator(&binom_half(l))?;
    let r = if b % 2 == 1 {
        0
    } else {
        let twos = u64::from(b.trailing_zeros());
        q.div_ceil(twos).max(1)
    };
    Ok(ShiftParams { q, r })
}

/// Most significant base-`b` digit of a positive rational.
pub fn first_digit(b: u32, q: &Rational) -> Result<u32> {
    if !q.is_positive() {
        return Err(Error::NonPositiveArgument("first_digit"));
    }
    let e = floor_log(b, q)?;
    let lead = scale(q, b, -e).floor().to_integer();
    Ok(lead.to_u32_digits().1.first().copied().unwrap_or(0))
}

/// Memoized Taylor quantities for one `(b, k)`.
#[derive(Debug, Clone)]
pub struct Series {
    b: u32,
    k: u64,
    terms: Vec<TaylorTerm>,
    sums: Vec<Rational>,
    periods: HashMap<u64, Vec<u32>>,
}

impl Series {
    pub fn new(b: u32, k: u64) -> Result<Self> {
        check(b, k)?;
        Ok(Series {
            b,
            k,
            terms: Vec::new(),
            sums: Vec::new(),
            periods: HashMap::new(),
        })
    }

    pub fn base(&self) -> u32 {
        self.b
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn term(&mut self, l: u64) -> Result<&TaylorTerm> {
        while self.terms.len() as u64 <= l {
            let next = term(self.b, self.k, self.terms.len() as u64)?;
            let sum = self.sums.last().cloned().unwrap_or_else(Rational::zero) + next.value();
            self.terms.push(next);
            self.sums.push(sum);
        }
        Ok(&self.terms[l as usize])
    }

    pub fn partial_sum(&mut self, l: u64) -> Result<Rational> {
        self.term(l)?;
        Ok(self.sums[l as usize].clone())
    }

    /// `⌊log_b |τ_{l,1}·τ_{l,3}|⌋`
    pub fn log_magnitude(&mut self, l: u64) -> Result<i64> {
        let b = self.b;
        floor_log(b, &self.term(l)?.magnitude())
    }

    /// `f_l`, the leading digit of `|τ_{l,1}·τ_{l,3}|`.
    pub fn leading_digit(&mut self, l: u64) -> Result<u32> {
        let b = self.b;
        first_digit(b, &self.term(l)?.magnitude())
    }

    /// Minimal repeating unit of the digits that follow block `l`'s
    /// non-repeating part: the period of the expansion of `Σ_{i≤l} τ_i`.
    ///
    /// A terminating partial sum is reported with period `[b−1]`, the digit
    /// run the true (irrational) value shows just below it.
    pub fn repeating_period(&mut self, l: u64) -> Result<Vec<u32>> {
        if let Some(p) = self.periods.get(&l) {
            return Ok(p.clone());
        }
        let sum = self.partial_sum(l)?;
        let exp = rational_expansion_bounded(self.b, &sum, PERIOD_LIMIT)?;
        let period = if exp.period == [0] {
            vec![self.b - 1]
        } else {
            exp.period
        };
        self.periods.insert(l, period.clone());
        Ok(period)
    }

    /// Carry indicator `ε(l)`: 1 when subtracting `τ_l` borrows from the digit
    /// just above `τ_l`'s leading digit.
    ///
    /// Compares the tail of `Σ_{i<l} τ_i`, read from the place of `τ_l`'s
    /// leading digit downward, against `|τ_{l,1}τ_{l,3}|` normalized to
    /// `[1, b)`. When the leading digits differ this is the single-digit test
    /// `d_{l−1} < f_l`; ties are resolved by the digits that follow.
    pub fn epsilon(&mut self, l: u64) -> Result<u8> {
        if l == 0 {
            return Err(Error::InvalidArgument("epsilon requires l >= 1".into()));
        }
        let b = self.b;
        let e = self.log_magnitude(l)?;
        let place = self.term(l)?.shift + e;
        let magnitude = self.term(l)?.magnitude();
        let above = self.partial_sum(l - 1)?;

        let shifted = scale(&above, b, -place);
        let base = Rational::from_integer(Integer::from(b));
        let whole = (&shifted / &base).floor();
        let mut tail = shifted - whole * &base;
        if tail.is_zero() {
            // The irrational value sits just below, so its digits are the
            // non-terminating representation: tail b, not 0.
            tail = base;
        }
        let target = scale(&magnitude, b, -e);
        Ok(u8::from(tail < target))
    }

    /// The single-digit rule `ε(l) = [d_{l−1} < f_l]`, with `d_{l−1}` the
    /// first digit of the previous block's period.
    pub fn epsilon_leading_digit(&mut self, l: u64) -> Result<u8> {
        if l == 0 {
            return Err(Error::InvalidArgument("epsilon requires l >= 1".into()));
        }
        let d = self.repeating_period(l - 1)?[0];
        let f = self.leading_digit(l)?;
        Ok(u8::from(d < f))
    }
}

/// First `count` significand digits of [`partial_sum`], integer digits first.
pub fn partial_sum_digits(b: u32, k: u64, last: u64, count: usize) -> Result<Vec<u32>> {
    let sum = partial_sum(b, k, last)?;
    let exp = rational_expansion_bounded(b, &sum, PERIOD_LIMIT)?;
    let mut digits = to_digits(&exp.integer_part, b);
    digits.extend(exp.fractional_digits(count.saturating_sub(digits.len())));
    digits.truncate(count);
    Ok(digits)
}

/// Period of block `l`'s repeating run; `[1]` for the leading block.
pub fn repeating_digit(b: u32, k: u64, l: u64) -> Result<Vec<u32>> {
    Series::new(b, k)?.repeating_period(l)
}

pub fn epsilon(b: u32, k: u64, l: u64) -> Result<u8> {
    Series::new(b, k)?.epsilon(l)
}

pub fn epsilon_leading_digit(b: u32, k: u64, l: u64) -> Result<u8> {
    Series::new(b, k)?.epsilon_leading_digit(l)
}
