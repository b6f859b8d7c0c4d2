//! Positional expansions: truncated (or rounded) digits of `√f_b(n)`, and
//! exact eventually-periodic expansions of rationals.

mod text;

pub use text::{digit_char, parse, render, Grouping, Notation, RenderOptions};

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{
    digit_len, from_digits, isqrt, pow, rational_from_naturals, split_nonneg, to_digits, Integer,
    Natural, Rational,
};
use crate::recurrence::f_closed;

/// A base-`b` numeral: digits most significant first, with the radix point
/// after the first `radix_offset` digits.
///
/// `radix_offset` may exceed the digit count, in which case the missing
/// integer digits are zeros (a value truncated to fewer significant digits
/// than its integer part has).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    base: u32,
    digits: Vec<u32>,
    radix_offset: usize,
}

impl DigitString {
    pub fn new(base: u32, digits: Vec<u32>, radix_offset: usize) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if digits.is_empty() {
            return Err(Error::MalformedNumeral("no digits".into()));
        }
        if radix_offset == 0 {
            return Err(Error::MalformedNumeral(
                "radix offset must be at least 1".into(),
            ));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::InvalidDigit {
                digit: d.to_string(),
                base,
            });
        }
        let mut ds = DigitString {
            base,
            digits,
            radix_offset,
        };
        ds.normalize();
        Ok(ds)
    }

    pub fn zero(base: u32) -> Result<Self> {
        Self::new(base, vec![0], 1)
    }

    /// Drops leading zeros of the integer part, keeping at least one integer digit.
    fn normalize(&mut self) {
        let mut strip = 0;
        while self.radix_offset - strip > 1
            && strip + 1 < self.digits.len()
            && self.digits[strip] == 0
        {
            strip += 1;
        }
        if strip > 0 {
            self.digits.drain(..strip);
            self.radix_offset -= strip;
        }
        if self.digits.len() == 1 && self.digits[0] == 0 {
            self.radix_offset = 1;
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn radix_offset(&self) -> usize {
        self.radix_offset
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Exponent of the leading digit in scientific notation.
    pub fn exponent(&self) -> i64 {
        self.radix_offset as i64 - 1
    }

    pub fn integer_digits(&self) -> &[u32] {
        &self.digits[..self.radix_offset.min(self.digits.len())]
    }

    pub fn fractional_digits(&self) -> &[u32] {
        &self.digits[self.radix_offset.min(self.digits.len())..]
    }

    /// Exact value `Σ digits[i]·base^(radix_offset−1−i)`.
    pub fn value(&self) -> Rational {
        let mantissa = from_digits(&self.digits, self.base);
        let shift = self.radix_offset as i64 - self.digits.len() as i64;
        if shift >= 0 {
            rational_from_naturals(mantissa * pow(self.base, shift as u64), Natural::one())
        } else {
            rational_from_naturals(mantissa, pow(self.base, shift.unsigned_abs()))
        }
    }
}

/// How the last retained digit of an irrational value is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rounding {
    #[default]
    Truncate,
    Nearest,
}

fn check_sqrt_args(b: u32, n: u64, radix: u32) -> Result<()> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    if radix < 2 {
        return Err(Error::InvalidBase(radix));
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenIndex(n));
    }
    Ok(())
}

/// `√f_b(n)` truncated to `p` fractional base-`b` digits.
pub fn sqrt_digits(b: u32, n: u64, p: usize) -> Result<DigitString> {
    sqrt_digits_in(b, n, b, p)
}

/// `√f_b(n)` truncated to `p` fractional digits of an arbitrary output radix.
pub fn sqrt_digits_in(b: u32, n: u64, radix: u32, p: usize) -> Result<DigitString> {
    check_sqrt_args(b, n, radix)?;
    let f = f_closed(b, n)?;
    let s = isqrt(&(f * pow(radix, 2 * p as u64)));
    let digits = to_digits(&s, radix);
    // f_b(n) ≥ 1 for odd n, so there is at least one integer digit.
    let int_len = digits.len() - p;
    DigitString::new(radix, digits, int_len)
}

/// `√f_b(n)` in `radix` with exactly `significant` digits.
pub fn sqrt_significand(
    b: u32,
    n: u64,
    radix: u32,
    significant: usize,
    rounding: Rounding,
) -> Result<DigitString> {
    check_sqrt_args(b, n, radix)?;
    if significant == 0 {
        return Err(Error::InvalidArgument(
            "precision must be at least 1".into(),
        ));
    }
    let f = f_closed(b, n)?;
    let int_len = digit_len(&isqrt(&f), radix);
    // frac = number of fractional digits kept; negative drops integer digits.
    let frac = significant as i64 - int_len as i64;
    let mut s = if frac >= 0 {
        isqrt(&(&f * pow(radix, 2 * frac as u64)))
    } else {
        // floor(√F / R^d) = floor(floor(√F) / R^d)
        isqrt(&f) / pow(radix, frac.unsigned_abs())
    };
    if rounding == Rounding::Nearest {
        // Round up iff √F·R^frac > s + 1/2, i.e. 4·F·R^(2·frac) > (2s+1)².
        let (lhs, rhs_scale) = if frac >= 0 {
            (f * pow(radix, 2 * frac as u64) * 4u32, Natural::one())
        } else {
            (f * 4u32, pow(radix, 2 * frac.unsigned_abs()))
        };
        let twice = &s * 2u32 + 1u32;
        if lhs > &twice * &twice * rhs_scale {
            s += 1u32;
        }
    }
    let mut digits = to_digits(&s, radix);
    let mut radix_offset = int_len;
    if digits.len() > significant {
        // Rounding carried into a new leading digit.
        debug_assert_eq!(digits.len(), significant + 1);
        digits.truncate(significant);
        radix_offset += 1;
    }
    DigitString::new(radix, digits, radix_offset)
}

/// Integer part plus eventually periodic fractional digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicExpansion {
    pub base: u32,
    pub integer_part: Natural,
    pub preperiod: Vec<u32>,
    pub period: Vec<u32>,
}

impl PeriodicExpansion {
    /// Reassembles the exact value as `int + pre/b^t + per/(b^t·(b^p − 1))`.
    pub fn value(&self) -> Rational {
        let t = self.preperiod.len() as u64;
        let p = self.period.len() as u64;
        let bt = pow(self.base, t);
        let pre = rational_from_naturals(from_digits(&self.preperiod, self.base), bt.clone());
        let per = rational_from_naturals(
            from_digits(&self.period, self.base),
            bt * (pow(self.base, p) - 1u32),
        );
        Rational::from_integer(Integer::from(self.integer_part.clone())) + pre + per
    }

    /// The first `len` digits after the radix point.
    pub fn fractional_digits(&self, len: usize) -> Vec<u32> {
        self.preperiod
            .iter()
            .chain(self.period.iter().cycle())
            .take(len)
            .copied()
            .collect()
    }
}

/// Shortest `p` dividing `cycle.len()` such that the cycle is `p`-periodic.
pub fn minimal_cycle(cycle: &[u32]) -> &[u32] {
    let n = cycle.len();
    for p in 1..n {
        if n.is_multiple_of(p) && (p..n).all(|i| cycle[i] == cycle[i - p]) {
            return &cycle[..p];
        }
    }
    cycle
}

/// Exact long-division expansion of a nonnegative rational.
pub fn rational_expansion(b: u32, q: &Rational) -> Result<PeriodicExpansion> {
    rational_expansion_bounded(b, q, usize::MAX)
}

/// As [`rational_expansion`], failing once the period would exceed `max_period` digits.
pub fn rational_expansion_bounded(
    b: u32,
    q: &Rational,
    max_period: usize,
) -> Result<PeriodicExpansion> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    let (integer_part, mut rem, den) = split_nonneg(q)?;
    let base = Natural::from(b);

    // Preperiod length: least t with (den with all base-coprime factors removed) | b^t.
    let mut coprime = den.clone();
    loop {
        let g = coprime.gcd(&base);
        if g.is_one() {
            break;
        }
        while (&coprime % &g).is_zero() {
            coprime /= &g;
        }
    }
    let smooth = &den / &coprime;
    let mut t = 0usize;
    let mut acc = Natural::one() % &smooth;
    while !acc.is_zero() {
        acc = acc * &base % &smooth;
        t += 1;
    }

    let step = |rem: &mut Natural| -> u32 {
        *rem *= &base;
        let (d, r) = rem.div_rem(&den);
        *rem = r;
        d.to_u32_digits().first().copied().unwrap_or(0)
    };

    let preperiod: Vec<u32> = (0..t).map(|_| step(&mut rem)).collect();
    let period = if rem.is_zero() {
        vec![0]
    } else {
        let start = rem.clone();
        let mut cycle = Vec::new();
        loop {
            cycle.push(step(&mut rem));
            if rem == start {
                break;
            }
            if cycle.len() >= max_period {
                return Err(Error::PeriodTooLong { limit: max_period });
            }
        }
        minimal_cycle(&cycle).to_vec()
    };
    Ok(PeriodicExpansion {
        base: b,
        integer_part,
        preperiod,
        period,
    })
}
