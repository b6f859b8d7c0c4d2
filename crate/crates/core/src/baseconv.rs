//! Regrouping base-`b` digits into base `b^m`, and whether the block pattern
//! survives it.

use crate::blocks::{detect, pattern_present, predict, DetectedBlock, DetectorParams};
use crate::error::{Error, Result};
use crate::expansion::{sqrt_significand, DigitString, Rounding};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regrouped {
    pub digits: DigitString,
    /// Trailing fractional digits that did not fill a group.
    pub dropped: usize,
}

pub fn target_base(b: u32, m: u32) -> Result<u32> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    if m == 0 {
        return Err(Error::NonPositiveArgument("power"));
    }
    b.checked_pow(m)
        .ok_or(Error::PowerOverflow { base: b, power: m })
}

fn pack(group: &[u32], b: u32) -> u32 {
    group.iter().fold(0, |acc, &d| acc * b + d)
}

/// Packs groups of `m` base-`b` digits into base-`b^m` digits. Integer digits
/// group leftward from the radix point, fractional digits rightward.
pub fn regroup(ds: &DigitString, m: u32) -> Result<Regrouped> {
    let b = ds.base();
    let target = target_base(b, m)?;
    let m = m as usize;

    let mut int: Vec<u32> = ds.integer_digits().to_vec();
    int.resize(ds.radix_offset(), 0);
    let pad = (m - int.len() % m) % m;
    let mut padded = vec![0; pad];
    padded.extend(int);

    let frac = ds.fractional_digits();
    let dropped = frac.len() % m;
    let frac = &frac[..frac.len() - dropped];

    let mut digits: Vec<u32> = padded.chunks(m).map(|g| pack(g, b)).collect();
    let radix_offset = digits.len();
    digits.extend(frac.chunks(m).map(|g| pack(g, b)));
    Ok(Regrouped {
        digits: DigitString::new(target, digits, radix_offset)?,
        dropped,
    })
}

/// Inverse of [`regroup`]: expands each base-`b^m` digit into `m` base-`b` digits.
pub fn ungroup(ds: &DigitString, b: u32, m: u32) -> Result<DigitString> {
    let target = target_base(b, m)?;
    if ds.base() != target {
        return Err(Error::InvalidArgument(format!(
            "expected a base-{target} numeral, got base {}",
            ds.base()
        )));
    }
    let m = m as usize;
    let mut digits = Vec::with_capacity(ds.len() * m);
    for &g in ds.digits() {
        let mut chunk = vec![0; m];
        let mut rest = g;
        for slot in chunk.iter_mut().rev() {
            *slot = rest % b;
            rest /= b;
        }
        digits.extend(chunk);
    }
    DigitString::new(b, digits, ds.radix_offset() * m)
}

/// Largest `m` with `⌊λ_max/m⌋ = 2`.
pub fn max_power(lambda_max: u64) -> Result<u64> {
    (1..=lambda_max)
        .rev()
        .find(|&m| lambda_max / m == 2)
        .ok_or(Error::NoValidPower(lambda_max))
}

/// Longest repeating run among detected blocks.
pub fn longest_run(blocks: &[DetectedBlock]) -> Option<usize> {
    blocks.iter().map(|b| b.run_len).max()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceEntry {
    pub power: u32,
    pub target_base: u32,
    pub blocks: Vec<DetectedBlock>,
    pub present: bool,
    pub dropped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceReport {
    pub base: u32,
    pub k: u64,
    /// Longest run detected in the base-`b` digits.
    pub lambda_max: Option<usize>,
    /// Bound on `m` implied by `lambda_max`, if any.
    pub max_power: Option<u64>,
    pub entries: Vec<PersistenceEntry>,
}

/// Runs the detector on `√f_b(2k−1)` regrouped into each base `b^m`.
///
/// `precision` counts base-`b` significand digits and must reach the end of
/// predicted block 1, since a pattern needs two runs.
pub fn persistence_check(
    b: u32,
    k: u64,
    powers: &[u32],
    precision: usize,
    params: DetectorParams,
) -> Result<PersistenceReport> {
    params.validate()?;
    let prediction = predict(b, k, 1)?;
    let needed = prediction.blocks.last().map_or(0, |p| p.end());
    if precision < needed {
        return Err(Error::InsufficientPrecision {
            needed,
            have: precision,
        });
    }
    let ds = sqrt_significand(b, 2 * k - 1, b, precision, Rounding::Truncate)?;
    let native = detect(&ds, params)?;
    let lambda_max = longest_run(&native);
    let max_power = lambda_max.and_then(|l| max_power(l as u64).ok());

    let entries = powers
        .iter()
        .map(|&m| {
            let r = regroup(&ds, m)?;
            let blocks = detect(&r.digits, params)?;
            Ok(PersistenceEntry {
                power: m,
                target_base: r.digits.base(),
                present: pattern_present(&blocks),
                blocks,
                dropped: r.dropped,
            })
        })
        .collect::<Result<_>>()?;
    Ok(PersistenceReport {
        base: b,
        k,
        lambda_max,
        max_power,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::{parse, sqrt_digits, sqrt_digits_in};

    #[test]
    fn regroup_examples() {
        let ds = parse("1111.11", 3).unwrap();
        let r = regroup(&ds, 2).unwrap();
        assert_eq!(r.digits, parse("44.4", 9).unwrap());
        assert_eq!(r.dropped, 0);

        let ds = parse("1.2345", 10).unwrap();
        let r = regroup(&ds, 3).unwrap();
        assert_eq!(r.digits.digits(), &[1, 234]);
        assert_eq!(r.dropped, 1);
    }

    #[test]
    fn identity_power() {
        let ds = parse("12.5", 7).unwrap();
        assert_eq!(regroup(&ds, 1).unwrap().digits, ds);
    }

    #[test]
    fn overflow_and_zero_power() {
        let ds = parse("1", 10).unwrap();
        assert_eq!(
            regroup(&ds, 10),
            Err(Error::PowerOverflow {
                base: 10,
                power: 10
            })
        );
        assert!(regroup(&ds, 0).is_err());
    }

    #[test]
    fn ungroup_inverts() {
        let ds = parse("201.1202", 3).unwrap();
        let r = regroup(&ds, 2).unwrap();
        assert_eq!(ungroup(&r.digits, 3, 2).unwrap(), ds);
    }

    #[test]
    fn max_power_examples() {
        assert_eq!(max_power(45).unwrap(), 22);
        assert_eq!(max_power(2).unwrap(), 1);
        assert_eq!(max_power(5).unwrap(), 2);
        assert_eq!(max_power(1), Err(Error::NoValidPower(1)));
    }

    #[test]
    fn regroup_matches_direct_expansion() {
        let base3 = sqrt_digits(3, 25, 120).unwrap();
        let direct = sqrt_digits_in(3, 25, 9, 60).unwrap();
        assert_eq!(regroup(&base3, 2).unwrap().digits, direct);
    }

    #[test]
    fn pattern_survives_small_powers() {
        let r = persistence_check(3, 25, &[1, 2, 3], 250, DetectorParams::default()).unwrap();
        assert!(r.entries.iter().all(|e| e.present));
        assert!(r.lambda_max.is_some());
    }
}
