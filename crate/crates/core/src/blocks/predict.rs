use serde::Serialize;

use crate::error::{Error, Result};
use crate::taylor::{shift_params, Series};

/// One predicted block: `nonrep_len` irregular digits, then a run of
/// `rep_len` digits repeating `period`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockPrediction {
    pub l: u64,
    pub start: usize,
    pub nonrep_len: usize,
    pub rep_len: usize,
    pub lambda: usize,
    pub period: Vec<u32>,
}

impl BlockPrediction {
    pub fn run_start(&self) -> usize {
        self.start + self.nonrep_len
    }

    pub fn end(&self) -> usize {
        self.start + self.lambda
    }
}

/// Where and why a prediction stopped early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub l: u64,
    pub cause: Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternPrediction {
    pub base: u32,
    pub k: u64,
    pub blocks: Vec<BlockPrediction>,
    pub truncated: Option<Truncation>,
}

/// Block-length model for one `√f_b(2k−1)`.
///
/// Digit positions count from the leading significand digit, across the
/// radix point.
#[derive(Debug, Clone)]
pub struct BlockModel {
    series: Series,
    /// Memoized `λ_0, λ_1, ...`
    lambdas: Vec<i64>,
}

fn positive(l: u64, what: &'static str, value: i64) -> Result<usize> {
    if value <= 0 {
        Err(Error::Degenerate { l, what, value })
    } else {
        Ok(value as usize)
    }
}

impl BlockModel {
    pub fn new(b: u32, k: u64) -> Result<Self> {
        Ok(BlockModel {
            series: Series::new(b, k)?,
            lambdas: Vec::new(),
        })
    }

    pub fn base(&self) -> u32 {
        self.series.base()
    }

    pub fn k(&self) -> u64 {
        self.series.k()
    }

    pub fn series(&mut self) -> &mut Series {
        &mut self.series
    }

    fn r(&self, l: u64) -> Result<i64> {
        Ok(shift_params(self.base(), l)?.r as i64)
    }

    /// `⌊log_b|τ_{l,1}τ_{l,3}|⌋ + 1 + r`: irregular digits of the bare term.
    pub fn taylor_nonrep_len(&mut self, l: u64) -> Result<usize> {
        let v = self.series.log_magnitude(l)? + 1 + self.r(l)?;
        positive(l, "taylor_nonrep_len", v)
    }

    /// Leading irregular sub-block of block `l ≥ 1`.
    pub fn nonrep_len(&mut self, l: u64) -> Result<usize> {
        let v = self.taylor_nonrep_len(l)? as i64 + i64::from(self.series.epsilon(l)?);
        positive(l, "nonrep_len", v)
    }

    /// `Σ_{i<l} λ_i`, filling the memo as needed.
    fn prefix(&mut self, l: u64) -> Result<i64> {
        while (self.lambdas.len() as u64) < l {
            let i = self.lambdas.len() as u64;
            let sum: i64 = self.lambdas.iter().sum();
            let two_k = 2 * self.k() as i64;
            let next =
                self.series.log_magnitude(i + 1)? + 1 + i64::from(self.series.epsilon(i + 1)?);
            let lambda = two_k * (i as i64 + 1) - next - sum;
            positive(i, "lambda", lambda)?;
            self.lambdas.push(lambda);
        }
        Ok(self.lambdas[..l as usize].iter().sum())
    }

    /// `λ_l = 2k(l+1) − (⌊log_b|τ_{l+1,1}τ_{l+1,3}|⌋ + 1 + ε(l+1)) − Σ_{i<l} λ_i`.
    pub fn lambda(&mut self, l: u64) -> Result<usize> {
        self.prefix(l + 1)?;
        Ok(self.lambdas[l as usize] as usize)
    }

    /// Repeating sub-block of block `l ≥ 1`, evaluated from its own closed
    /// form rather than as `λ_l − nonrep_len`.
    pub fn rep_len(&mut self, l: u64) -> Result<usize> {
        if l == 0 {
            return Err(Error::InvalidArgument("rep_len requires l >= 1".into()));
        }
        let prefix = self.prefix(l)?;
        let two_k = 2 * self.k() as i64;
        let logs = self.series.log_magnitude(l + 1)? + self.series.log_magnitude(l)?;
        let eps = i64::from(self.series.epsilon(l + 1)?) + i64::from(self.series.epsilon(l)?);
        let v = two_k * (l as i64 + 1) - logs - eps - (self.r(l)? + 2) - prefix;
        positive(l, "rep_len", v)
    }

    /// First significand position of block `l`.
    pub fn start(&mut self, l: u64) -> Result<usize> {
        Ok(self.prefix(l)? as usize)
    }

    fn block(&mut self, l: u64) -> Result<BlockPrediction> {
        let start = self.start(l)?;
        let lambda = self.lambda(l)?;
        let (nonrep_len, rep_len) = if l == 0 {
            (0, lambda)
        } else {
            (self.nonrep_len(l)?, self.rep_len(l)?)
        };
        if nonrep_len + rep_len != lambda {
            return Err(Error::Inconsistent(format!(
                "block {l}: nonrep {nonrep_len} + rep {rep_len} != lambda {lambda}"
            )));
        }
        let period = self.series.repeating_period(l)?;
        Ok(BlockPrediction {
            l,
            start,
            nonrep_len,
            rep_len,
            lambda,
            period,
        })
    }

    /// Blocks `0..=last`, stopping at the first degenerate one.
    pub fn predict(&mut self, last: u64) -> Result<PatternPrediction> {
        let mut blocks = Vec::new();
        let mut truncated = None;
        for l in 0..=last {
            match self.block(l) {
                Ok(b) => blocks.push(b),
                Err(e @ (Error::Degenerate { .. } | Error::PeriodTooLong { .. })) => {
                    truncated = Some(Truncation { l, cause: e });
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        Ok(PatternPrediction {
            base: self.base(),
            k: self.k(),
            blocks,
            truncated,
        })
    }
}

pub fn taylor_nonrep_len(b: u32, k: u64, l: u64) -> Result<usize> {
    BlockModel::new(b, k)?.taylor_nonrep_len(l)
}

pub fn nonrep_len(b: u32, k: u64, l: u64) -> Result<usize> {
    BlockModel::new(b, k)?.nonrep_len(l)
}

pub fn lambda(b: u32, k: u64, l: u64) -> Result<usize> {
    BlockModel::new(b, k)?.lambda(l)
}

pub fn rep_len(b: u32, k: u64, l: u64) -> Result<usize> {
    BlockModel::new(b, k)?.rep_len(l)
}

/// Predicted pattern of `√f_b(2k−1)` through block `last`; requires `k ≥ 2`.
pub fn predict(b: u32, k: u64, last: u64) -> Result<PatternPrediction> {
    if k < 2 {
        return Err(Error::InvalidK { min: 2, got: k });
    }
    BlockModel::new(b, k)?.predict(last)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base10_lengths() {
        assert_eq!(taylor_nonrep_len(10, 25, 1).unwrap(), 3);
        assert_eq!(taylor_nonrep_len(10, 25, 2).unwrap(), 7);
        assert_eq!(nonrep_len(10, 25, 1).unwrap(), 4);
        assert_eq!(nonrep_len(10, 25, 2).unwrap(), 7);
        assert_eq!(lambda(10, 25, 0).unwrap(), 47);
        assert_eq!(lambda(10, 25, 1).unwrap(), 49);
        assert_eq!(lambda(10, 25, 2).unwrap(), 48);
        assert_eq!(rep_len(10, 25, 1).unwrap(), 45);
        assert_eq!(rep_len(10, 25, 2).unwrap(), 41);
    }

    #[test]
    fn odd_base_has_no_fractional_shift() {
        assert_eq!(taylor_nonrep_len(11, 25, 1).unwrap(), 2);
    }

    #[test]
    fn epsilon_bounds_nonrep_difference() {
        let mut m = BlockModel::new(10, 25).unwrap();
        for l in 1..=6 {
            let d = m.nonrep_len(l).unwrap() - m.taylor_nonrep_len(l).unwrap();
            assert!(d <= 1);
        }
    }

    #[test]
    fn length_formulas_agree() {
        let mut m = BlockModel::new(10, 25).unwrap();
        for l in 1..=3 {
            assert_eq!(
                m.nonrep_len(l).unwrap() + m.rep_len(l).unwrap(),
                m.lambda(l).unwrap()
            );
        }
    }

    #[test]
    fn predict_examples() {
        let p = predict(10, 25, 2).unwrap();
        let spans: Vec<_> = p.blocks.iter().map(|b| (b.start, b.lambda)).collect();
        assert_eq!(spans, vec![(0, 47), (47, 49), (96, 48)]);
        assert!(p.truncated.is_none());

        let p = predict(10, 25, 0).unwrap();
        assert_eq!(p.blocks.len(), 1);
        assert_eq!(p.blocks[0].period, vec![1]);
        assert_eq!(p.blocks[0].nonrep_len, 0);
        assert_eq!(p.blocks[0].rep_len, 47);

        let p = predict(8, 25, 1).unwrap();
        assert_eq!(p.blocks[1].period, vec![4]);
    }

    #[test]
    fn small_k_truncates() {
        assert!(matches!(predict(10, 1, 2), Err(Error::InvalidK { .. })));
        let p = predict(2, 2, 4).unwrap();
        let t = p.truncated.expect("k = 2 in base 2 runs out of room");
        assert!(matches!(t.cause, Error::Degenerate { .. }));
        assert!(p.blocks.len() < 5);
    }

    #[test]
    fn degenerate_base2_is_flagged() {
        let p = predict(2, 10, 4).unwrap();
        assert_eq!(p.blocks.len(), 4);
        let t = p.truncated.unwrap();
        assert_eq!(t.l, 4);
        assert!(matches!(
            t.cause,
            Error::Degenerate {
                what: "rep_len",
                ..
            }
        ));
    }
}
