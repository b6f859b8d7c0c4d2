use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::DigitString;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectorParams {
    /// Copies a period needs before it counts as a run.
    pub min_reps: usize,
    pub max_period: usize,
}

impl Default for DetectorParams {
    fn default() -> Self {
        DetectorParams {
            min_reps: 4,
            max_period: 8,
        }
    }
}

impl DetectorParams {
    pub fn validate(&self) -> Result<()> {
        if self.min_reps < 3 {
            return Err(Error::InvalidArgument(format!(
                "min_reps must be at least 3, got {}",
                self.min_reps
            )));
        }
        if self.max_period < 1 {
            return Err(Error::InvalidArgument(
                "max_period must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Whether a run of `run_len` digits with a period of `period_len` can be
    /// seen at all under these parameters.
    pub fn can_see(&self, period_len: usize, run_len: usize) -> bool {
        period_len <= self.max_period && run_len >= period_len * self.min_reps
    }
}

/// A block found in the digits: irregular digits, then a maximal periodic run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetectedBlock {
    pub start: usize,
    pub nonrep_digits: Vec<u32>,
    pub period: Vec<u32>,
    /// Whole copies of `period` in the run.
    pub repetitions: usize,
    /// Run length in digits; may end partway through a copy.
    pub run_len: usize,
}

impl DetectedBlock {
    pub fn nonrep_len(&self) -> usize {
        self.nonrep_digits.len()
    }

    pub fn run_start(&self) -> usize {
        self.start + self.nonrep_len()
    }

    pub fn end(&self) -> usize {
        self.run_start() + self.run_len
    }
}

/// End of the maximal run of period `p` that starts at `i` (exclusive).
fn run_end(d: &[u32], i: usize, p: usize) -> usize {
    let mut j = i + p;
    while j < d.len() && d[j] == d[j - p] {
        j += 1;
    }
    j.min(d.len())
}

fn repeats(d: &[u32], i: usize, p: usize, reps: usize) -> bool {
    let need = p * reps;
    i + need <= d.len() && (i + p..i + need).all(|j| d[j] == d[j - p])
}

/// Greedy left-to-right scan: at each position take the shortest period that
/// repeats `min_reps` times, extend it as far as it goes, and resume after it.
pub fn detect_digits(d: &[u32], params: DetectorParams) -> Result<Vec<DetectedBlock>> {
    params.validate()?;
    let mut out = Vec::new();
    let mut pending = 0;
    let mut i = 0;
    while i < d.len() {
        let found = (1..=params.max_period).find(|&p| repeats(d, i, p, params.min_reps));
        match found {
            Some(p) => {
                let end = run_end(d, i, p);
                let run_len = end - i;
                out.push(DetectedBlock {
                    start: pending,
                    nonrep_digits: d[pending..i].to_vec(),
                    period: d[i..i + p].to_vec(),
                    repetitions: run_len / p,
                    run_len,
                });
                pending = end;
                i = end;
            }
            None => i += 1,
        }
    }
    Ok(out)
}

/// [`detect_digits`] over the significand of `ds`.
pub fn detect(ds: &DigitString, params: DetectorParams) -> Result<Vec<DetectedBlock>> {
    detect_digits(ds.digits(), params)
}

/// Maximal run of period `p` through the window `d[at..at + p]`, not reaching
/// left of `floor`, as `(start, end)`. `None` unless the run holds at least
/// two copies.
pub fn measure_run(d: &[u32], floor: usize, at: usize, p: usize) -> Option<(usize, usize)> {
    if p == 0 || at + p > d.len() || floor > at {
        return None;
    }
    let mut a = at;
    while a > floor && d[a - 1] == d[a - 1 + p] {
        a -= 1;
    }
    let z = run_end(d, at, p);
    (z - a >= 2 * p).then_some((a, z))
}

/// A pattern needs at least two runs.
pub fn pattern_present(blocks: &[DetectedBlock]) -> bool {
    blocks.len() >= 2
}

/// Equal up to rotation.
pub fn same_cycle(a: &[u32], b: &[u32]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|s| a[s..].iter().chain(&a[..s]).eq(b)))
}
