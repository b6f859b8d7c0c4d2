use serde::Serialize;

use super::detect::{detect_digits, measure_run, same_cycle, DetectedBlock, DetectorParams};
use super::predict::{predict, BlockPrediction, Truncation};
use crate::error::{Error, Result};
use crate::expansion::{sqrt_significand, Rounding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchSource {
    /// Found by the blind detector.
    Detected,
    /// Measured around the predicted run because the detector parameters
    /// cannot see a period that long.
    Anchored,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRecord {
    pub predicted: BlockPrediction,
    pub detected: Option<DetectedBlock>,
    pub source: Option<MatchSource>,
    pub boundary_match: bool,
    pub period_match: bool,
}

impl BlockRecord {
    pub fn matched(&self) -> bool {
        self.boundary_match && self.period_match
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub base: u32,
    pub k: u64,
    pub precision: usize,
    pub records: Vec<BlockRecord>,
    /// Segmentation the predictions were compared against.
    pub segments: Vec<DetectedBlock>,
    pub truncated: Option<Truncation>,
}

impl VerificationReport {
    pub fn matched(&self) -> usize {
        self.records.iter().filter(|r| r.matched()).count()
    }

    pub fn mismatched(&self) -> usize {
        self.records.len() - self.matched()
    }

    pub fn all_match(&self) -> bool {
        !self.records.is_empty() && self.mismatched() == 0
    }

    /// Earliest digit position where prediction and digits disagree.
    pub fn first_divergence(&self) -> Option<usize> {
        self.records.iter().find(|r| !r.matched()).map(|r| {
            let p = &r.predicted;
            match &r.detected {
                None => p.start,
                Some(d) if d.run_start() != p.run_start() => d.run_start().min(p.run_start()),
                Some(d) if d.end() != p.end() => d.end().min(p.end()),
                Some(_) => p.run_start(),
            }
        })
    }
}

/// Default precision: two blocks' worth past the last one examined.
pub fn default_precision(k: u64, last: u64) -> usize {
    (2 * k * (last + 2)) as usize
}

struct Run {
    start: usize,
    end: usize,
    period: usize,
    source: MatchSource,
}

/// Blind runs, with anchored measurements added for predicted periods the
/// detector cannot see. An anchored run stays inside its predicted block and
/// displaces blind runs it overlaps.
fn segment(
    d: &[u32],
    predicted: &[BlockPrediction],
    params: DetectorParams,
) -> Result<(Vec<DetectedBlock>, Vec<MatchSource>)> {
    let mut runs: Vec<Run> = detect_digits(d, params)?
        .into_iter()
        .map(|b| Run {
            start: b.run_start(),
            end: b.end(),
            period: b.period.len(),
            source: MatchSource::Detected,
        })
        .collect();

    for p in predicted {
        if params.can_see(p.period.len(), p.rep_len) {
            continue;
        }
        if let Some((start, end)) = measure_run(d, p.start, p.run_start(), p.period.len()) {
            runs.retain(|r| r.end <= start || r.start >= end);
            runs.push(Run {
                start,
                end,
                period: p.period.len(),
                source: MatchSource::Anchored,
            });
        }
    }
    runs.sort_by_key(|r| r.start);

    let mut blocks = Vec::with_capacity(runs.len());
    let mut sources = Vec::with_capacity(runs.len());
    let mut pending = 0;
    for r in runs {
        let run_len = r.end - r.start;
        blocks.push(DetectedBlock {
            start: pending,
            nonrep_digits: d[pending..r.start].to_vec(),
            period: d[r.start..r.start + r.period].to_vec(),
            repetitions: run_len / r.period,
            run_len,
        });
        sources.push(r.source);
        pending = r.end;
    }
    Ok((blocks, sources))
}

/// Checks predicted blocks `0..=last` of `√f_b(2k−1)` against its first
/// `precision` significand digits.
pub fn verify(
    b: u32,
    k: u64,
    last: u64,
    precision: usize,
    params: DetectorParams,
) -> Result<VerificationReport> {
    params.validate()?;
    let prediction = predict(b, k, last)?;
    let needed = prediction.blocks.last().map_or(0, BlockPrediction::end);
    if precision < needed {
        return Err(Error::InsufficientPrecision {
            needed,
            have: precision,
        });
    }
    let ds = sqrt_significand(b, 2 * k - 1, b, precision, Rounding::Truncate)?;
    let (segments, sources) = segment(ds.digits(), &prediction.blocks, params)?;

    let records = prediction
        .blocks
        .into_iter()
        .map(|p| {
            let found = segments.iter().position(|s| s.start == p.start);
            let detected = found.map(|i| segments[i].clone());
            let source = found.map(|i| sources[i]);
            let (boundary_match, period_match) = match &detected {
                Some(s) => (
                    s.nonrep_len() == p.nonrep_len && s.run_len == p.rep_len,
                    same_cycle(&s.period, &p.period),
                ),
                None => (false, false),
            };
            BlockRecord {
                predicted: p,
                detected,
                source,
                boundary_match,
                period_match,
            }
        })
        .collect();

    Ok(VerificationReport {
        base: b,
        k,
        precision,
        records,
        segments,
        truncated: prediction.truncated,
    })
}
