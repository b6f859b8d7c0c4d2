//! Block structure of `√f_b(2k−1)`: closed-form prediction, blind detection
//! in computed digits, and the comparison of the two.

mod detect;
mod predict;
mod verify;

pub use detect::{
    detect, detect_digits, measure_run, pattern_present, same_cycle, DetectedBlock, DetectorParams,
};
pub use predict::{
    lambda, nonrep_len, predict, rep_len, taylor_nonrep_len, BlockModel, BlockPrediction,
    PatternPrediction, Truncation,
};
pub use verify::{default_precision, verify, BlockRecord, MatchSource, VerificationReport};
