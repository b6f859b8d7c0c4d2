//! Base-`b` expansions of `√f_b(2k−1)` for `f_b(n) = b·f_b(n−1) + n`, and the
//! long repeating digit blocks ("schizophrenic" or mock-rational patterns)
//! that appear in them.
//!
//! The crate predicts the block structure exactly from the binomial series
//! of the square root, segments computed digits empirically, and checks the
//! two against each other, including after regrouping digits into base `b^m`.

pub mod baseconv;
pub mod blocks;
pub mod cli;
pub mod error;
pub mod expansion;
pub mod numeric;
pub mod recurrence;
pub mod taylor;

pub use error::{Error, Result};
