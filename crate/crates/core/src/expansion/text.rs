//! Text grammar for digit strings.
//!
//! ```text
//! numeral  := ['+'] int ['.' frac] [marker exp] ['_' base]
//! marker   := 'e' (bases up to 14, or above 36) | '@' (any base)
//! ```
//!
//! Digits above 9 are `a`..`z` up to base 36; larger bases write every digit
//! in decimal, separated by `:`. Whitespace is layout only and is skipped by
//! [`parse`] (in `:` mode it also separates digits).

use super::DigitString;
use crate::error::{Error, Result};

const ALPHABET: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Fractional digits are laid out in groups of `size`, `per_row` groups per
/// line (0 keeps everything on one line).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grouping {
    pub size: usize,
    pub per_row: usize,
}

impl Default for Grouping {
    fn default() -> Self {
        Grouping {
            size: 10,
            per_row: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Notation {
    Plain,
    Scientific,
    /// Plain while the exponent is at most `max_plain_exponent`.
    Auto {
        max_plain_exponent: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    pub grouping: Option<Grouping>,
    pub notation: Notation,
    pub base_suffix: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            grouping: Some(Grouping::default()),
            notation: Notation::Scientific,
            base_suffix: true,
        }
    }
}

impl RenderOptions {
    pub fn compact(notation: Notation) -> Self {
        RenderOptions {
            grouping: None,
            notation,
            base_suffix: true,
        }
    }
}

fn colon_mode(base: u32) -> bool {
    base > 36
}

fn exponent_marker(base: u32) -> char {
    if base <= 14 || colon_mode(base) {
        'e'
    } else {
        '@'
    }
}

fn digit_str(digits: &[u32], base: u32) -> String {
    if colon_mode(base) {
        digits
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(":")
    } else {
        digits
            .iter()
            .map(|&d| ALPHABET[d as usize] as char)
            .collect()
    }
}

/// Renders a single digit value.
pub fn digit_char(d: u32, base: u32) -> String {
    digit_str(&[d], base)
}

pub fn render(ds: &DigitString, opts: &RenderOptions) -> String {
    let base = ds.base();
    let digits = ds.digits();
    let exponent = ds.exponent();
    let scientific = match opts.notation {
        Notation::Plain => false,
        Notation::Scientific => true,
        Notation::Auto { max_plain_exponent } => exponent > max_plain_exponent,
    } || ds.radix_offset() > digits.len();

    let (int_part, frac_part) = if scientific {
        digits.split_at(1)
    } else {
        digits.split_at(ds.radix_offset())
    };

    let mut out = digit_str(int_part, base);
    if !frac_part.is_empty() {
        out.push('.');
        match opts.grouping {
            None => out.push_str(&digit_str(frac_part, base)),
            Some(g) => {
                let size = g.size.max(1);
                for (i, chunk) in frac_part.chunks(size).enumerate() {
                    if i > 0 {
                        if g.per_row > 0 && i % g.per_row == 0 {
                            out.push('\n');
                        } else {
                            out.push(' ');
                        }
                    }
                    out.push_str(&digit_str(chunk, base));
                }
            }
        }
    }
    if scientific {
        out.push(exponent_marker(base));
        out.push_str(&exponent.to_string());
    }
    if opts.base_suffix {
        out.push('_');
        out.push_str(&base.to_string());
    }
    out
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedNumeral(msg.into())
}

fn parse_digits(text: &str, base: u32) -> Result<Vec<u32>> {
    if colon_mode(base) {
        text.split(|c: char| c == ':' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                let d: u32 = t.parse().map_err(|_| Error::InvalidDigit {
                    digit: t.into(),
                    base,
                })?;
                if d >= base {
                    return Err(Error::InvalidDigit {
                        digit: t.into(),
                        base,
                    });
                }
                Ok(d)
            })
            .collect()
    } else {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c.to_digit(36) {
                Some(d) if d < base => Ok(d),
                _ => Err(Error::InvalidDigit {
                    digit: c.to_string(),
                    base,
                }),
            })
            .collect()
    }
}

/// Parses the grammar emitted by [`render`]; `parse(render(ds)) == ds`.
pub fn parse(text: &str, base: u32) -> Result<DigitString> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let mut body = text.trim();

    if let Some(idx) = body.rfind('_') {
        let suffix: String = body[idx + 1..]
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let declared: u32 = suffix
            .parse()
            .map_err(|_| malformed(format!("bad base suffix {suffix:?}")))?;
        if declared != base {
            return Err(malformed(format!(
                "numeral is base {declared}, expected {base}"
            )));
        }
        body = &body[..idx];
    }

    let mut exponent = 0i64;
    let marker_pos = body.rfind('@').or_else(|| {
        if exponent_marker(base) == 'e' {
            body.rfind('e')
        } else {
            None
        }
    });
    if let Some(idx) = marker_pos {
        let exp: String = body[idx + 1..]
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        exponent = exp
            .parse()
            .map_err(|_| malformed(format!("bad exponent {exp:?}")))?;
        body = &body[..idx];
    }

    let body = body.trim_start();
    let body = body.strip_prefix('+').unwrap_or(body);
    if body.starts_with('-') {
        return Err(malformed("negative numerals are not representable"));
    }

    let mut parts = body.splitn(3, '.');
    let int_text = parts.next().unwrap_or("");
    let frac_text = parts.next();
    if parts.next().is_some() {
        return Err(malformed("more than one radix point"));
    }
    let int_digits = parse_digits(int_text, base)?;
    if int_digits.is_empty() {
        return Err(malformed("missing integer digits before the radix point"));
    }
    let frac_digits = match frac_text {
        Some(f) => {
            let d = parse_digits(f, base)?;
            if d.is_empty() {
                return Err(malformed("radix point without fractional digits"));
            }
            d
        }
        None => Vec::new(),
    };

    let mut digits = int_digits;
    let mut radix_offset = digits.len() as i64 + exponent;
    digits.extend(frac_digits);
    if radix_offset < 1 {
        let pad = (1 - radix_offset) as usize;
        let mut padded = vec![0; pad];
        padded.extend(digits);
        digits = padded;
        radix_offset = 1;
    }
    DigitString::new(base, digits, radix_offset as usize)
}
