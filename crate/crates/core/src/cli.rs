//! Command-line front end. [`run`] does the work and returns the exit status,
//! so it can be driven in-process.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::baseconv::{longest_run, max_power, regroup, target_base};
use crate::blocks::{
    default_precision, detect, pattern_present, predict, verify, BlockPrediction, DetectedBlock,
    DetectorParams, MatchSource,
};
use crate::error::{Error, Result};
use crate::expansion::{
    render, sqrt_digits, sqrt_significand, DigitString, Grouping, Notation, RenderOptions, Rounding,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Sequence rows switch to scientific notation past this exponent.
const SEQUENCE_PLAIN_LIMIT: i64 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "schizo",
    version,
    about = "Expansions of sqrt(f_b(n)) and their block patterns"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NotationArg {
    Scientific,
    Plain,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RoundingArg {
    Truncate,
    Nearest,
}

impl From<RoundingArg> for Rounding {
    fn from(r: RoundingArg) -> Self {
        match r {
            RoundingArg::Truncate => Rounding::Truncate,
            RoundingArg::Nearest => Rounding::Nearest,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Target {
    #[arg(long)]
    pub base: u32,
    /// Odd index n = 2k - 1.
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Clone, Args)]
pub struct Layout {
    /// Digits per group; 0 disables grouping.
    #[arg(long)]
    pub group: Option<usize>,
    /// Groups per row; 0 keeps one line.
    #[arg(long, default_value_t = 5)]
    pub rows: usize,
    #[arg(long, value_enum)]
    pub notation: Option<NotationArg>,
}

#[derive(Debug, Clone, Args)]
pub struct Detector {
    #[arg(long, default_value_t = 4)]
    pub min_reps: usize,
    #[arg(long, default_value_t = 8)]
    pub max_period: usize,
}

impl From<&Detector> for DetectorParams {
    fn from(d: &Detector) -> Self {
        DetectorParams {
            min_reps: d.min_reps,
            max_period: d.max_period,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the expansion of sqrt(f_b(n)).
    Expand {
        #[command(flatten)]
        target: Target,
        /// Significand digits.
        #[arg(long, default_value_t = 100)]
        precision: usize,
        /// Output base, if different from --base.
        #[arg(long)]
        radix: Option<u32>,
        #[arg(long, value_enum, default_value_t = RoundingArg::Truncate)]
        rounding: RoundingArg,
        #[command(flatten)]
        layout: Layout,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the predicted block table.
    Predict {
        #[command(flatten)]
        target: Target,
        /// Last block index L.
        #[arg(long, default_value_t = 3)]
        terms: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare predicted blocks with those found in the digits.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        terms: u64,
        /// Significand digits; defaults to 2k(L+2).
        #[arg(long)]
        precision: Option<usize>,
        #[command(flatten)]
        detector: Detector,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// One expansion per odd n in a range.
    Sequence {
        #[arg(long)]
        base: u32,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = 50)]
        precision: usize,
        #[arg(long, value_enum, default_value_t = RoundingArg::Nearest)]
        rounding: RoundingArg,
        #[command(flatten)]
        layout: Layout,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Regroup the base-b expansion into base b^m.
    Convert {
        #[command(flatten)]
        target: Target,
        /// Group size m; repeat or comma-separate for several.
        #[arg(long, required = true, value_delimiter = ',')]
        power: Vec<u32>,
        /// Significand digits in the target base.
        #[arg(long, default_value_t = 100)]
        precision: usize,
        /// Run block detection on each regrouped expansion.
        #[arg(long)]
        detect: bool,
        #[command(flatten)]
        detector: Detector,
        #[command(flatten)]
        layout: Layout,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Default, Serialize)]
struct Document {
    command: &'static str,
    base: u32,
    n: Option<u64>,
    precision: Option<usize>,
    digits: Option<String>,
    blocks: Vec<BlockJson>,
    truncated: Option<String>,
    warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radix: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<Summary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rows: Option<Vec<Row>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conversions: Option<Vec<Conversion>>,
}

#[derive(Debug, Clone, Serialize)]
struct BlockJson {
    l: Option<u64>,
    start: usize,
    nonrep_len: usize,
    rep_len: usize,
    lambda: Option<usize>,
    period: String,
    matched: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<MatchSource>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detected: Option<Box<BlockJson>>,
}

#[derive(Debug, Serialize)]
struct Summary {
    matched: usize,
    mismatched: usize,
    first_divergence: Option<usize>,
}

#[derive(Debug, Serialize)]
struct Row {
    n: u64,
    digits: String,
}

#[derive(Debug, Serialize)]
struct Conversion {
    power: u32,
    base: u32,
    digits: String,
    dropped: usize,
    blocks: Vec<BlockJson>,
    pattern_present: Option<bool>,
}

fn period_text(period: &[u32], base: u32) -> String {
    period
        .iter()
        .map(|&d| crate::expansion::digit_char(d, base))
        .collect::<Vec<_>>()
        .join(if base > 36 { ":" } else { "" })
}

fn predicted_json(p: &BlockPrediction, base: u32) -> BlockJson {
    BlockJson {
        l: Some(p.l),
        start: p.start,
        nonrep_len: p.nonrep_len,
        rep_len: p.rep_len,
        lambda: Some(p.lambda),
        period: period_text(&p.period, base),
        matched: None,
        source: None,
        detected: None,
    }
}

fn detected_json(d: &DetectedBlock, base: u32) -> BlockJson {
    BlockJson {
        l: None,
        start: d.start,
        nonrep_len: d.nonrep_len(),
        rep_len: d.run_len,
        lambda: None,
        period: period_text(&d.period, base),
        matched: None,
        source: None,
        detected: None,
    }
}

fn k_of(n: u64) -> Result<u64> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenIndex(n));
    }
    Ok(n.div_ceil(2))
}

fn render_options(
    layout: &Layout,
    default_group: usize,
    default_notation: Notation,
) -> RenderOptions {
    let size = layout.group.unwrap_or(default_group);
    let notation = match layout.notation {
        None => default_notation,
        Some(NotationArg::Scientific) => Notation::Scientific,
        Some(NotationArg::Plain) => Notation::Plain,
        Some(NotationArg::Auto) => Notation::Auto {
            max_plain_exponent: SEQUENCE_PLAIN_LIMIT,
        },
    };
    RenderOptions {
        grouping: (size > 0).then_some(Grouping {
            size,
            per_row: layout.rows,
        }),
        notation,
        base_suffix: true,
    }
}

fn compact(opts: &RenderOptions) -> RenderOptions {
    RenderOptions {
        grouping: None,
        ..*opts
    }
}

/// Output of one command: text lines or a structured document, plus status.
struct Outcome {
    text: String,
    doc: Document,
    status: i32,
}

fn expand(
    target: &Target,
    precision: usize,
    radix: Option<u32>,
    rounding: RoundingArg,
    layout: &Layout,
) -> Result<Outcome> {
    let radix = radix.unwrap_or(target.base);
    let ds = sqrt_significand(target.base, target.n, radix, precision, rounding.into())?;
    let opts = render_options(layout, 10, Notation::Scientific);
    Ok(Outcome {
        text: render(&ds, &opts) + "\n",
        doc: Document {
            command: "expand",
            base: target.base,
            n: Some(target.n),
            precision: Some(precision),
            digits: Some(render(&ds, &compact(&opts))),
            radix: Some(radix),
            ..Document::default()
        },
        status: EXIT_OK,
    })
}

fn predict_cmd(target: &Target, terms: u64) -> Result<Outcome> {
    let k = k_of(target.n)?;
    let p = predict(target.base, k, terms)?;
    let b = target.base;
    let mut text = format!("base {b}, n = {} (k = {k})\n", target.n);
    text.push_str(&format!(
        "{:>3} {:>6} {:>7} {:>5} {:>7}  period\n",
        "l", "start", "nonrep", "rep", "lambda"
    ));
    for x in &p.blocks {
        text.push_str(&format!(
            "{:>3} {:>6} {:>7} {:>5} {:>7}  {}\n",
            x.l,
            x.start,
            x.nonrep_len,
            x.rep_len,
            x.lambda,
            period_text(&x.period, b)
        ));
    }
    let truncated = p
        .truncated
        .as_ref()
        .map(|t| format!("block {}: {}", t.l, t.cause));
    if let Some(t) = &truncated {
        text.push_str(&format!("truncated at {t}\n"));
    }
    Ok(Outcome {
        text,
        doc: Document {
            command: "predict",
            base: b,
            n: Some(target.n),
            blocks: p.blocks.iter().map(|x| predicted_json(x, b)).collect(),
            truncated,
            ..Document::default()
        },
        status: EXIT_OK,
    })
}

fn verify_cmd(
    target: &Target,
    terms: u64,
    precision: Option<usize>,
    det: &Detector,
) -> Result<Outcome> {
    let k = k_of(target.n)?;
    let b = target.base;
    let precision = precision.unwrap_or_else(|| default_precision(k, terms));
    let params = DetectorParams::from(det);
    let r = verify(b, k, terms, precision, params)?;

    let mut text = format!(
        "base {b}, n = {} (k = {k}), {precision} digits, min-reps {}, max-period {}\n",
        target.n, params.min_reps, params.max_period
    );
    text.push_str(&format!(
        "{:>3} {:>6} {:>7} {:>5}  {:<10} | {:>6} {:>7} {:>5}  {:<10} {:<9} match\n",
        "l", "start", "nonrep", "rep", "period", "start", "nonrep", "run", "period", "source"
    ));
    let mut warnings = Vec::new();
    let mut blocks = Vec::new();
    for rec in &r.records {
        let p = &rec.predicted;
        let (found, det_json) = match &rec.detected {
            Some(d) => (
                format!(
                    "{:>6} {:>7} {:>5}  {:<10}",
                    d.start,
                    d.nonrep_len(),
                    d.run_len,
                    period_text(&d.period, b)
                ),
                Some(Box::new(detected_json(d, b))),
            ),
            None => (
                format!("{:>6} {:>7} {:>5}  {:<10}", "-", "-", "-", "-"),
                None,
            ),
        };
        let source = match rec.source {
            Some(MatchSource::Detected) => "detected",
            Some(MatchSource::Anchored) => "anchored",
            None => "-",
        };
        text.push_str(&format!(
            "{:>3} {:>6} {:>7} {:>5}  {:<10} | {found} {source:<9} {}\n",
            p.l,
            p.start,
            p.nonrep_len,
            p.rep_len,
            period_text(&p.period, b),
            if rec.matched() { "yes" } else { "no" }
        ));
        if rec.source == Some(MatchSource::Anchored) {
            warnings.push(format!(
                "block {}: period of length {} with a run of {} is outside the detector's reach; measured at the predicted position",
                p.l,
                p.period.len(),
                p.rep_len
            ));
        }
        let mut json = predicted_json(p, b);
        json.matched = Some(rec.matched());
        json.source = rec.source;
        json.detected = det_json;
        blocks.push(json);
    }
    text.push_str(&format!(
        "{}/{} blocks match\n",
        r.matched(),
        r.records.len()
    ));
    if let Some(pos) = r.first_divergence() {
        text.push_str(&format!("first divergence at digit {pos}\n"));
    }
    let truncated = r
        .truncated
        .as_ref()
        .map(|t| format!("block {}: {}", t.l, t.cause));
    if let Some(t) = &truncated {
        text.push_str(&format!("truncated at {t}\n"));
    }
    for w in &warnings {
        text.push_str(&format!("warning: {w}\n"));
    }
    Ok(Outcome {
        text,
        doc: Document {
            command: "verify",
            base: b,
            n: Some(target.n),
            precision: Some(precision),
            blocks,
            truncated,
            warnings,
            summary: Some(Summary {
                matched: r.matched(),
                mismatched: r.mismatched(),
                first_divergence: r.first_divergence(),
            }),
            ..Document::default()
        },
        status: if r.all_match() {
            EXIT_OK
        } else {
            EXIT_MISMATCH
        },
    })
}

fn sequence(
    base: u32,
    from: u64,
    to: u64,
    precision: usize,
    rounding: RoundingArg,
    layout: &Layout,
) -> Result<Outcome> {
    if from.is_multiple_of(2) {
        return Err(Error::EvenIndex(from));
    }
    if to < from {
        return Err(Error::InvalidArgument(format!("empty range {from}..{to}")));
    }
    let opts = render_options(
        layout,
        0,
        Notation::Auto {
            max_plain_exponent: SEQUENCE_PLAIN_LIMIT,
        },
    );
    let width = to.to_string().len();
    let mut text = String::new();
    let mut rows = Vec::new();
    for n in (from..=to).step_by(2) {
        let ds = sqrt_significand(base, n, base, precision, rounding.into())?;
        text.push_str(&format!("{n:>width$}  {}\n", render(&ds, &opts)));
        rows.push(Row {
            n,
            digits: render(&ds, &compact(&opts)),
        });
    }
    Ok(Outcome {
        text,
        doc: Document {
            command: "sequence",
            base,
            precision: Some(precision),
            rows: Some(rows),
            ..Document::default()
        },
        status: EXIT_OK,
    })
}

/// `√f_b(n)` in base `b^m` with `precision` significand digits, built by
/// regrouping base-`b` digits.
pub fn regrouped_expansion(
    b: u32,
    n: u64,
    m: u32,
    precision: usize,
) -> Result<(DigitString, usize)> {
    if precision == 0 {
        return Err(Error::InvalidArgument(
            "precision must be at least 1".into(),
        ));
    }
    target_base(b, m)?;
    let int_len = sqrt_digits(b, n, 0)?.radix_offset();
    let int_groups = int_len.div_ceil(m as usize);
    let frac_groups = precision.saturating_sub(int_groups);
    let native = sqrt_digits(b, n, frac_groups * m as usize)?;
    let r = regroup(&native, m)?;
    let mut digits = r.digits.digits().to_vec();
    digits.truncate(precision);
    let ds = DigitString::new(r.digits.base(), digits, r.digits.radix_offset())?;
    Ok((ds, r.dropped))
}

fn convert(
    target: &Target,
    powers: &[u32],
    precision: usize,
    run_detect: bool,
    det: &Detector,
    layout: &Layout,
) -> Result<Outcome> {
    let b = target.base;
    let params = DetectorParams::from(det);
    if run_detect {
        params.validate()?;
    }
    let opts = render_options(layout, 10, Notation::Scientific);
    let mut text = String::new();
    let mut conversions = Vec::new();
    let mut longest = None::<usize>;
    for &m in powers {
        let (ds, dropped) = regrouped_expansion(b, target.n, m, precision)?;
        let base = ds.base();
        text.push_str(&format!("base {base} = {b}^{m}\n{}\n", render(&ds, &opts)));
        let mut blocks = Vec::new();
        let mut present = None;
        if run_detect {
            let found = detect(&ds, params)?;
            for d in &found {
                text.push_str(&format!(
                    "  run at {:>4}: nonrep {:>3}, run {:>3}, period {}\n",
                    d.run_start(),
                    d.nonrep_len(),
                    d.run_len,
                    period_text(&d.period, base)
                ));
            }
            let yes = pattern_present(&found);
            text.push_str(&format!(
                "  pattern present: {}\n",
                if yes { "yes" } else { "no" }
            ));
            if m == 1 {
                longest = longest_run(&found);
            }
            blocks = found.iter().map(|d| detected_json(d, base)).collect();
            present = Some(yes);
        }
        conversions.push(Conversion {
            power: m,
            base,
            digits: render(&ds, &compact(&opts)),
            dropped,
            blocks,
            pattern_present: present,
        });
    }
    let mut warnings = Vec::new();
    if let Some(l) = longest {
        match max_power(l as u64) {
            Ok(mp) => text.push_str(&format!(
                "longest base-{b} run {l}; powers up to {mp} keep it\n"
            )),
            Err(e) => warnings.push(e.to_string()),
        }
    }
    let (digits, blocks) = match conversions.as_slice() {
        [only] => (Some(only.digits.clone()), only.blocks.clone()),
        _ => (None, Vec::new()),
    };
    Ok(Outcome {
        text,
        doc: Document {
            command: "convert",
            base: b,
            n: Some(target.n),
            precision: Some(precision),
            digits,
            blocks,
            warnings,
            conversions: Some(conversions),
            ..Document::default()
        },
        status: EXIT_OK,
    })
}

fn dispatch(cmd: &Command) -> Result<(Outcome, Format)> {
    Ok(match cmd {
        Command::Expand {
            target,
            precision,
            radix,
            rounding,
            layout,
            format,
        } => (
            expand(target, *precision, *radix, *rounding, layout)?,
            *format,
        ),
        Command::Predict {
            target,
            terms,
            format,
        } => (predict_cmd(target, *terms)?, *format),
        Command::Verify {
            target,
            terms,
            precision,
            detector,
            format,
        } => (verify_cmd(target, *terms, *precision, detector)?, *format),
        Command::Sequence {
            base,
            from,
            to,
            precision,
            rounding,
            layout,
            format,
        } => (
            sequence(*base, *from, *to, *precision, *rounding, layout)?,
            *format,
        ),
        Command::Convert {
            target,
            power,
            precision,
            detect,
            detector,
            layout,
            format,
        } => (
            convert(target, power, *precision, *detect, detector, layout)?,
            *format,
        ),
    })
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(&cli.command) {
        Ok((outcome, format)) => {
            let written = match format {
                Format::Text => out.write_all(outcome.text.as_bytes()),
                Format::Structured => serde_json::to_string_pretty(&outcome.doc)
                    .map_err(std::io::Error::other)
                    .and_then(|s| writeln!(out, "{s}")),
            };
            match written {
                Ok(()) => outcome.status,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_INTERNAL
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit status for a failed command.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_PRECONDITION
    }
}

/// Parses `args` (program name first) and runs. Usage errors exit with 1.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            EXIT_OK
        }
        Err(e) => {
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            EXIT_PRECONDITION
        }
    }
}
