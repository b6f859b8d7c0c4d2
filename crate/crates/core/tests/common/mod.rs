#![allow(dead_code)]

use std::path::PathBuf;

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI in-process.
pub fn schizo(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("schizo").chain(args.iter().copied());
    let code = schizo::cli::run_args(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(golden_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Golden fixtures and the command lines that reproduce them.
pub const FIXTURES: &[(&str, &[&str])] = &[
    (
        "expand_b10_n49.txt",
        &["expand", "--base", "10", "--n", "49", "--precision", "191"],
    ),
    (
        "expand_b8_n49.txt",
        &["expand", "--base", "8", "--n", "49", "--precision", "191"],
    ),
    (
        "expand_b8_n49_radix10.txt",
        &[
            "expand",
            "--base",
            "8",
            "--n",
            "49",
            "--radix",
            "10",
            "--precision",
            "191",
        ],
    ),
    (
        "expand_b11_n49.txt",
        &["expand", "--base", "11", "--n", "49", "--precision", "191"],
    ),
    (
        "expand_b13_n49.txt",
        &[
            "expand",
            "--base",
            "13",
            "--n",
            "49",
            "--precision",
            "142",
            "--rounding",
            "nearest",
        ],
    ),
    (
        "expand_b3_n49.txt",
        &["expand", "--base", "3", "--n", "49", "--precision", "191"],
    ),
    (
        "convert_b3_n49_m2.txt",
        &[
            "convert",
            "--base",
            "3",
            "--n",
            "49",
            "--power",
            "2",
            "--precision",
            "141",
        ],
    ),
    (
        "convert_b3_n49_m3.txt",
        &[
            "convert",
            "--base",
            "3",
            "--n",
            "49",
            "--power",
            "3",
            "--precision",
            "91",
        ],
    ),
    (
        "sequence_b5_n7_23.txt",
        &["sequence", "--base", "5", "--from", "7", "--to", "23"],
    ),
];

/// Strips layout from a golden numeral: header lines, spaces, newlines.
pub fn numeral(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("base "))
        .collect::<Vec<_>>()
        .join(" ")
}
