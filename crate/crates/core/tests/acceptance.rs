//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use common::{golden, schizo};
use schizo::baseconv::{persistence_check, regroup, ungroup};
use schizo::blocks::{
    default_precision, lambda, nonrep_len, predict, rep_len, verify, DetectorParams,
};
use schizo::expansion::{sqrt_significand, DigitString, Rounding};
use schizo::numeric::{floor_log, isqrt, Rational};
use schizo::recurrence::{f_closed, f_iterative};
use schizo::taylor::{epsilon, partial_sum_digits, repeating_digit, term};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str, args: &[&str]) -> Check {
    let out = schizo(args);
    ensure(out.code == 0, || {
        format!("{name}: exit {} ({})", out.code, out.stderr.trim())
    })?;
    ensure(out.stdout == golden(name), || {
        format!("{name}: output differs from golden")
    })
}

fn within(start: Instant, limit: Duration) -> Check {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    fixture(
        "expand_b10_n49.txt",
        &["expand", "--base", "10", "--n", "49", "--precision", "191"],
    )?;
    within(start, Duration::from_secs(1))
}

fn criterion_2() -> Check {
    fixture(
        "expand_b8_n49.txt",
        &["expand", "--base", "8", "--n", "49", "--precision", "191"],
    )?;
    fixture(
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
    )
}

fn criterion_3() -> Check {
    fixture(
        "expand_b11_n49.txt",
        &["expand", "--base", "11", "--n", "49", "--precision", "191"],
    )?;
    fixture(
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
    )
}

fn criterion_4() -> Check {
    let e = |x: schizo::Result<usize>| x.map_err(|e| e.to_string());
    let lambdas = [
        e(lambda(10, 25, 0))?,
        e(lambda(10, 25, 1))?,
        e(lambda(10, 25, 2))?,
    ];
    ensure(lambdas == [47, 49, 48], || format!("lambda = {lambdas:?}"))?;
    let sub = [
        e(nonrep_len(10, 25, 1))?,
        e(rep_len(10, 25, 1))?,
        e(nonrep_len(10, 25, 2))?,
        e(rep_len(10, 25, 2))?,
    ];
    ensure(sub == [4, 45, 7, 41], || format!("nonrep/rep = {sub:?}"))?;
    let t = term(10, 25, 2).map_err(|e| e.to_string())?;
    let m = t.magnitude();
    ensure(m == Rational::new(203401.into(), 72.into()), || {
        format!("|tau_2,1 tau_2,3| = {m}")
    })?;
    let fl = floor_log(10, &m).map_err(|e| e.to_string())?;
    ensure(fl == 3, || format!("floor_log = {fl}"))
}

fn criterion_5() -> Check {
    let eps = [epsilon(10, 25, 1), epsilon(10, 25, 2)];
    let eps: Vec<u8> = eps
        .into_iter()
        .collect::<schizo::Result<_>>()
        .map_err(|e| e.to_string())?;
    ensure(eps == [1, 0], || format!("epsilon = {eps:?}"))?;
    let d: Vec<Vec<u32>> = (0..3)
        .map(|l| repeating_digit(10, 25, l))
        .collect::<schizo::Result<_>>()
        .map_err(|e| e.to_string())?;
    ensure(d == [vec![1], vec![5], vec![6]], || {
        format!("periods = {d:?}")
    })
}

fn criterion_6() -> Check {
    let start = Instant::now();
    for (b, k) in [(10u32, 25u64), (8, 25), (11, 25), (13, 25), (3, 25)] {
        let precision = default_precision(k, 3);
        let r = verify(b, k, 3, precision, DetectorParams::default()).map_err(|e| e.to_string())?;
        ensure(r.records.len() == 4 && r.all_match(), || {
            format!("b={b}: {}/{} blocks match", r.matched(), r.records.len())
        })?;
        let n = (2 * k - 1).to_string();
        let out = schizo(&[
            "verify",
            "--base",
            &b.to_string(),
            "--n",
            &n,
            "--terms",
            "3",
        ]);
        ensure(out.code == 0, || {
            format!("b={b}: verify exited {}", out.code)
        })?;
    }
    within(start, Duration::from_secs(5))
}

fn criterion_7() -> Check {
    fixture(
        "sequence_b5_n7_23.txt",
        &["sequence", "--base", "5", "--from", "7", "--to", "23"],
    )
}

fn criterion_8() -> Check {
    fixture(
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
    )?;
    fixture(
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
    )?;
    let r = persistence_check(3, 25, &[1, 2, 3], 300, DetectorParams::default())
        .map_err(|e| e.to_string())?;
    let absent: Vec<u32> = r
        .entries
        .iter()
        .filter(|e| !e.present)
        .map(|e| e.power)
        .collect();
    ensure(absent.is_empty(), || {
        format!("pattern absent for m = {absent:?}")
    })
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            failure_persistence: None,
            ..Config::with_cases(cases)
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn criterion_9() -> Check {
    let start = Instant::now();

    let naturals =
        prop::collection::vec(any::<u8>(), 0..=32).prop_map(|b| BigUint::from_bytes_le(&b));
    runner(10_000)
        .run(&naturals, |x| {
            let s = isqrt(&x);
            let t = &s + 1u32;
            prop_assert!(&s * &s <= x && &t * &t > x);
            Ok(())
        })
        .map_err(|e| format!("isqrt: {e}"))?;

    for b in 2..=36 {
        for n in 0..=100 {
            ensure(f_iterative(b, n).ok() == f_closed(b, n).ok(), || {
                format!("f_{b}({n})")
            })?;
        }
    }

    for b in 2..=16 {
        for k in [10u64, 25] {
            let p = predict(b, k, 4).map_err(|e| e.to_string())?;
            for blk in &p.blocks {
                ensure(
                    blk.lambda as u64 <= 2 * k && blk.nonrep_len + blk.rep_len == blk.lambda,
                    || format!("b={b} k={k} l={}", blk.l),
                )?;
            }
            if let Some(t) = &p.truncated {
                ensure(matches!(t.cause, schizo::Error::Degenerate { .. }), || {
                    format!("b={b} k={k}: unflagged truncation {t:?}")
                })?;
            }
        }
    }

    let strings = (2u32..=30, 1usize..40)
        .prop_flat_map(|(base, len)| {
            (
                Just(base),
                prop::collection::vec(0..base, len),
                1..=len,
                1u32..=3,
            )
        })
        .prop_map(|(base, digits, ro, m)| (DigitString::new(base, digits, ro).unwrap(), m));
    runner(2_000)
        .run(&strings, |(ds, m)| {
            let r = regroup(&ds, m).unwrap();
            let kept = ds.len() - r.dropped;
            let trimmed =
                DigitString::new(ds.base(), ds.digits()[..kept].to_vec(), ds.radix_offset())
                    .unwrap();
            prop_assert_eq!(r.digits.value(), trimmed.value());
            prop_assert_eq!(ungroup(&r.digits, ds.base(), m).unwrap(), trimmed);
            Ok(())
        })
        .map_err(|e| format!("regroup: {e}"))?;

    for b in [3u32, 5, 8, 10, 11, 13, 16] {
        let p = predict(b, 25, 3).map_err(|e| e.to_string())?;
        let digits =
            sqrt_significand(b, 49, b, 300, Rounding::Truncate).map_err(|e| e.to_string())?;
        for last in 1..=4u64 {
            let through = p.blocks[last as usize - 1].end();
            let partial = partial_sum_digits(b, 25, last, through).map_err(|e| e.to_string())?;
            ensure(partial == digits.digits()[..through], || {
                format!("partial sum b={b} L={last}")
            })?;
        }
    }

    within(start, Duration::from_secs(60))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden digits, base 10", criterion_1),
        (
            "golden digits, base 8 and its base-10 rendering",
            criterion_2,
        ),
        ("golden digits, bases 11 and 13", criterion_3),
        ("block-length theorems for b=10, k=25", criterion_4),
        ("worked epsilon values and periods", criterion_5),
        ("verifier oracle on five instances", criterion_6),
        ("Table 1 sequence", criterion_7),
        ("base-power persistence", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS criterion {}: {title}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {title}: {why}", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
