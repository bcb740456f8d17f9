//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines print in order; the
//! process exits non-zero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use schreier_core::bijections::{verify_partition, PartitionKind};
use schreier_core::closed_forms::{
    a_band, a_closed, a_diag, a_diag_double_sum, a_recurrence_table, k_case_counts, mpq_recurrence,
    ClosedForms,
};
use schreier_core::enumeration::{count_a, count_mpq, enumerate_k, Execution, Oracle, Strategy};
use schreier_core::verify::{run_suite, Suite, VerifyConfig, REFERENCE_TABLE};
use schreier_core::{fib, Count};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn table_reproduction() -> Outcome {
    let recurrence = a_recurrence_table(7, 16).map_err(err)?;
    for (row, expected) in REFERENCE_TABLE.iter().enumerate() {
        let k = row as u64 + 1;
        for n in 1..=16u64 {
            let want = Count::from(expected[n as usize - 1]);
            let closed = a_closed(k, n).map_err(err)?;
            let rec = recurrence.get(k, n).cloned().unwrap_or_default();
            let oracle = count_a(k, n, Strategy::Naive).map_err(err)?;
            ensure(closed == want && rec == want && oracle == want, || {
                format!("a_{{{k},{n}}}: table {want}, closed {closed}, recurrence {rec}, oracle {oracle}")
            })?;
        }
    }
    Ok(())
}

fn diagonal() -> Outcome {
    for n in 1..=22u64 {
        let twice = fib(n as usize) * 2u32;
        let enumerated = count_a(n, n, Strategy::Naive).map_err(err)?;
        ensure(enumerated == twice, || {
            format!("n={n}: enumerated {enumerated}, 2F_n {twice}")
        })?;
    }
    for n in 1..=500u64 {
        let twice = fib(n as usize) * 2u32;
        let closed = a_diag(n).map_err(err)?;
        let double = a_diag_double_sum(n).map_err(err)?;
        ensure(closed == twice && double == twice, || {
            format!("n={n}: closed {closed}, double sum {double}, 2F_n {twice}")
        })?;
    }
    Ok(())
}

fn general_formula() -> Outcome {
    let terms = ClosedForms::new().middle_case_terms(4, 6).map_err(err)?;
    let c = |v: u32| Count::from(v);
    ensure(terms.fibonacci_terms == [c(3), c(12), c(15)], || {
        format!("{terms:?}")
    })?;
    ensure(terms.binomial_term == c(20), || format!("{terms:?}"))?;
    let tail: Vec<Count> = terms
        .tail_terms
        .iter()
        .filter(|t| **t != c(0))
        .cloned()
        .collect();
    ensure(tail == [c(1), c(15)], || format!("{terms:?}"))?;
    ensure(terms.total() == c(116), || {
        format!("total {}", terms.total())
    })?;
    ensure(a_closed(4, 10).map_err(err)? == c(116), || {
        "a_closed(4,10) != 116".into()
    })?;
    for k in 1..=12u64 {
        for n in 1..=20u64 {
            let closed = a_closed(k, n).map_err(err)?;
            let oracle = count_a(k, n, Strategy::Naive).map_err(err)?;
            ensure(closed == oracle, || {
                format!("k={k} n={n}: closed {closed}, oracle {oracle}")
            })?;
        }
    }
    Ok(())
}

fn band() -> Outcome {
    for l in 0..=30u64 {
        for k in l + 2..=400 {
            let twice = fib((k + l) as usize) * 2u32;
            let closed = a_closed(k, k + l).map_err(err)?;
            let banded = a_band(k, l).map_err(err)?;
            ensure(closed == twice && banded == twice, || {
                format!("k={k} l={l}: {closed} {banded} {twice}")
            })?;
        }
    }
    Ok(())
}

fn weighted_k() -> Outcome {
    for n in 2..=22u64 {
        let count = enumerate_k(n).map_err(err)?.len();
        ensure(Count::from(count) == fib(n as usize - 1), || {
            format!("|K_{n}| = {count}")
        })?;
    }
    for n in 3..=22u64 {
        let cases = k_case_counts(n).map_err(err)?;
        let mut parts = [0usize; 4];
        for e in enumerate_k(n + 1).map_err(err)? {
            let slot = match (e.contains(2), e.contains(3)) {
                (true, true) => 0,
                (true, false) => 1,
                (false, true) => 2,
                (false, false) => 3,
            };
            parts[slot] += 1;
        }
        let claimed = [&cases.case1, &cases.case2, &cases.case3, &cases.case4];
        for (observed, claimed) in parts.iter().zip(claimed) {
            ensure(Count::from(*observed) == *claimed, || {
                format!("n={n}: {parts:?} vs {cases:?}")
            })?;
        }
        ensure(cases.total() == fib(n as usize), || {
            format!("n={n}: total {}", cases.total())
        })?;
    }
    Ok(())
}

fn partitions() -> Outcome {
    let mut points = Vec::new();
    points.extend((2..=16).map(|n| (PartitionKind::Diagonal, n)));
    for k in 2..=8u64 {
        points.extend((k.max(2) + 1..=16).map(|n| (PartitionKind::Recurrence { k }, n)));
    }
    points.extend((3..=18).map(|n| (PartitionKind::WeightedK, n)));
    for (kind, n) in points {
        let r = verify_partition(kind, n).map_err(err)?;
        ensure(
            r.well_defined && r.injective && r.disjointness && r.surjective,
            || format!("{kind:?} n={n}: {r:?}"),
        )?;
    }
    Ok(())
}

fn suites(names: &[Suite]) -> Outcome {
    let config = VerifyConfig::default();
    for suite in names {
        let reports = run_suite(*suite, &config).map_err(err)?;
        ensure(!reports.is_empty(), || format!("{suite} ran no checks"))?;
        if let Some(bad) = reports.iter().find(|r| !r.passed) {
            return Err(bad.to_string());
        }
    }
    Ok(())
}

fn generalized() -> Outcome {
    for p in 1..=3u64 {
        for q in 1..=3u64 {
            for n in 1..=18u64 {
                let rec = mpq_recurrence(p, q, n).map_err(err)?;
                let oracle = count_mpq(p, q, n).map_err(err)?;
                ensure(rec == oracle, || {
                    format!("p={p} q={q} n={n}: {rec} vs {oracle}")
                })?;
            }
        }
    }
    Ok(())
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_schreier"))
        .args(args)
        .output()
        .map_err(err)?;
    ensure(out.status.success(), || {
        format!("{args:?} exited with {}", out.status)
    })?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let table = [
        "table", "--k-max", "7", "--n-max", "16", "--source", "closed", "--format", "csv",
    ];
    let first = cli(&table)?;
    ensure(first == cli(&table)?, || {
        "table output differs between runs".into()
    })?;
    for args in [
        &[
            "enumerate",
            "--family",
            "A",
            "--k",
            "5",
            "--n",
            "18",
            "--format",
            "json",
        ][..],
        &[
            "enumerate",
            "--family",
            "K",
            "--n",
            "22",
            "--format",
            "text",
        ][..],
        &[
            "enumerate",
            "--family",
            "mpq",
            "--p",
            "2",
            "--q",
            "3",
            "--n",
            "16",
            "--format",
            "csv",
        ][..],
    ] {
        let parallel = cli(args)?;
        let serial = cli(&[args, &["--serial"]].concat())?;
        ensure(parallel == serial, || {
            format!("{args:?}: serial and parallel differ")
        })?;
    }
    let serial = Oracle::new().with_execution(Execution::Serial);
    let parallel = Oracle::new().with_execution(Execution::Parallel);
    for (k, n) in [(3, 20), (12, 12), (26, 26)] {
        let (s, p) = (
            serial.enumerate_a(k, n).map_err(err)?,
            parallel.enumerate_a(k, n).map_err(err)?,
        );
        ensure(s == p, || format!("enumerate_a({k},{n}) differs"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 table reproduction", table_reproduction),
        ("2 diagonal a_{n,n} = 2F_n", diagonal),
        ("3 general formula and worked example", general_formula),
        ("4 band a_{k,k+l} = 2F_{k+l}", band),
        ("5 weighted family K_n", weighted_k),
        ("6 bijection partitions", partitions),
        ("7 partial-sum lemmas", || {
            suites(&[
                Suite::SeededGap,
                Suite::UnitShift,
                Suite::ShiftedFibonacci,
                Suite::RowsFromPartialSums,
                Suite::FibonacciPartialSums,
            ])
        }),
        ("8 identities and decomposition", || {
            suites(&[Suite::Identities, Suite::Convolution, Suite::Decomposition])
        }),
        ("9 generalized recurrence m_{p,q,n}", generalized),
        ("10 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        let start = Instant::now();
        let outcome = criterion();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.2}s): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
