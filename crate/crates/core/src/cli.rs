//! Command-line front end behind the `schreier` binary.
//!
//! [`run`] takes the argument list and output streams explicitly so the
//! same code path is exercised by tests. Exit codes: 0 success, 1 failed
//! verification, 2 usage error or invalid parameter, 3 size limit.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::closed_forms::ClosedForms;
use crate::combinatorics::FibTable;
use crate::enumeration::{Execution, Oracle, Strategy};
use crate::error::Error;
use crate::finite_set::FiniteSet;
use crate::verify::{run_suite, summarize, Suite, VerifyConfig, DEFAULT_SEED};
use crate::Count;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SIZE_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "schreier",
    version,
    about = "Count, enumerate and verify weighted Schreier-type sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the table of a_{k,n}, rows k and columns n.
    Table {
        #[arg(long)]
        k_max: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Source::Closed)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, hide = true)]
        serial: bool,
    },
    /// List the members of a family in canonical order.
    Enumerate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, hide = true)]
        serial: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long)]
        k_max: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Overwrite F_N with F_N + 1 before running.
        #[arg(long, hide = true, value_name = "N")]
        corrupt_fib: Option<usize>,
    },
    /// Print a sequence one value per line.
    Sequence {
        #[arg(long, value_enum)]
        name: SequenceName,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Closed,
    Recurrence,
    Oracle,
}

impl Source {
    fn name(self) -> &'static str {
        match self {
            Source::Closed => "closed",
            Source::Recurrence => "recurrence",
            Source::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "mpq")]
    Generalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceName {
    ADiag,
    KCount,
    Fib,
}

/// A failure that ends the command with a specific exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeLimit { .. } => EXIT_SIZE_LIMIT,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("output error: {e}"),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Table {
            k_max,
            n_max,
            source,
            format,
            serial,
        } => table(k_max, n_max, source, format, oracle(serial)?, out),
        Command::Enumerate {
            family,
            k,
            n,
            p,
            q,
            format,
            serial,
        } => enumerate(family, [k, n, p, q], format, oracle(serial)?, out),
        Command::Verify {
            suite,
            n_max,
            k_max,
            seed,
            corrupt_fib,
        } => verify(&suite, n_max, k_max, seed, corrupt_fib, out),
        Command::Sequence {
            name,
            n_max,
            format,
        } => sequence(name, n_max, format, out),
    }
}

fn oracle(serial: bool) -> std::result::Result<Oracle, Failure> {
    let oracle = Oracle::from_env()?;
    Ok(if serial {
        oracle.with_execution(Execution::Serial)
    } else {
        oracle
    })
}

fn number(value: &Count) -> serde_json::Number {
    serde_json::Number::from_str(&value.to_string())
        .expect("decimal integers are valid JSON numbers")
}

fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string(value).map_err(|e| usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn csv_error(e: csv::Error) -> Failure {
    usage(format!("output error: {e}"))
}

#[derive(Serialize)]
struct TableJson<'a> {
    k_max: u64,
    n_max: u64,
    source: &'a str,
    cells: Vec<Vec<serde_json::Number>>,
}

pub(crate) fn table_rows(
    k_max: u64,
    n_max: u64,
    source: Source,
    oracle: &Oracle,
) -> crate::Result<Vec<Vec<Count>>> {
    if k_max < 1 {
        return Err(Error::param("k_max", k_max, "must be at least 1"));
    }
    if n_max < 1 {
        return Err(Error::param("n_max", n_max, "must be at least 1"));
    }
    let closed = ClosedForms::new();
    match source {
        Source::Closed => (1..=k_max)
            .map(|k| (1..=n_max).map(|n| closed.a_closed(k, n)).collect())
            .collect(),
        Source::Recurrence => {
            let table = closed.recurrence_table(k_max, n_max)?;
            Ok((1..=k_max)
                .map(|k| {
                    (1..=n_max)
                        .map(|n| table.get(k, n).cloned().unwrap_or_default())
                        .collect()
                })
                .collect())
        }
        Source::Oracle => {
            let strategy = if n_max <= oracle.naive_limit() {
                Strategy::Naive
            } else {
                Strategy::ByMin
            };
            (1..=k_max)
                .map(|k| {
                    (1..=n_max)
                        .map(|n| oracle.count_a(k, n, strategy))
                        .collect()
                })
                .collect()
        }
    }
}

fn table(
    k_max: u64,
    n_max: u64,
    source: Source,
    format: Format,
    oracle: Oracle,
    out: &mut dyn Write,
) -> CmdResult {
    let rows = table_rows(k_max, n_max, source, &oracle)?;
    match format {
        Format::Csv => {
            let mut w = csv_writer(out);
            let header =
                std::iter::once("k\\n".to_string()).chain((1..=n_max).map(|n| n.to_string()));
            w.write_record(header).map_err(csv_error)?;
            for (i, row) in rows.iter().enumerate() {
                let record =
                    std::iter::once((i + 1).to_string()).chain(row.iter().map(|c| c.to_string()));
                w.write_record(record).map_err(csv_error)?;
            }
            w.flush()?;
        }
        Format::Json => write_json(
            &TableJson {
                k_max,
                n_max,
                source: source.name(),
                cells: rows
                    .iter()
                    .map(|row| row.iter().map(number).collect())
                    .collect(),
            },
            out,
        )?,
        Format::Text => {
            let mut grid = vec![std::iter::once("k\\n".to_string())
                .chain((1..=n_max).map(|n| n.to_string()))
                .collect::<Vec<_>>()];
            for (i, row) in rows.iter().enumerate() {
                grid.push(
                    std::iter::once((i + 1).to_string())
                        .chain(row.iter().map(|c| c.to_string()))
                        .collect(),
                );
            }
            let width = grid.iter().flatten().map(String::len).max().unwrap_or(1);
            for line in grid {
                let cells: Vec<String> = line.iter().map(|c| format!("{c:>width$}")).collect();
                writeln!(out, "{}", cells.join(" "))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn require(value: Option<u64>, flag: &str, family: &str) -> std::result::Result<u64, Failure> {
    value.ok_or_else(|| usage(format!("--{flag} is required for family {family}")))
}

fn enumerate(
    family: Family,
    params: [Option<u64>; 4],
    format: Format,
    oracle: Oracle,
    out: &mut dyn Write,
) -> CmdResult {
    let [k, n, p, q] = params;
    let sets = match family {
        Family::A => oracle.enumerate_a(require(k, "k", "A")?, require(n, "n", "A")?)?,
        Family::K => oracle.enumerate_k(require(n, "n", "K")?)?,
        Family::Generalized => oracle.enumerate_mpq(
            require(p, "p", "mpq")?,
            require(q, "q", "mpq")?,
            require(n, "n", "mpq")?,
        )?,
    };
    write_sets(&sets, format, out)?;
    Ok(EXIT_OK)
}

fn write_sets(
    sets: &[FiniteSet],
    format: Format,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    match format {
        Format::Text => {
            for set in sets {
                writeln!(out, "{set}")?;
            }
        }
        Format::Json => {
            let arrays: Vec<&[u32]> = sets.iter().map(FiniteSet::elements).collect();
            write_json(&arrays, out)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["cardinality", "set"]).map_err(csv_error)?;
            for set in sets {
                w.write_record([set.len().to_string(), set.to_string()])
                    .map_err(csv_error)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn verify(
    suite: &str,
    n_max: Option<u64>,
    k_max: Option<u64>,
    seed: u64,
    corrupt_fib: Option<usize>,
    out: &mut dyn Write,
) -> CmdResult {
    let suite = Suite::from_str(suite).map_err(usage)?;
    let mut fib = FibTable::default();
    if let Some(n) = corrupt_fib {
        let bumped = fib.get(n).into_owned() + 1u32;
        fib.set(n, bumped);
    }
    let config = VerifyConfig {
        n_max,
        k_max,
        seed,
        fib,
        oracle: Oracle::from_env()?,
    };
    let reports = run_suite(suite, &config)?;
    for report in &reports {
        writeln!(out, "{report}")?;
    }
    let summary = summarize(&reports);
    writeln!(
        out,
        "summary {suite}: {} checks, {} passed, {} failed",
        summary.total, summary.passed, summary.failed
    )?;
    match reports.iter().find(|r| !r.passed) {
        None => Ok(EXIT_OK),
        Some(first) => {
            writeln!(out, "first counterexample: {first}")?;
            Ok(EXIT_VERIFY_FAILED)
        }
    }
}

fn sequence(name: SequenceName, n_max: u64, format: Format, out: &mut dyn Write) -> CmdResult {
    let closed = ClosedForms::new();
    let terms: Vec<(u64, Count)> = match name {
        SequenceName::ADiag => (1..=n_max)
            .map(|n| Ok((n, closed.a_diag(n)?)))
            .collect::<crate::Result<_>>()?,
        SequenceName::KCount => (2..=n_max)
            .map(|n| Ok((n, closed.k_count(n)?)))
            .collect::<crate::Result<_>>()?,
        SequenceName::Fib => (0..=n_max)
            .map(|n| (n, closed.fib_table().get(n as usize).into_owned()))
            .collect(),
    };
    match format {
        Format::Text => {
            for (n, value) in &terms {
                writeln!(out, "{n} {value}")?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "value"]).map_err(csv_error)?;
            for (n, value) in &terms {
                w.write_record([n.to_string(), value.to_string()])
                    .map_err(csv_error)?;
            }
            w.flush()?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Term {
                n: u64,
                value: serde_json::Number,
            }
            let rows: Vec<Term> = terms
                .iter()
                .map(|(n, v)| Term {
                    n: *n,
                    value: number(v),
                })
                .collect();
            write_json(&rows, out)?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("schreier").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn single_oracle_cell() {
        let (code, out, _) = call(&[
            "table", "--k-max", "1", "--n-max", "1", "--source", "oracle", "--format", "text",
        ]);
        assert_eq!(code, 0);
        assert_eq!(
            out.lines()
                .nth(1)
                .unwrap()
                .split_whitespace()
                .collect::<Vec<_>>(),
            ["1", "2"]
        );
    }

    #[test]
    fn recurrence_json_cell() {
        let (code, out, _) = call(&[
            "table",
            "--k-max",
            "3",
            "--n-max",
            "5",
            "--source",
            "recurrence",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["cells"][2][4].to_string(), "10");
        assert_eq!(v["source"], "recurrence");
    }

    #[test]
    fn enumerate_examples() {
        let (_, out, _) = call(&["enumerate", "--family", "A", "--k", "2", "--n", "3"]);
        assert_eq!(out, "{}\n{2}\n{3}\n{2,3}\n");
        let (_, out, _) = call(&["enumerate", "--family", "K", "--n", "2"]);
        assert_eq!(out, "{2}\n");
        let (_, out, _) = call(&["enumerate", "--family", "K", "--n", "5", "--format", "json"]);
        assert_eq!(out, "[[5],[2,3,5],[3,4,5]]\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["verify", "--suite", "nope"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["table", "--k-max", "0", "--n-max", "3"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["enumerate", "--family", "A", "--n", "3"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["enumerate", "--family", "K", "--n", "50"]).0,
            EXIT_SIZE_LIMIT
        );
        assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
    }

    #[test]
    fn fib_sequence_lines() {
        let (_, out, _) = call(&["sequence", "--name", "fib", "--n-max", "5"]);
        assert_eq!(out, "0 0\n1 1\n2 1\n3 2\n4 3\n5 5\n");
    }
}
