//! Named verification suites.
//!
//! Every suite checks one family of identities over a finite parameter
//! range and produces one [`Report`] per check. Closed forms read
//! Fibonacci values from [`VerifyConfig::fib`]; the references they are
//! compared against (enumeration, literal binomial sums, partition checks)
//! do not, so corrupting the table must surface as failed checks.
//!
//! Range overrides: `n_max` replaces the upper bound of every `n`-like
//! range of a suite (including sequence indices and the offset `l`), and
//! `k_max` replaces every `k`-like upper bound. Oracle-backed checks fail
//! with [`Error::SizeLimit`] rather than silently shrinking.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bijections::{
    min_three_shape_violations, min_two_shape_violations, psi1_weight_violations,
    verify_partition_with, BijectionReport, PartitionKind,
};
use crate::closed_forms::{a_diag_double_sum_with, mpq_recurrence_with, ClosedForms};
use crate::combinatorics::{binom, BinomialTable, FibTable};
use crate::enumeration::{Oracle, Strategy};
use crate::error::{Error, Result};
use crate::finite_set::{classify, in_s_k, FiniteSet, SchreierClass};
use crate::partial_sums::{
    fib_partial_sum_closed, iterated_seeded, k_partial_sum, seed_offset, Seq,
};
use crate::{Count, Int};

/// Generator seed for the randomized partial-sum checks.
pub const DEFAULT_SEED: u64 = 20_240_229;

/// `a_{k,n}` for `1 <= k <= 7`, `1 <= n <= 16`, as published.
pub const REFERENCE_TABLE: [[u64; 16]; 7] = [
    [
        2, 3, 4, 6, 9, 14, 22, 35, 56, 90, 145, 234, 378, 611, 988, 1598,
    ],
    [
        1, 2, 4, 7, 11, 17, 26, 40, 62, 97, 153, 243, 388, 622, 1000, 1611,
    ],
    [
        1, 2, 4, 6, 10, 17, 28, 45, 71, 111, 173, 270, 423, 666, 1054, 1676,
    ],
    [
        1, 2, 3, 6, 10, 16, 26, 43, 71, 116, 187, 298, 471, 741, 1164, 1830,
    ],
    [
        1, 2, 3, 5, 10, 16, 26, 42, 68, 111, 182, 298, 485, 783, 1254, 1995,
    ],
    [
        1, 2, 3, 5, 8, 16, 26, 42, 68, 110, 178, 289, 471, 769, 1254, 2037,
    ],
    [
        1, 2, 3, 5, 8, 13, 26, 42, 68, 110, 178, 288, 466, 755, 1226, 1995,
    ],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Diagonal,
    GeneralFormula,
    Band,
    WeightedK,
    AboveDiagonal,
    Recurrence,
    SeededGap,
    UnitShift,
    ShiftedFibonacci,
    RowsFromPartialSums,
    FibonacciPartialSums,
    Decomposition,
    Convolution,
    Generalized,
    Identities,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `all` runs them.
    pub const CONCRETE: [Suite; 15] = [
        Suite::Identities,
        Suite::Decomposition,
        Suite::Convolution,
        Suite::Diagonal,
        Suite::GeneralFormula,
        Suite::Band,
        Suite::WeightedK,
        Suite::AboveDiagonal,
        Suite::Recurrence,
        Suite::SeededGap,
        Suite::UnitShift,
        Suite::ShiftedFibonacci,
        Suite::RowsFromPartialSums,
        Suite::FibonacciPartialSums,
        Suite::Generalized,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Diagonal => "thm1_1",
            Suite::GeneralFormula => "thm1_2",
            Suite::Band => "thm1_3",
            Suite::WeightedK => "thm1_4",
            Suite::AboveDiagonal => "prop3_1",
            Suite::Recurrence => "rec3_1",
            Suite::SeededGap => "lemma3_3",
            Suite::UnitShift => "lemma3_4",
            Suite::ShiftedFibonacci => "lemma3_5",
            Suite::RowsFromPartialSums => "eq3_8",
            Suite::FibonacciPartialSums => "eq3_9",
            Suite::Decomposition => "eq1_2",
            Suite::Convolution => "eq3_10",
            Suite::Generalized => "mpq",
            Suite::Identities => "identities",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::CONCRETE
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|suite| suite.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// One check: what was tested, over which parameters, and the outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: &'static str,
    pub check: String,
    pub range: String,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {} [{}]", self.suite, self.check, self.range)?;
        if let Some(cx) = &self.counterexample {
            write!(f, " counterexample: {cx}")?;
        }
        Ok(())
    }
}

/// Ranges, seed, Fibonacci table and oracle used by the suites.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n_max: Option<u64>,
    pub k_max: Option<u64>,
    pub seed: u64,
    pub fib: FibTable,
    pub oracle: Oracle,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: None,
            k_max: None,
            seed: DEFAULT_SEED,
            fib: FibTable::default(),
            oracle: Oracle::default(),
        }
    }
}

impl VerifyConfig {
    fn n(&self, default: u64) -> u64 {
        self.n_max.unwrap_or(default)
    }

    fn k(&self, default: u64) -> u64 {
        self.k_max.unwrap_or(default)
    }

    fn closed(&self) -> ClosedForms {
        ClosedForms::with_fib_table(self.fib.clone())
    }

    fn fib(&self, n: u64) -> Count {
        self.fib.get(n as usize).into_owned()
    }
}

/// Counts of a finished run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

pub fn summarize(reports: &[Report]) -> Summary {
    let passed = reports.iter().filter(|r| r.passed).count();
    Summary {
        total: reports.len(),
        passed,
        failed: reports.len() - passed,
    }
}

/// Runs one suite (or all of them).
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<Vec<Report>> {
    let mut run = Runner::new(suite.name());
    match suite {
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::CONCRETE {
                all.extend(run_suite(s, config)?);
            }
            return Ok(all);
        }
        Suite::Diagonal => diagonal(&mut run, config)?,
        Suite::GeneralFormula => general_formula(&mut run, config)?,
        Suite::Band => band(&mut run, config)?,
        Suite::WeightedK => weighted_k(&mut run, config)?,
        Suite::AboveDiagonal => above_diagonal(&mut run, config)?,
        Suite::Recurrence => recurrence(&mut run, config)?,
        Suite::SeededGap => seeded_gap(&mut run, config)?,
        Suite::UnitShift => unit_shift(&mut run, config)?,
        Suite::ShiftedFibonacci => shifted_fibonacci(&mut run, config)?,
        Suite::RowsFromPartialSums => table_via_partial_sums(&mut run, config)?,
        Suite::FibonacciPartialSums => fibonacci_partial_sums(&mut run, config)?,
        Suite::Decomposition => decomposition(&mut run, config)?,
        Suite::Convolution => convolution(&mut run, config)?,
        Suite::Generalized => generalized(&mut run, config)?,
        Suite::Identities => identities(&mut run, config)?,
    }
    Ok(run.reports)
}

struct Runner {
    suite: &'static str,
    reports: Vec<Report>,
}

/// `None` means the check passed; `Some` carries the counterexample.
type Outcome = Result<Option<String>>;

impl Runner {
    fn new(suite: &'static str) -> Self {
        Runner {
            suite,
            reports: Vec::new(),
        }
    }

    fn check<F>(&mut self, check: impl Into<String>, range: impl Into<String>, f: F) -> Result<()>
    where
        F: FnOnce() -> Outcome,
    {
        let counterexample = match f() {
            Ok(cx) => cx,
            Err(e @ Error::SizeLimit { .. }) => return Err(e),
            Err(e) => Some(format!("error: {e}")),
        };
        self.reports.push(Report {
            suite: self.suite,
            check: check.into(),
            range: range.into(),
            passed: counterexample.is_none(),
            counterexample,
        });
        Ok(())
    }
}

/// `None` if every value is equal, otherwise a `name=value` listing.
fn agree<T: PartialEq + fmt::Display>(values: &[(&str, &T)]) -> Option<String> {
    let first = values.first()?.1;
    if values.iter().all(|(_, v)| *v == first) {
        return None;
    }
    Some(
        values
            .iter()
            .map(|(name, v)| format!("{name}={v}"))
            .collect::<Vec<_>>()
            .join(" "),
    )
}

fn first_failure<I>(iter: I) -> Outcome
where
    I: IntoIterator<Item = Result<Option<String>>>,
{
    for item in iter {
        if let Some(cx) = item? {
            return Ok(Some(cx));
        }
    }
    Ok(None)
}

fn partition_outcome(report: &BijectionReport) -> Option<String> {
    if report.passed() {
        return None;
    }
    let flags = format!(
        "well_defined={} injective={} disjoint={} surjective={}",
        report.well_defined, report.injective, report.disjointness, report.surjective
    );
    Some(match &report.first_violation {
        Some((set, why)) => format!("{flags}; {set}: {why}"),
        None => flags,
    })
}

fn diagonal(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let closed = cfg.closed();
    let enum_max = cfg.n(22);
    let formula_max = cfg.n(500);
    let binomials = BinomialTable::new(formula_max as usize);
    for n in 1..=enum_max {
        run.check("enumeration", format!("n={n}"), || {
            let oracle = cfg.oracle.count_a(n, n, Strategy::Naive)?;
            Ok(agree(&[
                ("enumerated", &oracle),
                ("2F_n", &closed.a_diag(n)?),
                ("double_sum", &a_diag_double_sum_with(&binomials, n)?),
                ("a_closed", &closed.a_closed(n, n)?),
            ]))
        })?;
    }
    for n in 1..=formula_max {
        run.check("formula", format!("n={n}"), || {
            Ok(agree(&[
                ("2F_n", &closed.a_diag(n)?),
                ("double_sum", &a_diag_double_sum_with(&binomials, n)?),
                ("a_closed", &closed.a_closed(n, n)?),
            ]))
        })?;
    }
    Ok(())
}

fn general_formula(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let closed = cfg.closed();
    run.check("worked example a_{4,10}", "k=4 n=10", || {
        let terms = closed.middle_case_terms(4, 6)?;
        let expected_fib: Vec<Count> = [3u32, 12, 15].map(Count::from).to_vec();
        let nonzero_tail: Vec<&Count> = terms.tail_terms.iter().filter(|t| !t.is_zero()).collect();
        let ok = terms.fibonacci_terms == expected_fib
            && terms.binomial_term == Count::from(20u32)
            && nonzero_tail == [&Count::one(), &Count::from(15u32)]
            && terms.total() == Count::from(116u32)
            && closed.a_closed(4, 10)? == Count::from(116u32);
        Ok((!ok).then(|| format!("{terms:?} total={}", terms.total())))
    })?;
    for (row, expected) in REFERENCE_TABLE.iter().enumerate() {
        let k = row as u64 + 1;
        run.check("published table row", format!("k={k} n=1..=16"), || {
            first_failure((1..=16u64).map(|n| {
                let want = Count::from(expected[n as usize - 1]);
                Ok(
                    agree(&[("published", &want), ("a_closed", &closed.a_closed(k, n)?)])
                        .map(|d| format!("n={n} {d}")),
                )
            }))
        })?;
    }
    let n_max = cfg.n(20);
    for k in 1..=cfg.k(12) {
        run.check(
            "closed form vs oracle",
            format!("k={k} n=1..={n_max}"),
            || {
                first_failure((1..=n_max).map(|n| {
                    let oracle = cfg.oracle.count_a(k, n, Strategy::Naive)?;
                    Ok(agree(&[
                        ("enumerated", &oracle),
                        ("a_closed", &closed.a_closed(k, n)?),
                    ])
                    .map(|d| format!("n={n} {d}")))
                }))
            },
        )?;
    }
    Ok(())
}

fn band(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let closed = cfg.closed();
    let k_max = cfg.k(400);
    for l in 0..=cfg.n(30) {
        run.check("band", format!("l={l} k={}..={k_max}", l + 2), || {
            first_failure((l + 2..=k_max).map(|k| {
                let twice_fib = cfg.fib(k + l) * 2u32;
                Ok(agree(&[
                    ("a_band", &closed.a_band(k, l)?),
                    ("a_closed", &closed.a_closed(k, k + l)?),
                    ("2F_{k+l}", &twice_fib),
                ])
                .map(|d| format!("k={k} {d}")))
            }))
        })?;
    }
    Ok(())
}

fn weighted_k(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let closed = cfg.closed();
    let n_max = cfg.n(22);
    for n in 2..=n_max {
        run.check("count", format!("n={n}"), || {
            let sets = cfg.oracle.enumerate_k(n)?;
            Ok(agree(&[
                ("enumerated", &Count::from(sets.len())),
                ("F_{n-1}", &closed.k_count(n)?),
            ]))
        })?;
    }
    for n in 3..=n_max {
        run.check("case split", format!("n={n}"), || {
            let cases = closed.k_case_counts(n)?;
            let mut parts = [0usize; 4];
            for e in cfg.oracle.enumerate_k(n + 1)? {
                parts[match (e.contains(2), e.contains(3)) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                }] += 1;
            }
            let observed = parts.map(Count::from);
            let claimed = [&cases.case1, &cases.case2, &cases.case3, &cases.case4];
            if observed.iter().zip(claimed).any(|(o, c)| o != c) {
                return Ok(Some(format!("claimed {claimed:?} enumerated {observed:?}")));
            }
            Ok(agree(&[
                ("case total", &cases.total()),
                ("F_n", &cfg.fib(n)),
            ]))
        })?;
    }
    let partition_max = cfg.n(18);
    for n in 3..=partition_max {
        run.check("partition", format!("n={n}"), || {
            Ok(partition_outcome(&verify_partition_with(
                &cfg.oracle,
                PartitionKind::WeightedK,
                n,
            )?))
        })?;
    }
    for n in 3..=partition_max {
        run.check("min-2 members", format!("n={n}"), || {
            let bad = min_two_shape_violations(&cfg.oracle, n)?;
            Ok(bad.first().map(|f| format!("{f} in K_{}", n - 1)))
        })?;
        run.check("min-3 members", format!("n={n}"), || {
            let bad = min_three_shape_violations(&cfg.oracle, n)?;
            Ok(bad.first().map(|f| format!("{f} in K_{}", n - 1)))
        })?;
    }
    Ok(())
}

fn above_diagonal(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let closed = cfg.closed();
    for n in 1..=cfg.n(300) {
        run.check("k > n", format!("n={n}"), || {
            let want = cfg.fib(n + 1);
            let mut values = Vec::new();
            for k in [n + 1, n + 2, 2 * n + 1, n + 1000] {
                values.push((k, closed.a_closed(k, n)?));
            }
            if n <= crate::enumeration::BY_MIN_COUNT_LIMIT {
                values.push((n + 1, cfg.oracle.count_a(n + 1, n, Strategy::ByMin)?));
            }
            Ok(values
                .iter()
                .find(|(_, v)| *v != want)
                .map(|(k, v)| format!("k={k} a={v} F_{{n+1}}={want}")))
        })?;
    }
    Ok(())
}

fn recurrence(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let closed = cfg.closed();
    let (k_max, n_max) = (cfg.k(12), cfg.n(40));
    let table = closed.recurrence_table(k_max, n_max)?;
    for k in 1..=k_max {
        run.check(
            "table vs closed form",
            format!("k={k} n=1..={n_max}"),
            || {
                first_failure((1..=n_max).map(|n| {
                    let from_table = table.get(k, n).cloned().unwrap_or_default();
                    Ok(agree(&[
                        ("recurrence", &from_table),
                        ("a_closed", &closed.a_closed(k, n)?),
                    ])
                    .map(|d| format!("n={n} {d}")))
                }))
            },
        )?;
    }
    let partition_n = cfg.n(16);
    for n in 2..=partition_n {
        run.check("diagonal partition", format!("n={n}"), || {
            Ok(partition_outcome(&verify_partition_with(
                &cfg.oracle,
                PartitionKind::Diagonal,
                n,
            )?))
        })?;
    }
    for n in 2..=partition_n {
        run.check("psi1 weight bound", format!("n={n}"), || {
            let bad = psi1_weight_violations(&cfg.oracle, n)?;
            Ok(bad
                .first()
                .map(|f| format!("psi1({f}) leaves S^({})", n + 1)))
        })?;
    }
    for k in 2..=cfg.k(8) {
        for n in k.max(2) + 1..=partition_n {
            run.check("partition", format!("k={k} n={n}"), || {
                Ok(partition_outcome(&verify_partition_with(
                    &cfg.oracle,
                    PartitionKind::Recurrence { k },
                    n,
                )?))
            })?;
        }
    }
    Ok(())
}

fn random_seq(rng: &mut ChaCha8Rng, len: usize) -> Seq {
    (0..len)
        .map(|_| Int::from(rng.gen_range(-100i64..=100)))
        .collect()
}

const RANDOM_VECTORS: usize = 50;

fn seeded_gap(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    run.check("worked instance", "k=2 seeds=(3,5) n=2", || {
        let ones = Seq::from_i64s(&[1, 1, 1, 1]);
        let seeds = Seq::from_i64s(&[3, 5]);
        let gap = &iterated_seeded(&seeds, &ones)[2] - &k_partial_sum(&ones, 2)[2];
        Ok(agree(&[
            ("gap", &gap),
            ("binomial sum", &seed_offset(&seeds, 2)),
            ("expected", &Int::from(11)),
        ]))
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let len = cfg.n(60) as usize + 1;
    for k in 1..=cfg.k(12) {
        let samples: Vec<(Seq, Seq)> = (0..RANDOM_VECTORS)
            .map(|_| (random_seq(&mut rng, k as usize), random_seq(&mut rng, len)))
            .collect();
        run.check(
            "seeded minus zero-seeded",
            format!(
                "k={k} n=0..{len} vectors={RANDOM_VECTORS} seed={}",
                cfg.seed
            ),
            || {
                for (seeds, a) in &samples {
                    let seeded = iterated_seeded(seeds, a);
                    let zero = k_partial_sum(a, k as usize);
                    for n in 0..len {
                        let gap = &seeded[n] - &zero[n];
                        let want = seed_offset(seeds, n as u64);
                        if gap != want {
                            return Ok(Some(format!(
                                "seeds={:?} n={n} gap={gap} sum={want}",
                                seeds.terms()
                            )));
                        }
                    }
                }
                Ok(None)
            },
        )?;
    }
    Ok(())
}

fn unit_shift(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5151);
    let len = cfg.n(60) as usize + 1;
    let one = Int::one();
    for k in 0..=cfg.k(12) {
        let samples: Vec<Seq> = (0..RANDOM_VECTORS)
            .map(|_| random_seq(&mut rng, len))
            .collect();
        run.check(
            "shift by one",
            format!("k={k} m=0..{len} seed={}", cfg.seed),
            || {
                for a in &samples {
                    let base = k_partial_sum(a, k as usize);
                    let shifted = k_partial_sum(&a.add_constant(&one), k as usize);
                    for m in 0..len {
                        let gap = &shifted[m] - &base[m];
                        let want = Int::from(binom(m as u64, k as i64));
                        if gap != want {
                            return Ok(Some(format!("m={m} gap={gap} C(m,k)={want}")));
                        }
                    }
                }
                Ok(None)
            },
        )?;
    }
    Ok(())
}

fn fib_seq(cfg: &VerifyConfig, offset: usize, len: usize) -> Seq {
    (offset..offset + len)
        .map(|i| Int::from(cfg.fib.get(i).into_owned()))
        .collect()
}

fn shifted_fibonacci(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let l_max = cfg.n(60) as usize;
    let plain = fib_seq(cfg, 0, l_max + 2);
    let shifted = fib_seq(cfg, 2, l_max + 2);
    for k in 0..=cfg.k(12) as usize {
        run.check("shifted Fibonacci", format!("k={k} l=0..={l_max}"), || {
            let lhs = k_partial_sum(&shifted, k);
            let rhs = k_partial_sum(&plain, k);
            Ok((0..=l_max).find_map(|l| {
                let sum = &rhs[l] + &rhs[l + 1];
                (lhs[l] != sum).then(|| format!("l={l} lhs={} rhs={sum}", lhs[l]))
            }))
        })?;
    }
    Ok(())
}

fn fibonacci_partial_sums(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let l_max = cfg.n(60) as usize;
    let fibs = fib_seq(cfg, 0, l_max + 1);
    for k in 0..=cfg.k(12) {
        run.check("closed partial sum", format!("k={k} l=0..={l_max}"), || {
            let summed = k_partial_sum(&fibs, k as usize);
            Ok((0..=l_max).find_map(|l| {
                let closed = Int::from(fib_partial_sum_closed(k, l as u64));
                (summed[l] != closed).then(|| format!("l={l} summed={} closed={closed}", summed[l]))
            }))
        })?;
    }
    Ok(())
}

fn table_via_partial_sums(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let closed = cfg.closed();
    let l_max = cfg.n(20);
    for k in 2..=cfg.k(10) {
        run.check(
            "row from partial sums",
            format!("k={k} l=0..={l_max}"),
            || {
                let row_one: Seq = (0..=l_max)
                    .map(|j| closed.a_closed(1, j + 1).map(Int::from))
                    .collect::<Result<Vec<_>>>()?
                    .into();
                let summed = k_partial_sum(&row_one, k as usize - 1);
                first_failure((0..=l_max).map(|l| {
                    let lhs = Int::from(closed.a_closed(k, k + l)?) - &summed[l as usize];
                    let mut rhs = Int::zero();
                    for i in 0..=k - 2 {
                        rhs += Int::from(binom(l, i as i64) * closed.a_closed(k - i, k - i)?);
                    }
                    Ok(agree(&[("lhs", &lhs), ("rhs", &rhs)]).map(|d| format!("l={l} {d}")))
                }))
            },
        )?;
    }
    Ok(())
}

fn decomposition(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let universe = cfg.n(14);
    if universe > 24 {
        return Err(Error::SizeLimit {
            operation: "eq1_2",
            n: universe,
            limit: 24,
        });
    }
    for k in 1..=cfg.k(10) {
        run.check(
            "S^(k) decomposition",
            format!("k={k} E⊆{{1..{universe}}}"),
            || {
                for mask in 0..(1u64 << universe) {
                    let e = FiniteSet::from_mask(mask);
                    let class = classify(&e);
                    let rhs = class.is_nonmaximal()
                        || (class == SchreierClass::MaximalSchreier && e.contains(k as u32));
                    if in_s_k(&e, k)? != rhs {
                        return Ok(Some(format!("{e} class={class:?}")));
                    }
                }
                Ok(None)
            },
        )?;
    }
    Ok(())
}

fn convolution(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let span = cfg.n(200);
    for l in 0..=cfg.k(25) {
        run.check(
            "binomial-Fibonacci convolution",
            format!("l={l} k={}..={}", l + 2, l + span),
            || {
                first_failure((l + 2..=l + span).map(|k| {
                    let conv = cfg.fib.binom_convolution(k as usize, l as usize)?;
                    Ok(agree(&[
                        ("sum", &conv),
                        ("F_{k+l}", &crate::combinatorics::fib((k + l) as usize)),
                    ])
                    .map(|d| format!("k={k} {d}")))
                }))
            },
        )?;
    }
    Ok(())
}

fn generalized(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let n_max = cfg.n(18);
    let pq_max = cfg.k(3);
    for p in 1..=pq_max {
        for q in 1..=pq_max {
            run.check(
                "recurrence vs oracle",
                format!("p={p} q={q} n={}..={n_max}", p + q),
                || {
                    first_failure((p + q..=n_max).map(|n| {
                        Ok(agree(&[
                            ("recurrence", &mpq_recurrence_with(&cfg.oracle, p, q, n)?),
                            ("enumerated", &cfg.oracle.count_mpq(p, q, n)?),
                        ])
                        .map(|d| format!("n={n} {d}")))
                    }))
                },
            )?;
        }
    }
    Ok(())
}

fn identities(run: &mut Runner, cfg: &VerifyConfig) -> Result<()> {
    let hockey_max = cfg.n(60);
    for m in 0..=hockey_max {
        run.check(
            "hockey stick",
            format!("m={m} n={m}..={hockey_max}"),
            || {
                let mut running = Count::zero();
                for n in m..=hockey_max {
                    running += binom(n, m as i64);
                    let want = binom(n + 1, m as i64 + 1);
                    if running != want {
                        return Ok(Some(format!("n={n} sum={running} C(n+1,m+1)={want}")));
                    }
                }
                Ok(None)
            },
        )?;
    }
    let diag_max = cfg.n(200);
    run.check(
        "Fibonacci diagonal sum",
        format!("n=0..={diag_max}"),
        || {
            first_failure((0..=diag_max).map(|n| {
                let sum: Count = (0..=n / 2).map(|k| binom(n - k, k as i64)).sum();
                Ok(agree(&[("sum", &sum), ("F_{n+1}", &cfg.fib(n + 1))])
                    .map(|d| format!("n={n} {d}")))
            }))
        },
    )?;
    let rec_max = cfg.n(10_000);
    let mut table = cfg.fib.clone();
    table.extend_to(rec_max as usize + 1);
    run.check("Fibonacci recurrence", format!("n=2..={rec_max}"), || {
        Ok((2..=rec_max as usize).find_map(|n| {
            let (a, b, c) = (table.get(n), table.get(n - 1), table.get(n - 2));
            (*a != b.as_ref() + c.as_ref()).then(|| format!("n={n}"))
        }))
    })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            n_max: Some(10),
            k_max: Some(5),
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::CONCRETE.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("thm9_9".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes_on_small_ranges() {
        let reports = run_suite(Suite::All, &small()).unwrap();
        let failed: Vec<String> = reports
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.to_string())
            .collect();
        assert!(failed.is_empty(), "{failed:#?}");
        for s in Suite::CONCRETE {
            assert!(
                reports.iter().any(|r| r.suite == s.name()),
                "{s} produced no checks"
            );
        }
    }

    #[test]
    fn corrupted_table_fails_with_counterexample() {
        let mut cfg = small();
        cfg.fib.set(7, Count::from(14u32));
        let reports = run_suite(Suite::All, &cfg).unwrap();
        let summary = summarize(&reports);
        assert!(summary.failed > 0);
        let first = reports.iter().find(|r| !r.passed).unwrap();
        assert!(first.counterexample.is_some());
    }

    #[test]
    fn oversized_oracle_request_is_an_error() {
        let cfg = VerifyConfig {
            n_max: Some(30),
            ..VerifyConfig::default()
        };
        assert!(matches!(
            run_suite(Suite::Diagonal, &cfg),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn report_line_format() {
        let r = Report {
            suite: "thm1_1",
            check: "formula".into(),
            range: "n=3".into(),
            passed: false,
            counterexample: Some("x=1 y=2".into()),
        };
        assert_eq!(
            r.to_string(),
            "FAIL thm1_1 formula [n=3] counterexample: x=1 y=2"
        );
    }
}
