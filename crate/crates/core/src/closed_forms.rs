//! Closed forms and recurrences for `a_{k,n}`, `|K_n|` and `m_{p,q,n}`.
//!
//! Each identity has its own entry point so that a bug in one formula
//! cannot hide behind another formula that happens to agree with it.
//! Fibonacci values are read from a [`FibTable`] owned by [`ClosedForms`];
//! the free functions use a shared, uncorrupted table.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binom, BinomialTable, FibTable};
use crate::enumeration::Oracle;
use crate::error::{Error, Result};
use crate::{Count, Int};

/// One entry `a_{k,n}` of the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCell {
    pub k: u64,
    pub n: u64,
    pub value: Count,
}

/// The pieces of the `k >= 2, n >= k` formula, with `l = n - k`:
/// `2 sum_i C(l,i) F_{k-i} + 2 C(l,k-1) + sum_j C(j, l-j+k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleCaseTerms {
    /// `C(l, i) F_{k-i}` for `i = 0..=k-2` (before doubling).
    pub fibonacci_terms: Vec<Count>,
    /// `C(l, k-1)` (before doubling).
    pub binomial_term: Count,
    /// `C(j, l-j+k)` for `j = 1..=l`.
    pub tail_terms: Vec<Count>,
}

impl MiddleCaseTerms {
    pub fn total(&self) -> Count {
        let fib_part: Count = self.fibonacci_terms.iter().sum();
        let tail: Count = self.tail_terms.iter().sum();
        (fib_part + &self.binomial_term) * 2u32 + tail
    }
}

/// Sizes of the four parts of `K_{n+1}`, split by membership of 2 and 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KCaseCounts {
    /// 2 and 3 both in `E`.
    pub case1: Count,
    /// 2 in `E`, 3 not.
    pub case2: Count,
    /// 3 in `E`, 2 not.
    pub case3: Count,
    /// Neither 2 nor 3.
    pub case4: Count,
}

impl KCaseCounts {
    pub fn total(&self) -> Count {
        &self.case1 + &self.case2 + &self.case3 + &self.case4
    }
}

/// `a_{k,n}` for `1 <= k <= k_max`, `1 <= n <= n_max`, filled column by
/// column with `a_{k,n} = a_{k,n-1} + a_{k-1,n-2}` wherever
/// `n > max(k, 2)` and `k >= 2`; the remaining cells are seeded from
/// [`ClosedForms::a_closed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceTable {
    k_max: u64,
    n_max: u64,
    rows: Vec<Vec<Count>>,
}

impl RecurrenceTable {
    pub fn k_max(&self) -> u64 {
        self.k_max
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// `None` outside the table.
    pub fn get(&self, k: u64, n: u64) -> Option<&Count> {
        if k == 0 || n == 0 {
            return None;
        }
        self.rows.get(k as usize - 1)?.get(n as usize - 1)
    }

    /// Row `k` as `a_{k,1}, ..., a_{k,n_max}`.
    pub fn row(&self, k: u64) -> Option<&[Count]> {
        self.rows.get(k.checked_sub(1)? as usize).map(Vec::as_slice)
    }

    /// True if the cell came from the closed form rather than the recurrence.
    pub fn is_seeded(k: u64, n: u64) -> bool {
        k == 1 || n <= k.max(2)
    }

    pub fn cells(&self) -> impl Iterator<Item = TableCell> + '_ {
        self.rows.iter().enumerate().flat_map(|(ki, row)| {
            row.iter().enumerate().map(move |(ni, v)| TableCell {
                k: ki as u64 + 1,
                n: ni as u64 + 1,
                value: v.clone(),
            })
        })
    }
}

/// Closed forms evaluated against a particular Fibonacci table.
#[derive(Debug, Clone, Default)]
pub struct ClosedForms {
    fib: FibTable,
}

fn require_at_least(name: &'static str, v: u64, min: u64, reason: &'static str) -> Result<()> {
    if v < min {
        return Err(Error::param(name, v, reason));
    }
    Ok(())
}

impl ClosedForms {
    pub fn new() -> Self {
        ClosedForms::default()
    }

    pub fn with_fib_table(fib: FibTable) -> Self {
        ClosedForms { fib }
    }

    pub fn fib_table(&self) -> &FibTable {
        &self.fib
    }

    fn f(&self, n: u64) -> Count {
        self.fib.get(n as usize).into_owned()
    }

    /// `a_{k,n}` by the three-case formula in `l = n - k`.
    pub fn a_closed(&self, k: u64, n: u64) -> Result<Count> {
        require_at_least("k", k, 1, "must be at least 1")?;
        require_at_least("n", n, 1, "must be at least 1")?;
        if k == 1 {
            // l = n - 1
            return Ok(self.f(n + 1) + 1u32);
        }
        if n >= k {
            return Ok(self.middle_case_terms(k, n - k)?.total());
        }
        Ok(self.f(n + 1))
    }

    /// Individual terms of the `k >= 2, l >= 0` case.
    pub fn middle_case_terms(&self, k: u64, l: u64) -> Result<MiddleCaseTerms> {
        require_at_least("k", k, 2, "must be at least 2")?;
        let fibonacci_terms = (0..=k - 2)
            .map(|i| binom(l, i as i64) * self.f(k - i))
            .collect();
        let binomial_term = binom(l, k as i64 - 1);
        let tail_terms = (1..=l)
            .map(|j| binom(j, l as i64 - j as i64 + k as i64))
            .collect();
        Ok(MiddleCaseTerms {
            fibonacci_terms,
            binomial_term,
            tail_terms,
        })
    }

    /// `a_{n,n} = 2 F_n`.
    pub fn a_diag(&self, n: u64) -> Result<Count> {
        require_at_least("n", n, 1, "must be at least 1")?;
        Ok(self.f(n) * 2u32)
    }

    /// `a_{k,k+l} = 2 F_{k+l}` for `l >= 0`, `k >= l + 2`.
    pub fn a_band(&self, k: u64, l: u64) -> Result<Count> {
        if k < l + 2 {
            return Err(Error::param("k", k, "must be at least l + 2"));
        }
        Ok(self.f(k + l) * 2u32)
    }

    /// Shortcut `a_{k,n} = F_{n+1}` for `k > n`.
    pub fn a_above_diagonal(&self, k: u64, n: u64) -> Result<Count> {
        require_at_least("n", n, 1, "must be at least 1")?;
        if k <= n {
            return Err(Error::param("k", k, "must exceed n"));
        }
        Ok(self.f(n + 1))
    }

    /// `|K_n| = F_{n-1}`.
    pub fn k_count(&self, n: u64) -> Result<Count> {
        require_at_least("n", n, 2, "must be at least 2")?;
        Ok(self.f(n - 1))
    }

    /// Case sizes for `K_{n+1}`, `n >= 3`.
    pub fn k_case_counts(&self, n: u64) -> Result<KCaseCounts> {
        require_at_least("n", n, 3, "must be at least 3")?;
        let f_n = Int::from(self.f(n));
        let case4 = f_n - Int::from(n - 2);
        let case4 = case4.to_biguint().ok_or(Error::Negative("k_case_counts"))?;
        Ok(KCaseCounts {
            case1: Count::one(),
            case2: Count::zero(),
            case3: Count::from(n - 3),
            case4,
        })
    }

    pub fn recurrence_table(&self, k_max: u64, n_max: u64) -> Result<RecurrenceTable> {
        require_at_least("k_max", k_max, 1, "must be at least 1")?;
        require_at_least("n_max", n_max, 1, "must be at least 1")?;
        let mut rows = vec![Vec::with_capacity(n_max as usize); k_max as usize];
        for n in 1..=n_max {
            for k in 1..=k_max {
                let value = if RecurrenceTable::is_seeded(k, n) {
                    self.a_closed(k, n)?
                } else {
                    let left = &rows[k as usize - 1][n as usize - 2];
                    let diag = &rows[k as usize - 2][n as usize - 3];
                    left + diag
                };
                rows[k as usize - 1].push(value);
            }
        }
        Ok(RecurrenceTable { k_max, n_max, rows })
    }
}

fn shared() -> &'static ClosedForms {
    static SHARED: OnceLock<ClosedForms> = OnceLock::new();
    SHARED.get_or_init(ClosedForms::new)
}

pub fn a_closed(k: u64, n: u64) -> Result<Count> {
    shared().a_closed(k, n)
}

pub fn a_diag(n: u64) -> Result<Count> {
    shared().a_diag(n)
}

pub fn a_band(k: u64, l: u64) -> Result<Count> {
    shared().a_band(k, l)
}

pub fn k_count(n: u64) -> Result<Count> {
    shared().k_count(n)
}

pub fn k_case_counts(n: u64) -> Result<KCaseCounts> {
    shared().k_case_counts(n)
}

pub fn a_recurrence_table(k_max: u64, n_max: u64) -> Result<RecurrenceTable> {
    shared().recurrence_table(k_max, n_max)
}

/// `2 + 2 sum_{k=1}^{n-1} sum_{j=0}^{k-2} C(n-k-1, j)`, summed literally.
pub fn a_diag_double_sum(n: u64) -> Result<Count> {
    require_at_least("n", n, 1, "must be at least 1")?;
    a_diag_double_sum_with(&BinomialTable::new(n as usize), n)
}

/// As [`a_diag_double_sum`], reading binomials from a shared table.
pub fn a_diag_double_sum_with(binomials: &BinomialTable, n: u64) -> Result<Count> {
    require_at_least("n", n, 1, "must be at least 1")?;
    let mut inner = Count::zero();
    for k in 1..n {
        for j in 0..k.saturating_sub(1) {
            inner += binomials.get(n - k - 1, j as i64).as_ref();
        }
    }
    Ok((inner + 1u32) * 2u32)
}

/// `m_{p,q,n}` from the alternating recurrence, valid for `n >= p + q`.
/// Smaller indices are seeded from the exhaustive oracle, with
/// `m_{p,q,0} = 0`.
pub fn mpq_recurrence(p: u64, q: u64, n: u64) -> Result<Count> {
    mpq_recurrence_with(&Oracle::default(), p, q, n)
}

pub fn mpq_recurrence_with(oracle: &Oracle, p: u64, q: u64, n: u64) -> Result<Count> {
    require_at_least("p", p, 1, "must be at least 1")?;
    require_at_least("q", q, 1, "must be at least 1")?;
    require_at_least("n", n, 1, "must be at least 1")?;
    let mut m: Vec<Int> = Vec::with_capacity(n as usize + 1);
    m.push(Int::zero());
    for i in 1..=n {
        let value = if i < p + q {
            Int::from(oracle.count_mpq(p, q, i)?)
        } else {
            let mut acc = m[(i - p - q) as usize].clone();
            for j in 1..=q {
                let term = Int::from(binom(q, j as i64)) * &m[(i - j) as usize];
                if j % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        };
        m.push(value);
    }
    let last = m.pop().unwrap_or_default();
    if last.is_negative() {
        return Err(Error::Negative("mpq_recurrence"));
    }
    Ok(last.to_biguint().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::fib;
    use crate::enumeration::{count_mpq, enumerate_k};

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn a_closed_examples() {
        assert_eq!(a_closed(4, 10).unwrap(), c(116));
        assert_eq!(a_closed(1, 4).unwrap(), c(6));
        assert_eq!(a_closed(2, 3).unwrap(), c(4));
        assert!(a_closed(0, 3).is_err());
        assert!(a_closed(3, 0).is_err());
    }

    #[test]
    fn worked_example_terms() {
        let t = ClosedForms::new().middle_case_terms(4, 6).unwrap();
        assert_eq!(t.fibonacci_terms, vec![c(3), c(12), c(15)]);
        assert_eq!(t.binomial_term, c(20));
        assert_eq!(t.tail_terms, vec![c(0), c(0), c(0), c(0), c(1), c(15)]);
        assert_eq!(t.total(), c(116));
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(a_diag(1).unwrap(), c(2));
        assert_eq!(a_diag(5).unwrap(), c(10));
        assert_eq!(a_diag(30).unwrap(), c(1_664_080));
        assert_eq!(a_diag_double_sum(1).unwrap(), c(2));
        assert_eq!(a_diag_double_sum(5).unwrap(), c(10));
        assert_eq!(a_diag_double_sum(16).unwrap(), c(1974));
        assert!(a_diag(0).is_err());
        assert!(a_diag_double_sum(0).is_err());
    }

    #[test]
    fn middle_case_at_zero_offset_is_twice_fibonacci() {
        for k in 2..=200 {
            assert_eq!(a_closed(k, k).unwrap(), fib(k as usize) * 2u32, "k={k}");
        }
    }

    #[test]
    fn band_examples() {
        assert_eq!(a_band(5, 0).unwrap(), c(10));
        assert_eq!(a_band(6, 1).unwrap(), c(26));
        assert_eq!(a_band(7, 5).unwrap(), c(288));
        assert!(a_band(6, 5).is_err());
    }

    #[test]
    fn above_diagonal_shortcut() {
        let cf = ClosedForms::new();
        assert_eq!(cf.a_above_diagonal(5, 4).unwrap(), c(5));
        assert!(cf.a_above_diagonal(4, 4).is_err());
    }

    #[test]
    fn recurrence_table_examples() {
        let t = a_recurrence_table(7, 16).unwrap();
        assert_eq!(t.get(3, 5), Some(&c(10)));
        assert_eq!(t.get(2, 5), Some(&c(11)));
        assert_eq!(t.get(1, 7), Some(&c(22)));
        assert_eq!(t.get(7, 16), Some(&c(1995)));
        assert_eq!(t.get(8, 1), None);
        assert_eq!(t.cells().count(), 112);
        assert!(RecurrenceTable::is_seeded(1, 7));
        assert!(!RecurrenceTable::is_seeded(3, 5));
        assert!(a_recurrence_table(0, 3).is_err());
    }

    #[test]
    fn k_count_examples() {
        assert_eq!(k_count(2).unwrap(), c(1));
        assert_eq!(k_count(5).unwrap(), c(3));
        assert_eq!(k_count(23).unwrap(), c(17711));
        assert!(k_count(1).is_err());
    }

    /// Case 4 literally: `{n+1}` plus `sum_{k=4}^{n} sum_{j=1}^{k-3} C(n-k, j)`.
    fn case4_double_sum(n: u64) -> Count {
        let mut acc = c(1);
        for k in 4..=n {
            for j in 1..=k - 3 {
                acc += binom(n - k, j as i64);
            }
        }
        acc
    }

    #[test]
    fn k_case_count_examples() {
        let r = k_case_counts(4).unwrap();
        assert_eq!(
            (r.case1, r.case2, r.case3, r.case4),
            (c(1), c(0), c(1), c(1))
        );
        let r = k_case_counts(3).unwrap();
        assert_eq!(
            (r.case1, r.case2, r.case3, r.case4),
            (c(1), c(0), c(0), c(1))
        );
        let r = k_case_counts(10).unwrap();
        assert_eq!(
            (&r.case1, &r.case2, &r.case3, &r.case4),
            (&c(1), &c(0), &c(7), &c(47))
        );
        assert_eq!(r.total(), c(55));
        assert!(k_case_counts(2).is_err());
    }

    #[test]
    fn case4_matches_literal_double_sum() {
        for n in 3..=60 {
            assert_eq!(
                k_case_counts(n).unwrap().case4,
                case4_double_sum(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn case_counts_partition_enumeration() {
        for n in 3..=16u64 {
            let r = k_case_counts(n).unwrap();
            let mut parts = [0u64; 4];
            for e in enumerate_k(n + 1).unwrap() {
                let idx = match (e.contains(2), e.contains(3)) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                };
                parts[idx] += 1;
            }
            assert_eq!([r.case1, r.case2, r.case3, r.case4], parts.map(c), "n={n}");
        }
    }

    #[test]
    fn corrupted_table_changes_results() {
        let mut table = FibTable::new(64);
        table.set(10, c(56));
        let cf = ClosedForms::with_fib_table(table);
        assert_eq!(cf.a_diag(10).unwrap(), c(112));
        assert_eq!(a_diag(10).unwrap(), c(110));
        // F_3 = 0 makes F_3 - 1 negative
        let mut table = FibTable::new(8);
        table.set(3, c(0));
        let cf = ClosedForms::with_fib_table(table);
        assert_eq!(cf.k_case_counts(3), Err(Error::Negative("k_case_counts")));
    }

    #[test]
    fn mpq_examples() {
        assert_eq!(mpq_recurrence(1, 1, 6).unwrap(), c(8));
        assert_eq!(mpq_recurrence(1, 1, 1).unwrap(), c(1));
        assert_eq!(
            mpq_recurrence(2, 1, 12).unwrap(),
            count_mpq(2, 1, 12).unwrap()
        );
        for n in 1..=30 {
            assert_eq!(mpq_recurrence(1, 1, n).unwrap(), fib(n as usize));
        }
        assert!(mpq_recurrence(0, 1, 3).is_err());
    }

    #[test]
    fn mpq_base_seed_respects_limit() {
        let tiny = Oracle::default().with_naive_limit(2).unwrap();
        assert!(matches!(
            mpq_recurrence_with(&tiny, 3, 3, 10),
            Err(Error::SizeLimit { .. })
        ));
        assert!(mpq_recurrence_with(&tiny, 1, 1, 40).is_ok());
    }

    #[test]
    fn table_cell_reports_position() {
        let t = a_recurrence_table(2, 3).unwrap();
        let cells: Vec<TableCell> = t.cells().collect();
        assert_eq!(
            cells[0],
            TableCell {
                k: 1,
                n: 1,
                value: c(2)
            }
        );
        assert_eq!(
            cells[5],
            TableCell {
                k: 2,
                n: 3,
                value: c(4)
            }
        );
    }
}
