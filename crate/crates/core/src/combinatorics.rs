//! Exact Fibonacci numbers and binomial coefficients.
//!
//! Fibonacci indexing is fixed at `F_0 = 0, F_1 = 1` everywhere in the crate.
//! Binomial coefficients vanish outside `0 <= k <= n`, so sums whose index
//! runs past the triangle lose those terms instead of failing.

use std::borrow::Cow;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Count;

/// `F_n` by iterating the recurrence.
pub fn fib(n: usize) -> Count {
    let mut prev = Count::zero();
    let mut cur = Count::one();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &prev + &cur;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `F_0, ..., F_{len-1}`.
pub fn fib_prefix(len: usize) -> Vec<Count> {
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let next = match i {
            0 => Count::zero(),
            1 => Count::one(),
            _ => &out[i - 1] + &out[i - 2],
        };
        out.push(next);
    }
    out
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binom(n: u64, k: i64) -> Count {
    if k < 0 || k as u64 > n {
        return Count::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Count::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `sum_{i=0}^{l} C(l, i) F_{k-i}`, evaluated term by term.
///
/// Equals `F_{k+l}` whenever `k >= l`.
pub fn fib_binom_convolution(k: usize, l: usize) -> Result<Count> {
    FibTable::new(k + 1).binom_convolution(k, l)
}

/// A materialized prefix of the Fibonacci sequence.
///
/// Lookups past the stored prefix continue the recurrence from the last two
/// stored entries. Entries can be overwritten with [`FibTable::set`], which
/// is how the verification suites are fault-injected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibTable {
    values: Vec<Count>,
}

impl Default for FibTable {
    fn default() -> Self {
        FibTable::new(1024)
    }
}

impl FibTable {
    pub fn new(len: usize) -> Self {
        FibTable {
            values: fib_prefix(len.max(2)),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Cow<'_, Count> {
        if let Some(v) = self.values.get(n) {
            return Cow::Borrowed(v);
        }
        let len = self.values.len();
        let mut prev = self.values[len - 2].clone();
        let mut cur = self.values[len - 1].clone();
        for _ in len..=n {
            let next = &prev + &cur;
            prev = std::mem::replace(&mut cur, next);
        }
        Cow::Owned(cur)
    }

    /// Stores at least `len` entries, continuing the recurrence from the
    /// last two stored ones.
    pub fn extend_to(&mut self, len: usize) {
        while self.values.len() < len {
            let n = self.values.len();
            let next = &self.values[n - 2] + &self.values[n - 1];
            self.values.push(next);
        }
    }

    /// Overwrites `F_n`, growing the stored prefix if needed.
    pub fn set(&mut self, n: usize, value: Count) {
        self.extend_to(n + 1);
        self.values[n] = value;
    }

    pub fn binom_convolution(&self, k: usize, l: usize) -> Result<Count> {
        if k < l {
            return Err(Error::param("k", k as i128, "must be at least l"));
        }
        let mut acc = Count::zero();
        for i in 0..=l {
            acc += binom(l as u64, i as i64) * self.get(k - i).as_ref();
        }
        Ok(acc)
    }
}

/// Pascal's triangle built by addition, for sums that touch many binomials.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<Count>>,
}

impl BinomialTable {
    /// Rows `0..=max_n`.
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<Count>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = Vec::with_capacity(n + 1);
            row.push(Count::one());
            for k in 1..n {
                let prev = &rows[n - 1];
                row.push(&prev[k - 1] + &prev[k]);
            }
            if n > 0 {
                row.push(Count::one());
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn get(&self, n: u64, k: i64) -> Cow<'_, Count> {
        match self.rows.get(n as usize) {
            Some(row) if k >= 0 && (k as u64) <= n => Cow::Borrowed(&row[k as usize]),
            Some(_) => Cow::Owned(Count::zero()),
            None => Cow::Owned(binom(n, k)),
        }
    }
}
