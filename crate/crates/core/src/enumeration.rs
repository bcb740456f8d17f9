//! Brute-force oracles for `A_{k,n}`, `K_n` and the `(p, q)` Schreier
//! family.
//!
//! Two independent counting strategies exist for `A_{k,n}`:
//!
//! * [`Strategy::Naive`] scans every subset of `{1, ..., n}` as a bitmask and
//!   applies the membership predicate from [`crate::finite_set`];
//! * [`Strategy::ByMin`] fixes `min E`, splits on whether `k` and `n` belong
//!   to `E`, and sums binomial coefficients over the remaining free elements.
//!   As an enumerator it generates only candidate sets below the size bound
//!   implied by the minimum.
//!
//! Every list returned here is sorted into the canonical set order, so the
//! result does not depend on the strategy or on parallel scheduling.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::binom;
use crate::error::{Error, Result};
use crate::finite_set::{in_a, in_k, in_mpq, BitSubset, FiniteSet};
use crate::Count;

/// Default cap on `n` for exhaustive subset scans.
pub const NAIVE_LIMIT: u64 = 24;
/// Hard cap on `n` for any enumeration, including a raised naive cap.
pub const ENUMERATION_LIMIT: u64 = 40;
/// Cap on `n` for the binomial min-element count.
pub const BY_MIN_COUNT_LIMIT: u64 = 64;
/// Environment variable that raises the naive cap.
pub const MAX_ORACLE_N_ENV: &str = "SCHREIER_MAX_ORACLE_N";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Naive,
    ByMin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Serial,
    Parallel,
}

/// Configured enumeration oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    naive_limit: u64,
    execution: Execution,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            naive_limit: NAIVE_LIMIT,
            execution: Execution::Parallel,
        }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Oracle::default()
    }

    /// Reads [`MAX_ORACLE_N_ENV`] if set. Values above
    /// [`ENUMERATION_LIMIT`] are rejected.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_ORACLE_N_ENV) {
            Ok(raw) => {
                let n = raw
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::param("SCHREIER_MAX_ORACLE_N", -1, "not an integer"))?;
                Oracle::default().with_naive_limit(n)
            }
            Err(_) => Ok(Oracle::default()),
        }
    }

    pub fn with_naive_limit(mut self, limit: u64) -> Result<Self> {
        if limit > ENUMERATION_LIMIT {
            return Err(Error::SizeLimit {
                operation: "naive limit",
                n: limit,
                limit: ENUMERATION_LIMIT,
            });
        }
        self.naive_limit = limit;
        Ok(self)
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn naive_limit(&self) -> u64 {
        self.naive_limit
    }

    pub fn execution(&self) -> Execution {
        self.execution
    }

    fn check_naive(&self, operation: &'static str, n: u64) -> Result<()> {
        if n > self.naive_limit {
            return Err(Error::SizeLimit {
                operation,
                n,
                limit: self.naive_limit,
            });
        }
        Ok(())
    }

    /// All of `A_{k,n}` in canonical order. Uses the exhaustive scan up to
    /// the naive cap and the min-element generator beyond it.
    pub fn enumerate_a(&self, k: u64, n: u64) -> Result<Vec<FiniteSet>> {
        validate_kn(k, n)?;
        let strategy = if n <= self.naive_limit {
            Strategy::Naive
        } else {
            Strategy::ByMin
        };
        self.enumerate_a_with(k, n, strategy)
    }

    pub fn enumerate_a_with(&self, k: u64, n: u64, strategy: Strategy) -> Result<Vec<FiniteSet>> {
        validate_kn(k, n)?;
        let mut sets = match strategy {
            Strategy::Naive => {
                self.check_naive("enumerate_a", n)?;
                self.scan(0, 1u64 << n, |m| member_a(m, k, n))
            }
            Strategy::ByMin => {
                if n > ENUMERATION_LIMIT {
                    return Err(Error::SizeLimit {
                        operation: "enumerate_a",
                        n,
                        limit: ENUMERATION_LIMIT,
                    });
                }
                self.generate_by_min(k, n)
            }
        };
        sets.sort_unstable();
        Ok(sets)
    }

    /// `a_{k,n} = |A_{k,n}|`.
    pub fn count_a(&self, k: u64, n: u64, strategy: Strategy) -> Result<Count> {
        validate_kn(k, n)?;
        match strategy {
            Strategy::Naive => {
                self.check_naive("count_a", n)?;
                Ok(Count::from(
                    self.scan_count(0, 1u64 << n, |m| member_a(m, k, n)),
                ))
            }
            Strategy::ByMin => {
                if n > BY_MIN_COUNT_LIMIT {
                    return Err(Error::SizeLimit {
                        operation: "count_a",
                        n,
                        limit: BY_MIN_COUNT_LIMIT,
                    });
                }
                Ok(count_a_by_min(k, n))
            }
        }
    }

    /// All of `K_n` in canonical order.
    pub fn enumerate_k(&self, n: u64) -> Result<Vec<FiniteSet>> {
        if n < 1 {
            return Err(Error::param("n", n, "must be at least 1"));
        }
        self.check_naive("enumerate_k", n)?;
        let (lo, hi) = with_max_range(n);
        let mut sets = self.scan(lo, hi, |m| member_k(m, n));
        sets.sort_unstable();
        Ok(sets)
    }

    pub fn count_k(&self, n: u64) -> Result<Count> {
        if n < 1 {
            return Err(Error::param("n", n, "must be at least 1"));
        }
        self.check_naive("count_k", n)?;
        let (lo, hi) = with_max_range(n);
        Ok(Count::from(self.scan_count(lo, hi, |m| member_k(m, n))))
    }

    /// Sets with `max E = n` and `q min E >= p |E|`, in canonical order.
    pub fn enumerate_mpq(&self, p: u64, q: u64, n: u64) -> Result<Vec<FiniteSet>> {
        validate_pqn(p, q, n)?;
        self.check_naive("enumerate_mpq", n)?;
        let (lo, hi) = with_max_range(n);
        let mut sets = self.scan(lo, hi, |m| member_mpq(m, p, q, n));
        sets.sort_unstable();
        Ok(sets)
    }

    /// `m_{p,q,n}` by exhaustive scan.
    pub fn count_mpq(&self, p: u64, q: u64, n: u64) -> Result<Count> {
        validate_pqn(p, q, n)?;
        self.check_naive("count_mpq", n)?;
        let (lo, hi) = with_max_range(n);
        Ok(Count::from(
            self.scan_count(lo, hi, |m| member_mpq(m, p, q, n)),
        ))
    }

    fn scan<P>(&self, lo: u64, hi: u64, keep: P) -> Vec<FiniteSet>
    where
        P: Fn(u64) -> bool + Sync,
    {
        match self.execution {
            Execution::Serial => (lo..hi)
                .filter(|&m| keep(m))
                .map(FiniteSet::from_mask)
                .collect(),
            Execution::Parallel => (lo..hi)
                .into_par_iter()
                .filter(|&m| keep(m))
                .map(FiniteSet::from_mask)
                .collect(),
        }
    }

    fn scan_count<P>(&self, lo: u64, hi: u64, keep: P) -> u64
    where
        P: Fn(u64) -> bool + Sync,
    {
        match self.execution {
            Execution::Serial => (lo..hi).filter(|&m| keep(m)).count() as u64,
            Execution::Parallel => (lo..hi).into_par_iter().filter(|&m| keep(m)).count() as u64,
        }
    }

    fn generate_by_min(&self, k: u64, n: u64) -> Vec<FiniteSet> {
        let per_min = |m: u64| -> Vec<FiniteSet> {
            let pool = n - m;
            let max_rest = (m - 1).min(pool);
            let mut out = Vec::new();
            for r in 0..=max_rest {
                for_each_combination(pool as u32, r as u32, |rest| {
                    let mask = (1u64 << (m - 1)) | (rest << m);
                    if member_a(mask, k, n) {
                        out.push(FiniteSet::from_mask(mask));
                    }
                });
            }
            out
        };
        let mut sets = vec![FiniteSet::empty()];
        match self.execution {
            Execution::Serial => sets.extend((1..=n).flat_map(per_min)),
            Execution::Parallel => {
                let parts: Vec<Vec<FiniteSet>> = (1..=n).into_par_iter().map(per_min).collect();
                sets.extend(parts.into_iter().flatten());
            }
        }
        sets
    }
}

fn validate_kn(k: u64, n: u64) -> Result<()> {
    if k < 1 {
        return Err(Error::param("k", k, "must be at least 1"));
    }
    if n < 1 {
        return Err(Error::param("n", n, "must be at least 1"));
    }
    Ok(())
}

fn validate_pqn(p: u64, q: u64, n: u64) -> Result<()> {
    if p < 1 {
        return Err(Error::param("p", p, "must be at least 1"));
    }
    if q < 1 {
        return Err(Error::param("q", q, "must be at least 1"));
    }
    if n < 1 {
        return Err(Error::param("n", n, "must be at least 1"));
    }
    Ok(())
}

fn top_bit(n: u64) -> u64 {
    1u64 << (n - 1)
}

// masks whose highest element is exactly n
fn with_max_range(n: u64) -> (u64, u64) {
    (top_bit(n), top_bit(n) << 1)
}

fn member_a(mask: u64, k: u64, n: u64) -> bool {
    in_a(&BitSubset(mask), k, n).unwrap_or(false)
}

fn member_k(mask: u64, n: u64) -> bool {
    in_k(&BitSubset(mask), n).unwrap_or(false)
}

fn member_mpq(mask: u64, p: u64, q: u64, n: u64) -> bool {
    in_mpq(&BitSubset(mask), p, q, n).unwrap_or(false)
}

/// Calls `f` with every `r`-element subset of bit positions `0..pool`.
fn for_each_combination<F: FnMut(u64)>(pool: u32, r: u32, mut f: F) {
    if r > pool {
        return;
    }
    if r == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << pool;
    let mut c = (1u64 << r) - 1;
    while c < limit {
        f(c);
        // Gosper's hack: next integer with the same popcount
        let low = c & c.wrapping_neg();
        let ripple = c + low;
        c = (((ripple ^ c) >> 2) / low) | ripple;
    }
}

/// `a_{k,n}` from binomial sums: fix `m = min E`, then split on whether the
/// special elements `k` and `n` (when they lie above `m`) belong to `E`.
/// The remaining `free` elements of `{m+1, ..., n}` contribute
/// `sum_r C(free, r)` over every size `r` that keeps `m > omega_k(E)`.
fn count_a_by_min(k: u64, n: u64) -> Count {
    let mut total = Count::one(); // the empty set
    for m in 1..=n {
        let mut specials = Vec::with_capacity(2);
        if m < k && k <= n {
            specials.push(k);
        }
        if m < n && n != k {
            specials.push(n);
        }
        let free = n - m - specials.len() as u64;
        for choice in 0u32..(1 << specials.len()) {
            let chosen = specials
                .iter()
                .enumerate()
                .filter(|(i, _)| choice >> i & 1 == 1)
                .map(|(_, &s)| s);
            let included = chosen.clone().count() as u64;
            let k_in = m == k || chosen.clone().any(|s| s == k);
            let fixed_weight = 1 + included - u64::from(k_in);
            // need m > fixed_weight + r
            if m <= fixed_weight {
                continue;
            }
            let max_r = (m - 1 - fixed_weight).min(free);
            let mut part = Count::zero();
            for r in 0..=max_r {
                part += binom(free, r as i64);
            }
            total += part;
        }
    }
    total
}

pub fn enumerate_a(k: u64, n: u64) -> Result<Vec<FiniteSet>> {
    Oracle::default().enumerate_a(k, n)
}

pub fn count_a(k: u64, n: u64, strategy: Strategy) -> Result<Count> {
    Oracle::default().count_a(k, n, strategy)
}

pub fn enumerate_k(n: u64) -> Result<Vec<FiniteSet>> {
    Oracle::default().enumerate_k(n)
}

pub fn count_mpq(p: u64, q: u64, n: u64) -> Result<Count> {
    Oracle::default().count_mpq(p, q, n)
}

pub fn enumerate_mpq(p: u64, q: u64, n: u64) -> Result<Vec<FiniteSet>> {
    Oracle::default().enumerate_mpq(p, q, n)
}
