//! Exact counting, enumeration and verification of weighted Schreier-type sets.
//!
//! A finite set `E` of positive integers is *Schreier* when `min E >= |E|`.
//! Giving weight zero to a single integer `k` yields the families `S^(k)` and
//! the counts `a_{k,n}`; giving weight zero to both 2 and 3 yields the
//! families `K_n`. This crate provides
//!
//! * exact Fibonacci and binomial arithmetic ([`combinatorics`]),
//! * the [`FiniteSet`] value type with the weight functions and membership
//!   predicates ([`finite_set`]),
//! * brute-force oracles that enumerate and count every family
//!   ([`enumeration`]),
//! * the closed forms and recurrences for those counts ([`closed_forms`]),
//! * seeded iterated partial sums ([`partial_sums`]),
//! * the explicit bijections behind the Fibonacci recurrences, with a
//!   partition checker ([`bijections`]),
//! * named verification suites ([`verify`]) and the `schreier` command-line
//!   front end ([`cli`]).
//!
//! All arithmetic is exact: counts are [`Count`] (`BigUint`) and signed
//! sequence terms are [`Int`] (`BigInt`).

pub mod bijections;
pub mod cli;
pub mod closed_forms;
pub mod combinatorics;
pub mod enumeration;
mod error;
pub mod finite_set;
pub mod partial_sums;
pub mod verify;

pub use crate::combinatorics::{binom, fib, fib_binom_convolution, BinomialTable, FibTable};
pub use crate::error::{Error, Result};
pub use crate::finite_set::{FiniteSet, SchreierClass};

/// Exact unsigned integer used for every cardinality.
pub type Count = num_bigint::BigUint;

/// Exact signed integer used for sequence terms and differences.
pub type Int = num_bigint::BigInt;
