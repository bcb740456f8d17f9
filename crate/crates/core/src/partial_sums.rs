//! Seeded partial-sum operators on finite sequence prefixes.
//!
//! `P_b` maps `(a_0, a_1, ...)` to `(b, b + a_0, b + a_0 + a_1, ...)`. On a
//! finite prefix the output keeps the input length: term `n` only needs
//! `a_0..a_{n-1}` and the seed, so the last input term is dropped.

use std::ops::Index;

use num_traits::Zero;

use crate::combinatorics::{binom, fib_prefix};
use crate::{Count, Int};

/// A finite prefix `(a_0, ..., a_{len-1})` of an integer sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Seq(Vec<Int>);

impl Seq {
    pub fn new(terms: Vec<Int>) -> Self {
        Seq(terms)
    }

    pub fn from_i64s(terms: &[i64]) -> Self {
        Seq(terms.iter().map(|&t| Int::from(t)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Seq(vec![Int::zero(); len])
    }

    /// `F_offset, F_{offset+1}, ..., F_{offset+len-1}`.
    pub fn fibonacci(offset: usize, len: usize) -> Self {
        Seq(fib_prefix(offset + len)
            .into_iter()
            .skip(offset)
            .map(Int::from)
            .collect())
    }

    pub fn terms(&self) -> &[Int] {
        &self.0
    }

    pub fn into_terms(self) -> Vec<Int> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&Int> {
        self.0.get(n)
    }

    /// Termwise `a_n + c`.
    pub fn add_constant(&self, c: &Int) -> Seq {
        Seq(self.0.iter().map(|t| t + c).collect())
    }
}

impl Index<usize> for Seq {
    type Output = Int;

    fn index(&self, n: usize) -> &Int {
        &self.0[n]
    }
}

impl From<Vec<Int>> for Seq {
    fn from(terms: Vec<Int>) -> Self {
        Seq(terms)
    }
}

impl FromIterator<Int> for Seq {
    fn from_iter<I: IntoIterator<Item = Int>>(iter: I) -> Self {
        Seq(iter.into_iter().collect())
    }
}

/// `P_b(a)`: term `n` is `b + a_0 + ... + a_{n-1}`.
pub fn partial_sum_op(seed: &Int, a: &Seq) -> Seq {
    let mut out = Vec::with_capacity(a.len());
    let mut running = seed.clone();
    for term in a.terms() {
        out.push(running.clone());
        running += term;
    }
    Seq(out)
}

/// `P_{b_{k-1}}( ... P_{b_1}(P_{b_0}(a)))` with `seeds = (b_0, ..., b_{k-1})`.
/// No seeds returns `a` unchanged.
pub fn iterated_seeded(seeds: &Seq, a: &Seq) -> Seq {
    seeds
        .terms()
        .iter()
        .fold(a.clone(), |acc, b| partial_sum_op(b, &acc))
}

/// The `k`-fold zero-seeded partial sum `P^(k)(a)`.
pub fn k_partial_sum(a: &Seq, k: usize) -> Seq {
    iterated_seeded(&Seq::zeros(k), a)
}

/// `sum_{j=0}^{l-1} C(j, l-1-j+k)`, the closed form of `P^(k)(F)(l)`.
pub fn fib_partial_sum_closed(k: u64, l: u64) -> Count {
    (0..l)
        .map(|j| binom(j, l as i64 - 1 - j as i64 + k as i64))
        .sum()
}

/// `sum_{i=0}^{k-1} C(n, i) b_{k-1-i}`: the gap between seeding with
/// `seeds` and seeding with zeros, at index `n`.
pub fn seed_offset(seeds: &Seq, n: u64) -> Int {
    let k = seeds.len();
    (0..k)
        .map(|i| Int::from(binom(n, i as i64)) * &seeds[k - 1 - i])
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[i64]) -> Seq {
        Seq::from_i64s(v)
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(
            partial_sum_op(&Int::from(0), &s(&[1, 1, 1, 1])),
            s(&[0, 1, 2, 3])
        );
        assert_eq!(
            partial_sum_op(&Int::from(3), &s(&[1, 1, 1, 1])),
            s(&[3, 4, 5, 6])
        );
        assert_eq!(
            partial_sum_op(&Int::from(5), &s(&[3, 4, 5, 6])),
            s(&[5, 8, 12, 17])
        );
        assert_eq!(partial_sum_op(&Int::from(5), &s(&[])), s(&[]));
    }

    #[test]
    fn iterated_examples() {
        assert_eq!(iterated_seeded(&s(&[]), &s(&[2, 7, 1])), s(&[2, 7, 1]));
        assert_eq!(
            iterated_seeded(&s(&[3, 5]), &s(&[1, 1, 1, 1])),
            s(&[5, 8, 12, 17])
        );
        assert_eq!(
            iterated_seeded(&s(&[0, 0]), &s(&[1, 1, 1, 1])),
            s(&[0, 0, 1, 3])
        );
    }

    #[test]
    fn k_partial_sum_examples() {
        let fibs = Seq::fibonacci(0, 6);
        assert_eq!(fibs, s(&[0, 1, 1, 2, 3, 5]));
        assert_eq!(k_partial_sum(&fibs, 0), fibs);
        assert_eq!(k_partial_sum(&fibs, 1), s(&[0, 0, 1, 2, 4, 7]));
        assert_eq!(k_partial_sum(&s(&[1, 1, 1, 1]), 2), s(&[0, 0, 1, 3]));
    }

    #[test]
    fn closed_fib_partial_sum_examples() {
        assert_eq!(fib_partial_sum_closed(0, 5), Count::from(5u32));
        assert_eq!(fib_partial_sum_closed(1, 3), Count::from(2u32));
        assert_eq!(fib_partial_sum_closed(3, 0), Count::from(0u32));
    }

    #[test]
    fn seed_offset_worked_instance() {
        let seeds = s(&[3, 5]);
        let ones = s(&[1, 1, 1, 1]);
        let gap = &iterated_seeded(&seeds, &ones)[2] - &k_partial_sum(&ones, 2)[2];
        assert_eq!(gap, Int::from(11));
        assert_eq!(seed_offset(&seeds, 2), Int::from(11));
    }

    proptest! {
        #[test]
        fn operators_preserve_length(
            terms in proptest::collection::vec(-1000i64..1000, 0..40),
            seeds in proptest::collection::vec(-100i64..100, 0..8),
        ) {
            let a = s(&terms);
            prop_assert_eq!(partial_sum_op(&Int::from(7), &a).len(), a.len());
            prop_assert_eq!(iterated_seeded(&s(&seeds), &a).len(), a.len());
        }

        #[test]
        fn one_step_is_a_difference_inverse(
            terms in proptest::collection::vec(-1000i64..1000, 1..40),
            b in -100i64..100,
        ) {
            let a = s(&terms);
            let p = partial_sum_op(&Int::from(b), &a);
            prop_assert_eq!(&p[0], &Int::from(b));
            for n in 1..a.len() {
                prop_assert_eq!(&p[n] - &p[n - 1], a[n - 1].clone());
            }
        }
    }
}
