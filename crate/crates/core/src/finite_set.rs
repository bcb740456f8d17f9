//! Finite sets of positive integers, the weights `omega`, and the membership
//! predicates for `S^(k)`, `A_{k,n}` and `K_n`.
//!
//! Predicates are written against [`SetView`] so that the brute-force
//! oracles can run exactly the same code on bitmasks without allocating.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A set element. Elements are always `>= 1`.
pub type Element = u32;

/// Read-only access to a finite set of positive integers.
pub trait SetView {
    fn cardinality(&self) -> usize;
    fn min_element(&self) -> Option<Element>;
    fn max_element(&self) -> Option<Element>;
    fn contains_element(&self, x: Element) -> bool;
}

/// A finite, strictly increasing list of positive integers.
///
/// Ordering is the canonical enumeration order: ascending cardinality, then
/// lexicographic on the element list, so the empty set comes first.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    elements: Vec<Element>,
}

impl FiniteSet {
    pub fn empty() -> Self {
        FiniteSet::default()
    }

    /// Builds a set from a strictly increasing list of positive integers.
    pub fn new(elements: Vec<Element>) -> Result<Self> {
        if elements.first() == Some(&0) {
            return Err(Error::InvalidSet("elements must be at least 1".into()));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSet(format!(
                "elements must be strictly increasing: {elements:?}"
            )));
        }
        Ok(FiniteSet { elements })
    }

    /// Builds a set from arbitrary positive integers, sorting and dropping
    /// duplicates.
    pub fn from_unsorted<I: IntoIterator<Item = Element>>(items: I) -> Result<Self> {
        let mut elements: Vec<Element> = items.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        FiniteSet::new(elements)
    }

    /// Bit `i` of `mask` stands for the element `i + 1`.
    pub fn from_mask(mask: u64) -> Self {
        let mut elements = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            elements.push(rest.trailing_zeros() + 1);
            rest &= rest - 1;
        }
        FiniteSet { elements }
    }

    /// Inverse of [`FiniteSet::from_mask`]; `None` if an element exceeds 64.
    pub fn to_mask(&self) -> Option<u64> {
        self.elements
            .iter()
            .try_fold(0u64, |mask, &x| (x <= 64).then(|| mask | (1u64 << (x - 1))))
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> Option<Element> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<Element> {
        self.elements.last().copied()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `E + by`: every element moved up by `by`.
    pub fn shift_up(&self, by: Element) -> FiniteSet {
        FiniteSet {
            elements: self.elements.iter().map(|x| x + by).collect(),
        }
    }

    /// `E - by`; fails if an element would drop below 1.
    pub fn shift_down(&self, by: Element) -> Result<FiniteSet> {
        match self.min() {
            Some(m) if m <= by => Err(Error::InvalidSet(format!(
                "{self} - {by} has elements below 1"
            ))),
            _ => Ok(FiniteSet {
                elements: self.elements.iter().map(|x| x - by).collect(),
            }),
        }
    }

    pub fn with(&self, x: Element) -> Result<FiniteSet> {
        FiniteSet::from_unsorted(self.elements.iter().copied().chain(std::iter::once(x)))
    }

    pub fn without(&self, x: Element) -> FiniteSet {
        FiniteSet {
            elements: self.elements.iter().copied().filter(|&y| y != x).collect(),
        }
    }
}

impl SetView for FiniteSet {
    fn cardinality(&self) -> usize {
        self.len()
    }
    fn min_element(&self) -> Option<Element> {
        self.min()
    }
    fn max_element(&self) -> Option<Element> {
        self.max()
    }
    fn contains_element(&self, x: Element) -> bool {
        self.contains(x)
    }
}

/// A subset of `{1, ..., 64}` stored as a bitmask (bit `i` is element `i + 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitSubset(pub u64);

impl SetView for BitSubset {
    fn cardinality(&self) -> usize {
        self.0.count_ones() as usize
    }
    fn min_element(&self) -> Option<Element> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }
    fn max_element(&self) -> Option<Element> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }
    fn contains_element(&self, x: Element) -> bool {
        (1..=64).contains(&x) && self.0 >> (x - 1) & 1 == 1
    }
}

impl Ord for FiniteSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for FiniteSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FiniteSet {
    type Err = Error;

    /// Parses the canonical rendering, e.g. `{}` or `{2,3,5}`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|rest| rest.strip_suffix('}'))
            .ok_or_else(|| Error::InvalidSet(format!("expected braces: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(FiniteSet::empty());
        }
        let elements = inner
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<Element>()
                    .map_err(|_| Error::InvalidSet(format!("bad element {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteSet::new(elements)
    }
}

/// Four-way Schreier classification. The empty set gets its own label
/// because it counts as both maximal and nonmaximal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchreierClass {
    Empty,
    NonSchreier,
    NonmaximalSchreier,
    MaximalSchreier,
}

impl SchreierClass {
    /// `Empty` or `NonmaximalSchreier`.
    pub fn is_nonmaximal(self) -> bool {
        matches!(
            self,
            SchreierClass::Empty | SchreierClass::NonmaximalSchreier
        )
    }
}

/// `|E \ excluded|`.
pub fn omega<S: SetView + ?Sized>(set: &S, excluded: &FiniteSet) -> usize {
    let removed = excluded
        .elements()
        .iter()
        .filter(|&&x| set.contains_element(x))
        .count();
    set.cardinality() - removed
}

/// Cardinality ignoring `k`.
pub fn omega_k<S: SetView + ?Sized>(set: &S, k: Element) -> usize {
    set.cardinality() - usize::from(set.contains_element(k))
}

/// Cardinality ignoring both 2 and 3.
pub fn omega_23<S: SetView + ?Sized>(set: &S) -> usize {
    set.cardinality() - usize::from(set.contains_element(2)) - usize::from(set.contains_element(3))
}

pub fn classify<S: SetView + ?Sized>(set: &S) -> SchreierClass {
    match set.min_element() {
        None => SchreierClass::Empty,
        Some(m) => match (m as usize).cmp(&set.cardinality()) {
            Ordering::Less => SchreierClass::NonSchreier,
            Ordering::Equal => SchreierClass::MaximalSchreier,
            Ordering::Greater => SchreierClass::NonmaximalSchreier,
        },
    }
}

fn check_positive(name: &'static str, v: u64) -> Result<()> {
    if v < 1 {
        return Err(Error::param(name, v, "must be at least 1"));
    }
    Ok(())
}

/// Membership in `S^(k)`: empty, or `min E > omega_k(E)`.
pub fn in_s_k<S: SetView + ?Sized>(set: &S, k: u64) -> Result<bool> {
    check_positive("k", k)?;
    Ok(s_k_unchecked(set, k))
}

fn s_k_unchecked<S: SetView + ?Sized>(set: &S, k: u64) -> bool {
    match set.min_element() {
        None => true,
        Some(m) => {
            let k = Element::try_from(k).unwrap_or(Element::MAX);
            m as usize > omega_k(set, k)
        }
    }
}

/// Membership in `A_{k,n}`: empty, or in `S^(k)` with `max E <= n`.
pub fn in_a<S: SetView + ?Sized>(set: &S, k: u64, n: u64) -> Result<bool> {
    check_positive("k", k)?;
    check_positive("n", n)?;
    Ok(match set.max_element() {
        None => true,
        Some(max) => u64::from(max) <= n && s_k_unchecked(set, k),
    })
}

/// Membership in `K_n`: `max E = n`, `min E > omega_{2,3}(E)`, `|E| != 2`.
pub fn in_k<S: SetView + ?Sized>(set: &S, n: u64) -> Result<bool> {
    check_positive("n", n)?;
    Ok(match (set.min_element(), set.max_element()) {
        (Some(min), Some(max)) => {
            u64::from(max) == n && min as usize > omega_23(set) && set.cardinality() != 2
        }
        _ => false,
    })
}

/// Membership in the generalized family: `q min E >= p |E|` and `max E = n`.
pub fn in_mpq<S: SetView + ?Sized>(set: &S, p: u64, q: u64, n: u64) -> Result<bool> {
    check_positive("p", p)?;
    check_positive("q", q)?;
    check_positive("n", n)?;
    Ok(match (set.min_element(), set.max_element()) {
        (Some(min), Some(max)) => {
            u64::from(max) == n && q * u64::from(min) >= p * set.cardinality() as u64
        }
        _ => false,
    })
}
