//! The explicit maps behind the Fibonacci-type recurrences, and a checker
//! that certifies two maps partition a codomain.
//!
//! * `a_{n+1,n+1} = a_{n,n} + a_{n-1,n-1}`: [`psi1`] on `A_{n-1,n-1}` and
//!   [`psi2`] on `A_{n,n}` split `A_{n+1,n+1}`.
//! * `a_{k,n} = a_{k,n-1} + a_{k-1,n-2}`: inclusion of `A_{k,n-1}` and
//!   [`psi_rec`] on `A_{k-1,n-2}` split `A_{k,n}`.
//! * `|K_{n+1}| = |K_n| + |K_{n-1}|`: [`f_map`] on `K_n` and [`g_map`] on
//!   `K_{n-1}` split `K_{n+1}`.
//!
//! Domains and codomains always come from the enumeration oracle, never
//! from the closed forms.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::enumeration::Oracle;
use crate::error::{Error, Result};
use crate::finite_set::{classify, in_a, in_k, in_s_k, Element, FiniteSet};

/// Largest `n` accepted by [`verify_partition`] for the diagonal partition.
pub const DIAGONAL_LIMIT: u64 = 16;
/// Largest `n` accepted for the other two partitions.
pub const PARTITION_LIMIT: u64 = 18;

fn outside(map: &'static str, set: &FiniteSet, reason: impl Into<String>) -> Error {
    Error::OutsideDomain {
        map,
        set: set.to_string(),
        reason: reason.into(),
    }
}

fn element(n: u64) -> Result<Element> {
    Element::try_from(n).map_err(|_| Error::param("n", n, "too large for a set element"))
}

/// `(F + 1) ∪ {n + 1}` on `A_{n-1,n-1}`.
pub fn psi1(set: &FiniteSet, n: u64) -> Result<FiniteSet> {
    if n < 2 {
        return Err(Error::param("n", n, "must be at least 2"));
    }
    if !in_a(set, n - 1, n - 1)? {
        return Err(outside("psi1", set, format!("not in A_{{{0},{0}}}", n - 1)));
    }
    set.shift_up(1).with(element(n + 1)?)
}

/// Identity on nonmaximal sets; on maximal sets, replace `n` by `n + 1`.
/// Domain `A_{n,n}`.
pub fn psi2(set: &FiniteSet, n: u64) -> Result<FiniteSet> {
    if n < 2 {
        return Err(Error::param("n", n, "must be at least 2"));
    }
    if !in_a(set, n, n)? {
        return Err(outside("psi2", set, format!("not in A_{{{n},{n}}}")));
    }
    if classify(set).is_nonmaximal() {
        return Ok(set.clone());
    }
    let top = element(n)?;
    set.without(top).with(top + 1)
}

/// `(F + 1) ∪ {n}` on `A_{k-1,n-2}`, for `k >= 2` and `n > max(k, 2)`.
pub fn psi_rec(set: &FiniteSet, k: u64, n: u64) -> Result<FiniteSet> {
    if k < 2 {
        return Err(Error::param("k", k, "must be at least 2"));
    }
    if n <= k.max(2) {
        return Err(Error::param("n", n, "must exceed max(k, 2)"));
    }
    if !in_a(set, k - 1, n - 2)? {
        return Err(outside(
            "psi_rec",
            set,
            format!("not in A_{{{},{}}}", k - 1, n - 2),
        ));
    }
    set.shift_up(1).with(element(n)?)
}

/// `F + 1` on nonempty sets.
pub fn f_map(set: &FiniteSet) -> Result<FiniteSet> {
    if set.is_empty() {
        return Err(outside("f_map", set, "the empty set has no image"));
    }
    Ok(set.shift_up(1))
}

/// The four-case map `K_{n-1} -> K_{n+1} \ f(K_n)`, `n >= 3`.
pub fn g_map(set: &FiniteSet, n: u64) -> Result<FiniteSet> {
    if n < 3 {
        return Err(Error::param("n", n, "must be at least 3"));
    }
    if !in_k(set, n - 1)? {
        return Err(outside("g_map", set, format!("not in K_{}", n - 1)));
    }
    let top = element(n + 1)?;
    if set.len() == 1 {
        // the only singleton in K_{n-1} is {n-1}
        return FiniteSet::new(vec![2, 3, top]);
    }
    match set.min() {
        Some(2) => FiniteSet::new(vec![3, 5, top]),
        Some(3) => set.without(3).shift_up(2).with(3),
        Some(m) if m >= 4 => set.shift_up(2).with(set.len() as Element + 2),
        _ => Err(outside("g_map", set, "minimum below 2")),
    }
}

/// Which recurrence a partition check certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionKind {
    /// `A_{n+1,n+1} = psi1(A_{n-1,n-1}) ⊔ psi2(A_{n,n})`.
    Diagonal,
    /// `A_{k,n} = A_{k,n-1} ⊔ psi_rec(A_{k-1,n-2})`.
    Recurrence { k: u64 },
    /// `K_{n+1} = f(K_n) ⊔ g(K_{n-1})`.
    WeightedK,
}

impl PartitionKind {
    /// Suite identifier used by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            PartitionKind::Diagonal => "thm1_1",
            PartitionKind::Recurrence { .. } => "rec3_1",
            PartitionKind::WeightedK => "thm1_4",
        }
    }

    fn map_name(&self) -> &'static str {
        match self {
            PartitionKind::Diagonal => "psi1+psi2",
            PartitionKind::Recurrence { .. } => "inclusion+psi_rec",
            PartitionKind::WeightedK => "f+g",
        }
    }
}

/// Outcome of a partition check at one parameter point.
///
/// All four flags are true exactly when both maps land in the codomain,
/// each is one-to-one, their images are disjoint, and together they cover
/// the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub map_name: String,
    pub n: u64,
    pub k: Option<u64>,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    pub disjointness: bool,
    pub first_violation: Option<(FiniteSet, String)>,
    pub first_domain_size: usize,
    pub second_domain_size: usize,
    pub codomain_size: usize,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.well_defined && self.injective && self.surjective && self.disjointness
    }
}

/// Checks that `first` on `first_domain` and `second` on `second_domain`
/// biject onto `codomain` with disjoint images.
///
/// Domains and codomain must be in canonical order; violations are
/// examined in a fixed order (well-definedness, injectivity, disjointness,
/// coverage), each scanning sets in canonical order, so the reported first
/// violation does not depend on scheduling.
pub fn check_partition<F, G>(
    map_name: &str,
    n: u64,
    first_domain: &[FiniteSet],
    first: F,
    second_domain: &[FiniteSet],
    second: G,
    codomain: &[FiniteSet],
) -> BijectionReport
where
    F: Fn(&FiniteSet) -> Result<FiniteSet> + Sync,
    G: Fn(&FiniteSet) -> Result<FiniteSet> + Sync,
{
    let first_images: Vec<Result<FiniteSet>> = first_domain.par_iter().map(&first).collect();
    let second_images: Vec<Result<FiniteSet>> = second_domain.par_iter().map(&second).collect();

    let mut report = BijectionReport {
        map_name: map_name.to_string(),
        n,
        k: None,
        well_defined: true,
        injective: true,
        surjective: true,
        disjointness: true,
        first_violation: None,
        first_domain_size: first_domain.len(),
        second_domain_size: second_domain.len(),
        codomain_size: codomain.len(),
    };
    let note = |slot: &mut Option<(FiniteSet, String)>, set: &FiniteSet, msg: String| {
        if slot.is_none() {
            *slot = Some((set.clone(), msg));
        }
    };
    let in_codomain = |s: &FiniteSet| codomain.binary_search(s).is_ok();

    // well-definedness
    let mut violation = None;
    for (label, domain, images) in [
        ("first", first_domain, &first_images),
        ("second", second_domain, &second_images),
    ] {
        for (set, image) in domain.iter().zip(images.iter()) {
            match image {
                Err(e) => {
                    report.well_defined = false;
                    note(&mut violation, set, format!("{label} map failed: {e}"));
                }
                Ok(img) if !in_codomain(img) => {
                    report.well_defined = false;
                    note(
                        &mut violation,
                        set,
                        format!("{label} map image {img} outside codomain"),
                    );
                }
                Ok(_) => {}
            }
        }
    }

    // injectivity
    let mut hit_by_first: HashMap<&FiniteSet, &FiniteSet> = HashMap::new();
    let mut hit_by_second: HashMap<&FiniteSet, &FiniteSet> = HashMap::new();
    for (label, domain, images, hits) in [
        ("first", first_domain, &first_images, &mut hit_by_first),
        ("second", second_domain, &second_images, &mut hit_by_second),
    ] {
        for (set, image) in domain.iter().zip(images.iter()) {
            if let Ok(img) = image {
                if let Some(prev) = hits.insert(img, set) {
                    report.injective = false;
                    note(
                        &mut violation,
                        set,
                        format!("{label} map sends {prev} and {set} to {img}"),
                    );
                }
            }
        }
    }

    // disjointness
    for (set, image) in second_domain.iter().zip(second_images.iter()) {
        if let Ok(img) = image {
            if let Some(other) = hit_by_first.get(img) {
                report.disjointness = false;
                note(
                    &mut violation,
                    set,
                    format!("image {img} is also the first map's image of {other}"),
                );
            }
        }
    }

    // coverage
    for target in codomain {
        if !hit_by_first.contains_key(target) && !hit_by_second.contains_key(target) {
            report.surjective = false;
            note(
                &mut violation,
                target,
                "codomain element not covered".to_string(),
            );
        }
    }

    report.first_violation = violation;
    report
}

/// Certifies the partition for `kind` at `n` using the default oracle.
pub fn verify_partition(kind: PartitionKind, n: u64) -> Result<BijectionReport> {
    verify_partition_with(&Oracle::default(), kind, n)
}

pub fn verify_partition_with(
    oracle: &Oracle,
    kind: PartitionKind,
    n: u64,
) -> Result<BijectionReport> {
    let report = match kind {
        PartitionKind::Diagonal => {
            if n < 2 {
                return Err(Error::param("n", n, "must be at least 2"));
            }
            size_limit("verify_partition(thm1_1)", n, DIAGONAL_LIMIT)?;
            let lower = oracle.enumerate_a(n - 1, n - 1)?;
            let middle = oracle.enumerate_a(n, n)?;
            let upper = oracle.enumerate_a(n + 1, n + 1)?;
            check_partition(
                kind.map_name(),
                n,
                &lower,
                |f| psi1(f, n),
                &middle,
                |f| psi2(f, n),
                &upper,
            )
        }
        PartitionKind::Recurrence { k } => {
            if k < 2 {
                return Err(Error::param("k", k, "must be at least 2"));
            }
            if n <= k.max(2) {
                return Err(Error::param("n", n, "must exceed max(k, 2)"));
            }
            size_limit("verify_partition(rec3_1)", n, PARTITION_LIMIT)?;
            let kept = oracle.enumerate_a(k, n - 1)?;
            let shifted = oracle.enumerate_a(k - 1, n - 2)?;
            let target = oracle.enumerate_a(k, n)?;
            let mut r = check_partition(
                kind.map_name(),
                n,
                &kept,
                |f| Ok(f.clone()),
                &shifted,
                |f| psi_rec(f, k, n),
                &target,
            );
            r.k = Some(k);
            r
        }
        PartitionKind::WeightedK => {
            if n < 3 {
                return Err(Error::param("n", n, "must be at least 3"));
            }
            size_limit("verify_partition(thm1_4)", n, PARTITION_LIMIT)?;
            let current = oracle.enumerate_k(n)?;
            let previous = oracle.enumerate_k(n - 1)?;
            let next = oracle.enumerate_k(n + 1)?;
            check_partition(
                kind.map_name(),
                n,
                &current,
                f_map,
                &previous,
                |f| g_map(f, n),
                &next,
            )
        }
    };
    Ok(report)
}

fn size_limit(operation: &'static str, n: u64, limit: u64) -> Result<()> {
    if n > limit {
        return Err(Error::SizeLimit {
            operation,
            n,
            limit,
        });
    }
    Ok(())
}

/// Sets `F` in `A_{n-1,n-1}` whose image `psi1(F)` fails
/// `min > omega_{n+1}`. Empty when the weight bound is preserved.
pub fn psi1_weight_violations(oracle: &Oracle, n: u64) -> Result<Vec<FiniteSet>> {
    let mut bad = Vec::new();
    for set in oracle.enumerate_a(n - 1, n - 1)? {
        if !in_s_k(&psi1(&set, n)?, n + 1)? {
            bad.push(set);
        }
    }
    Ok(bad)
}

/// Members of `K_{n-1}` with minimum 2 and more than one element that are
/// not `{2, 3, n-1}`. For `n < 5` every such member is a violation, since
/// none should exist.
pub fn min_two_shape_violations(oracle: &Oracle, n: u64) -> Result<Vec<FiniteSet>> {
    if n < 3 {
        return Err(Error::param("n", n, "must be at least 3"));
    }
    let top = element(n - 1)?;
    let expected = FiniteSet::new(vec![2, 3, top]).ok();
    Ok(oracle
        .enumerate_k(n - 1)?
        .into_iter()
        .filter(|f| f.min() == Some(2) && f.len() > 1)
        .filter(|f| n < 5 || Some(f) != expected.as_ref())
        .collect())
}

/// Members of `K_{n-1}` with minimum 3 and more than one element that are
/// not of the form `{3, m, n-1}`. For `n < 6` none should exist.
pub fn min_three_shape_violations(oracle: &Oracle, n: u64) -> Result<Vec<FiniteSet>> {
    if n < 3 {
        return Err(Error::param("n", n, "must be at least 3"));
    }
    let top = element(n - 1)?;
    Ok(oracle
        .enumerate_k(n - 1)?
        .into_iter()
        .filter(|f| f.min() == Some(3) && f.len() > 1)
        .filter(|f| n < 6 || !(f.len() == 3 && f.max() == Some(top) && f.elements()[1] > 3))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[Element]) -> FiniteSet {
        FiniteSet::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn psi1_examples() {
        assert_eq!(psi1(&FiniteSet::empty(), 3).unwrap(), set(&[4]));
        assert_eq!(psi1(&set(&[2]), 3).unwrap(), set(&[3, 4]));
        assert_eq!(psi1(&set(&[2, 3]), 4).unwrap(), set(&[3, 4, 5]));
        assert!(matches!(
            psi1(&set(&[1, 2]), 3),
            Err(Error::OutsideDomain { .. })
        ));
        assert!(psi1(&set(&[1]), 1).is_err());
    }

    #[test]
    fn psi2_examples() {
        assert_eq!(psi2(&set(&[3, 5]), 5).unwrap(), set(&[3, 5]));
        assert_eq!(psi2(&set(&[2, 3]), 3).unwrap(), set(&[2, 4]));
        assert_eq!(psi2(&FiniteSet::empty(), 4).unwrap(), FiniteSet::empty());
        assert!(matches!(
            psi2(&set(&[6]), 5),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn psi_rec_examples() {
        assert_eq!(psi_rec(&FiniteSet::empty(), 3, 5).unwrap(), set(&[5]));
        assert_eq!(psi_rec(&set(&[2]), 2, 4).unwrap(), set(&[3, 4]));
        assert_eq!(psi_rec(&set(&[3]), 4, 6).unwrap(), set(&[4, 6]));
        assert!(matches!(
            psi_rec(&set(&[5]), 4, 6),
            Err(Error::OutsideDomain { .. })
        ));
        assert!(psi_rec(&FiniteSet::empty(), 3, 3).is_err());
        assert!(psi_rec(&FiniteSet::empty(), 1, 5).is_err());
    }

    #[test]
    fn f_map_examples() {
        assert_eq!(f_map(&set(&[2])).unwrap(), set(&[3]));
        assert_eq!(f_map(&set(&[2, 3, 5])).unwrap(), set(&[3, 4, 6]));
        assert!(in_k(&set(&[3, 4, 6]), 6).unwrap());
        assert_eq!(f_map(&set(&[4, 5, 8])).unwrap(), set(&[5, 6, 9]));
        assert!(f_map(&FiniteSet::empty()).is_err());
    }

    #[test]
    fn g_map_examples() {
        assert_eq!(g_map(&set(&[3]), 4).unwrap(), set(&[2, 3, 5]));
        assert_eq!(g_map(&set(&[3, 4, 5]), 6).unwrap(), set(&[3, 6, 7]));
        assert!(in_k(&set(&[3, 6, 7]), 7).unwrap());
        assert_eq!(g_map(&set(&[4, 5, 8]), 9).unwrap(), set(&[5, 6, 7, 10]));
        assert_eq!(g_map(&set(&[2, 3, 6]), 7).unwrap(), set(&[3, 5, 8]));
        assert!(matches!(
            g_map(&set(&[3, 4]), 5),
            Err(Error::OutsideDomain { .. })
        ));
        assert!(g_map(&set(&[2]), 2).is_err());
    }

    #[test]
    fn partition_examples() {
        let r = verify_partition(PartitionKind::Diagonal, 2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.first_domain_size + r.second_domain_size, 4);
        assert_eq!(r.codomain_size, 4);

        let r = verify_partition(PartitionKind::WeightedK, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.codomain_size, 2);

        let r = verify_partition(PartitionKind::Recurrence { k: 2 }, 5).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.codomain_size, 11);
        assert_eq!(r.k, Some(2));
    }

    #[test]
    fn partition_parameter_errors() {
        assert!(verify_partition(PartitionKind::Diagonal, 1).is_err());
        assert!(matches!(
            verify_partition(PartitionKind::Diagonal, 17),
            Err(Error::SizeLimit { .. })
        ));
        assert!(verify_partition(PartitionKind::WeightedK, 2).is_err());
        assert!(matches!(
            verify_partition(PartitionKind::WeightedK, 19),
            Err(Error::SizeLimit { .. })
        ));
        assert!(verify_partition(PartitionKind::Recurrence { k: 4 }, 4).is_err());
        assert!(verify_partition(PartitionKind::Recurrence { k: 1 }, 5).is_err());
    }

    #[test]
    fn checker_detects_broken_maps() {
        let oracle = Oracle::default();
        let n = 6;
        let lower = oracle.enumerate_a(n - 1, n - 1).unwrap();
        let middle = oracle.enumerate_a(n, n).unwrap();
        let upper = oracle.enumerate_a(n + 1, n + 1).unwrap();

        // the identity in place of psi2 leaves S^(n+1)
        let r = check_partition(
            "broken",
            n,
            &lower,
            |f| psi1(f, n),
            &middle,
            |f| Ok(f.clone()),
            &upper,
        );
        assert!(!r.well_defined);
        assert!(r.first_violation.is_some());

        // a constant map is not injective
        let r = check_partition(
            "broken",
            n,
            &lower,
            |f| psi1(f, n),
            &middle,
            |_| Ok(FiniteSet::empty()),
            &upper,
        );
        assert!(!r.injective);

        // a map leaving the codomain
        let r = check_partition(
            "broken",
            n,
            &lower,
            |f| Ok(f.shift_up(10)),
            &middle,
            |f| psi2(f, n),
            &upper,
        );
        assert!(!r.well_defined);
        let (culprit, msg) = r.first_violation.unwrap();
        // the empty set is fixed by the shift
        assert_eq!(culprit, FiniteSet::new(vec![2]).unwrap());
        assert!(msg.contains("outside codomain"), "{msg}");

        // errors from the map count as ill-defined, not skipped
        let r = check_partition(
            "broken",
            n,
            &lower,
            |f| psi1(f, n + 3),
            &middle,
            |f| psi2(f, n),
            &upper,
        );
        assert!(!r.passed());
    }

    #[test]
    fn report_is_deterministic() {
        let a = verify_partition(PartitionKind::WeightedK, 12).unwrap();
        let b = verify_partition_with(
            &Oracle::default().with_execution(crate::enumeration::Execution::Serial),
            PartitionKind::WeightedK,
            12,
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn shape_claims() {
        let oracle = Oracle::default();
        for n in 3..=14 {
            assert!(
                min_two_shape_violations(&oracle, n).unwrap().is_empty(),
                "n={n}"
            );
            assert!(
                min_three_shape_violations(&oracle, n).unwrap().is_empty(),
                "n={n}"
            );
        }
        assert!(psi1_weight_violations(&oracle, 9).unwrap().is_empty());
    }
}
