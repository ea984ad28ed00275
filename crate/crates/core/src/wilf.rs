//! Wilf's inequality `g(S) ≤ (e(S) − 1)·n(S)` checked over enumerated
//! families, together with the counting bounds behind it for concentration
//! two:
//!
//! * if `F(S) > 2m`, then `n(S) ≥ m/2 + 2` (members in `[m, 2m]` are at most
//!   two apart);
//! * `h ↦ h + 1` on the gaps `h ≥ m` other than `F`, with `F ↦ m`, is an
//!   injection into the nonzero members below `F`, so `g(S) ≤ m + n(S) − 2`.
//!
//! Every semigroup is checked directly; nothing is skipped on the strength
//! of a known special case.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{class_members, enumerate_c2_frobenius};
use crate::error::Result;
use crate::semigroup::NumericalSemigroup;
use crate::trees::{walk_tree, EnumerationRequest};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WilfRecord {
    /// Minimal generators of the semigroup.
    pub semigroup: Vec<u32>,
    pub genus: u32,
    pub embedding: u32,
    pub n_count: u32,
    /// `(e − 1)·n − g`; Wilf holds iff nonnegative.
    pub slack: i64,
    pub elementary: bool,
    /// `n ≥ m/2 + 2`, only for concentration two with `F > 2m`.
    pub bound_ok: Option<bool>,
}

impl WilfRecord {
    pub fn holds(&self) -> bool {
        self.slack >= 0
    }
}

pub fn wilf_check(s: &NumericalSemigroup) -> WilfRecord {
    let slack =
        (i64::from(s.embedding_dimension()) - 1) * i64::from(s.n_count()) - i64::from(s.genus());
    let m = i64::from(s.multiplicity());
    let bound_ok = (s.concentration() == 2 && s.frobenius() > 2 * m)
        .then(|| 2 * i64::from(s.n_count()) >= m + 4);
    WilfRecord {
        semigroup: s.minimal_generators().to_vec(),
        genus: s.genus(),
        embedding: s.embedding_dimension(),
        n_count: s.n_count(),
        slack,
        elementary: s.is_elementary(),
        bound_ok,
    }
}

/// Checks the gap-to-member injection directly and the bound it yields.
/// `None` unless `s` has concentration two.
pub fn injection_bound_holds(s: &NumericalSemigroup) -> Option<bool> {
    if s.concentration() != 2 {
        return None;
    }
    let m = s.multiplicity();
    let f = s.frobenius();
    let mut images: Vec<u32> = s
        .gaps()
        .iter()
        .filter(|&&h| h >= m)
        .map(|&h| if i64::from(h) == f { m } else { h + 1 })
        .collect();
    let count = images.len();
    let into_nonzero_members = images
        .iter()
        .all(|&y| y > 0 && i64::from(y) < f && s.contains(i64::from(y)));
    images.sort_unstable();
    images.dedup();
    let injective = images.len() == count;
    let bound = s.genus() + 2 <= m + s.n_count();
    Some(into_nonzero_members && injective && bound)
}

/// A family of semigroups to verify.
#[derive(Clone, Debug)]
pub enum Family {
    /// Nodes of a (bounded) multiplicity or elementary tree, or one genus level.
    Tree(EnumerationRequest),
    /// Every concentration-two semigroup with this Frobenius number.
    Frobenius(u32),
    /// One class, given by its irreducible root.
    Class(NumericalSemigroup),
    Explicit(Vec<NumericalSemigroup>),
}

/// The concentration-two members of `family` (tree roots are half-lines
/// and drop out).
pub fn family_members(family: &Family) -> Result<Vec<NumericalSemigroup>> {
    let all: Vec<NumericalSemigroup> = match family {
        Family::Tree(request) => walk_tree(request)?.map(|n| n.semigroup).collect(),
        Family::Frobenius(f) => enumerate_c2_frobenius(*f)?
            .into_iter()
            .flat_map(|c| c.members)
            .collect(),
        Family::Class(root) => class_members(root)?.members,
        Family::Explicit(list) => list.clone(),
    };
    Ok(all.into_iter().filter(|s| s.concentration() == 2).collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WilfReport {
    pub checked: u64,
    pub min_slack: Option<i64>,
    /// Full semigroups (gap sets included) for reproduction.
    pub violations: Vec<NumericalSemigroup>,
    pub bound_checked: u64,
    pub bound_failures: Vec<NumericalSemigroup>,
    pub injection_failures: Vec<NumericalSemigroup>,
}

impl WilfReport {
    fn single(s: &NumericalSemigroup) -> Self {
        let record = wilf_check(s);
        let keep = |bad: bool| if bad { vec![s.clone()] } else { Vec::new() };
        Self {
            checked: 1,
            min_slack: Some(record.slack),
            violations: keep(!record.holds()),
            bound_checked: u64::from(record.bound_ok.is_some()),
            bound_failures: keep(record.bound_ok == Some(false)),
            injection_failures: keep(injection_bound_holds(s) == Some(false)),
        }
    }

    /// Associative and commutative up to the order of the failure lists.
    pub fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        self.min_slack = match (self.min_slack, other.min_slack) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.violations.extend(other.violations);
        self.bound_checked += other.bound_checked;
        self.bound_failures.extend(other.bound_failures);
        self.injection_failures.extend(other.injection_failures);
        self
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
            && self.bound_failures.is_empty()
            && self.injection_failures.is_empty()
    }

    fn canonicalize(mut self) -> Self {
        self.violations.sort();
        self.bound_failures.sort();
        self.injection_failures.sort();
        self
    }
}

impl fmt::Display for WilfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} checked, {} violations",
            self.checked,
            self.violations.len()
        )?;
        if let Some(slack) = self.min_slack {
            write!(f, ", min slack {slack}")?;
        }
        write!(
            f,
            "; bound n >= m/2 + 2 evaluated {} times, {} failures",
            self.bound_checked,
            self.bound_failures.len()
        )
    }
}

pub fn verify_semigroups(semigroups: &[NumericalSemigroup]) -> WilfReport {
    semigroups
        .par_iter()
        .map(WilfReport::single)
        .reduce(WilfReport::default, WilfReport::merge)
        .canonicalize()
}

pub fn verify_family(family: &Family) -> Result<WilfReport> {
    Ok(verify_semigroups(&family_members(family)?))
}

pub fn family_records(family: &Family) -> Result<Vec<WilfRecord>> {
    Ok(family_members(family)?.iter().map(wilf_check).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[u32]) -> NumericalSemigroup {
        NumericalSemigroup::generated_by(gens).unwrap()
    }

    #[test]
    fn records() {
        let r = wilf_check(&sg(&[5, 7, 9]));
        assert_eq!((r.genus, r.embedding, r.n_count, r.slack), (8, 3, 6, 4));
        assert_eq!(r.bound_ok, Some(true)); // F = 13 > 10, n = 6 >= 4.5
        let n = wilf_check(&NumericalSemigroup::naturals());
        assert_eq!((n.genus, n.embedding, n.n_count, n.slack), (0, 1, 0, 0));
        let two_three = wilf_check(&sg(&[2, 3]));
        assert_eq!(two_three.slack, 0);
        assert_eq!(two_three.bound_ok, None);
        assert!(two_three.elementary);
    }

    #[test]
    fn small_families() {
        let report =
            verify_family(&Family::Tree(EnumerationRequest::multiplicity_tree(3))).unwrap();
        assert_eq!(report.checked, 3);
        assert!(report.is_clean());
        assert_eq!(
            report.to_string().split(';').next().unwrap(),
            "3 checked, 0 violations, min slack 0"
        );

        let class = verify_family(&Family::Class(sg(&[5, 6, 7, 8]))).unwrap();
        assert_eq!(class.checked, 7);
        assert!(class.is_clean());
    }

    #[test]
    fn half_multiplicity_bound_for_six() {
        let family = Family::Tree(EnumerationRequest::multiplicity_tree(6).with_max_genus(20));
        let report = verify_family(&family).unwrap();
        assert!(report.is_clean());
        assert!(report.bound_checked > 0);
        for s in family_members(&family).unwrap() {
            if s.frobenius() > 12 {
                assert!(s.n_count() >= 5, "{s:?}");
            }
        }
    }

    #[test]
    fn violations_are_reported() {
        // not concentration two, but Wilf holds anyway; slack is reported
        let report = verify_semigroups(&[sg(&[3, 7, 8])]);
        assert_eq!(report.checked, 1);
        assert_eq!(report.bound_checked, 0);
        assert!(report.is_clean());
    }
}
