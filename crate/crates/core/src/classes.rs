//! Concentration-two semigroups with a fixed Frobenius number, grouped into
//! classes around irreducible semigroups.
//!
//! For a semigroup `S` with Frobenius number `F` that is not irreducible,
//! `α(S)` is the largest gap `x ≠ F/2` whose mirror `F − x` is also a gap.
//! Adjoining it keeps `F` and (for concentration two) keeps the
//! concentration, so iterating reaches an irreducible semigroup `V(S)`.
//! Semigroups sharing `V(S)` form a class, and each class is a tree rooted
//! at its irreducible member with edges `S → S ∪ {α(S)}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::trees::TreeNode;

/// Masks below are `u128` over `[0, F]`.
pub const MAX_FROBENIUS: u32 = 126;

/// The class `[Δ]` of an irreducible `Δ`: every concentration-two semigroup
/// whose ascent ends at `Δ`. `members` starts with the root and follows the
/// breadth-first order of the class tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusClass {
    pub root: NumericalSemigroup,
    pub members: Vec<NumericalSemigroup>,
}

fn frobenius_of(s: &NumericalSemigroup) -> Result<u32> {
    u32::try_from(s.frobenius()).map_err(|_| Error::NoFrobenius)
}

/// Gaps `x ≠ F/2` with `F − x` also a gap, descending.
fn mirrored_gaps(s: &NumericalSemigroup, f: u32) -> impl Iterator<Item = u32> + '_ {
    s.gaps()
        .iter()
        .rev()
        .copied()
        .filter(move |&x| 2 * x != f && !s.contains(i64::from(f) - i64::from(x)))
}

/// Irreducible means no gap `x ≠ F/2` has its mirror `F − x` outside `S`;
/// equivalently `S` is maximal among semigroups with Frobenius number `F`.
pub fn is_irreducible(s: &NumericalSemigroup) -> Result<bool> {
    let f = frobenius_of(s)?;
    Ok(mirrored_gaps(s, f).next().is_none())
}

pub fn alpha(s: &NumericalSemigroup) -> Result<u32> {
    let f = frobenius_of(s)?;
    mirrored_gaps(s, f).next().ok_or(Error::Irreducible)
}

fn require_concentration_two(s: &NumericalSemigroup) -> Result<()> {
    if s.concentration() != 2 {
        return Err(Error::ConcentrationNotTwo(s.concentration()));
    }
    Ok(())
}

/// `V(S)`: adjoin `α` until irreducible. At most `g(S)` steps.
pub fn ascend(s: &NumericalSemigroup) -> Result<NumericalSemigroup> {
    Ok(ascent_chain(s)?.pop().expect("chain is never empty"))
}

/// `S = S₀ ⊂ S₁ ⊂ … ⊂ V(S)`, each step adjoining `α`.
pub fn ascent_chain(s: &NumericalSemigroup) -> Result<Vec<NumericalSemigroup>> {
    require_concentration_two(s)?;
    let f = frobenius_of(s)?;
    let mut chain = vec![s.clone()];
    loop {
        let current = chain.last().unwrap();
        let Some(x) = mirrored_gaps(current, f).next() else {
            return Ok(chain);
        };
        let next = current
            .add_gap(x)
            .expect("adjoining alpha keeps a semigroup");
        debug_assert_eq!(next.frobenius(), s.frobenius());
        debug_assert_eq!(next.concentration(), 2);
        chain.push(next);
    }
}

/// Every irreducible semigroup with Frobenius number `f`, sorted by gaps.
///
/// Irreducibility pins the lower half: for `x ≠ F/2` exactly one of `x`,
/// `F − x` is a member, and `F/2` is a gap. So a candidate is fixed by its
/// members in `(F/2, F)`. Those are decided from `F − 1` downwards, each
/// decision fixing the mirror as well, and a branch dies as soon as two
/// decided members add up to a decided gap.
pub fn irreducibles_with_frobenius(f: u32) -> Result<Vec<NumericalSemigroup>> {
    if f > MAX_FROBENIUS {
        return Err(Error::ElementOutOfRange {
            element: f,
            low: 1,
            high: MAX_FROBENIUS,
        });
    }
    if f == 0 {
        return Ok(Vec::new());
    }
    let full: u128 = (1u128 << (f + 1)) - 1;
    // 0 is a member; F and F/2 (when integral) are gaps.
    let mut decided = 1u128 | 1u128 << f;
    if f % 2 == 0 {
        decided |= 1u128 << (f / 2);
    }
    let mut search = MirrorSearch {
        f,
        full,
        found: Vec::new(),
    };
    search.descend(f - 1, decided, 1);

    let mut out: Vec<NumericalSemigroup> = search
        .found
        .into_iter()
        .map(|members| {
            let gaps = (1..=f).filter(|&x| members >> x & 1 == 0);
            NumericalSemigroup::from_gaps(gaps).expect("mirror search produced a non-semigroup")
        })
        .collect();
    out.sort();
    Ok(out)
}

struct MirrorSearch {
    f: u32,
    full: u128,
    found: Vec<u128>,
}

impl MirrorSearch {
    /// `x` is the next upper-half element to decide.
    fn descend(&mut self, x: u32, decided: u128, members: u128) {
        if 2 * x <= self.f {
            debug_assert_eq!(decided, self.full);
            self.found.push(members);
            return;
        }
        let mirror = self.f - x;
        let decided = decided | 1u128 << x | 1u128 << mirror;
        for take_upper in [true, false] {
            let members = if take_upper {
                members | 1u128 << x
            } else {
                members | 1u128 << mirror
            };
            if self.consistent(decided, members) {
                self.descend(x - 1, decided, members);
            }
        }
    }

    /// No sum of two members lands on a decided gap inside `[0, F]`.
    fn consistent(&self, decided: u128, members: u128) -> bool {
        let gaps = decided & !members & self.full;
        let mut rest = members & !1;
        while rest != 0 {
            let a = rest.trailing_zeros();
            if 2 * a > self.f {
                break;
            }
            if (members << a) & gaps != 0 {
                return false;
            }
            rest &= rest - 1;
        }
        true
    }
}

/// Irreducible semigroups with Frobenius number `f` and concentration two.
pub fn irreducible_c2(f: u32) -> Result<Vec<NumericalSemigroup>> {
    Ok(irreducibles_with_frobenius(f)?
        .into_iter()
        .filter(NumericalSemigroup::is_concentration_two)
        .collect())
}

/// Sons of `t` in its class tree, ascending by removed element.
///
/// Candidates are the minimal generators `x` with `F/2 < x < F` and either
/// `{x − 1, x + 1} ⊆ T` or `x = m(T)`; below the root they must also exceed
/// `α(T)`. Removing the multiplicity can leave a half-line (concentration
/// one), which is not in the family and is dropped. Any other mismatch
/// between a candidate and the tree's edge relation is reported as an error.
pub fn class_children(t: &NumericalSemigroup, is_root: bool) -> Result<Vec<NumericalSemigroup>> {
    Ok(labelled_class_children(t, is_root)?
        .into_iter()
        .map(|(_, s)| s)
        .collect())
}

fn labelled_class_children(
    t: &NumericalSemigroup,
    is_root: bool,
) -> Result<Vec<(u32, NumericalSemigroup)>> {
    let f = frobenius_of(t)?;
    let floor = if is_root { 0 } else { alpha(t)? };
    let mut out = Vec::new();
    for &x in t.minimal_generators() {
        let in_window = 2 * x > f && x < f && x > floor;
        let flanked = t.contains(i64::from(x) - 1) && t.contains(i64::from(x) + 1);
        if !in_window || !(flanked || x == t.multiplicity()) {
            continue;
        }
        let child = t.remove_element(i64::from(x))?;
        if child.is_half_line() {
            continue;
        }
        let mismatch = |reason: String| Error::ClassChildMismatch {
            parent: t.to_string(),
            removed: x,
            reason,
        };
        if child.frobenius() != i64::from(f) {
            return Err(mismatch(format!(
                "Frobenius number became {}",
                child.frobenius()
            )));
        }
        if child.concentration() != 2 {
            return Err(mismatch(format!(
                "concentration is {}",
                child.concentration()
            )));
        }
        let back = alpha(&child)?;
        if back != x {
            return Err(mismatch(format!("alpha of the child is {back}")));
        }
        out.push((x, child));
    }
    Ok(out)
}

/// The class tree of `root`, breadth-first, siblings ascending.
pub fn class_tree(root: &NumericalSemigroup) -> Result<Vec<TreeNode>> {
    if !is_irreducible(root)? {
        return Err(Error::NotIrreducible);
    }
    require_concentration_two(root)?;
    let mut nodes = vec![TreeNode::root(root.clone())];
    let mut next = 0;
    while next < nodes.len() {
        let (parent, depth) = (nodes[next].semigroup.clone(), nodes[next].depth);
        for (x, child) in labelled_class_children(&parent, depth == 0)? {
            nodes.push(TreeNode {
                semigroup: child,
                removed: Some(x),
                depth: depth + 1,
            });
        }
        next += 1;
    }
    Ok(nodes)
}

pub fn class_members(root: &NumericalSemigroup) -> Result<FrobeniusClass> {
    let members = class_tree(root)?.into_iter().map(|n| n.semigroup).collect();
    Ok(FrobeniusClass {
        root: root.clone(),
        members,
    })
}

/// All concentration-two semigroups with Frobenius number `f`, one class
/// per irreducible root, classes sorted by root.
pub fn enumerate_c2_frobenius(f: u32) -> Result<Vec<FrobeniusClass>> {
    irreducible_c2(f)?.par_iter().map(class_members).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[u32]) -> NumericalSemigroup {
        NumericalSemigroup::generated_by(gens).unwrap()
    }

    #[test]
    fn irreducibility() {
        assert_eq!(is_irreducible(&sg(&[5, 6, 7, 8])), Ok(true));
        assert_eq!(
            is_irreducible(&NumericalSemigroup::ordinary(4).unwrap()),
            Ok(false)
        );
        for f in (1..30).step_by(2) {
            assert_eq!(is_irreducible(&sg(&[2, f + 2])), Ok(true), "F = {f}");
        }
        assert_eq!(
            is_irreducible(&NumericalSemigroup::naturals()),
            Err(Error::NoFrobenius)
        );
    }

    #[test]
    fn alpha_values() {
        let s = sg(&[6, 7, 8, 10, 11]);
        assert_eq!(alpha(&s), Ok(5));
        assert_eq!(s.add_gap(5).unwrap(), sg(&[5, 6, 7, 8]));
        assert_eq!(alpha(&sg(&[7, 8, 10, 11, 12, 13])), Ok(6));
        assert_eq!(alpha(&sg(&[5, 6, 7, 8])), Err(Error::Irreducible));
    }

    #[test]
    fn ascent() {
        let bottom = sg(&[8, 10, 11, 12, 13, 14, 15, 17]);
        let chain = ascent_chain(&bottom).unwrap();
        let added: Vec<u32> = chain
            .windows(2)
            .map(|w| {
                w[0].gaps()
                    .iter()
                    .copied()
                    .find(|g| w[1].contains(i64::from(*g)))
                    .unwrap()
            })
            .collect();
        assert_eq!(added, vec![7, 6, 5]);
        assert_eq!(chain.last().unwrap(), &sg(&[5, 6, 7, 8]));
        // 7 and 9 − 7 = 2 are both gaps, so this is one step below the root
        assert_eq!(alpha(&sg(&[5, 6, 8])), Ok(7));
        assert_eq!(ascend(&sg(&[5, 6, 8])).unwrap(), sg(&[5, 6, 7, 8]));
        assert_eq!(ascend(&sg(&[5, 6, 7, 8])).unwrap(), sg(&[5, 6, 7, 8]));
        assert_eq!(ascend(&sg(&[5, 7, 8, 11])).unwrap(), sg(&[5, 6, 7, 8]));
        assert_eq!(
            ascend(&NumericalSemigroup::ordinary(5).unwrap()),
            Err(Error::ConcentrationNotTwo(1))
        );
    }

    #[test]
    fn irreducible_lists() {
        assert_eq!(irreducibles_with_frobenius(1).unwrap(), vec![sg(&[2, 3])]);
        assert_eq!(
            irreducibles_with_frobenius(2).unwrap(),
            vec![sg(&[3, 4, 5])]
        );
        assert!(irreducibles_with_frobenius(9)
            .unwrap()
            .contains(&sg(&[5, 6, 7, 8])));
        assert!(irreducible_c2(1).unwrap().is_empty());
        assert!(irreducible_c2(9).unwrap().contains(&sg(&[5, 6, 7, 8])));
        assert!(irreducibles_with_frobenius(200).is_err());
    }

    #[test]
    fn children_of_the_worked_class() {
        assert_eq!(
            class_children(&sg(&[5, 6, 7, 8]), true).unwrap(),
            vec![sg(&[6, 7, 8, 10, 11]), sg(&[5, 7, 8, 11]), sg(&[5, 6, 8])]
        );
        assert!(class_children(&sg(&[5, 7, 8, 11]), false)
            .unwrap()
            .is_empty());
        assert_eq!(
            class_children(&sg(&[6, 7, 8, 10, 11]), false).unwrap(),
            vec![sg(&[7, 8, 10, 11, 12, 13]), sg(&[6, 8, 10, 11, 13, 15])]
        );
    }

    #[test]
    fn half_line_child_is_dropped() {
        // {0, 3, 5, →}: removing the multiplicity 3 leaves △(5)
        let t = sg(&[3, 5, 7]);
        assert_eq!(t.frobenius(), 4);
        assert_eq!(is_irreducible(&t), Ok(true));
        assert!(class_children(&t, true).unwrap().is_empty());
        assert_eq!(class_members(&t).unwrap().members, vec![t]);
    }

    #[test]
    fn worked_class() {
        let class = class_members(&sg(&[5, 6, 7, 8])).unwrap();
        assert_eq!(class.members.len(), 7);
        assert_eq!(class.members[0], class.root);
        assert!(class
            .members
            .contains(&sg(&[8, 10, 11, 12, 13, 14, 15, 17])));
        assert_eq!(
            class_members(&NumericalSemigroup::ordinary(4).unwrap()),
            Err(Error::NotIrreducible)
        );
        assert_eq!(
            class_members(&sg(&[2, 3])),
            Err(Error::ConcentrationNotTwo(1))
        );
    }

    #[test]
    fn small_frobenius() {
        assert!(enumerate_c2_frobenius(1).unwrap().is_empty());
        let nine = enumerate_c2_frobenius(9).unwrap();
        assert!(nine
            .iter()
            .any(|c| c.root == sg(&[5, 6, 7, 8]) && c.members.len() == 7));
    }
}
