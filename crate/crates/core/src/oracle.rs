//! Brute-force reference enumerators.
//!
//! Nothing in here is used by the production enumerators. The universe is
//! built from the genus tree over *all* numerical semigroups, with its own
//! gap-mask representation and its own removability test, so agreement
//! with the concentration trees is a comparison between two independent
//! computations.

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

pub const DEFAULT_CEILING: u32 = 16;

/// Gap masks are `u64`, so Frobenius numbers stay below 64 (`F ≤ 2g − 1`).
pub const HARD_CEILING: u32 = 32;

/// Every numerical semigroup of genus at most `genus_bound`, each once.
#[derive(Clone, Debug)]
pub struct OracleUniverse {
    genus_bound: u32,
    /// Grouped by genus, each level sorted by gap sequence.
    semigroups: Vec<NumericalSemigroup>,
}

impl OracleUniverse {
    pub fn genus_bound(&self) -> u32 {
        self.genus_bound
    }

    pub fn semigroups(&self) -> &[NumericalSemigroup] {
        &self.semigroups
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.genus_bound as usize + 1];
        for s in &self.semigroups {
            sizes[s.genus() as usize] += 1;
        }
        sizes
    }

    pub fn filter(
        &self,
        predicate: impl Fn(&NumericalSemigroup) -> bool,
    ) -> Vec<NumericalSemigroup> {
        oracle_filter(self, predicate)
    }
}

/// Genus-tree node: bit `i` of `gaps` set iff `i` is a gap.
#[derive(Clone, Copy)]
struct Node {
    gaps: u64,
    frobenius: i32,
    multiplicity: u32,
}

impl Node {
    fn is_member(&self, x: u32) -> bool {
        x as i64 > i64::from(self.frobenius) || self.gaps >> x & 1 == 0
    }

    /// `x ∈ S` can be deleted iff no two positive members add up to it.
    fn removable(&self, x: u32) -> bool {
        self.is_member(x) && !(1..x).any(|a| self.is_member(a) && self.is_member(x - a))
    }

    fn children(&self) -> impl Iterator<Item = Node> + '_ {
        let start = (self.frobenius + 1) as u32;
        (start..=start + self.multiplicity)
            .filter(|&x| x > 0 && self.removable(x))
            .map(move |x| Node {
                gaps: self.gaps | 1 << x,
                frobenius: x as i32,
                multiplicity: if x == self.multiplicity {
                    (x + 1..).find(|&y| self.is_member(y)).unwrap()
                } else {
                    self.multiplicity
                },
            })
    }

    fn to_semigroup(self) -> NumericalSemigroup {
        let gaps = (1..64).filter(|&i| self.gaps >> i & 1 == 1);
        NumericalSemigroup::from_gaps(gaps).expect("genus tree produced a non-semigroup")
    }
}

/// All semigroups of genus ≤ `gmax`, with the default ceiling.
pub fn all_semigroups_by_genus(gmax: u32) -> Result<OracleUniverse> {
    all_semigroups_by_genus_with_ceiling(gmax, DEFAULT_CEILING)
}

pub fn all_semigroups_by_genus_with_ceiling(gmax: u32, ceiling: u32) -> Result<OracleUniverse> {
    let ceiling = ceiling.min(HARD_CEILING);
    if gmax > ceiling {
        return Err(Error::BoundTooLarge { got: gmax, ceiling });
    }
    let mut level = vec![Node {
        gaps: 0,
        frobenius: -1,
        multiplicity: 1,
    }];
    let mut semigroups = Vec::new();
    for genus in 0..=gmax {
        let mut built: Vec<NumericalSemigroup> = level.iter().map(|n| n.to_semigroup()).collect();
        built.sort();
        semigroups.extend(built);
        if genus < gmax {
            level = level
                .iter()
                .flat_map(|n| n.children().collect::<Vec<_>>())
                .collect();
        }
    }
    Ok(OracleUniverse {
        genus_bound: gmax,
        semigroups,
    })
}

pub fn oracle_filter(
    universe: &OracleUniverse,
    predicate: impl Fn(&NumericalSemigroup) -> bool,
) -> Vec<NumericalSemigroup> {
    universe
        .semigroups
        .iter()
        .filter(|s| predicate(s))
        .cloned()
        .collect()
}

/// Concentration straight from membership queries: the largest gap between
/// consecutive nonzero members, scanning past the Frobenius number.
pub fn concentration(s: &NumericalSemigroup) -> u32 {
    let limit = s.frobenius().max(0) + 2;
    let members: Vec<i64> = (1..=limit).filter(|&x| s.contains(x)).collect();
    members
        .windows(2)
        .map(|w| (w[1] - w[0]) as u32)
        .max()
        .unwrap_or(1)
}

/// Minimal generators by exhaustive decomposition search.
pub fn minimal_generators(s: &NumericalSemigroup) -> Vec<u32> {
    let limit = s.frobenius() + i64::from(s.multiplicity()) + 1;
    (1..=limit)
        .filter(|&x| s.contains(x) && !(1..x).any(|a| s.contains(a) && s.contains(x - a)))
        .map(|x| x as u32)
        .collect()
}

/// Is `s` maximal by inclusion among the universe's semigroups with the
/// same Frobenius number? Oversemigroups have smaller genus, so they are in
/// the universe whenever `s` is.
pub fn is_maximal_for_frobenius(universe: &OracleUniverse, s: &NumericalSemigroup) -> bool {
    !universe.semigroups.iter().any(|t| {
        t.frobenius() == s.frobenius()
            && t.genus() < s.genus()
            && t.gaps().iter().all(|g| s.gaps().binary_search(g).is_ok())
    })
}

/// Semigroups of multiplicity `m` and concentration at most two, found by a
/// left-to-right membership search over `m+1, m+2, ...` rather than by any
/// tree. Each branch decides whether the next integer is a gap; integers
/// that are sums of two earlier members are forced in, and a gap is refused
/// when it would leave a member with both successors missing. Every prefix
/// ending in a gap is one semigroup (all later integers members).
///
/// Even `m` gives infinitely many, so it requires `max_genus`.
pub fn c2_bar_by_multiplicity(m: u32, max_genus: Option<u32>) -> Result<Vec<NumericalSemigroup>> {
    if m < 2 {
        return Err(Error::InvalidMultiplicity { min: 2, got: m });
    }
    if m % 2 == 0 && max_genus.is_none() {
        return Err(Error::UnboundedEnumeration(m));
    }
    let mut search = PrefixSearch {
        m: m as usize,
        bound: max_genus.map_or(usize::MAX, |g| g as usize),
        member: (0..=m as usize)
            .map(|x| x == 0 || x == m as usize)
            .collect(),
        gaps: (1..m).collect(),
        found: Vec::new(),
    };
    if search.gaps.len() <= search.bound {
        search.found.push(search.gaps.clone());
        search.extend(1);
    }
    let mut out: Vec<NumericalSemigroup> = search
        .found
        .into_iter()
        .map(|g| NumericalSemigroup::from_gaps(g).expect("prefix search produced a non-semigroup"))
        .collect();
    debug_assert!(out.iter().all(|s| concentration(s) <= 2));
    out.sort();
    Ok(out)
}

struct PrefixSearch {
    m: usize,
    bound: usize,
    /// Decided membership for `0..member.len()`.
    member: Vec<bool>,
    gaps: Vec<u32>,
    found: Vec<Vec<u32>>,
}

impl PrefixSearch {
    /// `run` counts consecutive members ending at the last decided integer.
    fn extend(&mut self, run: usize) {
        if run >= self.m {
            // every later integer is (member m) + (earlier member)
            return;
        }
        let k = self.member.len();
        let forced = (self.m..=k / 2).any(|a| self.member[a] && self.member[k - a]);

        self.member.push(true);
        self.extend(run + 1);
        self.member.pop();

        let orphan = !self.member[k - 1] && self.member[k - 2] && k - 2 > 0;
        if !forced && !orphan && self.gaps.len() < self.bound {
            self.member.push(false);
            self.gaps.push(k as u32);
            self.found.push(self.gaps.clone());
            self.extend(0);
            self.gaps.pop();
            self.member.pop();
        }
    }
}
