//! Exact representation of a numerical semigroup.
//!
//! A [`NumericalSemigroup`] is stored by its finite gap set together with a
//! dense membership bitmap over `[0, F + 1]`, where `F` is the Frobenius
//! number. Every integer above `F` is a member, so the bitmap is all the
//! state that membership queries ever need. The invariants used throughout
//! the crate (multiplicity, genus, minimal generators, concentration,
//! `n(S)`) are computed once at construction and cached; values are
//! immutable afterwards.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// A user-supplied list of generators, before normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorList {
    generators: Vec<u32>,
}

impl GeneratorList {
    pub fn new(generators: impl IntoIterator<Item = u32>) -> Result<Self> {
        let generators: Vec<u32> = generators.into_iter().collect();
        if generators.is_empty() {
            return Err(Error::EmptyInput);
        }
        if generators.contains(&0) {
            return Err(Error::NonPositiveGenerator(0));
        }
        Ok(Self { generators })
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.generators
    }

    pub fn gcd(&self) -> u64 {
        self.generators
            .iter()
            .fold(0u64, |acc, &g| gcd(acc, u64::from(g)))
    }
}

/// Accepts `5,7,9`, `⟨5,7,9⟩`, `<5, 7, 9>` and whitespace-separated lists.
impl FromStr for GeneratorList {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches(['⟨', '<', '(', '{', '['])
            .trim_end_matches(['⟩', '>', ')', '}', ']']);
        let mut generators = Vec::new();
        for token in body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let value: i64 = token
                .parse()
                .map_err(|_| Error::Parse(format!("invalid generator {token:?}")))?;
            if value < 1 {
                return Err(Error::NonPositiveGenerator(value));
            }
            let value = u32::try_from(value)
                .map_err(|_| Error::Parse(format!("generator {value} is too large")))?;
            generators.push(value);
        }
        Self::new(generators)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A numerical semigroup: a submonoid of (ℕ, +) with finite complement.
#[derive(Clone)]
pub struct NumericalSemigroup {
    gaps: Vec<u32>,
    /// Membership over `[0, frobenius + 1]`.
    members: BitSet,
    frobenius: i64,
    multiplicity: u32,
    minimal_generators: Vec<u32>,
    concentration: u32,
    n_count: u32,
}

impl NumericalSemigroup {
    /// The semigroup ℕ itself.
    pub fn naturals() -> Self {
        Self::from_valid_gaps(Vec::new())
    }

    /// Builds the semigroup generated by `gens`.
    pub fn from_generators(gens: &GeneratorList) -> Result<Self> {
        let d = gens.gcd();
        if d != 1 {
            return Err(Error::GcdNotOne(d));
        }
        let mut sorted = gens.as_slice().to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let smallest = sorted[0] as usize;

        // Extend the reachable table until `smallest` consecutive members
        // appear; everything past that run is reachable too.
        let mut reachable: Vec<bool> = vec![true];
        let mut run = 1usize;
        let mut x = 0usize;
        while run < smallest {
            x += 1;
            let hit = sorted
                .iter()
                .take_while(|&&g| g as usize <= x)
                .any(|&g| reachable[x - g as usize]);
            reachable.push(hit);
            run = if hit { run + 1 } else { 0 };
        }
        let gaps = reachable
            .iter()
            .enumerate()
            .filter(|(_, &r)| !r)
            .map(|(i, _)| i as u32)
            .collect();
        Ok(Self::from_valid_gaps(gaps))
    }

    /// Shorthand for [`from_generators`](Self::from_generators) on a slice.
    pub fn generated_by(gens: &[u32]) -> Result<Self> {
        Self::from_generators(&GeneratorList::new(gens.iter().copied())?)
    }

    /// Builds a semigroup from an explicit gap set, checking additive closure.
    pub fn from_gaps(gaps: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut gaps: Vec<u32> = gaps.into_iter().collect();
        gaps.sort_unstable();
        gaps.dedup();
        let describe = |reason: String| Error::InvalidGapSet {
            gap: format!("{gaps:?}"),
            reason,
        };
        if gaps.first() == Some(&0) {
            return Err(describe("0 cannot be a gap".into()));
        }
        let frobenius = gaps.last().copied().unwrap_or(0) as usize;
        let mut members = BitSet::filled(frobenius + 2);
        for &g in &gaps {
            members.clear(g as usize);
        }
        if let Some((a, b)) = closure_violation(&members, frobenius) {
            return Err(describe(format!(
                "{a} + {b} = {} is listed as a gap",
                a + b
            )));
        }
        Ok(Self::from_valid_gaps(gaps))
    }

    /// The ordinary semigroup `{0, m, m+1, ...}`.
    pub fn ordinary(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidMultiplicity { min: 1, got: m });
        }
        Ok(Self::from_valid_gaps((1..m).collect()))
    }

    /// The elementary semigroup `{0, m} ∪ upper ∪ {2m, →}`, for
    /// `upper ⊆ [m+1, 2m-1]`. Every elementary semigroup of multiplicity `m`
    /// has this shape.
    pub fn elementary_from_upper_set(m: u32, upper: &[u32]) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidMultiplicity { min: 2, got: m });
        }
        let (low, high) = (m + 1, 2 * m - 1);
        if let Some(&bad) = upper.iter().find(|&&a| a < low || a > high) {
            return Err(Error::ElementOutOfRange {
                element: bad,
                low,
                high,
            });
        }
        let gaps = (1..m)
            .chain((low..=high).filter(|x| !upper.contains(x)))
            .collect();
        Ok(Self::from_valid_gaps(gaps))
    }

    /// `gaps` must be strictly increasing, positive and closed under the
    /// semigroup operation; checked in debug builds only.
    pub(crate) fn from_valid_gaps(gaps: Vec<u32>) -> Self {
        let frobenius = gaps.last().map_or(-1, |&g| i64::from(g));
        let mut members = BitSet::filled((frobenius + 2) as usize);
        for &g in &gaps {
            members.clear(g as usize);
        }
        debug_assert!(gaps.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(gaps.first() != Some(&0));
        debug_assert_eq!(closure_violation(&members, frobenius.max(0) as usize), None);

        let multiplicity = (1..).find(|&x| member(&members, x)).unwrap();
        let top = (frobenius + i64::from(multiplicity)).max(i64::from(multiplicity)) as u32;
        let minimal_generators = (multiplicity..=top)
            .filter(|&s| member(&members, s) && !decomposable(&members, multiplicity, s))
            .collect();
        Self::assemble(gaps, members, multiplicity, minimal_generators)
    }

    fn assemble(
        gaps: Vec<u32>,
        members: BitSet,
        multiplicity: u32,
        minimal_generators: Vec<u32>,
    ) -> Self {
        let frobenius = gaps.last().map_or(-1, |&g| i64::from(g));
        let concentration = max_jump(&members, multiplicity, frobenius);
        let n_count = if frobenius >= 0 {
            (frobenius + 1) as u32 - gaps.len() as u32
        } else {
            0
        };
        Self {
            gaps,
            members,
            frobenius,
            multiplicity,
            minimal_generators,
            concentration,
            n_count,
        }
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    /// Largest gap, or −1 for ℕ.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// Least positive member (1 for ℕ).
    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn genus(&self) -> u32 {
        self.gaps.len() as u32
    }

    pub fn minimal_generators(&self) -> &[u32] {
        &self.minimal_generators
    }

    pub fn embedding_dimension(&self) -> u32 {
        self.minimal_generators.len() as u32
    }

    /// Largest jump `next(s) - s` over nonzero members, 1 for half-lines.
    pub fn concentration(&self) -> u32 {
        self.concentration
    }

    /// Number of members strictly below the Frobenius number.
    pub fn n_count(&self) -> u32 {
        self.n_count
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && (x > self.frobenius || self.members.get(x as usize))
    }

    /// Least member strictly greater than `s`.
    pub fn next_element(&self, s: i64) -> u32 {
        let mut x = (s + 1).max(0);
        while !self.contains(x) {
            x += 1;
        }
        x as u32
    }

    /// Members of `[0, limit]`, ascending.
    pub fn members_up_to(&self, limit: u32) -> impl Iterator<Item = u32> + '_ {
        (0..=limit).filter(|&x| self.contains(i64::from(x)))
    }

    pub fn is_half_line(&self) -> bool {
        self.genus() + 1 == self.multiplicity
    }

    /// Concentration two, decided from the minimal generators alone: a
    /// semigroup that is not a half-line has concentration two exactly when
    /// each minimal generator `x` has `x+1` or `x+2` in the semigroup.
    pub fn is_concentration_two(&self) -> bool {
        !self.is_half_line()
            && self.minimal_generators.iter().all(|&x| {
                let x = i64::from(x);
                self.contains(x + 1) || self.contains(x + 2)
            })
    }

    /// `F(S) < 2 m(S)`.
    pub fn is_elementary(&self) -> bool {
        self.frobenius < 2 * i64::from(self.multiplicity)
    }

    pub fn is_minimal_generator(&self, x: i64) -> bool {
        u32::try_from(x).is_ok_and(|x| self.minimal_generators.binary_search(&x).is_ok())
    }

    /// `S ∖ {x}`, defined exactly when `x` is a minimal generator.
    pub fn remove_element(&self, x: i64) -> Result<Self> {
        if !self.is_minimal_generator(x) {
            return Err(Error::NotMinimalGenerator(x));
        }
        let x = x as u32;
        if i64::from(x) > self.frobenius && x != self.multiplicity {
            return Ok(self.remove_above_frobenius(x));
        }
        let mut gaps = self.gaps.clone();
        let at = gaps.partition_point(|&g| g < x);
        gaps.insert(at, x);
        Ok(Self::from_valid_gaps(gaps))
    }

    /// Removal of a generator beyond the Frobenius number, other than the
    /// multiplicity. Old generators stay minimal; new ones lie in
    /// `(x, x + m]`.
    fn remove_above_frobenius(&self, x: u32) -> Self {
        let m = self.multiplicity;
        let mut gaps = self.gaps.clone();
        gaps.push(x);
        let mut members = self.members.clone();
        members.grow_filled(x as usize + 2);
        members.clear(x as usize);

        let mut generators: Vec<u32> = self
            .minimal_generators
            .iter()
            .copied()
            .filter(|&g| g != x)
            .collect();
        for y in x + 1..=x + m {
            if self.minimal_generators.binary_search(&y).is_err() && !decomposable(&members, m, y) {
                generators.push(y);
            }
        }
        generators.sort_unstable();
        debug_assert_eq!(
            generators,
            Self::from_valid_gaps(gaps.clone()).minimal_generators
        );
        Self::assemble(gaps, members, m, generators)
    }

    /// `S ∪ {F(S)}`.
    pub fn add_frobenius(&self) -> Result<Self> {
        if self.gaps.is_empty() {
            return Err(Error::NoFrobenius);
        }
        let mut gaps = self.gaps.clone();
        gaps.pop();
        Ok(Self::from_valid_gaps(gaps))
    }

    /// `S ∪ {x}` for a gap `x` such that the union is still closed. Returns
    /// `None` when `x` is not a gap or the union is not a semigroup.
    pub fn add_gap(&self, x: u32) -> Option<Self> {
        let at = self.gaps.binary_search(&x).ok()?;
        let mut gaps = self.gaps.clone();
        gaps.remove(at);
        let mut members = self.members.clone();
        members.set(x as usize);
        // Only sums involving x can break closure.
        let top = self.frobenius as u32;
        for s in self.members_up_to(top) {
            let sum = s + x;
            if sum > top {
                break;
            }
            if !members.get(sum as usize) {
                return None;
            }
        }
        if 2 * x <= top && !members.get(2 * x as usize) {
            return None;
        }
        Some(Self::from_valid_gaps(gaps))
    }
}

#[inline]
fn member(members: &BitSet, x: u32) -> bool {
    x as usize >= members.len() || members.get(x as usize)
}

fn decomposable(members: &BitSet, multiplicity: u32, s: u32) -> bool {
    (multiplicity..=s / 2).any(|a| member(members, a) && member(members, s - a))
}

fn max_jump(members: &BitSet, multiplicity: u32, frobenius: i64) -> u32 {
    let mut best = 1;
    let mut prev = multiplicity;
    for s in multiplicity + 1..=(frobenius + 1).max(0) as u32 {
        if member(members, s) {
            if i64::from(prev) < frobenius {
                best = best.max(s - prev);
            }
            prev = s;
        }
    }
    best
}

/// First pair of positive members whose sum is a gap, if any.
fn closure_violation(members: &BitSet, frobenius: usize) -> Option<(usize, usize)> {
    let positive: Vec<usize> = members
        .iter_ones()
        .filter(|&a| a > 0 && a <= frobenius)
        .collect();
    for (i, &a) in positive.iter().enumerate() {
        for &b in &positive[i..] {
            if a + b > frobenius {
                break;
            }
            if !members.get(a + b) {
                return Some((a, b));
            }
        }
    }
    None
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.gaps == other.gaps
    }
}

impl Eq for NumericalSemigroup {}

impl Hash for NumericalSemigroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.gaps.hash(state);
    }
}

impl PartialOrd for NumericalSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on gap sequences.
impl Ord for NumericalSemigroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gaps.cmp(&other.gaps)
    }
}

/// Angle-bracket generator form, e.g. `⟨3,5,7⟩`.
impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, g) in self.minimal_generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("⟩")
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} gaps={:?}", self.gaps)
    }
}

/// The canonical exchange form. Field order is part of the format.
#[derive(Serialize, Deserialize)]
struct Canonical {
    msg: Vec<u32>,
    gaps: Vec<u32>,
    multiplicity: u32,
    frobenius: i64,
    genus: u32,
    embedding_dimension: u32,
    concentration: u32,
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        Canonical {
            msg: self.minimal_generators.clone(),
            gaps: self.gaps.clone(),
            multiplicity: self.multiplicity,
            frobenius: self.frobenius,
            genus: self.genus(),
            embedding_dimension: self.embedding_dimension(),
            concentration: self.concentration,
        }
        .serialize(serializer)
    }
}

/// Rebuilds from `gaps` and rejects records whose other fields disagree.
impl<'de> Deserialize<'de> for NumericalSemigroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Canonical::deserialize(deserializer)?;
        if raw.gaps.windows(2).any(|w| w[0] >= w[1]) || raw.msg.windows(2).any(|w| w[0] >= w[1]) {
            return Err(D::Error::custom("gaps and msg must be strictly increasing"));
        }
        let s = Self::from_gaps(raw.gaps.iter().copied()).map_err(D::Error::custom)?;
        let consistent = s.minimal_generators == raw.msg
            && s.multiplicity == raw.multiplicity
            && s.frobenius == raw.frobenius
            && s.genus() == raw.genus
            && s.embedding_dimension() == raw.embedding_dimension
            && s.concentration == raw.concentration;
        if !consistent {
            return Err(D::Error::custom(format!(
                "cached invariants do not match the gap set of {s}"
            )));
        }
        Ok(s)
    }
}
