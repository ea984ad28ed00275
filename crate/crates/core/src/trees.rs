//! Rooted trees over concentration-≤2 semigroups of fixed multiplicity.
//!
//! For multiplicity `m ≥ 2` the semigroups with concentration at most two
//! form a tree rooted at the ordinary semigroup `△(m)`: the parent of `S` is
//! `S ∪ {F(S)}`. The children of `S` are `S ∖ {x}` for the minimal
//! generators `x ≥ F(S) + 2`; each child has Frobenius number `x` and lies
//! one level deeper, and depth equals `genus − (m − 1)`. Restricting the
//! removed generators to `x ≤ 2m − 1` gives the subtree of elementary
//! semigroups (`F < 2m`).
//!
//! For odd `m` the tree is finite. For even `m` it is infinite, with a node
//! at every depth, so unbounded walks over it are rejected.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// One vertex of an enumeration tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub semigroup: NumericalSemigroup,
    /// Element deleted from the parent; `None` at the root.
    pub removed: Option<u32>,
    pub depth: u32,
}

impl TreeNode {
    pub fn root(semigroup: NumericalSemigroup) -> Self {
        Self {
            semigroup,
            removed: None,
            depth: 0,
        }
    }

    /// The parent, recovered by putting the removed element back.
    pub fn parent(&self) -> Option<NumericalSemigroup> {
        self.removed.map(|x| {
            self.semigroup
                .add_gap(x)
                .expect("edge label does not restore a semigroup")
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    MultiplicityTree,
    ElementaryTree,
    GenusLevel,
    Count,
    Height,
}

/// Order of siblings in every emitted listing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChildOrder {
    #[default]
    AscendingRemoved,
}

/// Which tree a count or height refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Full,
    Elementary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationRequest {
    pub mode: Mode,
    pub multiplicity: u32,
    /// Target genus for [`Mode::GenusLevel`].
    pub genus: Option<u32>,
    pub max_genus: Option<u32>,
    pub order: ChildOrder,
}

impl EnumerationRequest {
    fn new(mode: Mode, multiplicity: u32) -> Self {
        Self {
            mode,
            multiplicity,
            genus: None,
            max_genus: None,
            order: ChildOrder::default(),
        }
    }

    pub fn multiplicity_tree(m: u32) -> Self {
        Self::new(Mode::MultiplicityTree, m)
    }

    pub fn elementary_tree(m: u32) -> Self {
        Self::new(Mode::ElementaryTree, m)
    }

    pub fn genus_level(m: u32, genus: u32) -> Self {
        Self {
            genus: Some(genus),
            ..Self::new(Mode::GenusLevel, m)
        }
    }

    pub fn count(m: u32) -> Self {
        Self::new(Mode::Count, m)
    }

    pub fn height(m: u32) -> Self {
        Self::new(Mode::Height, m)
    }

    pub fn with_max_genus(mut self, max_genus: u32) -> Self {
        self.max_genus = Some(max_genus);
        self
    }

    fn rule(&self) -> ChildRule {
        match self.mode {
            Mode::ElementaryTree => ChildRule::Elementary,
            _ => ChildRule::Multiplicity,
        }
    }

    /// Genus bound actually applied to the walk.
    fn bound(&self) -> Option<u32> {
        match self.mode {
            Mode::GenusLevel => self.genus,
            _ => self.max_genus,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.multiplicity;
        if m < 2 {
            return Err(Error::InvalidMultiplicity { min: 2, got: m });
        }
        match self.mode {
            Mode::GenusLevel => {
                let genus = self.genus.ok_or(Error::InvalidGenusRange {
                    multiplicity: m,
                    genus: 0,
                    min: m - 1,
                })?;
                check_genus_range(m, genus)
            }
            Mode::ElementaryTree => Ok(()),
            Mode::Count | Mode::Height if m % 2 == 0 && self.max_genus.is_none() => {
                Err(Error::EvenMultiplicityInfinite(m))
            }
            _ if m % 2 == 0 && self.max_genus.is_none() => Err(Error::UnboundedEnumeration(m)),
            _ => Ok(()),
        }
    }
}

fn check_genus_range(m: u32, genus: u32) -> Result<()> {
    if m < 2 || genus < m - 1 {
        return Err(Error::InvalidGenusRange {
            multiplicity: m,
            genus,
            min: m.saturating_sub(1),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ChildRule {
    Multiplicity,
    Elementary,
}

impl ChildRule {
    /// Children of `s` with their edge labels, ascending; no validation.
    fn children(self, s: &NumericalSemigroup) -> Vec<(u32, NumericalSemigroup)> {
        let m = s.multiplicity();
        let low = s.frobenius() + 2;
        let high = match self {
            ChildRule::Multiplicity => u32::MAX,
            ChildRule::Elementary => 2 * m - 1,
        };
        s.minimal_generators()
            .iter()
            .copied()
            .filter(|&x| i64::from(x) >= low && x <= high)
            .map(|x| {
                let child = s
                    .remove_element(i64::from(x))
                    .expect("minimal generator is removable");
                debug_assert!(child.concentration() <= 2 && child.multiplicity() == m);
                (x, child)
            })
            .collect()
    }
}

fn node_for(m: u32, removed: u32, semigroup: NumericalSemigroup) -> TreeNode {
    TreeNode {
        depth: semigroup.genus() + 1 - m,
        removed: Some(removed),
        semigroup,
    }
}

fn check_tree_member(s: &NumericalSemigroup) -> Result<()> {
    if s.multiplicity() < 2 {
        return Err(Error::InvalidMultiplicity {
            min: 2,
            got: s.multiplicity(),
        });
    }
    if s.concentration() > 2 {
        return Err(Error::ConcentrationTooHigh(s.concentration()));
    }
    Ok(())
}

/// Sons of `s` in the multiplicity tree, ascending by removed element.
pub fn children_multiplicity_tree(s: &NumericalSemigroup) -> Result<Vec<TreeNode>> {
    check_tree_member(s)?;
    let m = s.multiplicity();
    Ok(ChildRule::Multiplicity
        .children(s)
        .into_iter()
        .map(|(x, child)| node_for(m, x, child))
        .collect())
}

/// Sons of `s` in the elementary tree, ascending by removed element.
pub fn children_elementary_tree(s: &NumericalSemigroup) -> Result<Vec<TreeNode>> {
    if !s.is_elementary() {
        return Err(Error::NotElementary {
            frobenius: s.frobenius(),
            multiplicity: s.multiplicity(),
        });
    }
    check_tree_member(s)?;
    let m = s.multiplicity();
    Ok(ChildRule::Elementary
        .children(s)
        .into_iter()
        .map(|(x, child)| node_for(m, x, child))
        .collect())
}

/// All concentration-≤2 semigroups with multiplicity `m` and genus `g`,
/// generated level by level from `△(m)`. Empty once a level dies out.
pub fn enumerate_by_genus(m: u32, g: u32) -> Result<Vec<NumericalSemigroup>> {
    check_genus_range(m, g)?;
    let mut level = vec![NumericalSemigroup::ordinary(m)?];
    for _ in m - 1..g {
        level = expand_level(&level, ChildRule::Multiplicity);
        if level.is_empty() {
            break;
        }
    }
    Ok(level)
}

fn expand_level(level: &[NumericalSemigroup], rule: ChildRule) -> Vec<NumericalSemigroup> {
    level
        .par_iter()
        .flat_map_iter(|s| rule.children(s).into_iter().map(|(_, c)| c))
        .collect()
}

/// Breadth-first walk described by `request`: parents before children,
/// siblings ascending by removed element, each node once.
///
/// Tree modes walk the whole (bounded) tree; `GenusLevel` emits only the
/// requested level.
pub fn walk_tree(request: &EnumerationRequest) -> Result<Walk> {
    request.validate()?;
    let m = request.multiplicity;
    let mut queue = VecDeque::new();
    queue.push_back(TreeNode::root(NumericalSemigroup::ordinary(m)?));
    Ok(Walk {
        rule: request.rule(),
        bound: request.bound(),
        only_genus: (request.mode == Mode::GenusLevel)
            .then_some(request.genus)
            .flatten(),
        queue,
    })
}

/// Iterator returned by [`walk_tree`].
pub struct Walk {
    rule: ChildRule,
    bound: Option<u32>,
    only_genus: Option<u32>,
    queue: VecDeque<TreeNode>,
}

impl Iterator for Walk {
    type Item = TreeNode;

    fn next(&mut self) -> Option<TreeNode> {
        loop {
            let node = self.queue.pop_front()?;
            let m = node.semigroup.multiplicity();
            let below_bound = self.bound.is_none_or(|b| node.semigroup.genus() < b);
            if below_bound {
                for (x, child) in self.rule.children(&node.semigroup) {
                    self.queue.push_back(node_for(m, x, child));
                }
            }
            if self.only_genus.is_none_or(|g| node.semigroup.genus() == g) {
                return Some(node);
            }
        }
    }
}

/// Node count and height of a tree, gathered depth-first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub nodes: u64,
    pub height: u32,
}

impl TreeStats {
    fn merge(self, other: Self) -> Self {
        Self {
            nodes: self.nodes + other.nodes,
            height: self.height.max(other.height),
        }
    }
}

/// Levels above this depth fan out across the thread pool.
const PARALLEL_DEPTH: u32 = 4;

fn stats_below(
    s: &NumericalSemigroup,
    depth: u32,
    rule: ChildRule,
    bound: Option<u32>,
) -> TreeStats {
    let own = TreeStats {
        nodes: 1,
        height: depth,
    };
    if bound.is_some_and(|b| s.genus() >= b) {
        return own;
    }
    let children = rule.children(s);
    let below = if depth < PARALLEL_DEPTH {
        children
            .par_iter()
            .map(|(_, c)| stats_below(c, depth + 1, rule, bound))
            .reduce(TreeStats::default, TreeStats::merge)
    } else {
        children
            .iter()
            .map(|(_, c)| stats_below(c, depth + 1, rule, bound))
            .fold(TreeStats::default(), TreeStats::merge)
    };
    own.merge(below)
}

fn tree_rule(m: u32, variant: Variant) -> Result<ChildRule> {
    if m < 2 {
        return Err(Error::InvalidMultiplicity { min: 2, got: m });
    }
    match variant {
        Variant::Full if m % 2 == 0 => Err(Error::EvenMultiplicityInfinite(m)),
        Variant::Full => Ok(ChildRule::Multiplicity),
        Variant::Elementary => Ok(ChildRule::Elementary),
    }
}

/// Depth-first statistics over the whole tree (the elementary tree, or the
/// full tree for odd `m`).
pub fn tree_stats(m: u32, variant: Variant) -> Result<TreeStats> {
    let rule = tree_rule(m, variant)?;
    Ok(stats_below(
        &NumericalSemigroup::ordinary(m)?,
        0,
        rule,
        None,
    ))
}

/// Statistics of the tree truncated at `max_genus`; any parity.
pub fn bounded_tree_stats(m: u32, variant: Variant, max_genus: u32) -> Result<TreeStats> {
    if m < 2 {
        return Err(Error::InvalidMultiplicity { min: 2, got: m });
    }
    let rule = match variant {
        Variant::Full => ChildRule::Multiplicity,
        Variant::Elementary => ChildRule::Elementary,
    };
    let root = NumericalSemigroup::ordinary(m)?;
    if root.genus() > max_genus {
        return Ok(TreeStats::default());
    }
    Ok(stats_below(&root, 0, rule, Some(max_genus)))
}

/// Number of semigroups with concentration exactly two and multiplicity
/// `m` (odd): the tree's nodes minus the root `△(m)`.
pub fn count_c2(m: u32) -> Result<u64> {
    Ok(tree_stats(m, Variant::Full)?.nodes - 1)
}

/// Number of elementary semigroups with concentration two and multiplicity `m`.
pub fn count_elementary_c2(m: u32) -> Result<u64> {
    Ok(tree_stats(m, Variant::Elementary)?.nodes - 1)
}

pub fn tree_height(m: u32, variant: Variant) -> Result<u32> {
    Ok(tree_stats(m, variant)?.height)
}

/// All nodes of the (bounded) tree in depth-first preorder. The sibling
/// subtrees are explored in parallel and concatenated in sibling order.
pub fn depth_first_nodes(request: &EnumerationRequest) -> Result<Vec<TreeNode>> {
    request.validate()?;
    let m = request.multiplicity;
    let root = TreeNode::root(NumericalSemigroup::ordinary(m)?);
    let mut out = Vec::new();
    preorder(root, request.rule(), request.bound(), &mut out);
    Ok(out)
}

fn preorder(node: TreeNode, rule: ChildRule, bound: Option<u32>, out: &mut Vec<TreeNode>) {
    let m = node.semigroup.multiplicity();
    let expand = bound.is_none_or(|b| node.semigroup.genus() < b);
    let children = if expand {
        rule.children(&node.semigroup)
    } else {
        Vec::new()
    };
    let parallel = node.depth < PARALLEL_DEPTH;
    out.push(node);
    let subtrees: Vec<Vec<TreeNode>> = if parallel {
        children
            .into_par_iter()
            .map(|(x, c)| {
                let mut sub = Vec::new();
                preorder(node_for(m, x, c), rule, bound, &mut sub);
                sub
            })
            .collect()
    } else {
        children
            .into_iter()
            .map(|(x, c)| {
                let mut sub = Vec::new();
                preorder(node_for(m, x, c), rule, bound, &mut sub);
                sub
            })
            .collect()
    };
    out.extend(subtrees.into_iter().flatten());
}
