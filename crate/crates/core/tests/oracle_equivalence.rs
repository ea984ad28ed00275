//! Production enumerators against the brute-force oracles.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use conc2::classes::{
    ascend, enumerate_c2_frobenius, irreducible_c2, irreducibles_with_frobenius, is_irreducible,
};
use conc2::oracle::{self, OracleUniverse};
use conc2::trees::{
    children_elementary_tree, children_multiplicity_tree, count_c2, enumerate_by_genus,
    tree_height, walk_tree, Variant,
};
use conc2::{EnumerationRequest, NumericalSemigroup};

fn universe() -> &'static OracleUniverse {
    static U: OnceLock<OracleUniverse> = OnceLock::new();
    U.get_or_init(|| oracle::all_semigroups_by_genus(16).unwrap())
}

fn set(v: impl IntoIterator<Item = NumericalSemigroup>) -> BTreeSet<NumericalSemigroup> {
    v.into_iter().collect()
}

/// `h + 1 ∈ S` for every gap `h > m(S)`, read off the gap list.
fn gaps_are_followed_by_members(s: &NumericalSemigroup) -> bool {
    let m = s.multiplicity();
    s.gaps()
        .iter()
        .filter(|&&h| h > m)
        .all(|&h| s.contains(i64::from(h) + 1))
}

#[test]
fn concentration_characterizations_agree() {
    for s in universe()
        .semigroups()
        .iter()
        .filter(|s| s.multiplicity() <= 12 && s.genus() <= 14)
    {
        let by_definition = oracle::concentration(s) == 2;
        assert_eq!(s.concentration(), oracle::concentration(s), "{s:?}");
        assert_eq!(s.is_concentration_two(), by_definition, "{s:?}");
        if !s.is_half_line() {
            assert_eq!(gaps_are_followed_by_members(s), by_definition, "{s:?}");
        }
    }
}

#[test]
fn genus_levels_match_universe() {
    for m in 2..=9u32 {
        for g in m - 1..=14 {
            let produced = set(enumerate_by_genus(m, g).unwrap());
            let expected = set(universe().filter(|s| {
                s.multiplicity() == m && oracle::concentration(s) <= 2 && s.genus() == g
            }));
            assert_eq!(produced, expected, "m = {m}, g = {g}");
        }
    }
}

#[test]
fn odd_multiplicity_trees_match_prefix_search() {
    for m in [3u32, 5, 7, 9] {
        let walked: Vec<_> = walk_tree(&EnumerationRequest::multiplicity_tree(m))
            .unwrap()
            .map(|n| n.semigroup)
            .collect();
        let searched = oracle::c2_bar_by_multiplicity(m, None).unwrap();
        assert_eq!(
            walked.len(),
            searched.len(),
            "m = {m}: duplicate or missing node"
        );
        assert_eq!(set(walked.clone()), set(searched.clone()), "m = {m}");
        for g in m - 1..=2 * m {
            let level = set(enumerate_by_genus(m, g).unwrap());
            let expected = set(searched.iter().filter(|s| s.genus() == g).cloned());
            assert_eq!(level, expected, "m = {m}, g = {g}");
        }
        assert_eq!(count_c2(m).unwrap(), searched.len() as u64 - 1);

        let height = tree_height(m, Variant::Full).unwrap();
        let spectrum: BTreeSet<u32> = searched
            .iter()
            .filter(|s| s.concentration() == 2)
            .map(|s| s.genus())
            .collect();
        assert_eq!(spectrum, (m..m + height).collect(), "m = {m}");
    }
}

#[test]
fn even_multiplicity_levels_match_prefix_search() {
    for m in [2u32, 4, 6, 8] {
        let bound = m + 12;
        let walked = set(walk_tree(
            &EnumerationRequest::multiplicity_tree(m).with_max_genus(bound),
        )
        .unwrap()
        .map(|n| n.semigroup));
        let searched = set(oracle::c2_bar_by_multiplicity(m, Some(bound)).unwrap());
        assert_eq!(walked, searched, "m = {m}");
        for g in m..=bound {
            assert!(
                !enumerate_by_genus(m, g).unwrap().is_empty(),
                "m = {m}, g = {g}"
            );
        }
    }
}

#[test]
fn count_for_five_matches_genus_tree() {
    // genus-tree oracle until the first empty level above the root
    let mut total = 0;
    for g in 5.. {
        let level = universe()
            .filter(|s| s.multiplicity() == 5 && oracle::concentration(s) == 2 && s.genus() == g);
        if level.is_empty() {
            break;
        }
        total += level.len();
    }
    assert_eq!(count_c2(5).unwrap(), total as u64);
    assert_eq!(total, 12);
    assert_eq!(tree_height(5, Variant::Full).unwrap(), 4);
}

#[test]
fn minimum_genus_level() {
    for m in 2..=9u32 {
        let level = set(enumerate_by_genus(m, m).unwrap());
        let ordinary = NumericalSemigroup::ordinary(m).unwrap();
        let expected = set((1..m).map(|i| ordinary.remove_element(i64::from(m + i)).unwrap()));
        assert_eq!(level.len() as u32, m - 1);
        assert_eq!(level, expected);
        for g in 0..m {
            assert!(universe()
                .filter(|s| s.multiplicity() == m && s.concentration() == 2 && s.genus() == g)
                .is_empty());
        }
    }
}

#[test]
fn elementary_tree_is_a_subtree() {
    for m in 2..=8u32 {
        let elementary: Vec<_> = walk_tree(&EnumerationRequest::elementary_tree(m))
            .unwrap()
            .collect();
        let expected = set(universe()
            .filter(|s| s.multiplicity() == m && s.concentration() <= 2 && s.is_elementary()));
        assert_eq!(
            set(elementary.iter().map(|n| n.semigroup.clone())),
            expected,
            "m = {m}"
        );
        for node in &elementary {
            let s = &node.semigroup;
            assert_eq!(node.depth, s.genus() + 1 - m);
            let from_full: Vec<_> = children_multiplicity_tree(s)
                .unwrap()
                .into_iter()
                .filter(|c| c.removed.unwrap() <= 2 * m - 1)
                .collect();
            assert_eq!(children_elementary_tree(s).unwrap(), from_full);
        }
        assert!(tree_height(m, Variant::Elementary).is_ok());
    }
}

#[test]
fn every_node_climbs_back_to_the_root() {
    for m in 2..=8u32 {
        let root = NumericalSemigroup::ordinary(m).unwrap();
        for node in walk_tree(&EnumerationRequest::multiplicity_tree(m).with_max_genus(14)).unwrap()
        {
            let mut s = node.semigroup.clone();
            for _ in 0..node.depth {
                s = s.add_frobenius().unwrap();
                assert!(s.concentration() <= 2 && s.multiplicity() == m);
            }
            assert_eq!(s, root);
        }
    }
}

#[test]
fn irreducibles_are_the_maximal_semigroups() {
    let u = universe();
    for f in 1..=15u32 {
        let with_f: Vec<_> = u.filter(|s| s.frobenius() == i64::from(f));
        let maximal = set(with_f
            .iter()
            .filter(|s| oracle::is_maximal_for_frobenius(u, s))
            .cloned());
        assert_eq!(
            set(irreducibles_with_frobenius(f).unwrap()),
            maximal,
            "F = {f}"
        );
        for s in &with_f {
            assert_eq!(is_irreducible(s).unwrap(), maximal.contains(s), "{s:?}");
        }
        let genus = if f % 2 == 1 { (f + 1) / 2 } else { (f + 2) / 2 };
        assert!(maximal.iter().all(|s| s.genus() == genus), "F = {f}");

        let c2 = set(maximal
            .iter()
            .filter(|s| oracle::concentration(s) == 2)
            .cloned());
        assert_eq!(set(irreducible_c2(f).unwrap()), c2, "F = {f}");
    }
}

#[test]
fn frobenius_classes_partition_the_family() {
    for f in 1..=15u32 {
        let classes = enumerate_c2_frobenius(f).unwrap();
        let expected =
            set(universe()
                .filter(|s| s.frobenius() == i64::from(f) && oracle::concentration(s) == 2));
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        let union = set(classes.iter().flat_map(|c| c.members.clone()));
        assert_eq!(total, union.len(), "F = {f}: classes overlap");
        assert_eq!(union, expected, "F = {f}");
        for class in &classes {
            assert_eq!(class.members[0], class.root);
            for s in &class.members {
                assert_eq!(ascend(s).unwrap(), class.root, "{s:?}");
            }
        }
    }
}

#[test]
fn frobenius_eleven_partition() {
    let classes = enumerate_c2_frobenius(11).unwrap();
    let expected = set(universe().filter(|s| s.frobenius() == 11 && s.concentration() == 2));
    let union = set(classes.iter().flat_map(|c| c.members.clone()));
    assert_eq!(union, expected);
    assert_eq!(
        classes.iter().map(|c| c.members.len()).sum::<usize>(),
        expected.len()
    );
}
