//! Exhaustive checks of cone and filter identities over every labeled poset
//! of a few elements.

use posetlab_core::verify::enumerate_posets_up_to;
use posetlab_core::{ElementSet, Poset};
use proptest::prelude::*;

fn subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0u64..1 << n).map(ElementSet::from_bits)
}

fn naive_upper(p: &Poset, set: ElementSet) -> ElementSet {
    (0..p.len())
        .filter(|&y| set.iter().all(|a| p.leq(a, y)))
        .fold(ElementSet::EMPTY, ElementSet::with)
}

fn naive_lower(p: &Poset, set: ElementSet) -> ElementSet {
    (0..p.len())
        .filter(|&y| set.iter().all(|a| p.leq(y, a)))
        .fold(ElementSet::EMPTY, ElementSet::with)
}

fn up_closed(p: &Poset, set: ElementSet) -> bool {
    set.iter().all(|x| p.up_set(x).is_subset(set))
}

fn down_closed(p: &Poset, set: ElementSet) -> bool {
    set.iter().all(|x| p.down_set(x).is_subset(set))
}

#[test]
fn cones_match_their_definition() {
    for p in enumerate_posets_up_to(5, false).unwrap() {
        let n = p.len();
        for a in 0..n {
            let single = ElementSet::singleton(a);
            assert_eq!(p.upper_cone(single), p.principal_filter(a).carrier());
            assert!(p.is_filter(p.upper_cone(single)));
        }
        for set in subsets(n) {
            let up = p.upper_cone(set);
            let down = p.lower_cone(set);
            assert_eq!(up, naive_upper(&p, set));
            assert_eq!(down, naive_lower(&p, set));
            let meet_of_singletons = set
                .iter()
                .fold(p.carrier(), |acc, a| acc.intersection(p.upper_cone(ElementSet::singleton(a))));
            assert_eq!(up, meet_of_singletons);
            assert!(down_closed(&p, down));
            assert!(up_closed(&p, up));
        }
    }
}

#[test]
fn cones_are_antitone() {
    for p in enumerate_posets_up_to(4, false).unwrap() {
        let n = p.len();
        for a in subsets(n) {
            for b in subsets(n).filter(|b| a.is_subset(*b)) {
                assert!(p.upper_cone(b).is_subset(p.upper_cone(a)));
                assert!(p.lower_cone(b).is_subset(p.lower_cone(a)));
            }
        }
    }
}

#[test]
fn covers_regenerate_the_order() {
    for p in enumerate_posets_up_to(5, false).unwrap() {
        let n = p.len();
        for a in 0..n {
            for b in 0..n {
                let between = (0..n).any(|c| p.lt(a, c) && p.lt(c, b));
                assert_eq!(p.is_cover(a, b), p.lt(a, b) && !between);
            }
        }
        let rebuilt = Poset::from_index_covers(p.labels().to_vec(), &p.covers()).unwrap();
        assert_eq!(rebuilt, p);
    }
}

#[test]
fn filters_are_exactly_the_up_closed_sets() {
    for p in enumerate_posets_up_to(4, false).unwrap() {
        let expected: Vec<ElementSet> = subsets(p.len()).filter(|&s| up_closed(&p, s)).collect();
        let mut found: Vec<ElementSet> = p.all_filters().into_iter().map(|f| f.carrier()).collect();
        found.sort_by_key(|s| expected.iter().position(|e| e == s));
        assert_eq!(found, expected);
    }
}

#[test]
fn filter_families_are_closed_under_union_and_intersection() {
    for p in enumerate_posets_up_to(4, false).unwrap() {
        let filters: Vec<ElementSet> = p.all_filters().into_iter().map(|f| f.carrier()).collect();
        assert!(filters.len() <= 16);
        for family in 0u32..1 << filters.len() {
            let members = || (0..filters.len()).filter(move |i| family >> i & 1 == 1).map(|i| filters[i]);
            let union = members().fold(ElementSet::EMPTY, ElementSet::union);
            let meet = members().fold(p.carrier(), ElementSet::intersection);
            assert!(p.is_filter(union) && p.is_filter(meet));
        }
    }
}

#[test]
fn filter_lattice_is_a_bounded_poset() {
    for p in enumerate_posets_up_to(4, false).unwrap() {
        let lattice = p.filter_lattice().unwrap();
        let filters = p.all_filters();
        assert_eq!(lattice.len(), filters.len());
        let empty = filters.iter().position(|f| f.carrier().is_empty()).unwrap();
        let full = filters.iter().position(|f| f.carrier() == p.carrier()).unwrap();
        for x in 0..lattice.len() {
            assert!(lattice.leq(empty, x) && lattice.leq(x, full));
            for y in 0..lattice.len() {
                assert_eq!(lattice.leq(x, y), filters[x].carrier().is_subset(filters[y].carrier()));
            }
        }
    }
}

#[test]
fn small_filter_lattices() {
    let two_chain = Poset::from_covers(["x", "y"], &[("x", "y")]).unwrap();
    assert_eq!(two_chain.filter_lattice().unwrap().len(), 3);
    assert!(two_chain.filter_lattice().unwrap().is_chain());
    let point = Poset::from_covers(["x"], &[]).unwrap();
    assert_eq!(point.filter_lattice().unwrap().len(), 2);
    let pair = Poset::from_covers(["x", "y"], &[]).unwrap();
    let square = pair.filter_lattice().unwrap();
    assert_eq!(square.len(), 4);
    assert!(square.is_join_semilattice() && square.is_meet_semilattice() && !square.is_chain());
}

proptest! {
    #[test]
    fn duality_swaps_cones(size in 1usize..=5, pick in 0usize..4231, set_bits in 0u64..32) {
        let all = posetlab_core::verify::enumerate_posets(size, false).unwrap().collect::<Vec<_>>();
        let p = &all[pick % all.len()];
        let set = subsets(size).nth(set_bits as usize % (1 << size)).unwrap();
        let d = p.dual();
        prop_assert_eq!(d.upper_cone(set), p.lower_cone(set));
        prop_assert_eq!(d.lower_cone(set), p.upper_cone(set));
    }
}
