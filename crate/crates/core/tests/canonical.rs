mod oracle;

use oracle::{permutation, tiny_assignment};
use std::collections::BTreeSet;

use proptest::prelude::*;
use setcolor_core::gadgets::build_g1;
use setcolor_core::{
    canonicalize, canonicalize_natural, enumerate_half_lists, verify_universal_colorability, ColorSet, Gadget, Graph,
    HalfListEnumerator, ListAssignment, ListConstraint,
};

fn constraints(n: usize) -> Vec<ListConstraint> {
    let mut out = vec![ListConstraint::Unconstrained];
    if n >= 2 {
        out.push(ListConstraint::Equal(0, n - 1));
        out.push(ListConstraint::MaxIntersection(0, n - 1, 0));
        out.push(ListConstraint::MaxIntersection(n - 1, 0, 1));
    }
    out
}

/// Every size vector with at most four vertices and half-lists of size at
/// most two.
fn tiny_size_vectors() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for n in 1..=4u32 {
        for code in 0..3u32.pow(n) {
            out.push((0..n).map(|i| code / 3u32.pow(i) % 3).collect());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_is_bijection_invariant(l in tiny_assignment(), map in permutation()) {
        prop_assert_eq!(canonicalize_natural(&l.rename(&map)).unwrap(), canonicalize_natural(&l).unwrap());
    }

    #[test]
    fn canonical_form_stays_in_orbit(l in tiny_assignment()) {
        let c = canonicalize_natural(&l).unwrap();
        prop_assert_eq!(oracle::brute_canonical(&c), oracle::brute_canonical(&l));
        prop_assert_eq!(c.palette(), ColorSet::range(1, l.palette().len() as u8));
    }

    #[test]
    fn canonical_form_honours_vertex_order(l in tiny_assignment(), map in permutation()) {
        let order: Vec<usize> = (0..l.len()).rev().collect();
        prop_assert_eq!(canonicalize(&l.rename(&map), &order).unwrap(), canonicalize(&l, &order).unwrap());
    }
}

#[test]
fn canonical_forms_separate_orbits() {
    // two assignments share a canonical form exactly when the brute-force
    // orbit representative agrees
    for sizes in tiny_size_vectors().into_iter().filter(|s| s.len() <= 3) {
        let universe: u32 = sizes.iter().sum();
        let mut by_form = std::collections::BTreeMap::new();
        for l in oracle::all_assignments(&sizes, universe.max(1) as u8, None) {
            let form = canonicalize_natural(&l).unwrap();
            let brute = oracle::brute_canonical(&l);
            let prev = by_form.entry(form).or_insert_with(|| brute.clone());
            assert_eq!(*prev, brute, "sizes {sizes:?}");
        }
        let distinct: BTreeSet<_> = by_form.values().collect();
        assert_eq!(distinct.len(), by_form.len(), "sizes {sizes:?}");
    }
}

#[test]
fn orbit_completeness_on_tiny_gadgets() {
    for sizes in tiny_size_vectors() {
        let n = sizes.len();
        let universe: u32 = sizes.iter().sum();
        let naive = oracle::all_assignments(&sizes, universe.max(1) as u8, None);
        let order: Vec<usize> = (0..n).collect();
        for c in constraints(n) {
            if matches!(c, ListConstraint::Equal(u, v) if sizes[u] != sizes[v]) {
                continue;
            }
            let expected: BTreeSet<ListAssignment> =
                naive.iter().filter(|l| c.holds(l)).map(|l| canonicalize_natural(l).unwrap()).collect();
            let streamed: Vec<ListAssignment> =
                HalfListEnumerator::with_order(sizes.clone(), &order, c).unwrap().collect();
            let set: BTreeSet<ListAssignment> = streamed.iter().cloned().collect();
            assert_eq!(set.len(), streamed.len(), "duplicate orbit for {sizes:?} {c:?}");
            assert_eq!(set, expected, "sizes {sizes:?} {c:?}");
        }
    }
}

#[test]
fn reversed_order_streams_its_own_canonical_forms() {
    let sizes = vec![2, 1, 2, 2];
    let order = vec![3, 2, 1, 0];
    let naive = oracle::all_assignments(&sizes, 7, None);
    let expected: BTreeSet<_> = naive.iter().map(|l| canonicalize(l, &order).unwrap()).collect();
    let streamed: BTreeSet<_> =
        HalfListEnumerator::with_order(sizes, &order, ListConstraint::Unconstrained).unwrap().collect();
    assert_eq!(streamed, expected);
}

#[test]
fn universal_verdict_ignores_base_list_names() {
    let g = build_g1().unwrap();
    let c = ListConstraint::Equal(g.v1, g.v3);
    let before = verify_universal_colorability(&g, c, 1, None).unwrap();
    let map: Vec<u8> = std::iter::once(0).chain((1..=64u8).map(|x| 65 - x)).collect();
    let renamed = Gadget::new("g1r", g.graph.clone(), g.base_lists.rename(&map), g.v1, g.v3, g.s_set.clone()).unwrap();
    let after = verify_universal_colorability(&renamed, c, 1, None).unwrap();
    assert_eq!(before, after);
    assert!(before.holds());
}

#[test]
fn enumeration_only_yields_valid_half_lists() {
    let labels = ["a", "b", "c"];
    let graph = Graph::from_edges(&labels, &[("a", "b"), ("b", "c")]).unwrap();
    let base = ListAssignment::new(vec![ColorSet::range(1, 4), ColorSet::range(1, 2), ColorSet::range(1, 6)]);
    let g = Gadget::new("path", graph, base, 0, 2, vec![1]).unwrap();
    let c = ListConstraint::MaxIntersection(0, 2, 1);
    for l in enumerate_half_lists(&g, c).unwrap() {
        assert!(setcolor_core::half_list_valid(&g, &l));
        assert!(c.holds(&l));
    }
}
