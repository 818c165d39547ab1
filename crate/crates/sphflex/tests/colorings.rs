//! NAP enumeration against the path-based definition, counts on named graphs,
//! and the NAP ⇒ NAC implication.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use sphflex::coloring::*;
use sphflex::graph::{named, Graph};

/// Brute force: every surjective coloring with no alternating 3-walk.
fn oracle_nap_masks(g: &Graph) -> BTreeSet<u64> {
    (0..1u64 << g.edge_count())
        .filter(|&m| {
            let c = EdgeColoring::from_mask(g, m);
            is_surjective(&c) && is_nap_by_walks(g, &c)
        })
        .collect()
}

#[test]
fn enumeration_matches_brute_force_on_all_small_connected_graphs() {
    let graphs = common::small_connected_graphs();
    assert_eq!(graphs.len(), 358);
    for g in graphs {
        let got: BTreeSet<u64> = enumerate_nap(g, false)
            .unwrap()
            .colorings
            .iter()
            .map(|c| c.red_mask())
            .collect();
        assert_eq!(got, oracle_nap_masks(g), "{:?}", g.edges());
        assert_eq!(flexibility_certificate(g).is_some(), !got.is_empty());
    }
}

#[test]
fn k33_has_six_nap_colorings_up_to_swap() {
    let g = named::k33();
    assert_eq!(enumerate_nap(&g, true).unwrap().len(), 6);
    assert_eq!(enumerate_nap(&g, false).unwrap().len(), 12);
}

#[test]
fn named_graph_verdicts() {
    let flexible: Vec<&str> = named::corpus()
        .into_iter()
        .filter(|(_, g)| flexibility_certificate(g).is_some())
        .map(|(n, _)| n)
        .collect();
    assert_eq!(flexible, ["K22", "K32", "K33", "two-triangles-apex"]);
}

#[test]
fn nap_implies_nac_on_corpus_and_small_graphs() {
    let mut graphs: Vec<Graph> = named::corpus().into_iter().map(|(_, g)| g).collect();
    graphs.extend(common::connected_graphs(7));
    for g in &graphs {
        for c in enumerate_nap(g, false).unwrap().colorings {
            assert!(is_nac(g, &c), "{:?}", c.triples(g));
        }
    }
}

#[test]
fn budget_is_enforced() {
    let g = named::complete(8);
    assert!(matches!(
        enumerate_nap_with_budget(&g, false, 20),
        Err(ColoringError::BudgetExceeded { .. })
    ));
}

proptest! {
    #[test]
    fn local_criterion_equals_walk_definition(idx in 0usize..358, mask in any::<u64>()) {
        let g = &common::small_connected_graphs()[idx];
        let c = EdgeColoring::from_mask(g, mask & ((1u64 << g.edge_count()) - 1));
        prop_assert_eq!(is_nap(g, &c), is_nap_by_walks(g, &c));
    }

    #[test]
    fn swapping_colors_preserves_nap(mask in 0u64..512) {
        let g = named::k33();
        let c = EdgeColoring::from_mask(&g, mask);
        prop_assert_eq!(is_nap(&g, &c), is_nap(&g, &c.swapped()));
    }
}
