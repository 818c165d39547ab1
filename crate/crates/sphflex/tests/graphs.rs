//! Graph generation sanity and Laman checks against the exhaustive definition.

mod common;

use sphflex::graph::named;

#[test]
fn connected_graph_counts_match_known_sequence() {
    // Connected graphs by edge count: 1, 1, 3, 5, 12, 30, 79, 227 (OEIS A002905).
    let graphs = common::connected_graphs(8);
    let mut counts = [0usize; 9];
    for g in &graphs {
        counts[g.edge_count()] += 1;
    }
    assert_eq!(&counts[1..], &[1, 1, 3, 5, 12, 30, 79, 227]);
}

#[test]
fn pebble_game_matches_exhaustive_laman_check() {
    for g in common::connected_graphs(7) {
        if g.vertex_count() <= 8 {
            assert_eq!(g.is_laman(), g.is_laman_exhaustive(), "{:?}", g.edges());
        }
    }
    for (_, g) in named::corpus() {
        assert_eq!(g.is_laman(), g.is_laman_exhaustive());
    }
    assert!(named::k33().is_laman());
    assert!(named::prism().is_laman());
    assert!(!named::complete(4).is_laman());
}
