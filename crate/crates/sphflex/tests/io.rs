//! Round trips through every file format.

mod common;

use proptest::prelude::*;
use sphflex::coloring::enumerate_nap;
use sphflex::graph::named;
use sphflex::io::*;
use sphflex::motions::{cda_motion, cda_params_from_e, dixon2_motion, CdaBranch, Dixon2Branch, Dixon2Params};
use sphflex::spherical::LengthAssignment;

#[test]
fn corpus_graphs_round_trip_in_both_formats() {
    for (name, g) in named::corpus() {
        assert_eq!(parse_graph(&graph_to_json(&g)).unwrap(), g, "{name}");
        assert_eq!(parse_graph(&graph_to_edge_list(&g)).unwrap(), g, "{name}");
    }
}

#[test]
fn structured_graph_keeps_isolated_declaration_errors() {
    let bad = r#"{"vertices": [1, 2, 3], "edges": [[1, 2]]}"#;
    assert!(matches!(parse_graph(bad), Err(IoError::Graph(_))));
    let unknown = r#"{"vertices": [1, 2], "edges": [[1, 3]]}"#;
    assert!(matches!(parse_graph(unknown), Err(IoError::Graph(_))));
}

#[test]
fn colorings_round_trip() {
    let g = named::k33();
    for c in enumerate_nap(&g, false).unwrap().colorings {
        let (g2, c2) = parse_coloring(&coloring_to_json(&g, &c)).unwrap();
        assert_eq!((g2, c2), (g.clone(), c));
    }
    let missing = r#"{"vertices": [1, 2, 3], "edges": [[1, 2], [2, 3]], "coloring": [[1, 2, "red"]]}"#;
    assert!(matches!(parse_coloring(missing), Err(IoError::Coloring(_))));
}

#[test]
fn trajectories_round_trip_bit_exactly() {
    let params = cda_params_from_e(0.75).unwrap();
    let ts: Vec<f64> = (0..20).map(|k| 8.0 + 0.37 * k as f64).collect();
    let traj = cda_motion(&params, &ts, CdaBranch::default()).unwrap();
    let text = trajectory_to_json(&traj);
    let back = parse_trajectory(&text).unwrap();
    assert_eq!(back, traj);
    assert_eq!(trajectory_to_json(&back), text);

    let k44 = dixon2_motion(
        &Dixon2Params { alpha: 0.2, beta: 0.15, gamma: 0.1 },
        &[0.5, 0.55],
        Dixon2Branch::default(),
    )
    .unwrap();
    assert_eq!(parse_trajectory(&trajectory_to_json(&k44)).unwrap(), k44);
}

#[test]
fn tabular_rows_have_parameter_coordinates_and_residual() {
    let params = cda_params_from_e(0.75).unwrap();
    let traj = cda_motion(&params, &[9.0, 10.0, 11.0], CdaBranch::default()).unwrap();
    let csv = trajectory_to_csv(&traj);
    let rows: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][0], "parameter");
    assert_eq!(rows[0][1..4], ["x1", "y1", "z1"]);
    for row in &rows[1..] {
        assert_eq!(row.len(), 20);
        let res: f64 = row[19].parse().unwrap();
        assert!(res <= 1e-12);
        // Coordinates are written at full precision.
        let z3: f64 = row[9].parse().unwrap();
        let t: f64 = row[0].parse().unwrap();
        assert_eq!(z3, (t * t - 1.0) / (t * t + 1.0));
    }
}

#[test]
fn off_sphere_points_are_rejected() {
    assert!(matches!(parse_realization(r#"{"1": [1.0, 1.0, 0.0]}"#), Err(IoError::Geometry(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn small_graphs_and_lengths_round_trip(idx in 0usize..358, seed in any::<u64>()) {
        let graphs = common::small_connected_graphs();
        let g = &graphs[idx % graphs.len()];
        prop_assert_eq!(&parse_graph(&graph_to_json(g)).unwrap(), g);
        prop_assert_eq!(&parse_graph(&graph_to_edge_list(g)).unwrap(), g);
        let lam = LengthAssignment::from_lambdas(g.edges().iter().enumerate().map(|(k, e)| {
            let x = ((seed >> (k % 32)) % 997) as f64 / 1000.0 + 0.001;
            (*e, x)
        })).unwrap();
        prop_assert_eq!(parse_lengths(&lengths_to_json(&lam)).unwrap(), lam);
    }
}
