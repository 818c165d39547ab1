//! Motion generators: compatibility, distinctness, closed-form cross-checks,
//! and generator–detector round trips.

use std::collections::BTreeSet;

use nalgebra::{Matrix3, Vector3};
use sphflex::coloring::{enumerate_nap, flexibility_certificate};
use sphflex::continuation::empirical_map_degree;
use sphflex::graph::named;
use sphflex::motions::*;
use sphflex::spherical::{delta, gram_distance, SphericalRealization};

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

// --- polar NAP motion ---------------------------------------------------------

#[test]
fn polar_motion_of_every_k33_coloring() {
    let g = named::k33();
    let set = enumerate_nap(&g, true).unwrap();
    assert_eq!(set.len(), 6);
    for c in &set.colorings {
        let traj = polar_nap_motion(&g, c, &full_turn(100), &BTreeSet::new(), 7).unwrap();
        assert_eq!(traj.samples.len(), 100);
        assert!(traj.max_edge_residual() <= 1e-12);
        assert!(traj.all_pairs_distinct(1e-9));
    }
}

#[test]
fn polar_motion_flags_identified_vertices() {
    let g = named::two_triangles_with_apex();
    let c = flexibility_certificate(&g).unwrap();
    let traj = polar_nap_motion(&g, &c, &[0.0, 0.5, 1.0], &BTreeSet::new(), 1).unwrap();
    assert!(traj.statuses(1e-12).iter().all(|s| !s.injective()));
    // One pole sent South instead: the two poles become antipodal.
    let south: BTreeSet<u32> = [4].into();
    let traj = polar_nap_motion(&g, &c, &[0.0, 0.5, 1.0], &south, 1).unwrap();
    assert!(traj.statuses(1e-12).iter().all(|s| s.injective() && !s.antipodal.is_empty()));
    assert!(traj.max_edge_residual() <= 1e-12);
}

#[test]
fn polar_motion_rejects_a_single_angle_repeated() {
    let g = named::k33();
    let c = enumerate_nap(&g, true).unwrap().colorings[0].clone();
    assert_eq!(
        polar_nap_motion(&g, &c, &[0.0, 0.0], &BTreeSet::new(), 1),
        Err(MotionError::NotDistinct)
    );
}

// --- Dixon 1 ------------------------------------------------------------------

fn dixon1_params() -> Dixon1Params {
    Dixon1Params {
        c: [0.2, 0.4, 0.6],
        d: [0.3, 0.5, 0.7],
    }
}

#[test]
fn dixon1_lengths_are_products() {
    let p = dixon1_params();
    let traj = dixon1_motion(&p, &[1.0, 1.1, 1.2]).unwrap();
    assert!(traj.max_edge_residual() <= 1e-12);
    for s in &traj.samples {
        let r = &s.realization;
        for (i, odd) in [1, 3, 5].into_iter().enumerate() {
            assert_eq!(r.at(odd).y, 0.0);
            for (j, even) in [2, 4, 6].into_iter().enumerate() {
                assert!((delta(&r.at(odd), &r.at(even)) - p.c[i] * p.d[j]).abs() <= 1e-12);
            }
        }
    }
    assert_eq!(detect_k33_motion_kind(&traj, 1e-10).unwrap(), MotionKind::Dixon1);
    assert!(matches!(dixon1_motion(&p, &[2.0]), Err(MotionError::DomainViolation(_))));
}

#[test]
fn dixon1_loop_has_degree_four_over_the_quadrilateral() {
    let traj = dixon1_closed_loop(&dixon1_params(), 15).unwrap();
    assert!(traj.max_edge_residual() <= 1e-12);
    assert_eq!(detect_k33_motion_kind(&traj, 1e-10).unwrap(), MotionKind::Dixon1);
    assert_eq!(empirical_map_degree(&traj, &[5, 6], 1e-9).unwrap(), 4);
    assert_eq!(empirical_map_degree(&traj, &[], 1e-9).unwrap(), 1);
}

// --- Dixon 2 ------------------------------------------------------------------

#[test]
fn dixon2_round_trip() {
    let params = Dixon2Params {
        alpha: 0.2,
        beta: 0.15,
        gamma: 0.1,
    };
    let traj = dixon2_motion(&params, &[0.5, 0.55, 0.6], Dixon2Branch::default()).unwrap();
    assert_eq!(traj.graph.edge_count(), 16);
    assert!(traj.max_edge_residual() <= 1e-12);
    let [rx, ry, rz] = klein_rotations();
    assert!((rx * ry * rz - Matrix3::identity()).norm() <= 1e-15);
    let k33 = traj.restricted(&[1, 2, 3, 4, 5, 6]).unwrap();
    assert_eq!(detect_k33_motion_kind(&k33, 1e-9).unwrap(), MotionKind::Dixon2);
    let upper = Dixon2Branch {
        upper: true,
        ..Default::default()
    };
    let traj = dixon2_motion(&params, &[0.5, 0.55, 0.6], upper).unwrap();
    assert!(traj.max_edge_residual() <= 1e-12);
    assert!(matches!(
        dixon2_motion(&params, &[0.99], Dixon2Branch::default()),
        Err(MotionError::NoRealSolution(_))
    ));
}

// --- constant diagonal angle --------------------------------------------------

/// The displayed radical parametrization at `a = 3/5`, `e = 3/4`.
fn cda_reference(t: f64, s2: f64, s5: f64) -> SphericalRealization {
    let a = 0.6;
    let y2 = s2 * ((t + 7.0) * (7.0 * t + 1.0)).sqrt() / (5.0 * t + 5.0);
    let rad = 25.0 * t.powi(4) * y2 * y2 - 50.0 * t * t * y2 * y2 - 72.0 * t.powi(3) + 25.0 * y2 * y2 - 72.0 * t;
    let z5 = (-5.0 * y2 * t * t + 5.0 * y2 + s5 * rad.sqrt()) / (8.0 * (t * t + 1.0));
    let x5 = t * (16.0 * z5 * z5 + 9.0) / (8.0 * z5 * (t * t - 1.0));
    let y4 = y2 + 8.0 * (t * t + 1.0) * z5 / (5.0 * (t * t - 1.0));
    SphericalRealization::from_points_unchecked([
        (1, Vector3::new(1.0, 0.0, 0.0)),
        (2, Vector3::new(a, y2, a * (t - 1.0) / (t + 1.0))),
        (3, Vector3::new(2.0 * t, 0.0, t * t - 1.0) / (t * t + 1.0)),
        (4, Vector3::new(a, y4, -a * (t + 1.0) / (t - 1.0))),
        (5, Vector3::new(x5, 0.75, z5)),
        (6, Vector3::new(0.0, 1.0, 0.0)),
    ])
}

#[test]
fn cda_matches_displayed_parametrization() {
    let params = cda_params_from_e(0.75).unwrap();
    for t in linspace(8.0, 20.0, 25) {
        for b in CdaBranch::ALL {
            let ours = cda_point(&params, t, b).unwrap();
            let best = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
                .iter()
                .map(|&(s2, s5)| gram_distance(&ours, &cda_reference(t, s2, s5)))
                .fold(f64::INFINITY, f64::min);
            assert!(best <= 1e-12, "t = {t}: {best}");
        }
    }
}

#[test]
fn cda_invariants() {
    let params = cda_params_from_e(0.75).unwrap();
    let traj = cda_motion(&params, &linspace(8.0, 20.0, 50), CdaBranch::default()).unwrap();
    assert!(traj.max_edge_residual() <= 1e-9);
    assert!(traj.max_sphere_residual() <= 1e-9);
    assert!(traj.consecutive_distinct(1e-9));
    let l = &traj.lengths;
    for (a, b, want) in [
        (1, 2, 0.6),
        (1, 4, 0.6),
        (3, 2, 0.6),
        (3, 4, -0.6),
        (5, 2, 0.0),
        (5, 4, 0.0),
        (3, 6, 0.0),
        (1, 6, 0.0),
        (5, 6, 0.75),
    ] {
        assert!((l.delta_of(a, b) - want).abs() <= 1e-9, "{a}{b}");
    }
    for s in &traj.samples {
        let r = &s.realization;
        assert!((delta(&r.at(5), &r.at(6)) - 0.75).abs() <= 1e-9);
        // 5 and 6 are dual to the diagonals 2-4 and 1-3.
        assert!(delta(&r.at(5), &r.at(2)).abs() <= 1e-9 && delta(&r.at(5), &r.at(4)).abs() <= 1e-9);
        assert!(delta(&r.at(6), &r.at(1)).abs() <= 1e-9 && delta(&r.at(6), &r.at(3)).abs() <= 1e-9);
        assert!((cda_parameter_of(r) - s.parameter).abs() <= 1e-9 * s.parameter);
    }
    assert_eq!(detect_k33_motion_kind(&traj, 1e-9).unwrap(), MotionKind::ConstDiagAngle);
}

#[test]
fn cda_other_parameters() {
    for e in [0.5, -0.3, 0.9] {
        let params = cda_params_from_e(e).unwrap();
        assert!(params.relation_residual().abs() <= 1e-15);
        let intervals = cda_feasible_intervals(&params, CdaBranch::default(), 1.5, 60.0, 2000);
        let (lo, hi) = intervals
            .into_iter()
            .max_by(|x, y| (x.1 - x.0).total_cmp(&(y.1 - y.0)))
            .unwrap();
        let ts = linspace(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo), 20);
        let traj = cda_motion(&params, &ts, CdaBranch::default()).unwrap();
        assert!(traj.max_edge_residual() <= 1e-9, "e = {e}");
        assert!(traj.max_sphere_residual() <= 1e-9, "e = {e}");
        assert_eq!(detect_k33_motion_kind(&traj, 1e-9).unwrap(), MotionKind::ConstDiagAngle);
    }
}

#[test]
fn cda_domain_errors() {
    let params = cda_params_from_e(0.75).unwrap();
    assert_eq!(cda_point(&params, 1.0, CdaBranch::default()), Err(MotionError::PoleT(1.0)));
    assert_eq!(cda_point(&params, -1.0, CdaBranch::default()), Err(MotionError::PoleT(-1.0)));
    assert!(matches!(
        cda_point(&params, 2.0, CdaBranch::default()),
        Err(MotionError::NegativeDiscriminant(_))
    ));
    let off = CdaParams { a: 0.5, e: 0.75 };
    assert!(cda_motion(&off, &[10.0], CdaBranch::default()).is_err());
}

#[test]
fn cda_feasible_set_at_reference_values() {
    let params = cda_params_from_e(0.75).unwrap();
    let iv = cda_feasible_intervals(&params, CdaBranch::default(), 0.5, 30.0, 29_500);
    assert_eq!(iv.len(), 1);
    assert!((iv[0].0 - 7.0).abs() <= 2e-3 && iv[0].1 == 30.0);
    let iv = cda_feasible_intervals(&params, CdaBranch::default(), 0.001, 0.5, 4_990);
    assert_eq!(iv.len(), 1);
    assert!((iv[0].1 - 1.0 / 7.0).abs() <= 2e-4);
}

#[test]
fn detector_requires_enough_samples() {
    let traj = dixon1_motion(&dixon1_params(), &[1.0, 1.1]).unwrap();
    assert!(matches!(
        detect_k33_motion_kind(&traj, 1e-10),
        Err(MotionError::InsufficientSamples { .. })
    ));
}
