//! Path tracing, circle-intersection counts, and empirical degrees.

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sphflex::continuation::*;
use sphflex::graph::{named, VertexPair};
use sphflex::motions::{
    cda_params_from_e, cda_parameter_of, cda_point, dixon1_motion, random_sphere_point, CdaBranch,
    Dixon1Params,
};
use sphflex::quad::{
    classify, diagonal_cosine, lozenge_realization, rhomboid_realization, QuadLengths, QuadTag, Symmetry,
};
use sphflex::spherical::{
    apply_rotation, delta, gram_distance, rotation_about_axis, LengthAssignment, SphericalRealization,
};

fn cda_seed() -> (sphflex::graph::Graph, LengthAssignment, SphericalRealization) {
    let g = named::k33();
    let params = cda_params_from_e(0.75).unwrap();
    let seed = cda_point(&params, 10.0, CdaBranch::default()).unwrap();
    let lam = LengthAssignment::induced(&g, &seed).unwrap();
    (g, lam, seed)
}

/// Smallest Gram distance between a traced sample and the closed form at the
/// sample's own parameter, over all branches.
fn closed_form_gap(rho: &SphericalRealization) -> Option<f64> {
    let params = cda_params_from_e(0.75).unwrap();
    let t = cda_parameter_of(rho);
    if !t.is_finite() || t.abs() > 1e6 {
        return None;
    }
    Some(
        CdaBranch::ALL
            .iter()
            .filter_map(|&b| cda_point(&params, t, b).ok())
            .map(|r| gram_distance(rho, &r))
            .fold(f64::INFINITY, f64::min),
    )
}

#[test]
fn residual_shape_and_zero_at_seed() {
    let (g, lam, seed) = cda_seed();
    let gauge = GaugeFix::for_seed(&g, &seed).unwrap();
    let fixed = gauge.apply(&seed).unwrap();
    let r = residual(&g, &lam, &fixed, &gauge).unwrap();
    assert_eq!(r.len(), 18);
    assert!(r.iter().all(|x| x.abs() <= 1e-12));
    assert_eq!(jacobian_corank(&g, &lam, &seed, &gauge).unwrap(), 1);
    // Perturbing vertex 3 touches its sphere row and its three edge rows only.
    let mut bad = fixed.clone();
    bad.set(3, fixed.at(3) + Vector3::new(1e-3, 2e-3, 3e-3));
    let r = residual(&g, &lam, &bad, &gauge).unwrap();
    let touched: Vec<usize> = (0..r.len()).filter(|&k| r[k].abs() > 1e-12).collect();
    let e = |a, b| 6 + g.edge_index(a, b).unwrap();
    let mut want = vec![2, e(2, 3), e(3, 4), e(3, 6)];
    want.sort();
    assert_eq!(touched, want);
}

#[test]
fn traced_cda_path_matches_closed_form() {
    let (g, lam, seed) = cda_seed();
    let cfg = TraceConfig {
        step_size: 0.02,
        max_steps: 400,
        ..Default::default()
    };
    for direction in [1.0, -1.0] {
        let tr = trace(&g, &lam, &seed, None, &TraceConfig { direction, ..cfg }).unwrap();
        assert!(tr.trajectory.samples.len() > 50);
        assert!(tr.max_residual <= 1e-12);
        assert!(tr.trajectory.max_edge_residual() <= 1e-9);
        assert!(tr.trajectory.consecutive_distinct(1e-9));
        let mut checked = 0;
        for s in &tr.trajectory.samples {
            let r = &s.realization;
            assert!((delta(&r.at(5), &r.at(6)) - 0.75).abs() <= 1e-9);
            if let Some(gap) = closed_form_gap(r) {
                assert!(gap <= 1e-6, "gap {gap}");
                checked += 1;
            }
        }
        assert!(checked > 50);
    }
}

#[test]
fn tracing_is_gauge_invariant() {
    let (g, lam, seed) = cda_seed();
    let rot = rotation_about_axis(&Vector3::new(0.3, -1.0, 0.4), 1.234);
    let cfg = TraceConfig {
        max_steps: 60,
        ..Default::default()
    };
    let a = trace(&g, &lam, &seed, None, &cfg).unwrap();
    let b = trace(&g, &lam, &apply_rotation(&rot, &seed), None, &cfg).unwrap();
    assert_eq!(a.trajectory.samples.len(), b.trajectory.samples.len());
    for (x, y) in a.trajectory.samples.iter().zip(&b.trajectory.samples) {
        assert!(gram_distance(&x.realization, &y.realization) <= 1e-7);
    }
}

#[test]
fn tangents_do_not_flip() {
    let (g, lam, seed) = cda_seed();
    let cfg = TraceConfig {
        max_steps: 150,
        ..Default::default()
    };
    let tr = trace(&g, &lam, &seed, None, &cfg).unwrap();
    let flat: Vec<Vec<f64>> = tr
        .trajectory
        .samples
        .iter()
        .map(|s| s.realization.iter().flat_map(|(_, p)| [p.x, p.y, p.z]).collect())
        .collect();
    let diffs: Vec<Vec<f64>> = flat
        .windows(2)
        .map(|w| w[1].iter().zip(&w[0]).map(|(a, b)| a - b).collect())
        .collect();
    for w in diffs.windows(2) {
        let dot: f64 = w[0].iter().zip(&w[1]).map(|(a, b)| a * b).sum();
        assert!(dot > 0.0);
    }
}

#[test]
fn triangle_is_reported_rigid() {
    let g = named::complete(3);
    let rho = SphericalRealization::from_points([
        (1, Vector3::new(1.0, 0.0, 0.0)),
        (2, Vector3::new(0.0, 1.0, 0.0)),
        (3, Vector3::new(0.0, 0.6, 0.8)),
    ])
    .unwrap();
    let lam = LengthAssignment::induced(&g, &rho).unwrap();
    assert_eq!(
        trace(&g, &lam, &rho, None, &TraceConfig::default()).unwrap_err(),
        ContinuationError::RankDeficient { corank: 0 }
    );
}

#[test]
fn seed_off_the_curve_is_rejected() {
    let (g, lam, mut seed) = cda_seed();
    seed.set(5, (seed.at(5) + Vector3::new(0.01, 0.0, 0.0)).normalize());
    assert!(matches!(
        trace(&g, &lam, &seed, None, &TraceConfig::default()),
        Err(ContinuationError::SeedNotOnCurve(_))
    ));
}

#[test]
fn dixon1_trace_stays_on_two_great_circles() {
    let p = Dixon1Params {
        c: [0.2, 0.4, 0.6],
        d: [0.3, 0.5, 0.7],
    };
    let traj = dixon1_motion(&p, &[1.2]).unwrap();
    let seed = &traj.samples[0].realization;
    let cfg = TraceConfig {
        max_steps: 200,
        ..Default::default()
    };
    let tr = trace(&traj.graph, &traj.lengths, seed, None, &cfg).unwrap();
    assert!(tr.trajectory.samples.len() > 20);
    for s in &tr.trajectory.samples {
        assert!(sphflex::motions::dixon1_residual(&s.realization) <= 1e-8);
    }
}

fn trace_quad(seed: &SphericalRealization) -> Trace {
    let g = named::k22();
    let lam = LengthAssignment::induced(&g, seed).unwrap();
    let cfg = TraceConfig {
        max_steps: 300,
        ..Default::default()
    };
    trace(&g, &lam, seed, None, &cfg).unwrap()
}

#[test]
fn traced_rhomboids_never_have_orthogonal_diagonals() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for sym in [Symmetry::HalfTurn, Symmetry::Mirror] {
        for anti in [false, true] {
            let seed = rhomboid_realization(
                random_sphere_point(&mut rng),
                random_sphere_point(&mut rng),
                random_sphere_point(&mut rng),
                sym,
                anti,
            );
            let q = QuadLengths::of_realization(&seed).unwrap();
            assert_eq!(classify(&q, 1e-9).unwrap().tag, QuadTag::Rhomboid);
            let tr = trace_quad(&seed);
            assert!(tr.trajectory.samples.len() > 20);
            for s in &tr.trajectory.samples {
                if let Ok(c) = diagonal_cosine(&s.realization) {
                    assert!(c.abs() > 1e-8);
                }
            }
        }
    }
}

#[test]
fn traced_lozenges_keep_orthogonal_diagonals() {
    let tr = trace_quad(&lozenge_realization(0.7, 1.1));
    assert!(tr.trajectory.samples.len() > 20);
    for s in &tr.trajectory.samples {
        if let Ok(c) = diagonal_cosine(&s.realization) {
            assert!(c.abs() <= 1e-8, "{c}");
        }
    }
}

/// Count sign changes of `⟨x(θ), n2⟩ - δ2` around the circle `⟨x, n1⟩ = δ1`.
fn dense_root_count(n1: Vector3<f64>, d1: f64, n2: Vector3<f64>, d2: f64) -> usize {
    if d1.abs() >= 1.0 {
        return 0;
    }
    let u = n1.cross(&Vector3::new(0.3, 0.7, -0.2)).normalize();
    let v = n1.cross(&u);
    let r = (1.0 - d1 * d1).sqrt();
    let f = |th: f64| (n1 * d1 + (u * th.cos() + v * th.sin()) * r).dot(&n2) - d2;
    let m = 20_000;
    (0..m)
        .filter(|&k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            let b = 2.0 * std::f64::consts::PI * (k + 1) as f64 / m as f64;
            f(a).signum() != f(b).signum()
        })
        .count()
}

#[test]
fn fiber_count_agrees_with_dense_root_finding() {
    let g = named::star(2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen = [0usize; 3];
    let mut done = 0;
    while done < 1000 {
        let n1 = random_sphere_point(&mut rng);
        let n2 = random_sphere_point(&mut rng);
        let d1: f64 = rng.random_range(-0.95..0.95);
        let d2: f64 = rng.random_range(-0.95..0.95);
        let lam = LengthAssignment::from_deltas([
            (VertexPair::new(1, 2).unwrap(), d1),
            (VertexPair::new(1, 3).unwrap(), d2),
        ])
        .unwrap();
        let partial = SphericalRealization::from_points_unchecked([(2, n1), (3, n2)]);
        // Skip near-tangent instances, where a grid cannot resolve the roots.
        let gdot = n1.dot(&n2);
        let det = 1.0 - gdot * gdot;
        let a = (d1 - gdot * d2) / det;
        let b = (d2 - gdot * d1) / det;
        let c2 = (1.0 - (n1 * a + n2 * b).norm_squared()) / det;
        if c2.abs() < 1e-3 {
            continue;
        }
        let got = fiber_count(&g, &lam, &partial, 1, 1e-12).unwrap();
        assert_eq!(got, dense_root_count(n1, d1, n2, d2));
        seen[got] += 1;
        done += 1;
    }
    assert!(seen[0] > 0 && seen[2] > 0);
}

#[test]
fn fiber_count_needs_two_neighbours() {
    let g = named::star(2);
    let lam = LengthAssignment::from_deltas([
        (VertexPair::new(1, 2).unwrap(), 0.1),
        (VertexPair::new(1, 3).unwrap(), 0.2),
    ])
    .unwrap();
    let partial = SphericalRealization::from_points_unchecked([(2, Vector3::new(1.0, 0.0, 0.0))]);
    assert_eq!(
        fiber_count(&g, &lam, &partial, 1, 1e-12),
        Err(ContinuationError::UnderConstrained(1))
    );
}

#[test]
fn fiber_with_extra_neighbour_filters_candidates() {
    // Vertex 1 at (0,0,1); neighbours on the equator and one more above.
    let g = named::star(3);
    let x = Vector3::new(0.0, 0.6, 0.8);
    let n = [
        Vector3::new(1.0, 0.0, 0.0),
        Vector3::new(0.0, 1.0, 0.0),
        Vector3::new(0.0, 0.0, 1.0),
    ];
    let lam = LengthAssignment::from_deltas(
        (0..3).map(|k| (VertexPair::new(1, k as u32 + 2).unwrap(), x.dot(&n[k]))),
    )
    .unwrap();
    let partial = SphericalRealization::from_points_unchecked((0..3).map(|k| (k as u32 + 2, n[k])));
    assert_eq!(fiber_count(&g, &lam, &partial, 1, 1e-12).unwrap(), 1);
}
