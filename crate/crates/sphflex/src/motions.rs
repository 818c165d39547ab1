//! Explicit one-parameter motions: the polar motion of a NAP-colored graph,
//! and the three motions of `K_{3,3}` (Dixon 1, Dixon 2, constant diagonal
//! angle), together with a detector that recognizes them from samples.
//!
//! Purpose
//! - Produce sampled trajectories whose samples are all compatible with one
//!   length assignment and pairwise essentially distinct. Such a trajectory
//!   is a numerical witness of flexibility.
//!
//! Why this design
//! - Each generator is a closed-form map from a parameter to a realization.
//!   Samples can therefore be computed independently, in parallel, and to
//!   full double precision. The continuation module is the independent check
//!   that the same curves come out of the constraint equations alone.
//! - Branch choices, such as signs of square roots, are explicit arguments.
//!   When a branch does not exist at a parameter value, that is an error, not
//!   a silent switch to another branch.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{nap_pole_partition, EdgeColoring};
use crate::graph::{named, Graph, Vertex, VertexPair};
use crate::spherical::{
    delta, essentially_distinct, is_essentially_distinct, max_edge_residual, orthogonal_fit,
    rotation_about_axis, GeometryError, LengthAssignment, SphericalRealization,
};
use crate::tol;

/// Errors from motion generators and the detector.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MotionError {
    #[error("coloring is not a NAP-coloring")]
    NotNap,
    #[error("no parameter values supplied")]
    NoParameters,
    #[error("parameter {0} leaves the real domain of the motion")]
    DomainViolation(f64),
    #[error("p1 = {0} admits no real solution")]
    NoRealSolution(f64),
    #[error("a coordinate of p vanishes; the involution axes degenerate")]
    DegenerateAxis,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("t = {0} is a pole of the parametrization")]
    PoleT(f64),
    #[error("negative discriminant at t = {0}")]
    NegativeDiscriminant(f64),
    #[error("division by zero at t = {0}")]
    ZeroDivisor(f64),
    #[error("fewer than two essentially distinct samples")]
    NotDistinct,
    #[error("need at least {need} essentially distinct samples, got {got}")]
    InsufficientSamples { need: usize, got: usize },
    #[error("sample {0} has coincident or antipodal vertices")]
    DegenerateRealization(usize),
    #[error("trajectory is not over K33")]
    NotK33,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// What produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MotionKind {
    PolarNap,
    Dixon1,
    Dixon2,
    ConstDiagAngle,
    Traced,
    Unclassified,
}

impl MotionKind {
    pub fn name(self) -> &'static str {
        match self {
            MotionKind::PolarNap => "polar_nap",
            MotionKind::Dixon1 => "dixon1",
            MotionKind::Dixon2 => "dixon2",
            MotionKind::ConstDiagAngle => "const_diag_angle",
            MotionKind::Traced => "traced",
            MotionKind::Unclassified => "unclassified",
        }
    }
}

/// One sample of a motion.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub parameter: f64,
    pub realization: SphericalRealization,
}

/// Injectivity status of one sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleStatus {
    pub coincident: Vec<VertexPair>,
    pub antipodal: Vec<VertexPair>,
}

impl SampleStatus {
    pub fn injective(&self) -> bool {
        self.coincident.is_empty()
    }
}

/// A sampled motion of a graph with fixed lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionTrajectory {
    pub graph: Graph,
    pub lengths: LengthAssignment,
    pub samples: Vec<Sample>,
    pub kind: MotionKind,
}

impl MotionTrajectory {
    /// Largest edge residual `|d - λ|` over all samples.
    pub fn max_edge_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| max_edge_residual(&self.graph, &s.realization, &self.lengths).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// Largest `| |x|² - 1 |` over all samples.
    pub fn max_sphere_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.realization.max_sphere_residual())
            .fold(0.0, f64::max)
    }

    pub fn statuses(&self, tol: f64) -> Vec<SampleStatus> {
        self.samples
            .iter()
            .map(|s| SampleStatus {
                coincident: s.realization.coincident_pairs(tol),
                antipodal: s.realization.antipodal_pairs(tol),
            })
            .collect()
    }

    /// True if every pair of samples is essentially distinct.
    pub fn all_pairs_distinct(&self, tol: f64) -> bool {
        let n = self.samples.len();
        (0..n).into_par_iter().all(|i| {
            (i + 1..n).all(|j| {
                is_essentially_distinct(&self.samples[i].realization, &self.samples[j].realization, tol)
            })
        })
    }

    /// True if consecutive samples are essentially distinct.
    pub fn consecutive_distinct(&self, tol: f64) -> bool {
        self.samples
            .windows(2)
            .all(|w| is_essentially_distinct(&w[0].realization, &w[1].realization, tol))
    }

    /// Number of essentially distinct classes among the samples.
    pub fn distinct_count(&self, tol: f64) -> usize {
        let mut reps: Vec<&SphericalRealization> = Vec::new();
        for s in &self.samples {
            if reps.iter().all(|r| is_essentially_distinct(r, &s.realization, tol)) {
                reps.push(&s.realization);
            }
        }
        reps.len()
    }

    /// The trajectory of the induced subgraph on `keep`.
    pub fn restricted(&self, keep: &[Vertex]) -> Result<Self, MotionError> {
        let set: BTreeSet<Vertex> = keep.iter().copied().collect();
        let graph = self
            .graph
            .induced_subgraph(&set)
            .map_err(|e| MotionError::OutOfRange(e.to_string()))?;
        Ok(Self {
            lengths: self.lengths.restricted(&graph),
            samples: self
                .samples
                .iter()
                .map(|s| Sample {
                    parameter: s.parameter,
                    realization: s.realization.restricted(keep),
                })
                .collect(),
            graph,
            kind: self.kind,
        })
    }
}

fn trajectory(
    graph: Graph,
    samples: Vec<Sample>,
    kind: MotionKind,
) -> Result<MotionTrajectory, MotionError> {
    let first = samples.first().ok_or(MotionError::NoParameters)?;
    let lengths = LengthAssignment::induced(&graph, &first.realization)?;
    Ok(MotionTrajectory {
        graph,
        lengths,
        samples,
        kind,
    })
}

// ---------------------------------------------------------------------------
// Polar NAP motion
// ---------------------------------------------------------------------------

/// The polar axis.
pub const NORTH: Vector3<f64> = Vector3::new(1.0, 0.0, 0.0);

/// Random point of the sphere, uniformly distributed.
pub fn random_sphere_point(rng: &mut impl Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Motion of a NAP-colored graph: bichromatic vertices on the poles
/// `±(1,0,0)` (those in `south` at the South pole, the rest North), the
/// red-only side fixed at generic positions, and the blue-only side rotated
/// about the polar axis by each angle.
///
/// Positions come from a ChaCha RNG seeded with `seed`, so runs are reproducible.
pub fn polar_nap_motion(
    g: &Graph,
    c: &EdgeColoring,
    angles: &[f64],
    south: &BTreeSet<Vertex>,
    seed: u64,
) -> Result<MotionTrajectory, MotionError> {
    if angles.is_empty() {
        return Err(MotionError::NoParameters);
    }
    let part = nap_pole_partition(g, c).map_err(|_| MotionError::NotNap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut base = SphericalRealization::new();
    for &v in g.vertices() {
        let p = if part.poles.contains(&v) {
            if south.contains(&v) {
                -NORTH
            } else {
                NORTH
            }
        } else {
            random_sphere_point(&mut rng)
        };
        base.set(v, p);
    }
    let samples: Vec<Sample> = angles
        .iter()
        .map(|&theta| {
            let rot = rotation_about_axis(&NORTH, theta);
            let mut rho = base.clone();
            for &v in &part.blue_side {
                rho.set(v, rot * base.at(v));
            }
            Sample {
                parameter: theta,
                realization: rho,
            }
        })
        .collect();
    let traj = trajectory(g.clone(), samples, MotionKind::PolarNap)?;
    if traj.distinct_count(tol::DISTINCTNESS) < 2 {
        return Err(MotionError::NotDistinct);
    }
    Ok(traj)
}

/// `n` equally spaced angles in `[0, 2π)`.
pub fn full_turn(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

// ---------------------------------------------------------------------------
// Dixon 1
// ---------------------------------------------------------------------------

/// Parameters of a Dixon-1 motion: `δ(i, j) = c_i · d_j` for odd `i ∈ {1,3,5}`
/// and even `j ∈ {2,4,6}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dixon1Params {
    pub c: [f64; 3],
    pub d: [f64; 3],
}

impl Dixon1Params {
    /// Parameter range `[max |d|, 1 / max |c|]` on which all placements are real.
    pub fn s_range(&self) -> (f64, f64) {
        let cm = self.c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let dm = self.d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        (dm, 1.0 / cm)
    }
}

/// Signs of the cosines of odd (first) and even (second) vertices.
pub type Dixon1Signs = ([f64; 3], [f64; 3]);

fn dixon1_point(p: &Dixon1Params, s: f64, signs: &Dixon1Signs) -> Result<SphericalRealization, MotionError> {
    if s == 0.0 || !s.is_finite() {
        return Err(MotionError::DomainViolation(s));
    }
    let mut rho = SphericalRealization::new();
    for k in 0..3 {
        let st = p.c[k] * s;
        let sp = p.d[k] / s;
        if st.abs() > 1.0 || sp.abs() > 1.0 {
            return Err(MotionError::DomainViolation(s));
        }
        let ct = signs.0[k] * (1.0 - st * st).max(0.0).sqrt();
        let cp = signs.1[k] * (1.0 - sp * sp).max(0.0).sqrt();
        rho.set(2 * k as Vertex + 1, Vector3::new(ct, 0.0, st));
        rho.set(2 * k as Vertex + 2, Vector3::new(0.0, cp, sp));
    }
    Ok(rho)
}

/// Dixon-1 motion: odd vertex `i` at `(cos θ_i, 0, sin θ_i)` with
/// `sin θ_i = c_i s`, even vertex `j` at `(0, cos φ_j, sin φ_j)` with
/// `sin φ_j = d_j / s`; all cosines positive.
pub fn dixon1_motion(params: &Dixon1Params, s_values: &[f64]) -> Result<MotionTrajectory, MotionError> {
    let signs = ([1.0; 3], [1.0; 3]);
    let samples = s_values
        .iter()
        .map(|&s| {
            Ok(Sample {
                parameter: s,
                realization: dixon1_point(params, s, &signs)?,
            })
        })
        .collect::<Result<Vec<_>, MotionError>>()?;
    trajectory(named::k33(), samples, MotionKind::Dixon1)
}

/// The closed real Dixon-1 loop, sampled at `per_pass` interior points of
/// each of its four passes over the `s`-range.
///
/// The odd vertex with the largest `|c|` and the even vertex with the largest
/// `|d|` reach a circle's extreme point at the ends of the range, where their
/// cosine changes sign; the loop visits all four sign combinations. Every pass
/// uses the same `s`-grid, so each configuration of the other four vertices
/// appears four times. The sample parameter is the loop coordinate in `[0, 4)`.
pub fn dixon1_closed_loop(params: &Dixon1Params, per_pass: usize) -> Result<MotionTrajectory, MotionError> {
    if per_pass == 0 {
        return Err(MotionError::NoParameters);
    }
    let (lo, hi) = params.s_range();
    if lo >= hi {
        return Err(MotionError::DomainViolation(lo));
    }
    let argmax = |xs: &[f64; 3]| {
        (0..3)
            .max_by(|&a, &b| xs[a].abs().total_cmp(&xs[b].abs()))
            .unwrap()
    };
    let (ko, ke) = (argmax(&params.c), argmax(&params.d));
    // (sign of odd extreme cosine, sign of even extreme cosine, s increasing?)
    let passes = [(1.0, 1.0, true), (-1.0, 1.0, false), (-1.0, -1.0, true), (1.0, -1.0, false)];
    let mut samples = Vec::with_capacity(4 * per_pass);
    for (pass, &(so, se, up)) in passes.iter().enumerate() {
        let mut signs = ([1.0; 3], [1.0; 3]);
        signs.0[ko] = so;
        signs.1[ke] = se;
        for k in 0..per_pass {
            let u = (k as f64 + 0.5) / per_pass as f64;
            let frac = if up { u } else { 1.0 - u };
            let s = lo + (hi - lo) * frac;
            samples.push(Sample {
                parameter: pass as f64 + u,
                realization: dixon1_point(params, s, &signs)?,
            });
        }
    }
    trajectory(named::k33(), samples, MotionKind::Dixon1)
}

// ---------------------------------------------------------------------------
// Dixon 2
// ---------------------------------------------------------------------------

/// Parameters of a Dixon-2 motion: coordinate products `p_k q_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dixon2Params {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// Which root of the `p2`-equation to follow, and signs of `p2`, `p3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dixon2Branch {
    /// Take the larger root for `p2²`.
    pub upper: bool,
    pub p2_positive: bool,
    pub p3_positive: bool,
}

impl Default for Dixon2Branch {
    fn default() -> Self {
        Self {
            upper: false,
            p2_positive: true,
            p3_positive: true,
        }
    }
}

/// π-rotations about the coordinate axes.
pub fn klein_rotations() -> [Matrix3<f64>; 3] {
    [
        Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, -1.0)),
        Matrix3::from_diagonal(&Vector3::new(-1.0, 1.0, -1.0)),
        Matrix3::from_diagonal(&Vector3::new(-1.0, -1.0, 1.0)),
    ]
}

/// Solve for `p = (p1, p2, p3)` on the sphere with `q = (α/p1, β/p2, γ/p3)`
/// also on the sphere.
///
/// With `u = p2²` and `W = 1 - p1²`, the condition is
/// `α²/p1² + β²/u + γ²/(W - u) = 1`, a convex function of `u ∈ (0, W)` with
/// its minimum at `u* = W|β|/(|β| + |γ|)`. Each side of the minimum holds one
/// root, found by bisection.
pub fn dixon2_solve(
    params: &Dixon2Params,
    p1: f64,
    branch: Dixon2Branch,
) -> Result<(Vector3<f64>, Vector3<f64>), MotionError> {
    let Dixon2Params { alpha, beta, gamma } = *params;
    if p1 == 0.0 || beta == 0.0 || gamma == 0.0 || alpha == 0.0 {
        return Err(MotionError::DegenerateAxis);
    }
    let w = 1.0 - p1 * p1;
    if w <= 0.0 {
        return Err(MotionError::NoRealSolution(p1));
    }
    let (b2, g2) = (beta * beta, gamma * gamma);
    let f = |u: f64| (alpha * alpha) / (p1 * p1) + b2 / u + g2 / (w - u) - 1.0;
    let ustar = w * beta.abs() / (beta.abs() + gamma.abs());
    if f(ustar) > 0.0 {
        return Err(MotionError::NoRealSolution(p1));
    }
    // f(ustar) <= 0 and f -> +inf at the ends: bracket [ustar, end].
    let (mut lo, mut hi) = if branch.upper { (ustar, w) } else { (0.0, ustar) };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let inside = f(mid) <= 0.0;
        // On the lower branch f decreases towards ustar; on the upper it increases.
        if inside == branch.upper {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * w {
            break;
        }
    }
    let u = 0.5 * (lo + hi);
    let p2 = u.sqrt() * if branch.p2_positive { 1.0 } else { -1.0 };
    let p3 = (w - u).max(0.0).sqrt() * if branch.p3_positive { 1.0 } else { -1.0 };
    if p2 == 0.0 || p3 == 0.0 {
        return Err(MotionError::DegenerateAxis);
    }
    let p = Vector3::new(p1, p2, p3);
    let q = Vector3::new(alpha / p1, beta / p2, gamma / p3);
    Ok((p, q))
}

/// Dixon-2 motion on `K_{4,4}`: odd vertices `1, 3, 5, 7` are
/// `p, Rx·p, Ry·p, Rz·p`; even vertices `2, 4, 6, 8` the same orbit of `q`.
/// Drop vertices 7 and 8 (see [`MotionTrajectory::restricted`]) for `K_{3,3}`.
pub fn dixon2_motion(
    params: &Dixon2Params,
    p1_values: &[f64],
    branch: Dixon2Branch,
) -> Result<MotionTrajectory, MotionError> {
    let [rx, ry, rz] = klein_rotations();
    let group = [Matrix3::identity(), rx, ry, rz];
    let samples = p1_values
        .iter()
        .map(|&p1| {
            let (p, q) = dixon2_solve(params, p1, branch)?;
            let mut rho = SphericalRealization::new();
            for (k, g) in group.iter().enumerate() {
                rho.set(2 * k as Vertex + 1, g * p);
                rho.set(2 * k as Vertex + 2, g * q);
            }
            Ok(Sample {
                parameter: p1,
                realization: rho,
            })
        })
        .collect::<Result<Vec<_>, MotionError>>()?;
    trajectory(named::k44(), samples, MotionKind::Dixon2)
}

// ---------------------------------------------------------------------------
// Constant diagonal angle
// ---------------------------------------------------------------------------

/// Parameters of a constant-diagonal-angle motion: `a` is the δ of edges
/// 12, 14, 23 (and `-a` of 34); `e = δ(5, 6)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CdaParams {
    pub a: f64,
    pub e: f64,
}

impl CdaParams {
    /// `a³e² + a³ - ae²`, zero on the admissible curve.
    pub fn relation_residual(&self) -> f64 {
        let (a, e) = (self.a, self.e);
        a * a * a * e * e + a * a * a - a * e * e
    }
}

/// Exact relation residual `a³e² + a³ - ae²` in rational arithmetic.
pub fn cda_relation_exact(a: Ratio<i64>, e: Ratio<i64>) -> Ratio<i64> {
    a * a * a * e * e + a * a * a - a * e * e
}

/// `a = e / √(e² + 1)` (positive branch).
pub fn cda_params_from_e(e: f64) -> Result<CdaParams, MotionError> {
    if e.is_nan() || e.abs() >= 1.0 || e == 0.0 {
        return Err(MotionError::OutOfRange(format!("e = {e} must lie in (-1, 1) without 0")));
    }
    Ok(CdaParams {
        a: e / (e * e + 1.0).sqrt(),
        e,
    })
}

/// Signs of the two square roots of the parametrization (`y2` and `z5`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdaBranch {
    pub s2: i8,
    pub s5: i8,
}

impl CdaBranch {
    pub const ALL: [CdaBranch; 4] = [
        CdaBranch { s2: 1, s5: 1 },
        CdaBranch { s2: 1, s5: -1 },
        CdaBranch { s2: -1, s5: 1 },
        CdaBranch { s2: -1, s5: -1 },
    ];
}

impl Default for CdaBranch {
    fn default() -> Self {
        Self { s2: 1, s5: 1 }
    }
}

/// Realization at parameter `t`.
///
/// `R1 = (1,0,0)`, `R6 = (0,1,0)`, `R3 = (2t, 0, t²-1)/(t²+1)`,
/// `R2 = (a, y2, z2)` and `R4 = (a, y4, z4)` with `z2 = a(t-1)/(t+1)`,
/// `z4 = -a(t+1)/(t-1)`, `R5 = (x5, e, z5)`. Here `y2` solves `|R2| = 1`, and
/// `x5`, `z5` solve `⟨R5,R2⟩ = 0`, `|R5| = 1`. Finally `y4` solves
/// `⟨R5,R4⟩ = 0`; `|R4| = 1` then holds exactly when `(a, e)` satisfies the
/// relation.
pub fn cda_point(params: &CdaParams, t: f64, branch: CdaBranch) -> Result<SphericalRealization, MotionError> {
    let CdaParams { a, e } = *params;
    if t == 0.0 || (t - 1.0).abs() == 0.0 || (t + 1.0).abs() == 0.0 || !t.is_finite() {
        return Err(MotionError::PoleT(t));
    }
    if a == 0.0 || e == 0.0 {
        return Err(MotionError::ZeroDivisor(t));
    }
    let r3 = Vector3::new(2.0 * t, 0.0, t * t - 1.0) / (t * t + 1.0);
    let z2 = a * (t - 1.0) / (t + 1.0);
    let z4 = -a * (t + 1.0) / (t - 1.0);
    let rad2 = 1.0 - a * a - z2 * z2;
    if rad2 < 0.0 {
        return Err(MotionError::NegativeDiscriminant(t));
    }
    let y2 = f64::from(branch.s2) * rad2.sqrt();
    // x5 = -(e y2 + z2 z5)/a; x5² + e² + z5² = 1.
    let qa = (z2 / a).powi(2) + 1.0;
    let qb = 2.0 * e * y2 * z2 / (a * a);
    let qc = (e * y2 / a).powi(2) - (1.0 - e * e);
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return Err(MotionError::NegativeDiscriminant(t));
    }
    let z5 = (-qb + f64::from(branch.s5) * disc.sqrt()) / (2.0 * qa);
    let x5 = -(e * y2 + z2 * z5) / a;
    let y4 = -(a * x5 + z4 * z5) / e;
    Ok(SphericalRealization::from_points_unchecked([
        (1, Vector3::new(1.0, 0.0, 0.0)),
        (2, Vector3::new(a, y2, z2)),
        (3, r3),
        (4, Vector3::new(a, y4, z4)),
        (5, Vector3::new(x5, e, z5)),
        (6, Vector3::new(0.0, 1.0, 0.0)),
    ]))
}

/// Constant-diagonal-angle motion sampled at `t_values` on one branch.
pub fn cda_motion(
    params: &CdaParams,
    t_values: &[f64],
    branch: CdaBranch,
) -> Result<MotionTrajectory, MotionError> {
    if params.relation_residual().abs() > 1e-12 {
        return Err(MotionError::OutOfRange(format!(
            "(a, e) = ({}, {}) violates the relation",
            params.a, params.e
        )));
    }
    let samples = t_values
        .par_iter()
        .map(|&t| {
            Ok(Sample {
                parameter: t,
                realization: cda_point(params, t, branch)?,
            })
        })
        .collect::<Result<Vec<_>, MotionError>>()?;
    trajectory(named::k33(), samples, MotionKind::ConstDiagAngle)
}

/// Maximal sub-intervals of `[lo, hi]` (sampled at `n + 1` points) on which
/// the branch is real, as closed intervals of grid points.
pub fn cda_feasible_intervals(
    params: &CdaParams,
    branch: CdaBranch,
    lo: f64,
    hi: f64,
    n: usize,
) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    let mut last = lo;
    for k in 0..=n {
        let t = lo + (hi - lo) * k as f64 / n as f64;
        let ok = cda_point(params, t, branch).is_ok();
        match (ok, start) {
            (true, None) => start = Some(t),
            (false, Some(s)) => {
                out.push((s, last));
                start = None;
            }
            _ => {}
        }
        last = t;
    }
    if let Some(s) = start {
        out.push((s, last));
    }
    out
}

/// Parameter `t` of a cda realization in the standard frame:
/// `t = (1 + z3) / x3` inverts `R3 = (2t, 0, t²-1)/(t²+1)`.
///
/// For an arbitrary rotation of such a realization, `x3 = δ(1,3)` and
/// `z3 = det[R1, R6, R3]`.
pub fn cda_parameter_of(rho: &SphericalRealization) -> f64 {
    let (r1, r3, r6) = (rho.at(1), rho.at(3), rho.at(6));
    let x3 = delta(&r1, &r3);
    let z3 = Matrix3::from_columns(&[r1, r6, r3]).determinant();
    (1.0 + z3) / x3
}

// ---------------------------------------------------------------------------
// Detector
// ---------------------------------------------------------------------------

/// Normal of the plane through the origin containing three points, if they are
/// coplanar within `tol` and span a plane.
fn common_great_circle(ps: [Vector3<f64>; 3], tol: f64) -> Option<Vector3<f64>> {
    if Matrix3::from_columns(&ps).determinant().abs() > tol {
        return None;
    }
    let pairs = [(0, 1), (0, 2), (1, 2)];
    pairs
        .iter()
        .map(|&(i, j)| ps[i].cross(&ps[j]))
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .filter(|n| n.norm() > 1e-6)
        .map(|n| n.normalize())
}

/// Residuals of the Dixon-1 property at one realization: the largest of the
/// odd and even coplanarity determinants and the cosine between the two
/// planes' normals.
pub fn dixon1_residual(rho: &SphericalRealization) -> f64 {
    let odd = [rho.at(1), rho.at(3), rho.at(5)];
    let even = [rho.at(2), rho.at(4), rho.at(6)];
    let d_odd = Matrix3::from_columns(&odd).determinant().abs();
    let d_even = Matrix3::from_columns(&even).determinant().abs();
    match (
        common_great_circle(odd, f64::INFINITY),
        common_great_circle(even, f64::INFINITY),
    ) {
        (Some(n1), Some(n2)) => d_odd.max(d_even).max(n1.dot(&n2).abs()),
        _ => f64::INFINITY,
    }
}

/// A fitted π-rotation and its fit residual.
fn half_turn_fit(xs: &[Vector3<f64>], ys: &[Vector3<f64>]) -> Option<(Matrix3<f64>, f64)> {
    let (m, res) = orthogonal_fit(xs, ys);
    (m.determinant() > 0.0).then_some((m, res))
}

/// Residual of the Dixon-2 property at one realization of `K_{3,3}`.
///
/// Looks for three π-rotations `τ, σ, ρ` swapping the odd pairs `{1,3}`,
/// `{1,5}`, `{3,5}` and, for some matching, the even pairs. Each swap may be
/// up to antipodes. The rotations must also satisfy `τσρ = id`. Returns the
/// smallest worst-case residual over all matchings and sign choices.
pub fn dixon2_residual(rho: &SphericalRealization) -> f64 {
    let odd_pairs = [(1, 3), (1, 5), (3, 5)];
    let even_pairs = [(2, 4), (2, 6), (4, 6)];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let signs = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];
    // Best fit per (odd pair, even pair).
    let mut fits = [[None::<(Matrix3<f64>, f64)>; 3]; 3];
    for (i, &(a, b)) in odd_pairs.iter().enumerate() {
        for (j, &(c, d)) in even_pairs.iter().enumerate() {
            let xs = [rho.at(a), rho.at(b), rho.at(c), rho.at(d)];
            fits[i][j] = signs
                .iter()
                .filter_map(|&(so, se)| {
                    let ys = [so * rho.at(b), so * rho.at(a), se * rho.at(d), se * rho.at(c)];
                    half_turn_fit(&xs, &ys)
                })
                .min_by(|x, y| x.1.total_cmp(&y.1));
        }
    }
    perms
        .iter()
        .filter_map(|p| {
            let f: Vec<(Matrix3<f64>, f64)> = (0..3).map(|i| fits[i][p[i]]).collect::<Option<_>>()?;
            let fit = f.iter().map(|x| x.1).fold(0.0, f64::max);
            let involution = f
                .iter()
                .map(|x| (x.0 * x.0 - Matrix3::identity()).norm())
                .fold(0.0, f64::max);
            let product = (f[0].0 * f[1].0 * f[2].0 - Matrix3::identity()).norm();
            Some(fit.max(involution).max(product))
        })
        .fold(f64::INFINITY, f64::min)
}

/// Odd/even pair `(k, l)` with `δ(k, j) = 0` for the other two evens `j` and
/// `δ(i, l) = 0` for the other two odds `i`, if one exists.
pub fn cda_zero_pattern(lengths: &LengthAssignment, tol: f64) -> Option<(Vertex, Vertex)> {
    let odd = [1, 3, 5];
    let even = [2, 4, 6];
    for &k in &odd {
        for &l in &even {
            let ok = even
                .iter()
                .filter(|&&j| j != l)
                .all(|&j| lengths.delta_of(k, j).abs() <= tol)
                && odd
                    .iter()
                    .filter(|&&i| i != k)
                    .all(|&i| lengths.delta_of(i, l).abs() <= tol);
            if ok {
                return Some((k, l));
            }
        }
    }
    None
}

/// Recognize a motion of `K_{3,3}` from its samples.
///
/// Checks, in order: Dixon 1 (odd and even triples on orthogonal great
/// circles at every sample), Dixon 2 (three commuting π-rotation symmetries at
/// every sample), constant diagonal angle (the zero pattern in the lengths).
/// Anything else is reported as [`MotionKind::Unclassified`].
pub fn detect_k33_motion_kind(traj: &MotionTrajectory, tol: f64) -> Result<MotionKind, MotionError> {
    let k33 = named::k33();
    if traj.graph.vertices() != k33.vertices() || traj.graph.edges() != k33.edges() {
        return Err(MotionError::NotK33);
    }
    let distinct = traj.distinct_count(tol::DISTINCTNESS);
    if distinct < 3 {
        return Err(MotionError::InsufficientSamples { need: 3, got: distinct });
    }
    for (k, s) in traj.samples.iter().enumerate() {
        let r = &s.realization;
        if !r.coincident_pairs(1e-9).is_empty() || !r.antipodal_pairs(1e-9).is_empty() {
            return Err(MotionError::DegenerateRealization(k));
        }
    }
    if traj.samples.iter().all(|s| dixon1_residual(&s.realization) <= tol) {
        return Ok(MotionKind::Dixon1);
    }
    if traj.samples.iter().all(|s| dixon2_residual(&s.realization) <= tol) {
        return Ok(MotionKind::Dixon2);
    }
    if let Some((k, l)) = cda_zero_pattern(&traj.lengths, tol) {
        let e0 = delta(&traj.samples[0].realization.at(k), &traj.samples[0].realization.at(l));
        let constant = traj
            .samples
            .iter()
            .all(|s| (delta(&s.realization.at(k), &s.realization.at(l)) - e0).abs() <= tol);
        if constant {
            return Ok(MotionKind::ConstDiagAngle);
        }
    }
    Ok(MotionKind::Unclassified)
}

/// Check that two realizations differ by more than a rotation; `Err` only
/// when the vertex sets differ.
pub fn distinct(a: &SphericalRealization, b: &SphericalRealization) -> Result<bool, MotionError> {
    Ok(essentially_distinct(a, b, tol::DISTINCTNESS)?.distinct)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cda_params_reference() {
        let p = cda_params_from_e(0.75).unwrap();
        assert!((p.a - 0.6).abs() < 1e-15);
        assert!(p.relation_residual().abs() < 1e-15);
        assert!(cda_params_from_e(0.0).is_err());
        assert!(cda_params_from_e(1.0).is_err());
    }

    #[test]
    fn cda_exact_relation() {
        let r = cda_relation_exact(Ratio::new(3, 5), Ratio::new(3, 4));
        assert_eq!(r, Ratio::from_integer(0));
    }

    #[test]
    fn cda_pole() {
        let p = cda_params_from_e(0.75).unwrap();
        assert_eq!(cda_point(&p, 1.0, CdaBranch::default()), Err(MotionError::PoleT(1.0)));
    }

    #[test]
    fn dixon2_roots_satisfy_equation() {
        let params = Dixon2Params { alpha: 0.2, beta: 0.15, gamma: 0.1 };
        for upper in [false, true] {
            let branch = Dixon2Branch { upper, ..Default::default() };
            let (p, q) = dixon2_solve(&params, 0.5, branch).unwrap();
            assert!((p.norm() - 1.0).abs() < 1e-12);
            assert!((q.norm() - 1.0).abs() < 1e-12, "{}", q.norm());
        }
    }
}
