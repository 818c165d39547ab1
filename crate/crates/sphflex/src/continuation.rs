//! Numerical tracing of one-dimensional configuration curves, circle
//! intersection counts, and empirical degrees of forgetful maps.
//!
//! Purpose
//! - Follow the real solution curve of "all vertices on the unit sphere,
//!   every edge at its prescribed length" through a seed realization, with
//!   rotations removed by pinning. This is how motions are found without a
//!   closed form, and how the closed forms are cross-checked.
//!
//! Why this design
//! - Unknowns are the `3|V|` coordinates. Equations are `|V|` sphere
//!   conditions, `|E|` edge conditions and 3 gauge conditions: anchor `y = 0`,
//!   anchor `z = 0`, meridian `z = 0`. At a regular point of a flexible
//!   framework the Jacobian has a one-dimensional kernel, the curve tangent.
//! - The tangent is the right singular vector of the smallest singular value.
//!   The corank is decided by a relative gap: singular values below
//!   `RANK_GAP · σ_max` count as zero. Corank 0 means the seed is rigid;
//!   corank ≥ 2 means a singular or higher-dimensional point, and either is
//!   reported instead of traced.
//! - Pseudo-arclength predictor–corrector: Euler step along the tangent, then
//!   Gauss–Newton on the equations augmented by `⟨t, x - x_pred⟩ = 0`. A
//!   failed corrector halves the step; successes grow it back.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::motions::{MotionKind, MotionTrajectory, Sample};
use crate::spherical::{
    delta, essentially_distinct, gram_distance, LengthAssignment, SphericalRealization,
};
use crate::tol;

/// Errors from tracing and fiber computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContinuationError {
    #[error("seed violates the constraints (residual {0:.3e})")]
    SeedNotOnCurve(f64),
    #[error("Jacobian corank {corank} at the seed (0 means rigid)")]
    RankDeficient { corank: usize },
    #[error("step size fell below the minimum before the corrector converged")]
    StepFailure,
    #[error("vertex {0} has fewer than two placed neighbours")]
    UnderConstrained(Vertex),
    #[error("placed neighbours of vertex {0} are parallel")]
    DegenerateNeighbours(Vertex),
    #[error("gauge vertices must be distinct vertices of the graph, with the meridian vertex off the anchor axis")]
    BadGauge,
    #[error("lengths or realization do not cover the graph")]
    Incomplete,
    #[error("need at least {0} samples")]
    InsufficientSamples(usize),
}

/// Rotation gauge: the anchor vertex is pinned to `(±1, 0, 0)`; the meridian
/// vertex is held on the plane `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeFix {
    pub anchor: Vertex,
    pub meridian: Vertex,
}

impl GaugeFix {
    /// First vertex as anchor; first later vertex not (anti)parallel to it as meridian.
    pub fn for_seed(g: &Graph, seed: &SphericalRealization) -> Result<Self, ContinuationError> {
        let anchor = *g.vertices().first().ok_or(ContinuationError::BadGauge)?;
        let a = *seed.get(anchor).ok_or(ContinuationError::Incomplete)?;
        let meridian = g
            .vertices()
            .iter()
            .copied()
            .find(|&v| v != anchor && seed.get(v).is_some_and(|p| a.cross(p).norm() > 1e-6))
            .ok_or(ContinuationError::BadGauge)?;
        Ok(Self { anchor, meridian })
    }

    /// Rotate a realization into this gauge: anchor to `(1,0,0)`, meridian into
    /// `z = 0` with `y > 0`.
    pub fn apply(&self, rho: &SphericalRealization) -> Result<SphericalRealization, ContinuationError> {
        let a = rho.get(self.anchor).ok_or(ContinuationError::Incomplete)?.normalize();
        let m = *rho.get(self.meridian).ok_or(ContinuationError::Incomplete)?;
        let m_perp = m - a * a.dot(&m);
        if m_perp.norm() < 1e-9 {
            return Err(ContinuationError::BadGauge);
        }
        let e2 = m_perp.normalize();
        let e3 = a.cross(&e2);
        let r = Matrix3::from_rows(&[a.transpose(), e2.transpose(), e3.transpose()]);
        Ok(SphericalRealization::from_points_unchecked(
            rho.iter().map(|(v, p)| (v, r * p)),
        ))
    }
}

/// Step-control parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceConfig {
    pub step_size: f64,
    pub max_steps: usize,
    pub newton_tol: f64,
    pub max_newton_iters: usize,
    pub min_step: f64,
    /// `+1` or `-1`: which way to leave the seed.
    pub direction: f64,
    /// Stop when the path returns to the seed.
    pub detect_closure: bool,
}

impl Default for TraceConfig {
    fn default() -> Self {
        Self {
            step_size: 0.02,
            max_steps: 2000,
            newton_tol: 1e-12,
            max_newton_iters: 12,
            min_step: 1e-7,
            direction: 1.0,
            detect_closure: true,
        }
    }
}

/// Why a trace stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    MaxSteps,
    LoopClosed,
    StepFailure,
    /// The Jacobian lost or gained kernel dimension along the path.
    SingularPoint,
}

/// A traced path with its stopping reason.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub trajectory: MotionTrajectory,
    pub termination: Termination,
    /// Largest residual among accepted samples.
    pub max_residual: f64,
}

/// Compiled constraint system for a graph with lengths and a gauge.
struct System {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize, f64)>,
    anchor: usize,
    meridian: usize,
}

impl System {
    fn new(g: &Graph, lam: &LengthAssignment, gauge: &GaugeFix) -> Result<Self, ContinuationError> {
        if !lam.covers(g) {
            return Err(ContinuationError::Incomplete);
        }
        let anchor = g.index_of(gauge.anchor).ok_or(ContinuationError::BadGauge)?;
        let meridian = g.index_of(gauge.meridian).ok_or(ContinuationError::BadGauge)?;
        if anchor == meridian {
            return Err(ContinuationError::BadGauge);
        }
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let (i, j) = g.edge_endpoints(k);
                (i, j, lam.lambda(e).expect("covered"))
            })
            .collect();
        Ok(Self {
            vertices: g.vertices().to_vec(),
            edges,
            anchor,
            meridian,
        })
    }

    fn n(&self) -> usize {
        3 * self.vertices.len()
    }

    fn rows(&self) -> usize {
        self.vertices.len() + self.edges.len() + 3
    }

    fn pack(&self, rho: &SphericalRealization) -> DVector<f64> {
        DVector::from_iterator(
            self.n(),
            self.vertices.iter().flat_map(|&v| {
                let p = rho.at(v);
                [p.x, p.y, p.z]
            }),
        )
    }

    fn unpack(&self, x: &DVector<f64>) -> SphericalRealization {
        SphericalRealization::from_points_unchecked(
            self.vertices
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, Vector3::new(x[3 * i], x[3 * i + 1], x[3 * i + 2]))),
        )
    }

    fn point(x: &DVector<f64>, i: usize) -> Vector3<f64> {
        Vector3::new(x[3 * i], x[3 * i + 1], x[3 * i + 2])
    }

    fn residual(&self, x: &DVector<f64>) -> DVector<f64> {
        let nv = self.vertices.len();
        let mut r = DVector::zeros(self.rows());
        for i in 0..nv {
            r[i] = Self::point(x, i).norm_squared() - 1.0;
        }
        for (k, &(i, j, lam)) in self.edges.iter().enumerate() {
            let d = 0.5 * (1.0 - Self::point(x, i).dot(&Self::point(x, j)));
            r[nv + k] = d - lam;
        }
        let g0 = nv + self.edges.len();
        r[g0] = x[3 * self.anchor + 1];
        r[g0 + 1] = x[3 * self.anchor + 2];
        r[g0 + 2] = x[3 * self.meridian + 2];
        r
    }

    fn jacobian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let nv = self.vertices.len();
        let mut j = DMatrix::zeros(self.rows(), self.n());
        for i in 0..nv {
            for c in 0..3 {
                j[(i, 3 * i + c)] = 2.0 * x[3 * i + c];
            }
        }
        for (k, &(a, b, _)) in self.edges.iter().enumerate() {
            for c in 0..3 {
                j[(nv + k, 3 * a + c)] = -0.5 * x[3 * b + c];
                j[(nv + k, 3 * b + c)] = -0.5 * x[3 * a + c];
            }
        }
        let g0 = nv + self.edges.len();
        j[(g0, 3 * self.anchor + 1)] = 1.0;
        j[(g0 + 1, 3 * self.anchor + 2)] = 1.0;
        j[(g0 + 2, 3 * self.meridian + 2)] = 1.0;
        j
    }
}

/// Constraint residuals: `|V|` sphere terms `|ρ_v|² - 1`, `|E|` edge terms
/// `d - λ`, and the three gauge terms.
pub fn residual(
    g: &Graph,
    lam: &LengthAssignment,
    rho: &SphericalRealization,
    gauge: &GaugeFix,
) -> Result<Vec<f64>, ContinuationError> {
    if !rho.covers(g) {
        return Err(ContinuationError::Incomplete);
    }
    let sys = System::new(g, lam, gauge)?;
    Ok(sys.residual(&sys.pack(rho)).iter().copied().collect())
}

/// Singular values (descending) and an orthonormal basis of the numerical
/// kernel of `j`.
fn kernel(j: &DMatrix<f64>) -> (Vec<f64>, Vec<DVector<f64>>) {
    let n = j.ncols();
    // Pad with zero rows so the SVD returns a full set of right singular vectors.
    let padded = if j.nrows() < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (j.nrows(), n)).copy_from(j);
        p
    } else {
        j.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sv: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let smax = sv.first().copied().unwrap_or(0.0);
    let basis = order
        .iter()
        .filter(|&&k| svd.singular_values[k] <= tol::RANK_GAP * smax)
        .map(|&k| v_t.row(k).transpose())
        .collect();
    (sv, basis)
}

/// Corank of the constraint Jacobian at a realization.
pub fn jacobian_corank(
    g: &Graph,
    lam: &LengthAssignment,
    rho: &SphericalRealization,
    gauge: &GaugeFix,
) -> Result<usize, ContinuationError> {
    let sys = System::new(g, lam, gauge)?;
    let rho = gauge.apply(rho)?;
    Ok(kernel(&sys.jacobian(&sys.pack(&rho))).1.len())
}

/// Gauss–Newton on `F(x) = 0, ⟨t, x - x_pred⟩ = 0`.
fn correct(
    sys: &System,
    x_pred: &DVector<f64>,
    tangent: &DVector<f64>,
    cfg: &TraceConfig,
) -> Option<(DVector<f64>, f64)> {
    let mut x = x_pred.clone();
    let m = sys.rows();
    for _ in 0..cfg.max_newton_iters {
        let f = sys.residual(&x);
        let mut rhs = DVector::zeros(m + 1);
        rhs.rows_mut(0, m).copy_from(&(-&f));
        rhs[m] = -tangent.dot(&(&x - x_pred));
        let mut a = DMatrix::zeros(m + 1, sys.n());
        a.rows_mut(0, m).copy_from(&sys.jacobian(&x));
        a.row_mut(m).copy_from(&tangent.transpose());
        let dx = a.svd(true, true).solve(&rhs, 1e-14).ok()?;
        x += &dx;
        let res = sys.residual(&x).amax();
        if !res.is_finite() {
            return None;
        }
        if res <= cfg.newton_tol && dx.amax() <= 1e-10 {
            return Some((x, res));
        }
    }
    let res = sys.residual(&x).amax();
    (res <= cfg.newton_tol).then_some((x, res))
}

fn oriented_tangent(basis: &[DVector<f64>], prev: Option<&DVector<f64>>, direction: f64) -> DVector<f64> {
    let t = basis[0].clone();
    let sign = match prev {
        Some(p) => t.dot(p).signum(),
        None => {
            // Deterministic initial orientation: largest component positive.
            let k = t.iamax();
            t[k].signum() * direction.signum()
        }
    };
    t * if sign == 0.0 { 1.0 } else { sign }
}

/// Trace the configuration curve through `seed`.
///
/// The seed is first rotated into the gauge; it must then satisfy all
/// constraints to `max(newton_tol, 1e-9)` and have Jacobian corank 1.
/// Sample parameters are accumulated arclength in coordinate space.
pub fn trace(
    g: &Graph,
    lam: &LengthAssignment,
    seed: &SphericalRealization,
    gauge: Option<GaugeFix>,
    cfg: &TraceConfig,
) -> Result<Trace, ContinuationError> {
    if !seed.covers(g) {
        return Err(ContinuationError::Incomplete);
    }
    let gauge = match gauge {
        Some(gf) => gf,
        None => GaugeFix::for_seed(g, seed)?,
    };
    let sys = System::new(g, lam, &gauge)?;
    let seed = gauge.apply(seed)?;
    let x0 = sys.pack(&seed);
    let r0 = sys.residual(&x0).amax();
    if r0 > cfg.newton_tol.max(1e-9) {
        return Err(ContinuationError::SeedNotOnCurve(r0));
    }
    let (_, basis) = kernel(&sys.jacobian(&x0));
    if basis.len() != 1 {
        return Err(ContinuationError::RankDeficient { corank: basis.len() });
    }
    let t0 = oriented_tangent(&basis, None, cfg.direction);
    let mut samples = vec![Sample {
        parameter: 0.0,
        realization: sys.unpack(&x0),
    }];
    let (mut x, mut t) = (x0.clone(), t0.clone());
    let mut h = cfg.step_size;
    let mut arclength = 0.0;
    let mut max_residual = r0;
    let mut termination = Termination::MaxSteps;
    let mut steps = 0;
    while steps < cfg.max_steps {
        let x_pred = &x + &t * h;
        let accepted = correct(&sys, &x_pred, &t, cfg).and_then(|(xn, res)| {
            let (_, basis) = kernel(&sys.jacobian(&xn));
            if basis.len() != 1 {
                return Some(Err(basis.len()));
            }
            let tn = oriented_tangent(&basis, Some(&t), 1.0);
            // Reject steps that jump too far or turn too sharply.
            let ok = (&xn - &x).norm() <= 2.0 * h && tn.dot(&t) > 0.9;
            ok.then_some(Ok((xn, tn, res)))
        });
        match accepted {
            Some(Ok((xn, tn, res))) => {
                arclength += (&xn - &x).norm();
                x = xn;
                t = tn;
                max_residual = max_residual.max(res);
                samples.push(Sample {
                    parameter: arclength,
                    realization: sys.unpack(&x),
                });
                steps += 1;
                if cfg.detect_closure
                    && steps >= 3
                    && (&x - &x0).norm() < 1.5 * h
                    && t.dot(&t0) > 0.0
                {
                    samples.pop();
                    termination = Termination::LoopClosed;
                    break;
                }
                h = (h * 1.5).min(cfg.step_size);
            }
            Some(Err(_)) => {
                h *= 0.5;
                if h < cfg.min_step {
                    termination = Termination::SingularPoint;
                    break;
                }
            }
            None => {
                h *= 0.5;
                if h < cfg.min_step {
                    termination = Termination::StepFailure;
                    break;
                }
            }
        }
    }
    Ok(Trace {
        trajectory: MotionTrajectory {
            graph: g.clone(),
            lengths: lam.clone(),
            samples,
            kind: MotionKind::Traced,
        },
        termination,
        max_residual,
    })
}

/// Number of real placements (0, 1 or 2) of `free` meeting all edge
/// constraints to its placed neighbours in `partial`.
///
/// The first two non-parallel neighbours `n1, n2` give the circle
/// intersection `x = a·n1 + b·n2 + c·(n1 × n2)`. Tangency (`c² ≈ 0`) counts
/// once. Further neighbours filter the candidates.
pub fn fiber_count(
    g: &Graph,
    lam: &LengthAssignment,
    partial: &SphericalRealization,
    free: Vertex,
    tol: f64,
) -> Result<usize, ContinuationError> {
    let nbrs: Vec<(Vector3<f64>, f64)> = g
        .neighbours(free)
        .into_iter()
        .filter_map(|u| partial.get(u).map(|p| (*p, lam.delta_of(free, u))))
        .collect();
    if nbrs.len() < 2 {
        return Err(ContinuationError::UnderConstrained(free));
    }
    let (n1, d1) = nbrs[0];
    let (k2, &(n2, d2)) = nbrs
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, (p, _))| n1.cross(p).norm() > 1e-9)
        .ok_or(ContinuationError::DegenerateNeighbours(free))?;
    let gdot = n1.dot(&n2);
    let det = 1.0 - gdot * gdot;
    let a = (d1 - gdot * d2) / det;
    let b = (d2 - gdot * d1) / det;
    let w = n1.cross(&n2);
    let base = n1 * a + n2 * b;
    let c2 = (1.0 - base.norm_squared()) / w.norm_squared();
    let candidates: Vec<Vector3<f64>> = if c2 > tol {
        let c = c2.sqrt();
        vec![base + w * c, base - w * c]
    } else if c2 >= -tol {
        vec![base]
    } else {
        vec![]
    };
    Ok(candidates
        .into_iter()
        .filter(|x| {
            nbrs.iter()
                .enumerate()
                .filter(|(k, _)| *k != 0 && *k != k2)
                .all(|(_, (p, d))| (delta(x, p) - d).abs() <= tol.sqrt().max(1e-9))
        })
        .count())
}

/// Empirical degree of the map forgetting `forgotten`.
///
/// Samples are grouped by the class of their restriction to the retained
/// vertices (equal up to rotation within `tol`). The result is the largest
/// number of essentially distinct full configurations in one group.
pub fn empirical_map_degree(
    traj: &MotionTrajectory,
    forgotten: &[Vertex],
    tol: f64,
) -> Result<usize, ContinuationError> {
    if traj.samples.is_empty() {
        return Err(ContinuationError::InsufficientSamples(1));
    }
    let keep: Vec<Vertex> = traj
        .graph
        .vertices()
        .iter()
        .copied()
        .filter(|v| !forgotten.contains(v))
        .collect();
    let projected: Vec<SphericalRealization> = traj
        .samples
        .iter()
        .map(|s| s.realization.restricted(&keep))
        .collect();
    let same = |a: &SphericalRealization, b: &SphericalRealization| {
        gram_distance(a, b) <= tol
            && !essentially_distinct(a, b, tol).map(|r| r.distinct).unwrap_or(true)
    };
    let mut best = 0;
    for i in 0..projected.len() {
        let group: Vec<usize> = (0..projected.len())
            .filter(|&j| same(&projected[i], &projected[j]))
            .collect();
        let mut reps: Vec<&SphericalRealization> = Vec::new();
        for &j in &group {
            let full = &traj.samples[j].realization;
            if reps.iter().all(|r| {
                essentially_distinct(r, full, tol).map(|x| x.distinct).unwrap_or(true)
            }) {
                reps.push(full);
            }
        }
        best = best.max(reps.len());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, VertexPair};

    fn pair(a: Vertex, b: Vertex) -> VertexPair {
        VertexPair::new(a, b).unwrap()
    }

    #[test]
    fn triangle_is_rigid() {
        let g = named::complete(3);
        let rho = SphericalRealization::from_points_unchecked([
            (1, Vector3::new(1.0, 0.0, 0.0)),
            (2, Vector3::new(0.6, 0.8, 0.0)),
            (3, Vector3::new(0.0, 0.6, 0.8)),
        ]);
        let lam = LengthAssignment::induced(&g, &rho).unwrap();
        let r = trace(&g, &lam, &rho, None, &TraceConfig::default());
        assert_eq!(r.unwrap_err(), ContinuationError::RankDeficient { corank: 0 });
    }

    #[test]
    fn fiber_two_one_zero() {
        let g = named::star(2);
        let partial = SphericalRealization::from_points_unchecked([
            (2, Vector3::new(1.0, 0.0, 0.0)),
            (3, Vector3::new(0.0, 1.0, 0.0)),
        ]);
        let lam = |d: f64| LengthAssignment::from_deltas([(pair(1, 2), d), (pair(1, 3), d)]).unwrap();
        assert_eq!(fiber_count(&g, &lam(0.5), &partial, 1, 1e-12).unwrap(), 2);
        let tangent = 0.5f64.sqrt();
        assert_eq!(fiber_count(&g, &lam(tangent), &partial, 1, 1e-12).unwrap(), 1);
        assert_eq!(fiber_count(&g, &lam(0.8), &partial, 1, 1e-12).unwrap(), 0);
    }
}
