//! Real unit-sphere geometry: distances, rotations, realizations, length
//! assignments, and essential distinctness.
//!
//! Purpose
//! - Represent placements of graph vertices on `S^2`, the spherical length
//!   assignment they induce, and the equivalence "related by a rotation".
//!
//! Why this design
//! - Lengths are stored once, as `lambda ∈ (0, 1)`; the inner-product form
//!   `delta = 1 - 2·lambda` is derived. Compatibility is phrased in `lambda`,
//!   the quadrilateral and motion modules think in `delta`.
//! - Essential distinctness compares Gram matrices and, when the placements
//!   span space, the orientation of the first well-conditioned vertex triple.
//!   Equal Gram matrices mean the configurations differ by an orthogonal map;
//!   the orientation decides between a rotation and a reflection. If all
//!   placements lie on one great circle a reflection fixing that circle exists,
//!   so the Gram test alone is conclusive and the report says so.

use std::collections::BTreeMap;

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexPair};
use crate::tol;

/// Errors from geometric constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("point ({0}, {1}, {2}) is not on the unit sphere")]
    NotUnit(f64, f64, f64),
    #[error("vertex {0} has no placement")]
    MissingVertex(Vertex),
    #[error("edge {0} has no length")]
    MissingEdge(VertexPair),
    #[error("length {1} of edge {0} is outside the open interval (0, 1)")]
    LengthOutOfRange(VertexPair, f64),
    #[error("realizations are placed on different vertex sets")]
    VertexSetMismatch,
}

/// `delta(t, u) = <t, u>`.
pub fn delta(t: &Vector3<f64>, u: &Vector3<f64>) -> f64 {
    t.dot(u)
}

/// Spherical distance `(1 - <t, u>) / 2`: 0 for coincident, 1 for antipodal points.
pub fn sph_dist(t: &Vector3<f64>, u: &Vector3<f64>) -> f64 {
    (1.0 - t.dot(u)) / 2.0
}

/// Checked unit vector.
pub fn sphere_point(x: f64, y: f64, z: f64) -> Result<Vector3<f64>, GeometryError> {
    let p = Vector3::new(x, y, z);
    if (p.norm_squared() - 1.0).abs() > tol::UNIT_NORM {
        return Err(GeometryError::NotUnit(x, y, z));
    }
    Ok(p)
}

/// Rotation about a unit axis by `angle` (Rodrigues' formula).
pub fn rotation_about_axis(axis: &Vector3<f64>, angle: f64) -> Rotation3<f64> {
    Rotation3::from_axis_angle(&Unit::new_normalize(*axis), angle)
}

/// Placement of each vertex on the unit sphere.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SphericalRealization {
    points: BTreeMap<Vertex, Vector3<f64>>,
}

impl SphericalRealization {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from `(vertex, point)` pairs. Points are validated as unit vectors.
    pub fn from_points(
        points: impl IntoIterator<Item = (Vertex, Vector3<f64>)>,
    ) -> Result<Self, GeometryError> {
        let mut r = Self::new();
        for (v, p) in points {
            sphere_point(p.x, p.y, p.z)?;
            r.points.insert(v, p);
        }
        Ok(r)
    }

    /// Build without the unit-norm check (used by solvers mid-iteration).
    pub fn from_points_unchecked(points: impl IntoIterator<Item = (Vertex, Vector3<f64>)>) -> Self {
        Self {
            points: points.into_iter().collect(),
        }
    }

    pub fn set(&mut self, v: Vertex, p: Vector3<f64>) {
        self.points.insert(v, p);
    }

    pub fn get(&self, v: Vertex) -> Option<&Vector3<f64>> {
        self.points.get(&v)
    }

    /// Placement of `v`; panics if missing.
    pub fn at(&self, v: Vertex) -> Vector3<f64> {
        self.points[&v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.points.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &Vector3<f64>)> {
        self.points.iter().map(|(&v, p)| (v, p))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True if every vertex of `g` is placed.
    pub fn covers(&self, g: &Graph) -> bool {
        g.vertices().iter().all(|v| self.points.contains_key(v))
    }

    /// Restriction to the listed vertices.
    pub fn restricted(&self, keep: &[Vertex]) -> Self {
        Self {
            points: self
                .points
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .map(|(&v, &p)| (v, p))
                .collect(),
        }
    }

    /// Copy with the listed vertices replaced by their antipodes.
    pub fn with_antipodes(&self, flip: &[Vertex]) -> Self {
        let mut r = self.clone();
        for v in flip {
            if let Some(p) = r.points.get_mut(v) {
                *p = -*p;
            }
        }
        r
    }

    /// Mirror image under `(x, y, z) -> (x, y, -z)`.
    pub fn mirrored(&self) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|(&v, p)| (v, Vector3::new(p.x, p.y, -p.z)))
                .collect(),
        }
    }

    /// Gram matrix of the placements in vertex order.
    pub fn gram(&self) -> Vec<Vec<f64>> {
        let pts: Vec<&Vector3<f64>> = self.points.values().collect();
        pts.iter().map(|p| pts.iter().map(|q| p.dot(q)).collect()).collect()
    }

    /// Largest deviation of a placement from unit norm.
    pub fn max_sphere_residual(&self) -> f64 {
        self.points
            .values()
            .map(|p| (p.norm_squared() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Pairs of vertices placed at the same point (within `tol`).
    pub fn coincident_pairs(&self, tol: f64) -> Vec<VertexPair> {
        self.pairs_where(|p, q| (p - q).norm() <= tol)
    }

    /// Pairs of vertices placed at antipodal points (within `tol`).
    pub fn antipodal_pairs(&self, tol: f64) -> Vec<VertexPair> {
        self.pairs_where(|p, q| (p + q).norm() <= tol)
    }

    fn pairs_where(&self, pred: impl Fn(&Vector3<f64>, &Vector3<f64>) -> bool) -> Vec<VertexPair> {
        let pts: Vec<(Vertex, &Vector3<f64>)> = self.iter().collect();
        let mut out = Vec::new();
        for (i, &(a, p)) in pts.iter().enumerate() {
            for &(b, q) in &pts[i + 1..] {
                if pred(p, q) {
                    out.push(VertexPair::new(a, b).unwrap());
                }
            }
        }
        out
    }
}

/// Edge lengths `lambda(e) ∈ (0, 1)`; `delta(e) = 1 - 2·lambda(e)` is derived.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct LengthAssignment {
    lambda: BTreeMap<VertexPair, f64>,
}

impl LengthAssignment {
    /// Validated assignment from `lambda` values.
    pub fn from_lambdas(
        values: impl IntoIterator<Item = (VertexPair, f64)>,
    ) -> Result<Self, GeometryError> {
        let mut lambda = BTreeMap::new();
        for (e, l) in values {
            if !(l > tol::LAMBDA_MARGIN && l < 1.0 - tol::LAMBDA_MARGIN) {
                return Err(GeometryError::LengthOutOfRange(e, l));
            }
            lambda.insert(e, l);
        }
        Ok(Self { lambda })
    }

    /// Validated assignment from `delta` values.
    pub fn from_deltas(
        values: impl IntoIterator<Item = (VertexPair, f64)>,
    ) -> Result<Self, GeometryError> {
        Self::from_lambdas(values.into_iter().map(|(e, d)| (e, (1.0 - d) / 2.0)))
    }

    /// Lengths induced on the edges of `g` by a realization.
    pub fn induced(g: &Graph, rho: &SphericalRealization) -> Result<Self, GeometryError> {
        let mut values = Vec::with_capacity(g.edge_count());
        for e in g.edges() {
            let p = rho.get(e.a).ok_or(GeometryError::MissingVertex(e.a))?;
            let q = rho.get(e.b).ok_or(GeometryError::MissingVertex(e.b))?;
            values.push((*e, sph_dist(p, q)));
        }
        Self::from_lambdas(values)
    }

    pub fn lambda(&self, e: &VertexPair) -> Option<f64> {
        self.lambda.get(e).copied()
    }

    pub fn delta(&self, e: &VertexPair) -> Option<f64> {
        self.lambda(e).map(|l| 1.0 - 2.0 * l)
    }

    /// `delta` of edge `{a, b}`; panics if missing.
    pub fn delta_of(&self, a: Vertex, b: Vertex) -> f64 {
        self.delta(&VertexPair::new(a, b).expect("distinct endpoints"))
            .expect("edge has a length")
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexPair, f64)> + '_ {
        self.lambda.iter().map(|(&e, &l)| (e, l))
    }

    pub fn covers(&self, g: &Graph) -> bool {
        g.edges().iter().all(|e| self.lambda.contains_key(e))
    }

    /// Restriction to the edges of `g`.
    pub fn restricted(&self, g: &Graph) -> Self {
        Self {
            lambda: g
                .edges()
                .iter()
                .filter_map(|e| self.lambda.get(e).map(|&l| (*e, l)))
                .collect(),
        }
    }
}

/// Largest `|d(rho(a), rho(b)) - lambda(ab)|` over the edges of `g`.
pub fn max_edge_residual(
    g: &Graph,
    rho: &SphericalRealization,
    lam: &LengthAssignment,
) -> Result<f64, GeometryError> {
    let mut worst: f64 = 0.0;
    for e in g.edges() {
        let p = rho.get(e.a).ok_or(GeometryError::MissingVertex(e.a))?;
        let q = rho.get(e.b).ok_or(GeometryError::MissingVertex(e.b))?;
        let l = lam.lambda(e).ok_or(GeometryError::MissingEdge(*e))?;
        worst = worst.max((sph_dist(p, q) - l).abs());
    }
    Ok(worst)
}

/// True iff every edge length of `rho` matches `lam` within `tol`.
pub fn is_compatible(
    g: &Graph,
    rho: &SphericalRealization,
    lam: &LengthAssignment,
    tol: f64,
) -> bool {
    matches!(max_edge_residual(g, rho, lam), Ok(r) if r <= tol)
}

/// Pointwise image of a realization under a rotation.
pub fn apply_rotation(r: &Rotation3<f64>, rho: &SphericalRealization) -> SphericalRealization {
    SphericalRealization {
        points: rho.points.iter().map(|(&v, p)| (v, r * p)).collect(),
    }
}

/// How the orientation part of an essential-distinctness test was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrientationCheck {
    /// The reference triple has the same orientation in both realizations.
    Agree,
    /// The orientations differ: the realizations are mirror images.
    Differ,
    /// Fewer than three linearly independent placements: only the Gram test applies.
    Degenerate,
    /// Not evaluated because the Gram matrices already differ.
    Skipped,
}

/// Outcome of comparing two realizations up to rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistinctnessReport {
    pub distinct: bool,
    /// Largest absolute difference between corresponding Gram entries.
    pub gram_distance: f64,
    pub orientation: OrientationCheck,
}

/// Largest absolute difference of corresponding Gram entries.
pub fn gram_distance(r1: &SphericalRealization, r2: &SphericalRealization) -> f64 {
    let (g1, g2) = (r1.gram(), r2.gram());
    g1.iter()
        .flatten()
        .zip(g2.iter().flatten())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// First vertex triple whose placement determinant exceeds the threshold.
fn reference_triple(rho: &SphericalRealization) -> Option<[Vertex; 3]> {
    let pts: Vec<(Vertex, Vector3<f64>)> = rho.iter().map(|(v, p)| (v, *p)).collect();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let m = Matrix3::from_columns(&[pts[i].1, pts[j].1, pts[k].1]);
                if m.determinant().abs() > tol::ORIENTATION_DET {
                    return Some([pts[i].0, pts[j].0, pts[k].0]);
                }
            }
        }
    }
    None
}

fn triple_det(rho: &SphericalRealization, t: [Vertex; 3]) -> f64 {
    Matrix3::from_columns(&[rho.at(t[0]), rho.at(t[1]), rho.at(t[2])]).determinant()
}

/// Decide whether two realizations differ by more than a rotation.
pub fn essentially_distinct(
    r1: &SphericalRealization,
    r2: &SphericalRealization,
    tol: f64,
) -> Result<DistinctnessReport, GeometryError> {
    if !r1.vertices().eq(r2.vertices()) {
        return Err(GeometryError::VertexSetMismatch);
    }
    let gd = gram_distance(r1, r2);
    if gd > tol {
        return Ok(DistinctnessReport {
            distinct: true,
            gram_distance: gd,
            orientation: OrientationCheck::Skipped,
        });
    }
    let orientation = match reference_triple(r1) {
        None => OrientationCheck::Degenerate,
        Some(t) => {
            if triple_det(r1, t).signum() == triple_det(r2, t).signum() {
                OrientationCheck::Agree
            } else {
                OrientationCheck::Differ
            }
        }
    };
    Ok(DistinctnessReport {
        distinct: orientation == OrientationCheck::Differ,
        gram_distance: gd,
        orientation,
    })
}

/// Boolean shorthand for [`essentially_distinct`]; mismatched vertex sets count as distinct.
pub fn is_essentially_distinct(r1: &SphericalRealization, r2: &SphericalRealization, tol: f64) -> bool {
    essentially_distinct(r1, r2, tol).map_or(true, |r| r.distinct)
}

/// Best orthogonal map `Q` with `Q·x_k ≈ y_k` (orthogonal Procrustes), and the
/// largest residual `|Q·x_k - y_k|`.
pub fn orthogonal_fit(xs: &[Vector3<f64>], ys: &[Vector3<f64>]) -> (Matrix3<f64>, f64) {
    let mut m = Matrix3::zeros();
    for (x, y) in xs.iter().zip(ys) {
        m += y * x.transpose();
    }
    let svd = m.svd(true, true);
    let q = svd.u.unwrap() * svd.v_t.unwrap();
    let res = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (q * x - y).norm())
        .fold(0.0, f64::max);
    (q, res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn distances() {
        let t = Vector3::new(1.0, 0.0, 0.0);
        let u = Vector3::new(0.0, 1.0, 0.0);
        assert_eq!(delta(&t, &t), 1.0);
        assert_eq!(delta(&t, &-t), -1.0);
        assert_eq!(delta(&t, &u), 0.0);
        assert_eq!(sph_dist(&t, &t), 0.0);
        assert_eq!(sph_dist(&t, &-t), 1.0);
        assert_eq!(sph_dist(&t, &u), 0.5);
    }

    #[test]
    fn rotations() {
        let x = Vector3::new(1.0, 0.0, 0.0);
        let y = Vector3::new(0.0, 1.0, 0.0);
        let z = Vector3::new(0.0, 0.0, 1.0);
        assert!((rotation_about_axis(&x, PI) * y + y).norm() < 1e-15);
        assert!((rotation_about_axis(&z, PI) * x + x).norm() < 1e-15);
        let id = rotation_about_axis(&z, 0.0);
        assert!((id.matrix() - Matrix3::identity()).norm() < 1e-15);
        let a = Vector3::new(0.3, -0.2, 0.9).normalize();
        let r = rotation_about_axis(&a, 0.4) * rotation_about_axis(&a, 1.1);
        assert!((r.matrix() - rotation_about_axis(&a, 1.5).matrix()).norm() < 1e-12);
    }

    fn chiral() -> SphericalRealization {
        SphericalRealization::from_points([
            (1, Vector3::new(1.0, 0.0, 0.0)),
            (2, Vector3::new(0.0, 1.0, 0.0)),
            (3, Vector3::new(0.0, 0.6, 0.8)),
            (4, Vector3::new(0.6, 0.0, 0.8)),
        ])
        .unwrap()
    }

    #[test]
    fn rotation_is_not_distinct_but_mirror_is() {
        let r1 = chiral();
        let rot = rotation_about_axis(&Vector3::new(0.2, 0.5, -0.3), 2.2);
        let r2 = apply_rotation(&rot, &r1);
        let rep = essentially_distinct(&r1, &r2, 1e-9).unwrap();
        assert!(!rep.distinct);
        assert_eq!(rep.orientation, OrientationCheck::Agree);
        let rep = essentially_distinct(&r1, &r1.mirrored(), 1e-9).unwrap();
        assert!(rep.distinct);
        assert_eq!(rep.orientation, OrientationCheck::Differ);
    }

    #[test]
    fn great_circle_configurations_are_degenerate() {
        let r1 = SphericalRealization::from_points([
            (1, Vector3::new(1.0, 0.0, 0.0)),
            (2, Vector3::new(0.0, 1.0, 0.0)),
            (3, Vector3::new(0.6, 0.8, 0.0)),
        ])
        .unwrap();
        let rep = essentially_distinct(&r1, &r1.mirrored(), 1e-9).unwrap();
        assert!(!rep.distinct);
        assert_eq!(rep.orientation, OrientationCheck::Degenerate);
    }
}
