//! Spherical quadrilaterals (`K_{2,2}` on the 4-cycle `1-2-3-4`): motion
//! types from δ-length patterns, and subtype detection on realizations.
//!
//! Purpose
//! - Classify four δ-values `(δ12, δ23, δ34, δ14)` as general, odd deltoid,
//!   even deltoid, rhomboid or lozenge. Odd vertices are 1 and 3, even
//!   vertices 2 and 4.
//! - On a realization of a rhomboid, find which of the four component types
//!   it lies on. The type is determined by whether the symmetry swapping
//!   `1↔3, 2↔4` is a rotation or a reflection, and by the sign pattern.
//!
//! Why this design
//! - Patterns are linear relations between δ's, so matching is a handful of
//!   comparisons at a tolerance. Two different patterns matching nonzero data
//!   at once forces all four magnitudes to agree, which is the lozenge. So
//!   besides all-zero input, a double match that fails the lozenge test can
//!   only come from the tolerance. That case is reported as
//!   [`QuadError::AmbiguousAtTolerance`] rather than resolved by a guess.
//! - Replacing a vertex by its antipode negates the two δ's at it. The
//!   pattern family is preserved and only the signs change, which
//!   [`antipodal_normalize`] exposes.

use nalgebra::Vector3;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cuts::QuadCase;
use crate::cuts::DeltoidSubcase;
use crate::graph::Vertex;
use crate::spherical::{delta, orthogonal_fit, rotation_about_axis, SphericalRealization};

/// Errors from quadrilateral classification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("δ-values must lie in [-1, 1]")]
    OutOfRange,
    #[error("patterns {0:?} all match within tolerance but are not consistent")]
    AmbiguousAtTolerance(Vec<QuadTag>),
    #[error("realization does not admit the swapping symmetry (residual {0:.3e})")]
    NoSymmetryFound(f64),
    #[error("lengths classify as {0:?}, not as a rhomboid")]
    NotRhomboid(QuadTag),
    #[error("a diagonal has coincident or antipodal endpoints")]
    DegenerateDiagonal,
    #[error("realization lacks vertex {0}")]
    MissingVertex(Vertex),
}

/// δ-values around the 4-cycle `1-2-3-4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadLengths {
    pub d12: f64,
    pub d23: f64,
    pub d34: f64,
    pub d14: f64,
}

impl QuadLengths {
    pub fn new(d12: f64, d23: f64, d34: f64, d14: f64) -> Self {
        Self { d12, d23, d34, d14 }
    }

    /// From spherical distances `λ = (1 - δ)/2`.
    pub fn from_lambdas(l12: f64, l23: f64, l34: f64, l14: f64) -> Self {
        let d = |l: f64| 1.0 - 2.0 * l;
        Self::new(d(l12), d(l23), d(l34), d(l14))
    }

    /// δ-values of a realization of vertices 1..=4.
    pub fn of_realization(rho: &SphericalRealization) -> Result<Self, QuadError> {
        let p = quad_points(rho)?;
        Ok(Self::new(
            delta(&p[0], &p[1]),
            delta(&p[1], &p[2]),
            delta(&p[2], &p[3]),
            delta(&p[0], &p[3]),
        ))
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.d12, self.d23, self.d34, self.d14]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Lengths after replacing vertex `v` by its antipode.
    pub fn flipped(&self, v: Vertex) -> Self {
        let mut q = *self;
        match v {
            1 => {
                q.d12 = -q.d12;
                q.d14 = -q.d14;
            }
            2 => {
                q.d12 = -q.d12;
                q.d23 = -q.d23;
            }
            3 => {
                q.d23 = -q.d23;
                q.d34 = -q.d34;
            }
            4 => {
                q.d34 = -q.d34;
                q.d14 = -q.d14;
            }
            _ => panic!("quadrilateral vertices are 1..=4"),
        }
        q
    }

    /// The relabeling `1→3→1` (swap the odd vertices).
    pub fn swap_odd(&self) -> Self {
        Self::new(self.d23, self.d12, self.d14, self.d34)
    }

    /// The relabeling `2→4→2` (swap the even vertices).
    pub fn swap_even(&self) -> Self {
        Self::new(self.d14, self.d34, self.d23, self.d12)
    }

    fn in_range(&self) -> bool {
        self.as_array().iter().all(|d| d.is_finite() && d.abs() <= 1.0)
    }
}

/// Motion type of a quadrilateral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadTag {
    General,
    OddDeltoid,
    EvenDeltoid,
    Rhomboid,
    Lozenge,
}

impl QuadTag {
    pub fn name(self) -> &'static str {
        match self {
            QuadTag::General => "general",
            QuadTag::OddDeltoid => "odd_deltoid",
            QuadTag::EvenDeltoid => "even_deltoid",
            QuadTag::Rhomboid => "rhomboid",
            QuadTag::Lozenge => "lozenge",
        }
    }

    /// μ-table rows compatible with this type when only lengths are known.
    pub fn mu_rows(self) -> Vec<QuadCase> {
        use DeltoidSubcase::*;
        match self {
            QuadTag::General => vec![QuadCase::General],
            QuadTag::OddDeltoid => vec![QuadCase::OddDeltoid(Coincide), QuadCase::OddDeltoid(Antipodal)],
            QuadTag::EvenDeltoid => vec![QuadCase::EvenDeltoid(Coincide), QuadCase::EvenDeltoid(Antipodal)],
            QuadTag::Rhomboid => (1..=4).map(QuadCase::Rhomboid).collect(),
            QuadTag::Lozenge => (1..=4).map(QuadCase::Lozenge).collect(),
        }
    }
}

/// Signs of the matched relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignProfile {
    None,
    Alpha(i8),
    AlphaBetaGamma(i8, i8, i8),
}

/// Classification result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadType {
    pub tag: QuadTag,
    pub signs: SignProfile,
}

/// Pattern relations as pairs `(x, y)` with `x = α·y` required.
fn pattern_pairs(tag: QuadTag, q: &QuadLengths) -> [(f64, f64); 2] {
    match tag {
        QuadTag::OddDeltoid => [(q.d12, q.d23), (q.d34, q.d14)],
        QuadTag::EvenDeltoid => [(q.d12, q.d14), (q.d23, q.d34)],
        QuadTag::Rhomboid => [(q.d12, q.d34), (q.d14, q.d23)],
        _ => unreachable!(),
    }
}

/// Signs `α ∈ {+1, -1}` for which the pattern holds within `tol`, `+1` first.
fn matching_alphas(tag: QuadTag, q: &QuadLengths, tol: f64) -> Vec<i8> {
    let pairs = pattern_pairs(tag, q);
    [1i8, -1]
        .into_iter()
        .filter(|&a| pairs.iter().all(|(x, y)| (x - f64::from(a) * y).abs() <= tol))
        .collect()
}

/// Lozenge signs `(α, β, γ)` if `δ12 = α·δ23 = β·δ34 = γ·δ14 ≠ 0` within
/// `tol` with an allowed sign triple.
fn lozenge_signs(q: &QuadLengths, tol: f64) -> Option<(i8, i8, i8)> {
    let m = q.d12.abs();
    if m <= tol || [q.d23, q.d34, q.d14].iter().any(|d| (d.abs() - m).abs() > tol) {
        return None;
    }
    let s = |d: f64| if (d * q.d12) >= 0.0 { 1i8 } else { -1 };
    let (a, b, c) = (s(q.d23), s(q.d34), s(q.d14));
    (a * b * c == 1).then_some((a, b, c))
}

/// Classify a quadrilateral from its δ-values.
///
/// Lozenge takes precedence. A single deltoid or rhomboid match follows; when a
/// zero entry lets both signs match, `α = +1` is reported.
pub fn classify(q: &QuadLengths, tol: f64) -> Result<QuadType, QuadError> {
    if !q.in_range() {
        return Err(QuadError::OutOfRange);
    }
    if let Some((a, b, c)) = lozenge_signs(q, tol) {
        return Ok(QuadType {
            tag: QuadTag::Lozenge,
            signs: SignProfile::AlphaBetaGamma(a, b, c),
        });
    }
    let matches: Vec<(QuadTag, i8)> = [QuadTag::OddDeltoid, QuadTag::EvenDeltoid, QuadTag::Rhomboid]
        .into_iter()
        .filter_map(|t| matching_alphas(t, q, tol).first().map(|&a| (t, a)))
        .collect();
    match matches.as_slice() {
        [] => Ok(QuadType {
            tag: QuadTag::General,
            signs: SignProfile::None,
        }),
        [(tag, a)] => Ok(QuadType {
            tag: *tag,
            signs: SignProfile::Alpha(*a),
        }),
        many => Err(QuadError::AmbiguousAtTolerance(many.iter().map(|m| m.0).collect())),
    }
}

/// Canonical antipodal representative: the sign-flip of vertices with the most
/// positive entries, fewest flips breaking ties.
pub fn antipodal_normalize(q: &QuadLengths) -> (QuadLengths, Vec<Vertex>) {
    let mut best: Option<(usize, usize, QuadLengths, Vec<Vertex>)> = None;
    for mask in 0u8..16 {
        let flips: Vec<Vertex> = (1..=4).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        let r = flips.iter().fold(*q, |acc, &v| acc.flipped(v));
        let positives = r.as_array().iter().filter(|&&d| d > 0.0).count();
        let better = match &best {
            None => true,
            Some((p, n, _, _)) => positives > *p || (positives == *p && flips.len() < *n),
        };
        if better {
            best = Some((positives, flips.len(), r, flips));
        }
    }
    let (_, _, r, flips) = best.unwrap();
    (r, flips)
}

fn quad_points(rho: &SphericalRealization) -> Result<[Vector3<f64>; 4], QuadError> {
    let mut out = [Vector3::zeros(); 4];
    for (k, v) in (1..=4).enumerate() {
        out[k] = *rho.get(v).ok_or(QuadError::MissingVertex(v))?;
    }
    Ok(out)
}

/// Component type (1..=4) of a rhomboid realization, from the symmetry
/// swapping `1↔3`, `2↔4`.
///
/// With `α = +1` the symmetry maps `R1 ↔ R3`, `R2 ↔ R4`; a rotation gives
/// Type 1 and a reflection Type 4. With `α = -1` it maps `R1 ↔ -R3`,
/// `R2 ↔ R4`; a rotation gives Type 3 and a reflection Type 2.
pub fn rhomboid_component(rho: &SphericalRealization, tol: f64) -> Result<u8, QuadError> {
    let q = QuadLengths::of_realization(rho)?;
    let ty = classify(&q, tol)?;
    let alpha = match (ty.tag, ty.signs) {
        (QuadTag::Rhomboid, SignProfile::Alpha(a)) => a,
        (tag, _) => return Err(QuadError::NotRhomboid(tag)),
    };
    let p = quad_points(rho)?;
    let s = f64::from(alpha);
    let xs = [p[0], p[1], p[2], p[3]];
    let ys = [s * p[2], p[3], s * p[0], p[1]];
    let (m, residual) = orthogonal_fit(&xs, &ys);
    if residual > tol.max(1e-9) * 10.0 {
        return Err(QuadError::NoSymmetryFound(residual));
    }
    let rotation = m.determinant() > 0.0;
    Ok(match (alpha, rotation) {
        (1, true) => 1,
        (1, false) => 4,
        (_, true) => 3,
        (_, false) => 2,
    })
}

/// Cosine of the angle between the great circles through `R1, R3` and through `R2, R4`.
pub fn diagonal_cosine(rho: &SphericalRealization) -> Result<f64, QuadError> {
    let p = quad_points(rho)?;
    let n13 = p[0].cross(&p[2]);
    let n24 = p[1].cross(&p[3]);
    if n13.norm() < 1e-9 || n24.norm() < 1e-9 {
        return Err(QuadError::DegenerateDiagonal);
    }
    Ok(n13.normalize().dot(&n24.normalize()))
}

/// True iff the diagonal great circles are not orthogonal: `|cos| > tol`.
pub fn diagonals_not_orthogonal_check(rho: &SphericalRealization, tol: f64) -> Result<bool, QuadError> {
    Ok(diagonal_cosine(rho)?.abs() > tol)
}

/// Kind of symmetry used to build a rhomboid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    /// Rotation by π about an axis.
    HalfTurn,
    /// Reflection in a plane through the origin.
    Mirror,
}

/// Rhomboid realization `R1 = p, R2 = q, R3 = ±g(p), R4 = g(q)` where `g` is a
/// half-turn about, or reflection in the plane normal to, `axis`.
///
/// `antipode` replaces `R3` by its antipode (the `α = -1` family).
pub fn rhomboid_realization(
    p: Vector3<f64>,
    q: Vector3<f64>,
    axis: Vector3<f64>,
    symmetry: Symmetry,
    antipode: bool,
) -> SphericalRealization {
    let n = axis.normalize();
    let g = |x: Vector3<f64>| match symmetry {
        Symmetry::HalfTurn => rotation_about_axis(&n, std::f64::consts::PI) * x,
        Symmetry::Mirror => x - 2.0 * n.dot(&x) * n,
    };
    let p = p.normalize();
    let q = q.normalize();
    let r3 = if antipode { -g(p) } else { g(p) };
    SphericalRealization::from_points_unchecked([(1, p), (2, q), (3, r3), (4, g(q))])
}

/// Lozenge realization with odd vertices at polar angle `theta` and even
/// vertices at polar angle `phi` about the z-axis, on orthogonal meridians.
pub fn lozenge_realization(theta: f64, phi: f64) -> SphericalRealization {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    SphericalRealization::from_points_unchecked([
        (1, Vector3::new(st, 0.0, ct)),
        (2, Vector3::new(0.0, sp, cp)),
        (3, Vector3::new(-st, 0.0, ct)),
        (4, Vector3::new(0.0, -sp, cp)),
    ])
}

/// Random δ-values realizing a given pattern, with every magnitude in
/// `[0.05, 0.95]` and distinct magnitudes at least `0.05` apart, plus uniform
/// noise of size `noise`.
///
/// For deltoids and rhomboids `signs` is `Alpha(α)`; for lozenges an allowed
/// `(α, β, γ)`; for general quadrilaterals it is ignored.
pub fn random_pattern(rng: &mut impl Rng, tag: QuadTag, signs: SignProfile, noise: f64) -> QuadLengths {
    let mut mags = || loop {
        let a: f64 = rng.random_range(0.05..0.95);
        let b: f64 = rng.random_range(0.05..0.95);
        if (a - b).abs() >= 0.05 {
            return (a, b);
        }
    };
    let (a, b) = mags();
    let sa = if rng.random_bool(0.5) { a } else { -a };
    let sb = if rng.random_bool(0.5) { b } else { -b };
    let alpha = match signs {
        SignProfile::Alpha(x) => f64::from(x),
        _ => 1.0,
    };
    let base = match tag {
        QuadTag::OddDeltoid => [sa, alpha * sa, alpha * sb, sb],
        QuadTag::EvenDeltoid => [sa, sb, alpha * sb, alpha * sa],
        QuadTag::Rhomboid => [sa, alpha * sb, alpha * sa, sb],
        QuadTag::Lozenge => {
            let (x, y, z) = match signs {
                SignProfile::AlphaBetaGamma(x, y, z) => (f64::from(x), f64::from(y), f64::from(z)),
                _ => (1.0, 1.0, 1.0),
            };
            [sa, x * sa, y * sa, z * sa]
        }
        QuadTag::General => loop {
            let c: Vec<f64> = (0..4).map(|_| rng.random_range(-0.95..0.95)).collect();
            let m: Vec<f64> = c.iter().map(|x| x.abs()).collect();
            let spread = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .map(|(i, j)| (m[i] - m[j]).abs())
                .fold(f64::INFINITY, f64::min);
            if spread >= 0.05 && m.iter().all(|&x| x >= 0.05) {
                break [c[0], c[1], c[2], c[3]];
            }
        },
    };
    let mut out = base;
    for x in &mut out {
        *x += rng.random_range(-noise..=noise);
    }
    QuadLengths::from_array(out)
}
