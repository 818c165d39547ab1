//! Numerical tolerances, collected in one place.
//!
//! Each constant states what it guards. Per-call overrides exist wherever a
//! caller may reasonably want a different threshold.

/// Unit-norm check for user-supplied sphere points.
pub const UNIT_NORM: f64 = 1e-12;

/// Length values closer than this to 0 or 1 are rejected (coincident or
/// antipodal endpoints).
pub const LAMBDA_MARGIN: f64 = 1e-12;

/// Default tolerance for edge-length compatibility.
pub const COMPATIBILITY: f64 = 1e-9;

/// Default tolerance for identities that hold exactly in real arithmetic.
pub const ALGEBRAIC: f64 = 1e-12;

/// Smallest `|det|` of a vertex triple used as an orientation reference.
pub const ORIENTATION_DET: f64 = 1e-8;

/// Default Gram-distance threshold for essential distinctness.
pub const DISTINCTNESS: f64 = 1e-9;

/// Relative singular-value gap below which a direction counts as null.
pub const RANK_GAP: f64 = 1e-7;

/// Default tolerance for quadrilateral pattern matching.
pub const CLASSIFY: f64 = 1e-9;
