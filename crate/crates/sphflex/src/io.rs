//! Text formats for graphs, colorings, lengths, realizations and trajectories.
//!
//! Structured files are JSON. Floats are written in shortest round-trip form,
//! so a value read back is bit-identical to the value written, and maps are
//! emitted in vertex order, so identical inputs give byte-identical output.
//!
//! * graph: `{"vertices": [..], "edges": [[a, b], ..]}`, or plain text with
//!   one `a b` pair per line (`#` starts a comment, vertices inferred);
//! * coloring: the graph fields plus `"coloring": [[a, b, "red"], ..]`;
//! * lengths: `{"lambda": [[a, b, λ], ..]}` or `{"delta": [[a, b, δ], ..]}`;
//! * realization: `{"1": [x, y, z], ..}`;
//! * trajectory: graph, lengths and a list of samples; or tabular CSV with one
//!   row per sample (parameter, coordinates, residual).

use std::collections::BTreeMap;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, ColoringError, ColoringSet, EdgeColoring};
use crate::graph::{Graph, GraphError, Vertex, VertexPair};
use crate::motions::{MotionKind, MotionTrajectory, Sample};
use crate::spherical::{max_edge_residual, GeometryError, LengthAssignment, SphericalRealization};

/// Errors from parsing any of the file formats.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("length file must contain exactly one of \"lambda\" or \"delta\"")]
    LengthKind,
    #[error("edge {{{0}, {1}}} is not an edge pair")]
    BadPair(Vertex, Vertex),
}

#[derive(Serialize, Deserialize)]
struct GraphRecord {
    vertices: Vec<Vertex>,
    edges: Vec<[Vertex; 2]>,
}

impl GraphRecord {
    fn of(g: &Graph) -> Self {
        Self {
            vertices: g.vertices().to_vec(),
            edges: g.edges().iter().map(|e| [e.a, e.b]).collect(),
        }
    }

    fn build(&self) -> Result<Graph, GraphError> {
        Graph::new(self.vertices.iter().copied(), self.edges.iter().map(|e| (e[0], e[1])))
    }
}

// --- graphs -------------------------------------------------------------------

/// Graph as structured text.
pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphRecord::of(g)).expect("graph serializes")
}

/// Graph as an edge list, one `a b` per line.
pub fn graph_to_edge_list(g: &Graph) -> String {
    g.edges().iter().map(|e| format!("{} {}\n", e.a, e.b)).collect()
}

/// Parse either graph format; input starting with `{` is structured text.
pub fn parse_graph(text: &str) -> Result<Graph, IoError> {
    if text.trim_start().starts_with('{') {
        let rec: GraphRecord = serde_json::from_str(text)?;
        return Ok(rec.build()?);
    }
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| IoError::EdgeList {
            line: k + 1,
            msg: msg.to_string(),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err("expected two vertex labels"));
        }
        let a = fields[0].parse().map_err(|_| err("vertex label is not a non-negative integer"))?;
        let b = fields[1].parse().map_err(|_| err("vertex label is not a non-negative integer"))?;
        edges.push((a, b));
    }
    Ok(Graph::from_edges(edges)?)
}

// --- colorings ----------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ColoringRecord {
    #[serde(flatten)]
    graph: GraphRecord,
    coloring: Vec<(Vertex, Vertex, Color)>,
}

#[derive(Serialize)]
struct ColoringSetRecord {
    #[serde(flatten)]
    graph: GraphRecord,
    modulo_swap: bool,
    colorings: Vec<Vec<(Vertex, Vertex, Color)>>,
}

/// One coloring, with its graph, as structured text.
pub fn coloring_to_json(g: &Graph, c: &EdgeColoring) -> String {
    let rec = ColoringRecord {
        graph: GraphRecord::of(g),
        coloring: c.triples(g),
    };
    serde_json::to_string_pretty(&rec).expect("coloring serializes")
}

/// Parse a single coloring file, returning the graph it is defined on.
pub fn parse_coloring(text: &str) -> Result<(Graph, EdgeColoring), IoError> {
    let rec: ColoringRecord = serde_json::from_str(text)?;
    let g = rec.graph.build()?;
    let c = EdgeColoring::from_triples(&g, rec.coloring)?;
    Ok((g, c))
}

/// A whole enumeration result as structured text.
pub fn coloring_set_to_json(g: &Graph, set: &ColoringSet) -> String {
    let rec = ColoringSetRecord {
        graph: GraphRecord::of(g),
        modulo_swap: set.modulo_swap,
        colorings: set.colorings.iter().map(|c| c.triples(g)).collect(),
    };
    serde_json::to_string_pretty(&rec).expect("coloring set serializes")
}

/// A coloring as `a-b:red` tokens, one line.
pub fn coloring_to_text(g: &Graph, c: &EdgeColoring) -> String {
    c.triples(g)
        .iter()
        .map(|(a, b, col)| format!("{a}-{b}:{}", col.name()))
        .collect::<Vec<_>>()
        .join(" ")
}

// --- lengths ------------------------------------------------------------------

#[derive(Serialize, Deserialize, Default)]
struct LengthRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<Vec<(Vertex, Vertex, f64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<Vec<(Vertex, Vertex, f64)>>,
}

fn pairs(values: Vec<(Vertex, Vertex, f64)>) -> Result<Vec<(VertexPair, f64)>, IoError> {
    values
        .into_iter()
        .map(|(a, b, x)| Ok((VertexPair::new(a, b).ok_or(IoError::BadPair(a, b))?, x)))
        .collect()
}

/// Lengths as structured text, stored as `lambda`.
pub fn lengths_to_json(lam: &LengthAssignment) -> String {
    let rec = LengthRecord {
        lambda: Some(lam.iter().map(|(e, l)| (e.a, e.b, l)).collect()),
        delta: None,
    };
    serde_json::to_string_pretty(&rec).expect("lengths serialize")
}

/// Parse a length file given as either `lambda` or `delta` values.
pub fn parse_lengths(text: &str) -> Result<LengthAssignment, IoError> {
    let rec: LengthRecord = serde_json::from_str(text)?;
    match (rec.lambda, rec.delta) {
        (Some(l), None) => Ok(LengthAssignment::from_lambdas(pairs(l)?)?),
        (None, Some(d)) => Ok(LengthAssignment::from_deltas(pairs(d)?)?),
        _ => Err(IoError::LengthKind),
    }
}

// --- realizations -------------------------------------------------------------

fn points(rho: &SphericalRealization) -> BTreeMap<Vertex, [f64; 3]> {
    rho.iter().map(|(v, p)| (v, [p.x, p.y, p.z])).collect()
}

fn from_points(map: BTreeMap<Vertex, [f64; 3]>) -> Result<SphericalRealization, GeometryError> {
    SphericalRealization::from_points(map.into_iter().map(|(v, p)| (v, Vector3::from(p))))
}

/// Realization as structured text.
pub fn realization_to_json(rho: &SphericalRealization) -> String {
    serde_json::to_string_pretty(&points(rho)).expect("realization serializes")
}

/// Parse a realization; every point must lie on the unit sphere.
pub fn parse_realization(text: &str) -> Result<SphericalRealization, IoError> {
    let map: BTreeMap<Vertex, [f64; 3]> = serde_json::from_str(text)?;
    Ok(from_points(map)?)
}

// --- trajectories -------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SampleRecord {
    parameter: f64,
    points: BTreeMap<Vertex, [f64; 3]>,
}

#[derive(Serialize, Deserialize)]
struct TrajectoryRecord {
    kind: MotionKind,
    #[serde(flatten)]
    graph: GraphRecord,
    lambda: Vec<(Vertex, Vertex, f64)>,
    samples: Vec<SampleRecord>,
}

/// Trajectory as structured text at full precision.
pub fn trajectory_to_json(traj: &MotionTrajectory) -> String {
    let rec = TrajectoryRecord {
        kind: traj.kind,
        graph: GraphRecord::of(&traj.graph),
        lambda: traj.lengths.iter().map(|(e, l)| (e.a, e.b, l)).collect(),
        samples: traj
            .samples
            .iter()
            .map(|s| SampleRecord {
                parameter: s.parameter,
                points: points(&s.realization),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&rec).expect("trajectory serializes")
}

/// Parse a structured trajectory.
pub fn parse_trajectory(text: &str) -> Result<MotionTrajectory, IoError> {
    let rec: TrajectoryRecord = serde_json::from_str(text)?;
    let graph = rec.graph.build()?;
    let lengths = LengthAssignment::from_lambdas(pairs(rec.lambda)?)?;
    let samples = rec
        .samples
        .into_iter()
        .map(|s| {
            Ok(Sample {
                parameter: s.parameter,
                realization: from_points(s.points)?,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(MotionTrajectory {
        graph,
        lengths,
        samples,
        kind: rec.kind,
    })
}

/// Trajectory as CSV: `parameter, x_v, y_v, z_v for each vertex, residual`.
pub fn trajectory_to_csv(traj: &MotionTrajectory) -> String {
    let vertices = traj.graph.vertices();
    let mut out = String::from("parameter");
    for v in vertices {
        out.push_str(&format!(",x{v},y{v},z{v}"));
    }
    out.push_str(",residual\n");
    for s in &traj.samples {
        out.push_str(&format!("{}", s.parameter));
        for &v in vertices {
            let p = s.realization.at(v);
            out.push_str(&format!(",{},{},{}", p.x, p.y, p.z));
        }
        let r = max_edge_residual(&traj.graph, &s.realization, &traj.lengths).unwrap_or(f64::NAN);
        out.push_str(&format!(",{r:e}\n"));
    }
    out
}
