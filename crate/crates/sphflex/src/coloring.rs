//! Red/blue edge colorings and the NAP / NAC predicates.
//!
//! Purpose
//! - Decide whether a coloring has "no alternating path" (NAP), enumerate all
//!   NAP-colorings of a graph, and produce a flexibility certificate. A
//!   connected graph is flexible on the sphere exactly when such a coloring
//!   exists.
//!
//! Why this design
//! - The NAP check uses the local criterion: every edge has an endpoint whose
//!   incident edges all share one color. This is `O(|E|·Δ)` and, on bit masks,
//!   a couple of AND operations per edge. The literal scan over 3-edge walks is
//!   kept as [`is_nap_by_walks`] so tests can compare the two formulations.
//! - A 3-edge walk `(v, w, z, t)` may close up (`t = v`). This matters exactly
//!   for triangles: a triangle colored red/blue/red has no simple alternating
//!   3-path, but its two bichromatic vertices are adjacent, so the local
//!   criterion rejects it. Triangles are rigid on the sphere, so the local
//!   criterion is the right one and the walk scan follows it.
//! - Enumeration walks the `2^|E|` coloring masks in parallel over disjoint
//!   ranges. With `modulo_swap` the representative has edge 0 colored red,
//!   i.e. the lexicographically smallest of a coloring and its swap
//!   (red < blue).

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Default largest edge count accepted by exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 25;

/// Edge color. `Red < Blue` in the canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn swapped(self) -> Self {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Errors from coloring operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the graph has {expected} edges")]
    LengthMismatch { expected: usize, got: usize },
    #[error("graph has {edges} edges, above the enumeration budget of {budget}")]
    BudgetExceeded { edges: usize, budget: usize },
    #[error("coloring is not a NAP-coloring")]
    NotNap,
    #[error("edge {{{0}, {1}}} is not in the graph")]
    UnknownEdge(Vertex, Vertex),
}

/// Total red/blue coloring of a graph's edges, in the graph's canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

impl EdgeColoring {
    /// Coloring from per-edge colors in canonical edge order.
    pub fn new(g: &Graph, colors: Vec<Color>) -> Result<Self, ColoringError> {
        if colors.len() != g.edge_count() {
            return Err(ColoringError::LengthMismatch {
                expected: g.edge_count(),
                got: colors.len(),
            });
        }
        Ok(Self { colors })
    }

    /// Coloring from `(a, b, color)` triples; every edge must be listed once.
    pub fn from_triples(
        g: &Graph,
        triples: impl IntoIterator<Item = (Vertex, Vertex, Color)>,
    ) -> Result<Self, ColoringError> {
        let mut colors: Vec<Option<Color>> = vec![None; g.edge_count()];
        let mut listed = 0;
        for (a, b, c) in triples {
            let k = g.edge_index(a, b).ok_or(ColoringError::UnknownEdge(a, b))?;
            if colors[k].replace(c).is_none() {
                listed += 1;
            }
        }
        if listed != g.edge_count() {
            return Err(ColoringError::LengthMismatch {
                expected: g.edge_count(),
                got: listed,
            });
        }
        Ok(Self {
            colors: colors.into_iter().map(|c| c.unwrap()).collect(),
        })
    }

    /// Coloring whose red edges are exactly those selected by `pred`.
    pub fn from_predicate(g: &Graph, mut pred: impl FnMut(Vertex, Vertex) -> bool) -> Self {
        let colors = g
            .edges()
            .iter()
            .map(|e| if pred(e.a, e.b) { Color::Red } else { Color::Blue })
            .collect();
        Self { colors }
    }

    /// Decode a bit mask (bit `k` set = edge `k` red).
    pub fn from_mask(g: &Graph, mask: u64) -> Self {
        let colors = (0..g.edge_count())
            .map(|k| if mask >> k & 1 == 1 { Color::Red } else { Color::Blue })
            .collect();
        Self { colors }
    }

    /// Bit mask with bit `k` set when edge `k` is red (`|E| <= 64`).
    pub fn red_mask(&self) -> u64 {
        assert!(self.colors.len() <= 64, "mask representation needs |E| <= 64");
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == Color::Red)
            .fold(0, |m, (k, _)| m | 1 << k)
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Color of the edge with canonical index `k`.
    pub fn color(&self, k: usize) -> Color {
        self.colors[k]
    }

    /// Globally swapped coloring.
    pub fn swapped(&self) -> Self {
        Self {
            colors: self.colors.iter().map(|c| c.swapped()).collect(),
        }
    }

    /// `(a, b, color)` triples in canonical edge order.
    pub fn triples(&self, g: &Graph) -> Vec<(Vertex, Vertex, Color)> {
        g.edges()
            .iter()
            .zip(&self.colors)
            .map(|(e, &c)| (e.a, e.b, c))
            .collect()
    }

    /// Representative modulo global swap: the smaller of `self` and its swap.
    pub fn canonical_modulo_swap(&self) -> Self {
        let swapped = self.swapped();
        if swapped < *self {
            swapped
        } else {
            self.clone()
        }
    }
}

/// A list of colorings, possibly reduced modulo the global red/blue swap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringSet {
    pub colorings: Vec<EdgeColoring>,
    pub modulo_swap: bool,
}

impl ColoringSet {
    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }
}

/// Both colors occur.
pub fn is_surjective(c: &EdgeColoring) -> bool {
    c.colors.contains(&Color::Red) && c.colors.contains(&Color::Blue)
}

/// Per-vertex incidence masks, for the bit-level predicates.
fn incidence_masks(g: &Graph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|i| g.incident_edges(i).iter().fold(0u64, |m, &k| m | 1 << k))
        .collect()
}

/// Local NAP test on a red mask.
fn mask_is_nap(g: &Graph, incidence: &[u64], full: u64, mask: u64) -> bool {
    if mask == 0 || mask == full {
        return false;
    }
    let mono = |i: usize| {
        let m = mask & incidence[i];
        m == 0 || m == incidence[i]
    };
    (0..g.edge_count()).all(|k| {
        let (i, j) = g.edge_endpoints(k);
        mono(i) || mono(j)
    })
}

/// True if every edge incident to the vertex with dense index `i` has one color.
fn is_monochromatic_at(g: &Graph, c: &EdgeColoring, i: usize) -> bool {
    let inc = g.incident_edges(i);
    inc.iter().all(|&k| c.colors[k] == c.colors[inc[0]])
}

/// NAP test: surjective, and every edge has a monochromatic endpoint.
pub fn is_nap(g: &Graph, c: &EdgeColoring) -> bool {
    is_surjective(c)
        && (0..g.edge_count()).all(|k| {
            let (i, j) = g.edge_endpoints(k);
            is_monochromatic_at(g, c, i) || is_monochromatic_at(g, c, j)
        })
}

/// NAP test by scanning all 3-edge walks `(v, w, z, t)` with distinct
/// consecutive edges for the color pattern `X, Y, X` with `X != Y`.
///
/// Slower than [`is_nap`]; kept as an independent formulation.
pub fn is_nap_by_walks(g: &Graph, c: &EdgeColoring) -> bool {
    if !is_surjective(c) {
        return false;
    }
    for middle in 0..g.edge_count() {
        let (w, z) = g.edge_endpoints(middle);
        let y = c.colors[middle];
        for (end_w, end_z) in [(w, z), (z, w)] {
            let left = g
                .incident_edges(end_w)
                .iter()
                .filter(|&&k| k != middle)
                .map(|&k| c.colors[k]);
            for x in left {
                if x == y {
                    continue;
                }
                let closes = g
                    .incident_edges(end_z)
                    .iter()
                    .any(|&k| k != middle && c.colors[k] == x);
                if closes {
                    return false;
                }
            }
        }
    }
    true
}

/// Union-find root with path halving.
fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// NAC test: surjective, and no cycle has exactly one edge of some color.
///
/// A cycle with exactly one blue edge exists iff some blue edge joins two
/// vertices of one red component, and symmetrically.
pub fn is_nac(g: &Graph, c: &EdgeColoring) -> bool {
    if !is_surjective(c) {
        return false;
    }
    for color in [Color::Red, Color::Blue] {
        let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
        for k in 0..g.edge_count() {
            if c.colors[k] == color {
                let (i, j) = g.edge_endpoints(k);
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
        for k in 0..g.edge_count() {
            if c.colors[k] != color {
                let (i, j) = g.edge_endpoints(k);
                if find(&mut parent, i) == find(&mut parent, j) {
                    return false;
                }
            }
        }
    }
    true
}

/// All NAP-colorings, by exhaustive search over `2^|E|` masks.
pub fn enumerate_nap(g: &Graph, modulo_swap: bool) -> Result<ColoringSet, ColoringError> {
    enumerate_nap_with_budget(g, modulo_swap, DEFAULT_ENUMERATION_BUDGET)
}

/// [`enumerate_nap`] with an explicit edge budget (at most 40).
pub fn enumerate_nap_with_budget(
    g: &Graph,
    modulo_swap: bool,
    budget: usize,
) -> Result<ColoringSet, ColoringError> {
    let m = g.edge_count();
    if m > budget.min(40) {
        return Err(ColoringError::BudgetExceeded {
            edges: m,
            budget: budget.min(40),
        });
    }
    let incidence = incidence_masks(g);
    let full: u64 = if m == 0 { 0 } else { (1u64 << m) - 1 };
    let total: u64 = 1u64 << m;
    // Edge 0 red means bit 0 set: canonical representatives are odd masks.
    let keep = |mask: u64| !modulo_swap || mask & 1 == 1;
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let mut masks: Vec<u64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(total);
            let incidence = &incidence;
            (start..end).filter(move |&mask| keep(mask) && mask_is_nap(g, incidence, full, mask))
        })
        .collect();
    masks.sort_unstable();
    let mut colorings: Vec<EdgeColoring> =
        masks.into_iter().map(|mask| EdgeColoring::from_mask(g, mask)).collect();
    colorings.sort();
    Ok(ColoringSet {
        colorings,
        modulo_swap,
    })
}

/// Some NAP-coloring, or `None` when the graph has none (and is therefore
/// rigid on the sphere).
///
/// Backtracking over edges with the local criterion as pruning rule; not
/// limited by the enumeration budget.
pub fn flexibility_certificate(g: &Graph) -> Option<EdgeColoring> {
    let m = g.edge_count();
    if m < 2 {
        return None;
    }
    let mut search = Backtrack {
        g,
        colors: vec![None; m],
    };
    // Fixing edge 0 red loses nothing: NAP-ness is swap invariant.
    search.colors[0] = Some(Color::Red);
    if search.extend(1) {
        let colors = search.colors.into_iter().map(|c| c.unwrap()).collect();
        Some(EdgeColoring { colors })
    } else {
        None
    }
}

struct Backtrack<'a> {
    g: &'a Graph,
    colors: Vec<Option<Color>>,
}

impl Backtrack<'_> {
    /// Bichromatic already, given the colors fixed so far.
    fn is_bichromatic(&self, i: usize) -> bool {
        let mut seen = [false; 2];
        for &k in self.g.incident_edges(i) {
            if let Some(c) = self.colors[k] {
                seen[c as usize] = true;
            }
        }
        seen[0] && seen[1]
    }

    /// Both endpoints of some edge touching `i` are already bichromatic.
    fn violates_near(&self, i: usize) -> bool {
        self.g.incident_edges(i).iter().any(|&k| {
            let (a, b) = self.g.edge_endpoints(k);
            self.is_bichromatic(a) && self.is_bichromatic(b)
        })
    }

    fn extend(&mut self, k: usize) -> bool {
        if k == self.colors.len() {
            return self.colors.contains(&Some(Color::Blue));
        }
        let (a, b) = self.g.edge_endpoints(k);
        for c in [Color::Red, Color::Blue] {
            self.colors[k] = Some(c);
            if !self.violates_near(a) && !self.violates_near(b) && self.extend(k + 1) {
                return true;
            }
        }
        self.colors[k] = None;
        false
    }
}

/// Vertex partition attached to a NAP-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolePartition {
    /// Vertices incident to edges of both colors (an independent set).
    pub poles: BTreeSet<Vertex>,
    /// Vertices all of whose edges are red.
    pub red_side: BTreeSet<Vertex>,
    /// Vertices all of whose edges are blue.
    pub blue_side: BTreeSet<Vertex>,
}

/// Split the vertices of a NAP-colored graph into bichromatic "poles" and the
/// red-only and blue-only sides.
pub fn nap_pole_partition(g: &Graph, c: &EdgeColoring) -> Result<PolePartition, ColoringError> {
    if !is_nap(g, c) {
        return Err(ColoringError::NotNap);
    }
    let mut part = PolePartition {
        poles: BTreeSet::new(),
        red_side: BTreeSet::new(),
        blue_side: BTreeSet::new(),
    };
    for (i, &v) in g.vertices().iter().enumerate() {
        let inc = g.incident_edges(i);
        let red = inc.iter().filter(|&&k| c.colors[k] == Color::Red).count();
        if red == inc.len() {
            part.red_side.insert(v);
        } else if red == 0 {
            part.blue_side.insert(v);
        } else {
            part.poles.insert(v);
        }
    }
    Ok(part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn triangle_has_no_nap_coloring() {
        let g = complete(3);
        assert!(flexibility_certificate(&g).is_none());
        assert!(enumerate_nap(&g, false).unwrap().is_empty());
        // red, blue, red around the triangle: no simple alternating 3-path,
        // but the closed walk is alternating.
        let c = EdgeColoring::new(&g, vec![Color::Red, Color::Red, Color::Blue]).unwrap();
        assert!(!is_nap(&g, &c));
        assert!(!is_nap_by_walks(&g, &c));
    }

    #[test]
    fn k33_counts() {
        let g = k33();
        assert_eq!(enumerate_nap(&g, true).unwrap().len(), 6);
        assert_eq!(enumerate_nap(&g, false).unwrap().len(), 12);
    }

    #[test]
    fn star_every_surjective_coloring_is_nap() {
        assert_eq!(enumerate_nap(&star(3), false).unwrap().len(), 6);
    }

    #[test]
    fn alternating_path() {
        let g = path(4);
        let c = EdgeColoring::new(&g, vec![Color::Red, Color::Blue, Color::Red]).unwrap();
        assert!(!is_nap(&g, &c));
        let c = EdgeColoring::new(&g, vec![Color::Red, Color::Red, Color::Blue]).unwrap();
        assert!(is_nap(&g, &c));
    }

    #[test]
    fn nac_examples() {
        let g = cycle(4);
        // edges in canonical order: {1,2},{1,4},{2,3},{3,4}
        let one_blue =
            EdgeColoring::new(&g, vec![Color::Red, Color::Red, Color::Red, Color::Blue]).unwrap();
        assert!(!is_nac(&g, &one_blue));
        // red,red,blue,blue around the cycle: 1-2 red, 2-3 red, 3-4 blue, 4-1 blue
        let two_two =
            EdgeColoring::new(&g, vec![Color::Red, Color::Blue, Color::Red, Color::Blue]).unwrap();
        assert!(is_nac(&g, &two_two));
    }

    #[test]
    fn certificate_for_two_triangles_with_apex() {
        let g = two_triangles_with_apex();
        let all = enumerate_nap(&g, true).unwrap();
        assert_eq!(all.len(), 1);
        let only = &all.colorings[0];
        let blue: Vec<_> = only
            .triples(&g)
            .into_iter()
            .filter(|t| t.2 == Color::Blue)
            .map(|t| (t.0, t.1))
            .collect();
        assert_eq!(blue, vec![(1, 5), (4, 5)]);
        let cert = flexibility_certificate(&g).unwrap();
        assert_eq!(cert.canonical_modulo_swap(), *only);
    }

    #[test]
    fn pole_partition_k33() {
        let g = k33();
        let c = EdgeColoring::from_predicate(&g, |a, _| a == 1);
        let p = nap_pole_partition(&g, &c).unwrap();
        assert_eq!(p.poles, BTreeSet::from([2, 4, 6]));
        assert_eq!(p.red_side, BTreeSet::from([1]));
        assert_eq!(p.blue_side, BTreeSet::from([3, 5]));
    }
}
