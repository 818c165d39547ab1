//! Cuts of the marked labels, bond colorings, and the `K_{3,3}` table
//! combinatorics: μ-values, degree tables, type tables, orbit counts, and
//! integer feasibility of the pullback systems.
//!
//! Purpose
//! - Mechanise the combinatorial side of the flexibility analysis. Every
//!   vertex `v` carries two marked labels `P_v`, `Q_v`. A cut is a bipartition
//!   `(I, J)` of all `2n` labels. A cut induces an edge coloring (red when at
//!   least three of `P_a, P_b, Q_a, Q_b` lie in `I`) as long as no edge meets
//!   `I` in exactly two labels.
//! - For `K_{3,3}` the nine 4-cycles ("quadrilaterals") carry μ-rows taken
//!   from a fixed table. Degree tables and the ϑ rule determine their types.
//!   The pullback equations give linear systems over non-negative integers,
//!   whose feasibility decides which motion cases can occur.
//!
//! Why this design
//! - Divisors are plain cuts. Intersection numbers enter only as table data
//!   ([`MU_TABLE`], mirrored in `data/mu_table.csv`).
//! - μ unknowns are indexed by normal-form cuts `(i, T1T2T3)`, with a cut and
//!   its P↔Q conjugate merged at construction ([`NormalCut::merged`]). So the
//!   identification `μ(i,T) = μ(i,T̄)` is structural, not an extra equation.
//! - Feasibility is decided by exhaustive bounded search with constraint
//!   propagation. Every unknown is bounded by the largest right-hand side and
//!   each equation has four terms, so exhaustive search is cheap and exact.
//! - The `r/l` ambiguity of type tables is resolved by branching over both
//!   readings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{is_nap, is_surjective, EdgeColoring};
use crate::graph::{named, Graph, Vertex, VertexPair};

/// Largest vertex count accepted by [`enumerate_valid_cuts`].
pub const CUT_ENUMERATION_MAX_VERTICES: usize = 8;

/// Errors from cut and table operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("cut is not valid for the graph: {0}")]
    InvalidCut(String),
    #[error("graph has {0} vertices; cut enumeration is limited to {max}", max = CUT_ENUMERATION_MAX_VERTICES)]
    BudgetExceeded(usize),
    #[error("no μ-table row for {0}")]
    UnknownRow(String),
    #[error("quadrilateral {0:?} is assigned a case that contradicts the type table")]
    InconsistentTypes((Vertex, Vertex)),
}

/// Which of the two marked labels of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mark {
    P,
    Q,
}

impl Mark {
    pub fn swapped(self) -> Self {
        match self {
            Mark::P => Mark::Q,
            Mark::Q => Mark::P,
        }
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mark::P => "P",
            Mark::Q => "Q",
        })
    }
}

/// Marked label `P_v` or `Q_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MarkedLabel {
    pub mark: Mark,
    pub vertex: Vertex,
}

impl MarkedLabel {
    pub fn p(vertex: Vertex) -> Self {
        Self { mark: Mark::P, vertex }
    }

    pub fn q(vertex: Vertex) -> Self {
        Self { mark: Mark::Q, vertex }
    }
}

impl fmt::Display for MarkedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.mark, self.vertex)
    }
}

/// Bipartition `(I, J)` of the marked labels of a graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cut {
    pub i_side: BTreeSet<MarkedLabel>,
    pub j_side: BTreeSet<MarkedLabel>,
}

impl Cut {
    /// Cut of `g`'s labels with the given `I`; `J` is the complement.
    ///
    /// Both sides must have at least two labels.
    pub fn from_i_side(
        g: &Graph,
        i_side: impl IntoIterator<Item = MarkedLabel>,
    ) -> Result<Self, CutError> {
        let i_side: BTreeSet<MarkedLabel> = i_side.into_iter().collect();
        for l in &i_side {
            if g.index_of(l.vertex).is_none() {
                return Err(CutError::InvalidCut(format!("label {l} is not a graph label")));
            }
        }
        let j_side: BTreeSet<MarkedLabel> = all_labels(g).filter(|l| !i_side.contains(l)).collect();
        if i_side.len() < 2 || j_side.len() < 2 {
            return Err(CutError::InvalidCut("each side needs at least two labels".into()));
        }
        Ok(Self { i_side, j_side })
    }

    /// The same cut with `I` and `J` exchanged.
    pub fn flipped(&self) -> Self {
        Self {
            i_side: self.j_side.clone(),
            j_side: self.i_side.clone(),
        }
    }

    /// The cut with every `P` and `Q` exchanged (complex conjugation).
    pub fn conjugate(&self) -> Self {
        let swap = |s: &BTreeSet<MarkedLabel>| {
            s.iter()
                .map(|l| MarkedLabel {
                    mark: l.mark.swapped(),
                    vertex: l.vertex,
                })
                .collect()
        };
        Self {
            i_side: swap(&self.i_side),
            j_side: swap(&self.j_side),
        }
    }

    /// Number of labels of `{P_a, P_b, Q_a, Q_b}` lying in `I`.
    fn hits(&self, a: Vertex, b: Vertex) -> usize {
        [MarkedLabel::p(a), MarkedLabel::p(b), MarkedLabel::q(a), MarkedLabel::q(b)]
            .iter()
            .filter(|l| self.i_side.contains(l))
            .count()
    }

    fn covers(&self, g: &Graph) -> bool {
        self.i_side.len() + self.j_side.len() == 2 * g.vertex_count()
            && all_labels(g).all(|l| self.i_side.contains(&l) || self.j_side.contains(&l))
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.i_side {
            write!(f, "{l}")?;
        }
        f.write_str(" | ")?;
        for l in &self.j_side {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn all_labels(g: &Graph) -> impl Iterator<Item = MarkedLabel> + '_ {
    g.vertices()
        .iter()
        .flat_map(|&v| [MarkedLabel::p(v), MarkedLabel::q(v)])
}

/// No edge meets `I` in exactly two of its four labels.
pub fn cut_valid_for_bond(g: &Graph, c: &Cut) -> bool {
    c.covers(g) && g.edges().iter().all(|e| c.hits(e.a, e.b) != 2)
}

/// Edge coloring induced by a bond-valid cut: red iff at least three of the
/// edge's four labels are in `I`.
pub fn coloring_from_cut(g: &Graph, c: &Cut) -> Result<EdgeColoring, CutError> {
    if !cut_valid_for_bond(g, c) {
        return Err(CutError::InvalidCut(format!("{c}")));
    }
    Ok(EdgeColoring::from_predicate(g, |a, b| c.hits(a, b) >= 3))
}

/// NAP verdict on the induced coloring, together with a non-edge `{c, d}`
/// with `P_c, Q_c ∈ I` and `P_d, Q_d ∈ J` when one exists.
///
/// The two are computed independently; they always agree.
pub fn nap_iff_separated_nonedge(
    g: &Graph,
    c: &Cut,
) -> Result<(bool, Option<VertexPair>), CutError> {
    let coloring = coloring_from_cut(g, c)?;
    let nap = is_nap(g, &coloring);
    let both_in = |side: &BTreeSet<MarkedLabel>, v: Vertex| {
        side.contains(&MarkedLabel::p(v)) && side.contains(&MarkedLabel::q(v))
    };
    let witness = g
        .nonedges()
        .into_iter()
        .find(|p| {
            (both_in(&c.i_side, p.a) && both_in(&c.j_side, p.b))
                || (both_in(&c.i_side, p.b) && both_in(&c.j_side, p.a))
        });
    Ok((nap, witness))
}

/// All bond-valid cuts inducing a surjective coloring.
///
/// With `modulo_symmetry`, one representative per class under `I ↔ J` and the
/// global `P ↔ Q` swap is kept.
pub fn enumerate_valid_cuts(g: &Graph, modulo_symmetry: bool) -> Result<Vec<Cut>, CutError> {
    let n = g.vertex_count();
    if n > CUT_ENUMERATION_MAX_VERTICES {
        return Err(CutError::BudgetExceeded(n));
    }
    // Bit i: P of vertex index i; bit n + i: Q of vertex index i.
    let full: u32 = (1u32 << (2 * n)) - 1;
    let edge_masks: Vec<u32> = (0..g.edge_count())
        .map(|k| {
            let (i, j) = g.edge_endpoints(k);
            (1 << i) | (1 << j) | (1 << (n + i)) | (1 << (n + j))
        })
        .collect();
    let swap_pq = |m: u32| ((m >> n) | (m << n)) & full;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..=full {
        let size = mask.count_ones() as usize;
        if size < 2 || 2 * n - size < 2 {
            continue;
        }
        let counts: Vec<u32> = edge_masks.iter().map(|em| (em & mask).count_ones()).collect();
        if counts.contains(&2) {
            continue;
        }
        let red = counts.iter().filter(|&&c| c >= 3).count();
        if red == 0 || red == counts.len() {
            continue;
        }
        let key = if modulo_symmetry {
            let comp = full & !mask;
            [mask, comp, swap_pq(mask), swap_pq(comp)].into_iter().min().unwrap()
        } else {
            mask
        };
        if seen.insert(key) {
            let labels = (0..2 * n).filter(|b| key >> b & 1 == 1).map(|b| {
                let v = g.vertices()[b % n];
                if b < n {
                    MarkedLabel::p(v)
                } else {
                    MarkedLabel::q(v)
                }
            });
            out.push(Cut::from_i_side(g, labels)?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// K_{3,3}: normal-form cuts
// ---------------------------------------------------------------------------

/// Odd side of `K_{3,3}`.
pub const ODD: [Vertex; 3] = [1, 3, 5];
/// Even side of `K_{3,3}`.
pub const EVEN: [Vertex; 3] = [2, 4, 6];

/// The three vertices on the other side of `K_{3,3}` from `v`, in increasing order.
pub fn opposite(v: Vertex) -> [Vertex; 3] {
    if v % 2 == 1 {
        EVEN
    } else {
        ODD
    }
}

/// Normal-form cut `(i, T1T2T3)` of `K_{3,3}`:
/// `I = {P_i, Q_i, (T1)_{j1}, (T2)_{j2}, (T3)_{j3}}` where `j1 < j2 < j3` are
/// the vertices of the other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NormalCut {
    pub apex: Vertex,
    pub pattern: [Mark; 3],
}

impl NormalCut {
    pub fn new(apex: Vertex, pattern: [Mark; 3]) -> Self {
        assert!((1..=6).contains(&apex), "apex must be a vertex of K33");
        Self { apex, pattern }
    }

    /// Parse `"PQP"`-style patterns.
    pub fn parse(apex: Vertex, pattern: &str) -> Option<Self> {
        let marks: Vec<Mark> = pattern
            .chars()
            .map(|c| match c {
                'P' => Some(Mark::P),
                'Q' => Some(Mark::Q),
                _ => None,
            })
            .collect::<Option<_>>()?;
        let pattern: [Mark; 3] = marks.try_into().ok()?;
        ((1..=6).contains(&apex)).then_some(Self { apex, pattern })
    }

    /// The P↔Q conjugate `(i, T̄1T̄2T̄3)`.
    pub fn conjugate(&self) -> Self {
        Self {
            apex: self.apex,
            pattern: self.pattern.map(Mark::swapped),
        }
    }

    /// Representative of `{self, conjugate}`: the one whose pattern starts with `P`.
    pub fn merged(&self) -> Self {
        if self.pattern[0] == Mark::P {
            *self
        } else {
            self.conjugate()
        }
    }

    /// The `I` side of this cut.
    pub fn i_side(&self) -> BTreeSet<MarkedLabel> {
        let mut s = BTreeSet::from([MarkedLabel::p(self.apex), MarkedLabel::q(self.apex)]);
        for (m, j) in self.pattern.iter().zip(opposite(self.apex)) {
            s.insert(MarkedLabel { mark: *m, vertex: j });
        }
        s
    }

    /// The cut of `K_{3,3}` described by this normal form.
    pub fn to_cut(&self) -> Cut {
        Cut::from_i_side(&named::k33(), self.i_side()).expect("normal cuts are proper")
    }

    /// Normal form of a cut of `K_{3,3}` (up to `I ↔ J`), if it has that shape.
    pub fn from_cut(c: &Cut) -> Option<Self> {
        [&c.i_side, &c.j_side]
            .into_iter()
            .find_map(Self::from_side)
    }

    fn from_side(side: &BTreeSet<MarkedLabel>) -> Option<Self> {
        if side.len() != 5 {
            return None;
        }
        let apex = (1..=6).find(|&v| {
            side.contains(&MarkedLabel::p(v)) && side.contains(&MarkedLabel::q(v))
        })?;
        let mut pattern = [Mark::P; 3];
        for (slot, j) in opposite(apex).into_iter().enumerate() {
            pattern[slot] = match (
                side.contains(&MarkedLabel::p(j)),
                side.contains(&MarkedLabel::q(j)),
            ) {
                (true, false) => Mark::P,
                (false, true) => Mark::Q,
                _ => return None,
            };
        }
        Some(Self { apex, pattern })
    }

    /// All 48 normal cuts.
    pub fn all() -> Vec<Self> {
        let marks = [Mark::P, Mark::Q];
        let mut out = Vec::with_capacity(48);
        for apex in 1..=6 {
            for a in marks {
                for b in marks {
                    for c in marks {
                        out.push(Self::new(apex, [a, b, c]));
                    }
                }
            }
        }
        out
    }

    /// The 24 merged representatives (pattern starting with `P`).
    pub fn all_merged() -> Vec<Self> {
        Self::all()
            .into_iter()
            .filter(|c| c.pattern[0] == Mark::P)
            .collect()
    }
}

impl fmt::Display for NormalCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{}{}{})",
            self.apex, self.pattern[0], self.pattern[1], self.pattern[2]
        )
    }
}

// ---------------------------------------------------------------------------
// Quadrilateral divisors and the μ table
// ---------------------------------------------------------------------------

/// The four cuts of a quadrilateral `1-2-3-4` (odd 1, 3; even 2, 4) that
/// induce NAP-colorings, up to `I ↔ J` and `P ↔ Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QuadDivisor {
    Om,
    Ou,
    Em,
    Eu,
}

impl QuadDivisor {
    /// Table column order.
    pub const ALL: [QuadDivisor; 4] = [QuadDivisor::Om, QuadDivisor::Ou, QuadDivisor::Em, QuadDivisor::Eu];

    fn column(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            QuadDivisor::Om => "T_om",
            QuadDivisor::Ou => "T_ou",
            QuadDivisor::Em => "T_em",
            QuadDivisor::Eu => "T_eu",
        }
    }

    /// `I` side of the cut on a quadrilateral with odd vertices `o1, o3` and
    /// even vertices `e2, e4`.
    pub fn i_side(self, o1: Vertex, o3: Vertex, e2: Vertex, e4: Vertex) -> [MarkedLabel; 4] {
        use MarkedLabel as L;
        match self {
            QuadDivisor::Ou => [L::p(o1), L::q(o1), L::p(e2), L::p(e4)],
            QuadDivisor::Eu => [L::p(e2), L::q(e2), L::p(o1), L::p(o3)],
            QuadDivisor::Om => [L::p(o1), L::q(o1), L::p(e2), L::q(e4)],
            QuadDivisor::Em => [L::p(e2), L::q(e2), L::p(o1), L::q(o3)],
        }
    }

    /// The cut on the standard quadrilateral `1-2-3-4`.
    pub fn standard_cut(self) -> Cut {
        Cut::from_i_side(&named::k22(), self.i_side(1, 3, 2, 4)).expect("quadrilateral cuts are proper")
    }
}

impl fmt::Display for QuadDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Subcase of a deltoid: the residual degenerate component has the two
/// swapped vertices coinciding or antipodal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DeltoidSubcase {
    Coincide,
    Antipodal,
}

/// A row of the μ table: a quadrilateral motion type with its subcase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QuadCase {
    General,
    OddDeltoid(DeltoidSubcase),
    EvenDeltoid(DeltoidSubcase),
    /// Rhomboid component type 1..=4.
    Rhomboid(u8),
    /// Lozenge component type 1..=4.
    Lozenge(u8),
}

impl QuadCase {
    /// Type symbol of this case.
    pub fn symbol(self) -> TypeSymbol {
        match self {
            QuadCase::General => TypeSymbol::G,
            QuadCase::OddDeltoid(_) => TypeSymbol::O,
            QuadCase::EvenDeltoid(_) => TypeSymbol::E,
            QuadCase::Rhomboid(_) => TypeSymbol::R,
            QuadCase::Lozenge(_) => TypeSymbol::L,
        }
    }

    /// Table labels `(case, subcase)`.
    pub fn labels(self) -> (&'static str, String) {
        let sub = |s: DeltoidSubcase, pair: &str| match s {
            DeltoidSubcase::Coincide => format!("{pair} coincide"),
            DeltoidSubcase::Antipodal => format!("{pair} antipodal"),
        };
        match self {
            QuadCase::General => ("g", String::new()),
            QuadCase::OddDeltoid(s) => ("o", sub(s, "1-3")),
            QuadCase::EvenDeltoid(s) => ("e", sub(s, "2-4")),
            QuadCase::Rhomboid(t) => ("r", format!("Type {t}")),
            QuadCase::Lozenge(t) => ("l", format!("Type {t}")),
        }
    }
}

impl fmt::Display for QuadCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (case, sub) = self.labels();
        if sub.is_empty() {
            f.write_str(case)
        } else {
            write!(f, "{case} [{sub}]")
        }
    }
}

/// The 13 rows of the μ table; columns are `(μ(T_om), μ(T_ou), μ(T_em), μ(T_eu))`.
pub const MU_TABLE: [(QuadCase, [u8; 4]); 13] = [
    (QuadCase::General, [1, 1, 1, 1]),
    (QuadCase::OddDeltoid(DeltoidSubcase::Coincide), [1, 1, 1, 0]),
    (QuadCase::OddDeltoid(DeltoidSubcase::Antipodal), [1, 1, 0, 1]),
    (QuadCase::EvenDeltoid(DeltoidSubcase::Coincide), [1, 0, 1, 1]),
    (QuadCase::EvenDeltoid(DeltoidSubcase::Antipodal), [0, 1, 1, 1]),
    (QuadCase::Rhomboid(1), [1, 0, 1, 0]),
    (QuadCase::Rhomboid(2), [0, 1, 1, 0]),
    (QuadCase::Rhomboid(3), [1, 0, 0, 1]),
    (QuadCase::Rhomboid(4), [0, 1, 0, 1]),
    (QuadCase::Lozenge(1), [1, 0, 1, 0]),
    (QuadCase::Lozenge(2), [0, 1, 1, 0]),
    (QuadCase::Lozenge(3), [1, 0, 0, 1]),
    (QuadCase::Lozenge(4), [0, 1, 0, 1]),
];

/// Human-readable copy of [`MU_TABLE`].
pub const MU_TABLE_CSV: &str = include_str!("../data/mu_table.csv");

/// `(μ(T_om), μ(T_ou), μ(T_em), μ(T_eu))` for a table row.
pub fn mu_lookup(case: QuadCase) -> Result<[u8; 4], CutError> {
    MU_TABLE
        .iter()
        .find(|(c, _)| *c == case)
        .map(|(_, row)| *row)
        .ok_or_else(|| CutError::UnknownRow(format!("{case}")))
}

/// μ value of one divisor for a table row.
pub fn mu_value(case: QuadCase, divisor: QuadDivisor) -> Result<u8, CutError> {
    mu_lookup(case).map(|row| row[divisor.column()])
}

// ---------------------------------------------------------------------------
// Degree tables and type tables
// ---------------------------------------------------------------------------

/// ϑ rule: 1 if all degrees are 1, 4 if all are 2, else 2.
pub fn theta(d1: u8, d2: u8, d3: u8) -> u8 {
    match (d1, d2, d3) {
        (1, 1, 1) => 1,
        (2, 2, 2) => 4,
        _ => 2,
    }
}

/// `3×3` table of degrees in `{1, 2}`; rows are odd vertices 1, 3, 5 and
/// columns even vertices 2, 4, 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DegreeTable(pub [[u8; 3]; 3]);

impl DegreeTable {
    /// Table from a 9-bit mask, bit `3r + c` set meaning entry 2.
    pub fn from_bits(bits: u16) -> Self {
        let mut t = [[1u8; 3]; 3];
        for (r, row) in t.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                if bits >> (3 * r + c) & 1 == 1 {
                    *x = 2;
                }
            }
        }
        Self(t)
    }

    pub fn to_bits(&self) -> u16 {
        let mut bits = 0;
        for r in 0..3 {
            for c in 0..3 {
                if self.0[r][c] == 2 {
                    bits |= 1 << (3 * r + c);
                }
            }
        }
        bits
    }

    /// All 512 tables.
    pub fn all() -> impl Iterator<Item = Self> {
        (0u16..512).map(Self::from_bits)
    }

    pub fn row_margins(&self) -> [u8; 3] {
        self.0.map(|r| theta(r[0], r[1], r[2]))
    }

    pub fn col_margins(&self) -> [u8; 3] {
        [0, 1, 2].map(|c| theta(self.0[0][c], self.0[1][c], self.0[2][c]))
    }

    /// Degree `deg p_{kl}` for odd `k`, even `l`.
    pub fn entry(&self, k: Vertex, l: Vertex) -> u8 {
        self.0[odd_index(k)][even_index(l)]
    }

    /// Image under a symmetry.
    pub fn act(&self, s: &TableSymmetry) -> Self {
        let mut t = [[0u8; 3]; 3];
        for (r, row) in t.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = if s.transpose {
                    self.0[s.cols[c]][s.rows[r]]
                } else {
                    self.0[s.rows[r]][s.cols[c]]
                };
            }
        }
        Self(t)
    }

    /// Smallest table in the orbit.
    pub fn orbit_representative(&self) -> Self {
        TableSymmetry::all()
            .iter()
            .map(|s| self.act(s))
            .min()
            .unwrap()
    }
}

impl fmt::Display for DegreeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (rm, cm) = (self.row_margins(), self.col_margins());
        for (row, m) in self.0.iter().zip(rm) {
            writeln!(f, "{} {} {} | {}", row[0], row[1], row[2], m)?;
        }
        write!(f, "{} {} {}", cm[0], cm[1], cm[2])
    }
}

fn odd_index(k: Vertex) -> usize {
    ODD.iter().position(|&v| v == k).expect("odd vertex of K33")
}

fn even_index(l: Vertex) -> usize {
    EVEN.iter().position(|&v| v == l).expect("even vertex of K33")
}

/// Element of `(S3 × S3) ⋊ Z2` acting on `3×3` tables: permute rows and
/// columns, optionally transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableSymmetry {
    pub rows: [usize; 3],
    pub cols: [usize; 3],
    pub transpose: bool,
}

impl TableSymmetry {
    /// All 72 elements.
    pub fn all() -> Vec<Self> {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Vec::with_capacity(72);
        for rows in perms {
            for cols in perms {
                for transpose in [false, true] {
                    out.push(Self { rows, cols, transpose });
                }
            }
        }
        out
    }
}

/// Quadrilateral type symbol; `RL` is the unresolved "r or l" reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeSymbol {
    G,
    O,
    E,
    R,
    L,
    RL,
}

impl fmt::Display for TypeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeSymbol::G => "g",
            TypeSymbol::O => "o",
            TypeSymbol::E => "e",
            TypeSymbol::R => "r",
            TypeSymbol::L => "l",
            TypeSymbol::RL => "r/l",
        })
    }
}

/// `3×3` grid of quadrilateral types; entry `(k, l)` is the quadrilateral left
/// after deleting odd vertex `k` and even vertex `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeTable(pub [[TypeSymbol; 3]; 3]);

impl TypeTable {
    pub fn entry(&self, k: Vertex, l: Vertex) -> TypeSymbol {
        self.0[odd_index(k)][even_index(l)]
    }

    /// Parse rows like `["rre", "rre", "ool"]`.
    pub fn parse(rows: [&str; 3]) -> Option<Self> {
        let mut t = [[TypeSymbol::G; 3]; 3];
        for (r, s) in rows.iter().enumerate() {
            let syms: Vec<TypeSymbol> = s
                .chars()
                .map(|c| match c {
                    'g' => Some(TypeSymbol::G),
                    'o' => Some(TypeSymbol::O),
                    'e' => Some(TypeSymbol::E),
                    'r' => Some(TypeSymbol::R),
                    'l' => Some(TypeSymbol::L),
                    _ => None,
                })
                .collect::<Option<_>>()?;
            t[r] = syms.try_into().ok()?;
        }
        Some(Self(t))
    }
}

impl fmt::Display for TypeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.0.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {} {}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

/// Type of one entry from `(entry, row margin, column margin)`.
fn entry_type(entry: u8, row: u8, col: u8) -> TypeSymbol {
    match (entry, row, col) {
        (2, 4, 4) | (1, 2, 2) => TypeSymbol::G,
        (2, 2, 4) | (1, 1, 2) => TypeSymbol::E,
        (2, 4, 2) | (1, 2, 1) => TypeSymbol::O,
        (2, 2, 2) | (1, 1, 1) => TypeSymbol::RL,
        _ => unreachable!("margins are determined by the entries"),
    }
}

/// Type table determined by a degree table; `r/l` ambiguities are kept.
pub fn type_table(dt: &DegreeTable) -> TypeTable {
    let (rm, cm) = (dt.row_margins(), dt.col_margins());
    let mut t = [[TypeSymbol::G; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            t[r][c] = entry_type(dt.0[r][c], rm[r], cm[c]);
        }
    }
    TypeTable(t)
}

const ALLOWED_ROWS: [[Option<TypeSymbol>; 3]; 5] = {
    use TypeSymbol::*;
    [
        [Some(G), Some(G), None],
        [Some(R), Some(R), Some(E)],
        [Some(O), Some(O), Some(O)],
        [Some(O), Some(O), Some(L)],
        [Some(O), Some(O), Some(G)],
    ]
};

const ALLOWED_COLS: [[Option<TypeSymbol>; 3]; 5] = {
    use TypeSymbol::*;
    [
        [Some(G), Some(G), None],
        [Some(R), Some(R), Some(O)],
        [Some(E), Some(E), Some(E)],
        [Some(E), Some(E), Some(L)],
        [Some(E), Some(E), Some(G)],
    ]
};

/// True if the triple matches one of the patterns up to permutation
/// (`None` is a wildcard).
fn matches_up_to_permutation(triple: [TypeSymbol; 3], patterns: &[[Option<TypeSymbol>; 3]]) -> bool {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    patterns.iter().any(|pat| {
        PERMS.iter().any(|p| {
            (0..3).all(|k| pat[k].is_none_or(|s| s == triple[p[k]]))
        })
    })
}

fn resolved_allowed(tt: &TypeTable) -> bool {
    let t = &tt.0;
    (0..3).all(|r| matches_up_to_permutation(t[r], &ALLOWED_ROWS))
        && (0..3).all(|c| matches_up_to_permutation([t[0][c], t[1][c], t[2][c]], &ALLOWED_COLS))
}

/// All resolutions of `r/l` entries that satisfy the row and column rules.
pub fn allowed_resolutions(tt: &TypeTable) -> Vec<TypeTable> {
    let ambiguous: Vec<(usize, usize)> = (0..3)
        .flat_map(|r| (0..3).map(move |c| (r, c)))
        .filter(|&(r, c)| tt.0[r][c] == TypeSymbol::RL)
        .collect();
    let mut out = Vec::new();
    for choice in 0u32..(1 << ambiguous.len()) {
        let mut t = *tt;
        for (k, &(r, c)) in ambiguous.iter().enumerate() {
            t.0[r][c] = if choice >> k & 1 == 0 { TypeSymbol::R } else { TypeSymbol::L };
        }
        if resolved_allowed(&t) {
            out.push(t);
        }
    }
    out
}

/// True if some resolution of the `r/l` entries satisfies the allowed-row and
/// allowed-column rules.
pub fn row_col_allowed(tt: &TypeTable) -> bool {
    !allowed_resolutions(tt).is_empty()
}

/// Number of orbits of the symmetry group on the 512 degree tables, by
/// explicit orbit partition.
pub fn count_degree_table_orbits() -> usize {
    DegreeTable::all()
        .map(|t| t.orbit_representative())
        .collect::<BTreeSet<_>>()
        .len()
}

/// The same orbit count by Burnside's lemma (average number of fixed tables).
pub fn count_degree_table_orbits_burnside() -> usize {
    let group = TableSymmetry::all();
    let fixed: usize = group
        .iter()
        .map(|s| DegreeTable::all().filter(|t| t.act(s) == *t).count())
        .sum();
    assert_eq!(fixed % group.len(), 0);
    fixed / group.len()
}

/// Orbit sizes, one per orbit, in representative order.
pub fn degree_table_orbit_sizes() -> Vec<usize> {
    let mut sizes: BTreeMap<DegreeTable, usize> = BTreeMap::new();
    for t in DegreeTable::all() {
        *sizes.entry(t.orbit_representative()).or_default() += 1;
    }
    sizes.into_values().collect()
}

/// Number of edge subsets of `K_{3,3}` up to graph automorphism, with the
/// automorphism group found by brute force over vertex permutations.
pub fn count_k33_subgraphs_up_to_automorphism() -> usize {
    let g = named::k33();
    let edges = g.edges().to_vec();
    let mut autos: Vec<Vec<usize>> = Vec::new();
    let mut perm: Vec<Vertex> = (1..=6).collect();
    permutations(&mut perm, 0, &mut |p| {
        let image: Option<Vec<usize>> = edges
            .iter()
            .map(|e| g.edge_index(p[e.a as usize - 1], p[e.b as usize - 1]))
            .collect();
        if let Some(img) = image {
            autos.push(img);
        }
    });
    assert_eq!(autos.len(), 72);
    let mut reps = BTreeSet::new();
    for subset in 0u16..512 {
        let rep = autos
            .iter()
            .map(|img| {
                (0..9)
                    .filter(|&k| subset >> k & 1 == 1)
                    .fold(0u16, |m, k| m | 1 << img[k])
            })
            .min()
            .unwrap();
        reps.insert(rep);
    }
    reps.len()
}

fn permutations(items: &mut Vec<Vertex>, k: usize, visit: &mut impl FnMut(&[Vertex])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// A degree table whose type table admits an allowed resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleCase {
    pub degrees: DegreeTable,
    /// Allowed resolution of the type table.
    pub types: TypeTable,
}

/// All degree tables (out of 512) whose type table passes the row and column rules.
pub fn admissible_cases() -> Vec<AdmissibleCase> {
    DegreeTable::all()
        .filter_map(|dt| {
            allowed_resolutions(&type_table(&dt))
                .into_iter()
                .next()
                .map(|types| AdmissibleCase { degrees: dt, types })
        })
        .collect()
}

/// The four admissible cases of `K_{3,3}` motions, in their displayed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum K33Case {
    /// Every quadrilateral general.
    General,
    /// Two orthogonal great circles.
    Dixon1,
    /// Three rhomboids on the diagonal.
    Dixon2,
    /// Constant diagonal angle.
    ConstantDiagonalAngle,
}

impl K33Case {
    pub const ALL: [K33Case; 4] = [
        K33Case::General,
        K33Case::Dixon1,
        K33Case::Dixon2,
        K33Case::ConstantDiagonalAngle,
    ];

    /// Case number (1..=4).
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn degree_table(self) -> DegreeTable {
        DegreeTable(match self {
            K33Case::General => [[2, 2, 2], [2, 2, 2], [2, 2, 2]],
            K33Case::Dixon1 => [[1, 1, 1], [1, 1, 1], [1, 1, 2]],
            K33Case::Dixon2 => [[2, 1, 1], [1, 2, 1], [1, 1, 2]],
            K33Case::ConstantDiagonalAngle => [[1, 1, 2], [1, 1, 2], [2, 2, 2]],
        })
    }

    pub fn type_table(self) -> TypeTable {
        TypeTable::parse(match self {
            K33Case::General => ["ggg", "ggg", "ggg"],
            K33Case::Dixon1 => ["rre", "rre", "ool"],
            K33Case::Dixon2 => ["rgg", "grg", "ggr"],
            K33Case::ConstantDiagonalAngle => ["gge", "gge", "oog"],
        })
        .unwrap()
    }

    /// The displayed case in the orbit of `dt`, if any.
    pub fn identify(dt: &DegreeTable) -> Option<Self> {
        let rep = dt.orbit_representative();
        Self::ALL
            .into_iter()
            .find(|c| c.degree_table().orbit_representative() == rep)
    }
}

// ---------------------------------------------------------------------------
// Pullback systems and integer feasibility
// ---------------------------------------------------------------------------

/// The quadrilateral left after deleting odd `k` and even `l`, as
/// `(o1, o3, e2, e4)` in increasing order on each side.
pub fn quadrilateral(k: Vertex, l: Vertex) -> (Vertex, Vertex, Vertex, Vertex) {
    let o: Vec<Vertex> = ODD.into_iter().filter(|&v| v != k).collect();
    let e: Vec<Vertex> = EVEN.into_iter().filter(|&v| v != l).collect();
    (o[0], o[1], e[0], e[1])
}

/// Merged normal cuts making up the pullback of a quadrilateral divisor under
/// the map forgetting `k` and `l`.
///
/// The quadrilateral's cut is extended to all twelve labels in every way that
/// keeps it bond-valid on `K_{3,3}`.
pub fn pullback_terms(k: Vertex, l: Vertex, divisor: QuadDivisor) -> Vec<NormalCut> {
    let g = named::k33();
    let (o1, o3, e2, e4) = quadrilateral(k, l);
    let base = divisor.i_side(o1, o3, e2, e4);
    let extra = [MarkedLabel::p(k), MarkedLabel::q(k), MarkedLabel::p(l), MarkedLabel::q(l)];
    let mut terms = Vec::new();
    for choice in 0u8..16 {
        let i_side = base
            .iter()
            .copied()
            .chain((0..4).filter(|b| choice >> b & 1 == 1).map(|b| extra[b]));
        let cut = Cut::from_i_side(&g, i_side).expect("extended cut is proper");
        if !cut_valid_for_bond(&g, &cut) {
            continue;
        }
        let coloring = coloring_from_cut(&g, &cut).expect("valid cut");
        assert!(is_surjective(&coloring));
        let normal = NormalCut::from_cut(&cut).expect("nontrivial cuts of K33 have normal form");
        terms.push(normal.merged());
    }
    terms
}

/// One linear equation `Σ μ(term) = rhs` over merged normal cuts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackEquation {
    /// Quadrilateral, named by the deleted odd and even vertex.
    pub forgotten: (Vertex, Vertex),
    pub divisor: QuadDivisor,
    pub terms: Vec<NormalCut>,
    pub rhs: u32,
}

impl fmt::Display for PullbackEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs: Vec<String> = self.terms.iter().map(|t| format!("μ{t}")).collect();
        write!(
            f,
            "[p{}{}*{}] {} = {}",
            self.forgotten.0,
            self.forgotten.1,
            self.divisor,
            lhs.join(" + "),
            self.rhs
        )
    }
}

/// Assignment of a μ-table row to each of the nine quadrilaterals, indexed
/// like degree tables (row = deleted odd vertex, column = deleted even vertex).
pub type QuadAssignment = [[QuadCase; 3]; 3];

/// Uniform assignment with the listed `(k, l)` quadrilaterals overridden.
pub fn quad_assignment(default: QuadCase, overrides: &[((Vertex, Vertex), QuadCase)]) -> QuadAssignment {
    let mut a = [[default; 3]; 3];
    for &((k, l), case) in overrides {
        a[odd_index(k)][even_index(l)] = case;
    }
    a
}

/// Pullback equations for the chosen divisors on the selected quadrilaterals
/// (all nine when `only` is `None`).
///
/// Right-hand side: `μ(divisor) · deg p_{kl}`. The case assigned to each
/// quadrilateral must agree with the type table of `degrees`.
pub fn build_pullback_system(
    degrees: &DegreeTable,
    cases: &QuadAssignment,
    divisors: &[QuadDivisor],
    only: Option<&[(Vertex, Vertex)]>,
) -> Result<Vec<PullbackEquation>, CutError> {
    let types = type_table(degrees);
    let mut eqs = Vec::new();
    for (r, &k) in ODD.iter().enumerate() {
        for (c, &l) in EVEN.iter().enumerate() {
            if let Some(sel) = only {
                if !sel.contains(&(k, l)) {
                    continue;
                }
            }
            let case = cases[r][c];
            let expected = types.0[r][c];
            let consistent = match expected {
                TypeSymbol::RL => matches!(case.symbol(), TypeSymbol::R | TypeSymbol::L),
                s => s == case.symbol(),
            };
            if !consistent {
                return Err(CutError::InconsistentTypes((k, l)));
            }
            for &d in divisors {
                eqs.push(PullbackEquation {
                    forgotten: (k, l),
                    divisor: d,
                    terms: pullback_terms(k, l, d),
                    rhs: u32::from(mu_value(case, d)?) * u32::from(degrees.0[r][c]),
                });
            }
        }
    }
    Ok(eqs)
}

/// Coefficients and right-hand side of the sum of all equations.
pub fn sum_equations(eqs: &[PullbackEquation]) -> (BTreeMap<NormalCut, u32>, u32) {
    let mut coeffs = BTreeMap::new();
    let mut total = 0;
    for e in eqs {
        for t in &e.terms {
            *coeffs.entry(*t).or_insert(0) += 1;
        }
        total += e.rhs;
    }
    (coeffs, total)
}

/// Result of a feasibility search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuFeasibility {
    /// Unknowns occurring in some equation.
    pub constrained: Vec<NormalCut>,
    /// Merged unknowns occurring in no equation (reported as 0 in solutions).
    pub unconstrained: Vec<NormalCut>,
    /// Every non-negative integer solution, as values of the constrained
    /// unknowns (capped at `limit`).
    pub solutions: Vec<BTreeMap<NormalCut, u32>>,
    /// True if the search stopped at the solution cap.
    pub truncated: bool,
}

impl MuFeasibility {
    pub fn is_feasible(&self) -> bool {
        !self.solutions.is_empty()
    }

    pub fn is_unique(&self) -> bool {
        self.solutions.len() == 1 && !self.truncated
    }

    /// Nonzero entries of the `k`-th solution.
    pub fn support(&self, k: usize) -> BTreeMap<NormalCut, u32> {
        self.solutions[k]
            .iter()
            .filter(|(_, &v)| v > 0)
            .map(|(&c, &v)| (c, v))
            .collect()
    }
}

/// Exhaustive non-negative integer search over the merged normal-cut unknowns.
///
/// Each unknown is bounded by the largest right-hand side of an equation it
/// occurs in; partial sums prune the search. All solutions are returned (up to
/// `limit`), so uniqueness is decided, not guessed.
pub fn mu_system_feasible(eqs: &[PullbackEquation], limit: usize) -> MuFeasibility {
    let mut freq: BTreeMap<NormalCut, usize> = BTreeMap::new();
    for e in eqs {
        for t in &e.terms {
            *freq.entry(t.merged()).or_default() += 1;
        }
    }
    let mut order: Vec<NormalCut> = freq.keys().copied().collect();
    order.sort_by_key(|u| std::cmp::Reverse(freq[u]));
    let index: BTreeMap<NormalCut, usize> = order.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    // Each equation as a coefficient list over the search order.
    let rows: Vec<(Vec<(usize, u32)>, u32)> = eqs
        .iter()
        .map(|e| {
            let mut coef: BTreeMap<usize, u32> = BTreeMap::new();
            for t in &e.terms {
                *coef.entry(index[&t.merged()]).or_default() += 1;
            }
            (coef.into_iter().collect(), e.rhs)
        })
        .collect();
    let mut bound = vec![u32::MAX; order.len()];
    for (coef, rhs) in &rows {
        for &(u, a) in coef {
            bound[u] = bound[u].min(rhs / a);
        }
    }
    let mut search = FeasibilitySearch {
        rows: &rows,
        bound: &bound,
        values: vec![0; order.len()],
        solutions: Vec::new(),
        limit,
        truncated: false,
    };
    search.descend(0);
    let solutions = search
        .solutions
        .iter()
        .map(|vals| order.iter().copied().zip(vals.iter().copied()).collect())
        .collect();
    let truncated = search.truncated;
    let mut constrained = order.clone();
    constrained.sort();
    let unconstrained = NormalCut::all_merged()
        .into_iter()
        .filter(|u| !freq.contains_key(u))
        .collect();
    MuFeasibility {
        constrained,
        unconstrained,
        solutions,
        truncated,
    }
}

struct FeasibilitySearch<'a> {
    rows: &'a [(Vec<(usize, u32)>, u32)],
    bound: &'a [u32],
    values: Vec<u32>,
    solutions: Vec<Vec<u32>>,
    limit: usize,
    truncated: bool,
}

impl FeasibilitySearch<'_> {
    /// With unknowns `0..assigned` fixed, can every equation still be met?
    fn consistent(&self, assigned: usize) -> bool {
        self.rows.iter().all(|(coef, rhs)| {
            let mut fixed = 0u32;
            let mut room = 0u32;
            for &(u, a) in coef {
                if u < assigned {
                    fixed += a * self.values[u];
                } else {
                    room = room.saturating_add(a.saturating_mul(self.bound[u]));
                }
            }
            fixed <= *rhs && fixed.saturating_add(room) >= *rhs
        })
    }

    fn descend(&mut self, u: usize) {
        if self.truncated {
            return;
        }
        if u == self.values.len() {
            if self.solutions.len() == self.limit {
                self.truncated = true;
            } else {
                self.solutions.push(self.values.clone());
            }
            return;
        }
        for v in 0..=self.bound[u] {
            self.values[u] = v;
            if self.consistent(u + 1) {
                self.descend(u + 1);
            }
        }
        self.values[u] = 0;
    }
}

/// Quadrilaterals of case (3) that are rhomboids.
pub const DIXON2_RHOMBOIDS: [(Vertex, Vertex); 3] = [(1, 2), (3, 4), (5, 6)];

/// Uniform rhomboid type on the diagonal of case (3), general elsewhere.
pub fn dixon2_assignment(rhomboid_type: u8) -> QuadAssignment {
    let overrides: Vec<((Vertex, Vertex), QuadCase)> = DIXON2_RHOMBOIDS
        .iter()
        .map(|&kl| (kl, QuadCase::Rhomboid(rhomboid_type)))
        .collect();
    quad_assignment(QuadCase::General, &overrides)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nc(apex: Vertex, p: &str) -> NormalCut {
        NormalCut::parse(apex, p).unwrap()
    }

    #[test]
    fn theta_rule() {
        assert_eq!(theta(1, 1, 1), 1);
        assert_eq!(theta(2, 2, 2), 4);
        assert_eq!(theta(1, 2, 2), 2);
    }

    #[test]
    fn notation_examples() {
        let i3: Vec<String> = nc(3, "PQP").i_side().iter().map(|l| l.to_string()).collect();
        assert_eq!(i3, ["P2", "P3", "P6", "Q3", "Q4"]);
        let i2: Vec<String> = nc(2, "PPQ").i_side().iter().map(|l| l.to_string()).collect();
        assert_eq!(i2, ["P1", "P2", "P3", "Q2", "Q5"]);
    }

    #[test]
    fn pullback_of_om_under_p56() {
        let mut got = pullback_terms(5, 6, QuadDivisor::Om);
        got.sort();
        let mut want: Vec<NormalCut> = [nc(1, "PQP"), nc(1, "QPP"), nc(3, "PQP"), nc(3, "QPP")]
            .iter()
            .map(|c| c.merged())
            .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn pullback_of_ou_under_p56() {
        let mut got = pullback_terms(5, 6, QuadDivisor::Ou);
        got.sort();
        let mut want: Vec<NormalCut> = [nc(1, "PPQ"), nc(1, "PPP"), nc(3, "QQP"), nc(3, "QQQ")]
            .iter()
            .map(|c| c.merged())
            .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn type_tables_of_displayed_cases() {
        for case in K33Case::ALL {
            let tt = type_table(&case.degree_table());
            let res = allowed_resolutions(&tt);
            assert!(res.contains(&case.type_table()), "{case:?}");
        }
    }

    #[test]
    fn disallowed_row() {
        let t = TypeTable::parse(["eeo", "ggg", "ggg"]).unwrap();
        assert!(!row_col_allowed(&t));
    }

    #[test]
    fn csv_matches_table() {
        let rows: Vec<Vec<&str>> = MU_TABLE_CSV
            .lines()
            .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
            .skip(1)
            .map(|l| l.split(',').map(str::trim).collect())
            .collect();
        assert_eq!(rows.len(), 13);
        for ((case, mu), row) in MU_TABLE.iter().zip(&rows) {
            let (c, s) = case.labels();
            assert_eq!(row[0], c);
            assert_eq!(row[1], s);
            let vals: Vec<u8> = row[2..].iter().map(|x| x.parse().unwrap()).collect();
            assert_eq!(vals, mu.to_vec());
        }
    }
}
