//! Bipartite multigraph instances with degree bounds, plus the factor and
//! certificate types produced by the solver.
//!
//! Vertices are dense indices on each side: `X = 0..x_count`, `Y = 0..y_count`.
//! Edges are stored sparsely as `(x, y, multiplicity)` with multiplicity at
//! least one; parallel edges are never materialized individually.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Largest value any bound, multiplicity or total may take (63-bit signed range).
pub const MAX_VALUE: u64 = i64::MAX as u64;

/// Truncated difference `max(0, a - b)`.
#[inline]
pub fn monus(a: u64, b: u64) -> u64 {
    a.saturating_sub(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    X(usize),
    Y(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::X(i) => write!(f, "x={i}"),
            Vertex::Y(i) => write!(f, "y={i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub x: usize,
    pub y: usize,
    pub multiplicity: u64,
}

/// Unvalidated instance data, as read from a file or assembled by hand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawInstance {
    pub x_count: usize,
    pub y_count: usize,
    pub edges: Vec<(usize, usize, u64)>,
    pub g_x: Vec<u64>,
    pub f_x: Vec<u64>,
    pub f_y: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("x_count must be positive")]
    EmptyX,
    #[error("y_count must be positive")]
    EmptyY,
    #[error("{field} has {found} entries, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("g exceeds f at x={x} (g={g}, f={f})")]
    GExceedsF { x: usize, g: u64, f: u64 },
    #[error("zero multiplicity stored at ({x},{y})")]
    ZeroMultiplicity { x: usize, y: usize },
    #[error("edge ({x},{y}) is out of range")]
    EdgeOutOfRange { x: usize, y: usize },
    #[error("duplicate edge ({x},{y})")]
    DuplicateEdge { x: usize, y: usize },
    #[error("{what} exceeds the 63-bit range")]
    Overflow { what: String },
}

/// Every invariant an instance failed, in discovery order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct InvalidInstance {
    pub violations: Vec<Violation>,
}

impl fmt::Display for InvalidInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid instance: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A validated bipartite multigraph with bounds `g(x) <= deg(x) <= f(x)` on X
/// and `deg(y) <= f(y)` on Y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    x_count: usize,
    y_count: usize,
    // sorted by (x, y)
    edges: Vec<Edge>,
    by_x: Vec<Vec<usize>>,
    by_y: Vec<Vec<usize>>,
    g_x: Vec<u64>,
    f_x: Vec<u64>,
    f_y: Vec<u64>,
}

/// Checks every instance invariant and returns the validated instance, or all
/// violations found.
pub fn validate_instance(raw: RawInstance) -> Result<Instance, InvalidInstance> {
    let mut violations = Vec::new();
    if raw.x_count == 0 {
        violations.push(Violation::EmptyX);
    }
    if raw.y_count == 0 {
        violations.push(Violation::EmptyY);
    }
    for (field, values, expected) in [
        ("gx", &raw.g_x, raw.x_count),
        ("fx", &raw.f_x, raw.x_count),
        ("fy", &raw.f_y, raw.y_count),
    ] {
        if values.len() != expected {
            violations.push(Violation::LengthMismatch {
                field,
                expected,
                found: values.len(),
            });
        }
    }
    for (x, (&g, &f)) in raw.g_x.iter().zip(&raw.f_x).enumerate() {
        if g > f {
            violations.push(Violation::GExceedsF { x, g, f });
        }
    }

    let mut seen = BTreeSet::new();
    let mut total: u128 = 0;
    for &(x, y, m) in &raw.edges {
        if x >= raw.x_count || y >= raw.y_count {
            violations.push(Violation::EdgeOutOfRange { x, y });
        }
        if m == 0 {
            violations.push(Violation::ZeroMultiplicity { x, y });
        }
        if !seen.insert((x, y)) {
            violations.push(Violation::DuplicateEdge { x, y });
        }
        total += u128::from(m);
    }
    if total > u128::from(MAX_VALUE) {
        violations.push(Violation::Overflow {
            what: "total edge multiplicity".into(),
        });
    }
    for (name, values) in [("gx", &raw.g_x), ("fx", &raw.f_x), ("fy", &raw.f_y)] {
        let sum: u128 = values.iter().map(|&v| u128::from(v)).sum();
        if sum > u128::from(MAX_VALUE) {
            violations.push(Violation::Overflow {
                what: format!("sum of {name}"),
            });
        }
    }

    if !violations.is_empty() {
        return Err(InvalidInstance { violations });
    }

    let mut edges: Vec<Edge> = raw
        .edges
        .iter()
        .map(|&(x, y, multiplicity)| Edge { x, y, multiplicity })
        .collect();
    edges.sort_unstable();
    let mut by_x = vec![Vec::new(); raw.x_count];
    let mut by_y = vec![Vec::new(); raw.y_count];
    for (id, e) in edges.iter().enumerate() {
        by_x[e.x].push(id);
        by_y[e.y].push(id);
    }
    Ok(Instance {
        x_count: raw.x_count,
        y_count: raw.y_count,
        edges,
        by_x,
        by_y,
        g_x: raw.g_x,
        f_x: raw.f_x,
        f_y: raw.f_y,
    })
}

impl Instance {
    pub fn new(
        x_count: usize,
        y_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, u64)>,
        g_x: Vec<u64>,
        f_x: Vec<u64>,
        f_y: Vec<u64>,
    ) -> Result<Self, InvalidInstance> {
        validate_instance(RawInstance {
            x_count,
            y_count,
            edges: edges.into_iter().collect(),
            g_x,
            f_x,
            f_y,
        })
    }

    /// Same graph, new degree bounds.
    pub fn with_bounds(
        &self,
        g_x: Vec<u64>,
        f_x: Vec<u64>,
        f_y: Vec<u64>,
    ) -> Result<Self, InvalidInstance> {
        let mut raw = self.to_raw();
        raw.g_x = g_x;
        raw.f_x = f_x;
        raw.f_y = f_y;
        validate_instance(raw)
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            x_count: self.x_count,
            y_count: self.y_count,
            edges: self
                .edges
                .iter()
                .map(|e| (e.x, e.y, e.multiplicity))
                .collect(),
            g_x: self.g_x.clone(),
            f_x: self.f_x.clone(),
            f_y: self.f_y.clone(),
        }
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn y_count(&self) -> usize {
        self.y_count
    }

    pub fn g_x(&self) -> &[u64] {
        &self.g_x
    }

    pub fn f_x(&self) -> &[u64] {
        &self.f_x
    }

    pub fn f_y(&self) -> &[u64] {
        &self.f_y
    }

    /// Edges sorted by `(x, y)`. Position in this slice is the edge id.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn edge_id(&self, x: usize, y: usize) -> Option<usize> {
        self.edges
            .binary_search_by(|e| (e.x, e.y).cmp(&(x, y)))
            .ok()
    }

    /// `m(x, y)`, zero for absent pairs.
    pub fn multiplicity(&self, x: usize, y: usize) -> u64 {
        self.edge_id(x, y)
            .map_or(0, |id| self.edges[id].multiplicity)
    }

    /// Ids of the edges at `x`, in ascending `y`.
    pub fn edge_ids_at_x(&self, x: usize) -> &[usize] {
        &self.by_x[x]
    }

    /// Ids of the edges at `y`, in ascending `x`.
    pub fn edge_ids_at_y(&self, y: usize) -> &[usize] {
        &self.by_y[y]
    }

    pub fn degree_x(&self, x: usize) -> u64 {
        self.by_x[x]
            .iter()
            .map(|&id| self.edges[id].multiplicity)
            .sum()
    }

    pub fn degree_y(&self, y: usize) -> u64 {
        self.by_y[y]
            .iter()
            .map(|&id| self.edges[id].multiplicity)
            .sum()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.edges.iter().map(|e| e.multiplicity).sum()
    }

    /// `e_G(x, S)`: number of edges between `x` and the Y-vertices in `s`,
    /// counting multiplicity.
    pub fn edge_count(&self, x: usize, s: &BTreeSet<usize>) -> u64 {
        self.edge_count_where(x, |y| s.contains(&y))
    }

    pub fn edge_count_where(&self, x: usize, mut in_set: impl FnMut(usize) -> bool) -> u64 {
        self.by_x[x]
            .iter()
            .map(|&id| &self.edges[id])
            .filter(|e| in_set(e.y))
            .map(|e| e.multiplicity)
            .sum()
    }

    /// `N_G(S)` for `S ⊆ X`.
    pub fn neighborhood(&self, s: &BTreeSet<usize>) -> BTreeSet<usize> {
        s.iter()
            .flat_map(|&x| self.by_x[x].iter().map(|&id| self.edges[id].y))
            .collect()
    }

    fn check_x(&self, x: usize) -> Result<(), VertexOutOfRange> {
        if x < self.x_count {
            Ok(())
        } else {
            Err(VertexOutOfRange(Vertex::X(x)))
        }
    }

    fn check_y(&self, y: usize) -> Result<(), VertexOutOfRange> {
        if y < self.y_count {
            Ok(())
        } else {
            Err(VertexOutOfRange(Vertex::Y(y)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("vertex {0} is out of range")]
pub struct VertexOutOfRange(pub Vertex);

/// A sub-multigraph given by a chosen multiplicity `c(x, y) >= 1` per used pair.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Factor {
    chosen: BTreeMap<(usize, usize), u64>,
}

impl Factor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a factor from `(x, y, c)` triples; zero entries are dropped and a
    /// repeated pair keeps its last value.
    pub fn from_triples(triples: impl IntoIterator<Item = (usize, usize, u64)>) -> Self {
        let mut f = Self::new();
        for (x, y, c) in triples {
            f.set(x, y, c);
        }
        f
    }

    pub fn set(&mut self, x: usize, y: usize, c: u64) {
        if c == 0 {
            self.chosen.remove(&(x, y));
        } else {
            self.chosen.insert((x, y), c);
        }
    }

    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.chosen.get(&(x, y)).copied().unwrap_or(0)
    }

    /// `(x, y, c)` triples sorted by `(x, y)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.chosen.iter().map(|(&(x, y), &c)| (x, y, c))
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    pub fn degree(&self, v: Vertex) -> u64 {
        self.iter()
            .filter(|&(x, y, _)| match v {
                Vertex::X(i) => x == i,
                Vertex::Y(i) => y == i,
            })
            .map(|(_, _, c)| c)
            .sum()
    }

    /// `(deg_F on X, deg_F on Y)` for the given instance dimensions. Pairs
    /// outside the dimensions are ignored.
    pub fn degrees(&self, x_count: usize, y_count: usize) -> (Vec<u64>, Vec<u64>) {
        let mut dx = vec![0u64; x_count];
        let mut dy = vec![0u64; y_count];
        for (x, y, c) in self.iter() {
            if x < x_count && y < y_count {
                dx[x] += c;
                dy[y] += c;
            }
        }
        (dx, dy)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundViolation {
    Capacity {
        x: usize,
        y: usize,
        chosen: u64,
        multiplicity: u64,
    },
    BelowLower {
        vertex: Vertex,
        degree: u64,
        bound: u64,
    },
    AboveUpper {
        vertex: Vertex,
        degree: u64,
        bound: u64,
    },
}

impl fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundViolation::Capacity {
                x,
                y,
                chosen,
                multiplicity,
            } => write!(
                f,
                "capacity at ({x},{y}): chosen {chosen} exceeds multiplicity {multiplicity}"
            ),
            BoundViolation::BelowLower {
                vertex,
                degree,
                bound,
            } => write!(f, "lower bound at {vertex}: degree {degree} < g = {bound}"),
            BoundViolation::AboveUpper {
                vertex,
                degree,
                bound,
            } => write!(f, "upper bound at {vertex}: degree {degree} > f = {bound}"),
        }
    }
}

/// The factor does not fit the instance at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorMismatch {
    #[error("factor uses pairs absent from the instance: {0:?}")]
    UnknownEdges(Vec<(usize, usize)>),
    #[error("gy has {found} entries, expected {expected}")]
    LowerBoundsLength { expected: usize, found: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactorReport {
    pub violations: Vec<BoundViolation>,
}

impl FactorReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `c <= m` on every edge, `g(x) <= deg_F(x) <= f(x)` on X and
/// `deg_F(y) <= f(y)` on Y.
pub fn verify_factor(inst: &Instance, fac: &Factor) -> Result<FactorReport, FactorMismatch> {
    verify_factor_with_gy(inst, None, fac)
}

/// As [`verify_factor`], additionally enforcing lower bounds `g_y` on Y.
pub fn verify_factor_with_gy(
    inst: &Instance,
    g_y: Option<&[u64]>,
    fac: &Factor,
) -> Result<FactorReport, FactorMismatch> {
    if let Some(gy) = g_y {
        if gy.len() != inst.y_count {
            return Err(FactorMismatch::LowerBoundsLength {
                expected: inst.y_count,
                found: gy.len(),
            });
        }
    }
    let unknown: Vec<_> = fac
        .iter()
        .filter(|&(x, y, _)| inst.edge_id(x, y).is_none())
        .map(|(x, y, _)| (x, y))
        .collect();
    if !unknown.is_empty() {
        return Err(FactorMismatch::UnknownEdges(unknown));
    }

    let mut violations = Vec::new();
    for (x, y, c) in fac.iter() {
        let m = inst.multiplicity(x, y);
        if c > m {
            violations.push(BoundViolation::Capacity {
                x,
                y,
                chosen: c,
                multiplicity: m,
            });
        }
    }
    let (dx, dy) = fac.degrees(inst.x_count, inst.y_count);
    for x in 0..inst.x_count {
        if dx[x] < inst.g_x[x] {
            violations.push(BoundViolation::BelowLower {
                vertex: Vertex::X(x),
                degree: dx[x],
                bound: inst.g_x[x],
            });
        }
        if dx[x] > inst.f_x[x] {
            violations.push(BoundViolation::AboveUpper {
                vertex: Vertex::X(x),
                degree: dx[x],
                bound: inst.f_x[x],
            });
        }
    }
    for y in 0..inst.y_count {
        let lower = g_y.map_or(0, |g| g[y]);
        if dy[y] < lower {
            violations.push(BoundViolation::BelowLower {
                vertex: Vertex::Y(y),
                degree: dy[y],
                bound: lower,
            });
        }
        if dy[y] > inst.f_y[y] {
            violations.push(BoundViolation::AboveUpper {
                vertex: Vertex::Y(y),
                degree: dy[y],
                bound: inst.f_y[y],
            });
        }
    }
    Ok(FactorReport { violations })
}

/// A pair `A ⊆ X`, `B ⊆ Y` for which
/// `f(B) >= Σ_{x∈A} (g(x) ∸ e_G(x, Y∖B))` fails, proving no factor exists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub a_set: BTreeSet<usize>,
    pub b_set: BTreeSet<usize>,
    /// `Σ_{x∈A} (g(x) ∸ e_G(x, Y∖B)) − f(B)`; at least one for a valid certificate.
    pub deficiency: i64,
}

/// Evaluates `Σ_{x∈A} (g(x) ∸ e_G(x, Y∖B)) − f(B)`.
pub fn set_pair_deficiency(
    inst: &Instance,
    a_set: &BTreeSet<usize>,
    b_set: &BTreeSet<usize>,
) -> Result<i64, VertexOutOfRange> {
    for &x in a_set {
        inst.check_x(x)?;
    }
    for &y in b_set {
        inst.check_y(y)?;
    }
    let demand: u128 = a_set
        .iter()
        .map(|&x| {
            let outside = inst.edge_count_where(x, |y| !b_set.contains(&y));
            u128::from(monus(inst.g_x[x], outside))
        })
        .sum();
    let supply: u128 = b_set.iter().map(|&y| u128::from(inst.f_y[y])).sum();
    // both sums are bounded by validated 63-bit totals
    Ok((demand as i128 - supply as i128) as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateReport {
    pub stored: i64,
    pub recomputed: i64,
}

impl CertificateReport {
    pub fn is_valid(&self) -> bool {
        self.recomputed >= 1 && self.recomputed == self.stored
    }
}

pub fn verify_certificate(
    inst: &Instance,
    cert: &Certificate,
) -> Result<CertificateReport, VertexOutOfRange> {
    Ok(CertificateReport {
        stored: cert.deficiency,
        recomputed: set_pair_deficiency(inst, &cert.a_set, &cert.b_set)?,
    })
}

/// Result of a solve: a factor or a certificate, never both.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SolveOutcome {
    Factor(Factor),
    Certificate(Certificate),
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Factor(_))
    }

    pub fn factor(&self) -> Option<&Factor> {
        match self {
            SolveOutcome::Factor(f) => Some(f),
            SolveOutcome::Certificate(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SolveOutcome::Certificate(c) => Some(c),
            SolveOutcome::Factor(_) => None,
        }
    }
}
