//! Alternating-path construction of `(g, f)`-factors with `g ≡ 0` on Y.
//!
//! The solver keeps a `(0, f)`-factor `F` and its deficiency
//! `δ = Σ_x (g(x) ∸ deg_F(x))`. Each round runs a breadth-first search for a
//! *nice path*: it starts at a deficient X-vertex, leaves X only along edges
//! with spare multiplicity (`c < m`) and leaves Y only along edges the factor
//! uses (`c >= 1`). A path ending at a Y-vertex below its upper bound, or at a
//! non-deficient X-vertex above its lower bound, is flipped, lowering `δ` by
//! exactly one. When the search exhausts, the labelled vertices form the set
//! `W` and `A = W ∩ X`, `B = W ∩ Y` violate the feasibility inequality.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{monus, verify_factor, Certificate, Factor, Instance, SolveOutcome, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("nice-path search requires a deficient X-vertex")]
    NoDeficientVertex,
    #[error("certificate extraction requires an exhausted search")]
    SearchNotExhausted,
    #[error("starting factor is not a (0,f)-factor: {0}")]
    NotZeroF(String),
    #[error("exhaustion property ({property}) violated: {detail}")]
    Inconsistent {
        property: &'static str,
        detail: String,
    },
}

/// An alternating path produced by [`AugmentState::find_nice_path`].
///
/// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`; steps out of an
/// X-vertex gain one unit of multiplicity when flipped, steps out of a
/// Y-vertex lose one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicePath {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<usize>,
}

impl NicePath {
    pub fn start(&self) -> usize {
        match self.vertices[0] {
            Vertex::X(x) => x,
            Vertex::Y(_) => unreachable!("nice paths start in X"),
        }
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().expect("paths are non-empty")
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    Path(NicePath),
    /// No improving path; the reachability labels now describe `W`.
    Exhausted,
}

/// The quantities behind a certificate, checked on exhaustion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustionAudit {
    /// `Σ_{x∈A} (g(x) ∸ e_G(x, Y∖B))`
    pub demand: u64,
    /// `Σ_{x∈R} (g(x) − deg_F(x))`, i.e. the current `δ`
    pub deficit: u64,
    /// `e_F(A, B)`: factor multiplicity between A and B
    pub factor_edges_ab: u64,
    /// `Σ_{y∈B} deg_F(y)`
    pub degree_b: u64,
    /// `f(B)`
    pub capacity_b: u64,
}

/// Solver state: the current `(0, f)`-factor with incrementally maintained
/// degrees, the deficient set `R`, and the labels of the last search.
#[derive(Debug, Clone)]
pub struct AugmentState<'a> {
    inst: &'a Instance,
    chosen: Vec<u64>,
    deg_x: Vec<u64>,
    deg_y: Vec<u64>,
    deficient: BTreeSet<usize>,
    delta: u64,
    reached_x: Vec<bool>,
    reached_y: Vec<bool>,
    parent_x: Vec<Option<usize>>,
    parent_y: Vec<Option<usize>>,
    exhausted: bool,
}

impl<'a> AugmentState<'a> {
    /// Starts from the empty factor.
    pub fn new(inst: &'a Instance) -> Self {
        let deficient: BTreeSet<usize> =
            (0..inst.x_count()).filter(|&x| inst.g_x()[x] > 0).collect();
        let delta = inst.g_x().iter().sum();
        AugmentState {
            inst,
            chosen: vec![0; inst.edges().len()],
            deg_x: vec![0; inst.x_count()],
            deg_y: vec![0; inst.y_count()],
            deficient,
            delta,
            reached_x: vec![false; inst.x_count()],
            reached_y: vec![false; inst.y_count()],
            parent_x: vec![None; inst.x_count()],
            parent_y: vec![None; inst.y_count()],
            exhausted: false,
        }
    }

    /// Starts from a greedy factor: edges in id order take as many units as
    /// their multiplicity and the residual upper bounds of both ends allow.
    pub fn with_greedy_start(inst: &'a Instance) -> Self {
        let mut state = Self::new(inst);
        for (id, e) in inst.edges().iter().enumerate() {
            let room_x = inst.f_x()[e.x] - state.deg_x[e.x];
            let room_y = inst.f_y()[e.y] - state.deg_y[e.y];
            let take = e.multiplicity.min(room_x).min(room_y);
            if take > 0 {
                state.chosen[id] = take;
                state.deg_y[e.y] += take;
                let new = state.deg_x[e.x] + take;
                state.set_deg_x(e.x, new);
            }
        }
        state
    }

    /// Starts from a given `(0, f)`-factor.
    pub fn from_factor(inst: &'a Instance, factor: &Factor) -> Result<Self, SolverError> {
        let zero_g = inst
            .with_bounds(
                vec![0; inst.x_count()],
                inst.f_x().to_vec(),
                inst.f_y().to_vec(),
            )
            .expect("zero lower bounds keep the instance valid");
        let report =
            verify_factor(&zero_g, factor).map_err(|e| SolverError::NotZeroF(e.to_string()))?;
        if let Some(v) = report.violations.first() {
            return Err(SolverError::NotZeroF(v.to_string()));
        }
        let mut state = Self::new(inst);
        for (x, y, c) in factor.iter() {
            let id = inst.edge_id(x, y).expect("verified above");
            state.chosen[id] = c;
            state.deg_y[y] += c;
            let new = state.deg_x[x] + c;
            state.set_deg_x(x, new);
        }
        Ok(state)
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    /// Chosen multiplicity of edge `id`.
    pub fn chosen(&self, id: usize) -> u64 {
        self.chosen[id]
    }

    pub fn factor(&self) -> Factor {
        Factor::from_triples(
            self.inst
                .edges()
                .iter()
                .zip(&self.chosen)
                .map(|(e, &c)| (e.x, e.y, c)),
        )
    }

    pub fn deg_x(&self) -> &[u64] {
        &self.deg_x
    }

    pub fn deg_y(&self) -> &[u64] {
        &self.deg_y
    }

    /// `R = {x : g(x) > deg_F(x)}`
    pub fn deficient(&self) -> &BTreeSet<usize> {
        &self.deficient
    }

    /// `δ = Σ_x (g(x) ∸ deg_F(x))`
    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// X-side labels of the last search; equal to `W ∩ X` after exhaustion.
    pub fn reached_x(&self) -> &[bool] {
        &self.reached_x
    }

    /// Y-side labels of the last search; equal to `W ∩ Y` after exhaustion.
    pub fn reached_y(&self) -> &[bool] {
        &self.reached_y
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    fn set_deg_x(&mut self, x: usize, new: u64) {
        let g = self.inst.g_x()[x];
        self.delta = self.delta - monus(g, self.deg_x[x]) + monus(g, new);
        self.deg_x[x] = new;
        if g > new {
            self.deficient.insert(x);
        } else {
            self.deficient.remove(&x);
        }
    }

    /// Breadth-first search for a nice path, seeded with all of `R` in
    /// ascending order; neighbours are scanned in ascending index.
    pub fn find_nice_path(&mut self) -> Result<SearchResult, SolverError> {
        if self.deficient.is_empty() {
            return Err(SolverError::NoDeficientVertex);
        }
        let inst = self.inst;
        self.reached_x.fill(false);
        self.reached_y.fill(false);
        self.parent_x.fill(None);
        self.parent_y.fill(None);
        self.exhausted = false;

        let mut queue = VecDeque::new();
        for &r in &self.deficient {
            self.reached_x[r] = true;
            queue.push_back(Vertex::X(r));
        }
        while let Some(v) = queue.pop_front() {
            match v {
                Vertex::X(x) => {
                    for &id in inst.edge_ids_at_x(x) {
                        let e = inst.edge(id);
                        if self.chosen[id] >= e.multiplicity || self.reached_y[e.y] {
                            continue;
                        }
                        self.reached_y[e.y] = true;
                        self.parent_y[e.y] = Some(id);
                        if self.deg_y[e.y] < inst.f_y()[e.y] {
                            return Ok(SearchResult::Path(self.trace(Vertex::Y(e.y))));
                        }
                        queue.push_back(Vertex::Y(e.y));
                    }
                }
                Vertex::Y(y) => {
                    for &id in inst.edge_ids_at_y(y) {
                        let e = inst.edge(id);
                        if self.chosen[id] == 0 || self.reached_x[e.x] {
                            continue;
                        }
                        self.reached_x[e.x] = true;
                        self.parent_x[e.x] = Some(id);
                        // every vertex of R was seeded, so e.x is not deficient
                        if self.deg_x[e.x] > inst.g_x()[e.x] {
                            return Ok(SearchResult::Path(self.trace(Vertex::X(e.x))));
                        }
                        queue.push_back(Vertex::X(e.x));
                    }
                }
            }
        }
        self.exhausted = true;
        Ok(SearchResult::Exhausted)
    }

    fn trace(&self, end: Vertex) -> NicePath {
        let mut vertices = vec![end];
        let mut edges = Vec::new();
        let mut cur = end;
        loop {
            let parent = match cur {
                Vertex::X(x) => self.parent_x[x],
                Vertex::Y(y) => self.parent_y[y],
            };
            let Some(id) = parent else { break };
            let e = self.inst.edge(id);
            cur = match cur {
                Vertex::X(_) => Vertex::Y(e.y),
                Vertex::Y(_) => Vertex::X(e.x),
            };
            edges.push(id);
            vertices.push(cur);
        }
        vertices.reverse();
        edges.reverse();
        NicePath { vertices, edges }
    }

    /// Replaces `F` by `F Δ P`: edges entered from X gain a unit, edges
    /// entered from Y lose one. Interior degrees are unchanged.
    pub fn flip_path(&mut self, path: &NicePath) {
        for (i, &id) in path.edges.iter().enumerate() {
            let e = *self.inst.edge(id);
            match path.vertices[i] {
                Vertex::X(_) => {
                    debug_assert!(self.chosen[id] < e.multiplicity);
                    self.chosen[id] += 1;
                    self.deg_y[e.y] += 1;
                    let new = self.deg_x[e.x] + 1;
                    self.set_deg_x(e.x, new);
                }
                Vertex::Y(_) => {
                    debug_assert!(self.chosen[id] > 0);
                    self.chosen[id] -= 1;
                    self.deg_y[e.y] -= 1;
                    let new = self.deg_x[e.x] - 1;
                    self.set_deg_x(e.x, new);
                }
            }
        }
        self.exhausted = false;
    }

    /// Checks the structure of `W` after an exhausted search and returns the
    /// numbers of the certificate chain.
    pub fn audit_exhaustion(&self) -> Result<ExhaustionAudit, SolverError> {
        if !self.exhausted {
            return Err(SolverError::SearchNotExhausted);
        }
        if self.deficient.is_empty() {
            return Err(SolverError::NoDeficientVertex);
        }
        let inst = self.inst;
        let in_a = &self.reached_x;
        let in_b = &self.reached_y;
        let fail = |property, detail: String| Err(SolverError::Inconsistent { property, detail });

        for &r in &self.deficient {
            if !in_a[r] {
                return fail("R ⊆ A", format!("x={r}"));
            }
        }
        for (id, e) in inst.edges().iter().enumerate() {
            // (a) factor edges into B come from A
            if in_b[e.y] && self.chosen[id] >= 1 && !in_a[e.x] {
                return fail("a", format!("edge ({},{})", e.x, e.y));
            }
            // (b) spare edges out of A lead into B
            if in_a[e.x] && self.chosen[id] < e.multiplicity && !in_b[e.y] {
                return fail("b", format!("edge ({},{})", e.x, e.y));
            }
        }
        for y in (0..inst.y_count()).filter(|&y| in_b[y]) {
            if self.deg_y[y] != inst.f_y()[y] {
                return fail(
                    "d",
                    format!("y={y}: deg {} != f {}", self.deg_y[y], inst.f_y()[y]),
                );
            }
        }

        let mut demand = 0u64;
        let mut factor_edges_ab = 0u64;
        for x in (0..inst.x_count()).filter(|&x| in_a[x]) {
            let g = inst.g_x()[x];
            if !self.deficient.contains(&x) && self.deg_x[x] != g {
                return fail("e", format!("x={x}: deg {} != g {g}", self.deg_x[x]));
            }
            let outside = inst.edge_count_where(x, |y| !in_b[y]);
            if outside > g {
                return fail("f", format!("x={x}: e(x, Y∖B) = {outside} > g {g}"));
            }
            demand += g - outside;
            factor_edges_ab += inst
                .edge_ids_at_x(x)
                .iter()
                .filter(|&&id| in_b[inst.edge(id).y])
                .map(|&id| self.chosen[id])
                .sum::<u64>();
        }
        let deficit: u64 = self
            .deficient
            .iter()
            .map(|&x| inst.g_x()[x] - self.deg_x[x])
            .sum();
        let (degree_b, capacity_b) = (0..inst.y_count())
            .filter(|&y| in_b[y])
            .fold((0u64, 0u64), |(d, c), y| {
                (d + self.deg_y[y], c + inst.f_y()[y])
            });

        if deficit != self.delta || deficit == 0 {
            return fail("chain", format!("deficit {deficit}, delta {}", self.delta));
        }
        if demand != deficit + factor_edges_ab {
            return fail(
                "chain",
                format!("demand {demand} != deficit {deficit} + e_F(A,B) {factor_edges_ab}"),
            );
        }
        if factor_edges_ab != degree_b || degree_b != capacity_b {
            return fail(
                "chain",
                format!("e_F(A,B) {factor_edges_ab}, deg_F(B) {degree_b}, f(B) {capacity_b}"),
            );
        }
        Ok(ExhaustionAudit {
            demand,
            deficit,
            factor_edges_ab,
            degree_b,
            capacity_b,
        })
    }

    /// `A = R ∪ ((X∖R) ∩ W)`, `B = Y ∩ W`, after the audit passes.
    pub fn extract_certificate(&self) -> Result<Certificate, SolverError> {
        let audit = self.audit_exhaustion()?;
        let a_set = (0..self.inst.x_count())
            .filter(|&x| self.reached_x[x])
            .collect();
        let b_set = (0..self.inst.y_count())
            .filter(|&y| self.reached_y[y])
            .collect();
        Ok(Certificate {
            a_set,
            b_set,
            deficiency: audit.demand as i64 - audit.capacity_b as i64,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Start from the greedy factor instead of the empty one. Changes the
    /// number of augmentations, never the outcome kind.
    pub warm_start: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub augmentations: u64,
    pub initial_delta: u64,
}

/// Hooks into a running solve. All methods default to no-ops.
pub trait SolveObserver {
    fn on_start(&mut self, _state: &AugmentState<'_>) {}

    /// Called after `path` was flipped; `delta_before` is `δ` prior to the flip.
    fn on_flip(&mut self, _state: &AugmentState<'_>, _path: &NicePath, _delta_before: u64) {}

    fn on_exhausted(&mut self, _state: &AugmentState<'_>, _cert: &Certificate) {}
}

impl SolveObserver for () {}

pub fn solve(inst: &Instance) -> SolveOutcome {
    solve_with(inst, SolveOptions::default(), &mut ()).outcome
}

/// Runs the augmentation loop from the empty (or greedy) factor.
pub fn solve_with(
    inst: &Instance,
    options: SolveOptions,
    observer: &mut dyn SolveObserver,
) -> SolveReport {
    let state = if options.warm_start {
        AugmentState::with_greedy_start(inst)
    } else {
        AugmentState::new(inst)
    };
    run_to_completion(state, observer)
}

/// Augments from an existing state until `R` is empty or the search
/// exhausts.
///
/// # Panics
///
/// If the exhaustion audit fails.
pub fn run_to_completion(
    mut state: AugmentState<'_>,
    observer: &mut dyn SolveObserver,
) -> SolveReport {
    let initial_delta = state.delta();
    observer.on_start(&state);
    let mut augmentations = 0;
    while !state.deficient().is_empty() {
        match state.find_nice_path().expect("R is non-empty") {
            SearchResult::Path(path) => {
                let before = state.delta();
                state.flip_path(&path);
                augmentations += 1;
                observer.on_flip(&state, &path, before);
            }
            SearchResult::Exhausted => {
                let cert = state
                    .extract_certificate()
                    .unwrap_or_else(|e| panic!("solver invariant broken: {e}"));
                observer.on_exhausted(&state, &cert);
                return SolveReport {
                    outcome: SolveOutcome::Certificate(cert),
                    augmentations,
                    initial_delta,
                };
            }
        }
    }
    SolveReport {
        outcome: SolveOutcome::Factor(state.factor()),
        augmentations,
        initial_delta,
    }
}
