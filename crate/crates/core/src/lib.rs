//! Degree-bounded factors in bipartite multigraphs.
//!
//! Given a bipartite multigraph `G[X, Y]` with bounds `g(x) <= deg(x) <= f(x)`
//! on X and `deg(y) <= f(y)` on Y, [`solve`] either builds a spanning
//! sub-multigraph meeting every bound or returns sets `A ⊆ X`, `B ⊆ Y` with
//!
//! ```text
//! f(B) < Σ_{x∈A} (g(x) ∸ e_G(x, Y∖B))
//! ```
//!
//! which no such sub-multigraph can survive. The [`criteria`] and [`oracle`]
//! modules hold exhaustive checkers used to cross-examine the solver on
//! small instances.
//!
//! ```
//! use bifactor::{solve, Instance, SolveOutcome};
//!
//! // two X-vertices that each need the single Y-vertex, which accepts one edge
//! let inst = Instance::new(2, 1, [(0, 0, 1), (1, 0, 1)], vec![1, 1], vec![1, 1], vec![1])?;
//! let SolveOutcome::Certificate(cert) = solve(&inst) else { unreachable!() };
//! assert_eq!(cert.deficiency, 1);
//! # Ok::<(), bifactor::InvalidInstance>(())
//! ```

pub mod cli;
pub mod criteria;
pub mod generator;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod solver;

pub use criteria::{Criterion, CriterionReport, ExhaustionLimit, Witness};
pub use generator::{gen_random, GenParams, Probability};
pub use graph::{
    validate_instance, verify_certificate, verify_factor, Certificate, Factor, Instance,
    InvalidInstance, RawInstance, SolveOutcome, Vertex,
};
pub use io::{emit_instance, emit_outcome, parse_instance, InstanceDocument, OutputDocument};
pub use oracle::{brute_force_factor, count_factors, OracleBudget};
pub use solver::{
    run_to_completion, solve, solve_with, AugmentState, SolveObserver, SolveOptions, SolveReport,
};
