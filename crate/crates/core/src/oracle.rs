//! Brute-force ground truth: enumerate every multiplicity assignment
//! `0 <= c(e) <= m(e)`.
//!
//! Edges are visited in `(x, y)` order and each edge tries `0..=m(e)` in turn,
//! so the first assignment found is the lexicographically smallest one.
//! Branches are cut when an upper bound is already exceeded or a lower bound
//! can no longer be reached with the edges still unassigned.

use thiserror::Error;

use crate::graph::{Factor, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Cap on `Π_e (m(e) + 1)`.
    pub max_configurations: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_configurations: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for the oracle: {configurations} configurations, budget {budget}")]
    BudgetExceeded { configurations: u128, budget: u64 },
    #[error("gy has {found} entries, expected {expected}")]
    LowerBoundsLength { expected: usize, found: usize },
}

/// `Π_e (m(e) + 1)`, saturating at `u128::MAX`.
pub fn configuration_count(inst: &Instance) -> u128 {
    inst.edges().iter().fold(1u128, |acc, e| {
        acc.saturating_mul(u128::from(e.multiplicity) + 1)
    })
}

struct Search<'a> {
    inst: &'a Instance,
    g_y: Vec<u64>,
    chosen: Vec<u64>,
    deg_x: Vec<u64>,
    deg_y: Vec<u64>,
    // multiplicity still unassigned at each vertex
    rest_x: Vec<u64>,
    rest_y: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(
        inst: &'a Instance,
        g_y: Option<&[u64]>,
        budget: OracleBudget,
    ) -> Result<Self, OracleError> {
        let g_y = match g_y {
            None => vec![0; inst.y_count()],
            Some(g) if g.len() == inst.y_count() => g.to_vec(),
            Some(g) => {
                return Err(OracleError::LowerBoundsLength {
                    expected: inst.y_count(),
                    found: g.len(),
                })
            }
        };
        let configurations = configuration_count(inst);
        if configurations > u128::from(budget.max_configurations) {
            return Err(OracleError::BudgetExceeded {
                configurations,
                budget: budget.max_configurations,
            });
        }
        Ok(Search {
            inst,
            g_y,
            chosen: vec![0; inst.edges().len()],
            deg_x: vec![0; inst.x_count()],
            deg_y: vec![0; inst.y_count()],
            rest_x: (0..inst.x_count()).map(|x| inst.degree_x(x)).collect(),
            rest_y: (0..inst.y_count()).map(|y| inst.degree_y(y)).collect(),
        })
    }

    fn reachable(&self) -> bool {
        (0..self.inst.x_count()).all(|x| self.deg_x[x] + self.rest_x[x] >= self.inst.g_x()[x])
            && (0..self.inst.y_count()).all(|y| self.deg_y[y] + self.rest_y[y] >= self.g_y[y])
    }

    /// Depth-first enumeration from edge `i`. `visit` returns `false` to stop.
    fn run(&mut self, i: usize, visit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        let inst = self.inst;
        if i == inst.edges().len() {
            return visit(&self.chosen);
        }
        let e = *inst.edge(i);
        self.rest_x[e.x] -= e.multiplicity;
        self.rest_y[e.y] -= e.multiplicity;
        let mut keep_going = true;
        for c in 0..=e.multiplicity {
            if self.deg_x[e.x] + c > inst.f_x()[e.x] || self.deg_y[e.y] + c > inst.f_y()[e.y] {
                break;
            }
            let lower_ok = self.deg_x[e.x] + c + self.rest_x[e.x] >= inst.g_x()[e.x]
                && self.deg_y[e.y] + c + self.rest_y[e.y] >= self.g_y[e.y];
            if !lower_ok {
                continue;
            }
            self.chosen[i] = c;
            self.deg_x[e.x] += c;
            self.deg_y[e.y] += c;
            keep_going = self.run(i + 1, visit);
            self.deg_x[e.x] -= c;
            self.deg_y[e.y] -= c;
            if !keep_going {
                break;
            }
        }
        self.chosen[i] = 0;
        self.rest_x[e.x] += e.multiplicity;
        self.rest_y[e.y] += e.multiplicity;
        keep_going
    }

    fn enumerate(&mut self, visit: &mut dyn FnMut(&[u64]) -> bool) {
        // vertices whose lower bound exceeds their whole degree fail before any edge
        if self.reachable() {
            self.run(0, visit);
        }
    }
}

/// The lexicographically first assignment meeting `g <= deg <= f` on both
/// sides (`g_y` is zero when absent), or `None` when there is none.
pub fn brute_force_factor(
    inst: &Instance,
    g_y: Option<&[u64]>,
    budget: OracleBudget,
) -> Result<Option<Factor>, OracleError> {
    let mut search = Search::new(inst, g_y, budget)?;
    let mut found = None;
    search.enumerate(&mut |chosen| {
        found = Some(Factor::from_triples(
            inst.edges().iter().zip(chosen).map(|(e, &c)| (e.x, e.y, c)),
        ));
        false
    });
    Ok(found)
}

/// Number of assignments meeting all degree bounds.
pub fn count_factors(
    inst: &Instance,
    g_y: Option<&[u64]>,
    budget: OracleBudget,
) -> Result<u64, OracleError> {
    let mut search = Search::new(inst, g_y, budget)?;
    let mut count = 0u64;
    search.enumerate(&mut |_| {
        count += 1;
        true
    });
    Ok(count)
}
