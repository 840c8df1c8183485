//! Exhaustive checkers for the known feasibility criteria.
//!
//! These enumerate vertex subsets by binary counting and exist as oracles for
//! small instances; the solver is the production decider. Subset `k` of a
//! side with `n` vertices contains vertex `i` iff bit `i` of `k` is set.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{monus, Instance};

/// Environment variable overriding [`ExhaustionLimit::max_vertices`].
pub const EXHAUSTION_LIMIT_ENV: &str = "BIFACTOR_EXHAUSTION_LIMIT";

/// Largest number of vertices a checker enumerates subsets of, so at most
/// `2^max_vertices` evaluations per inequality family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustionLimit {
    pub max_vertices: u32,
}

impl Default for ExhaustionLimit {
    fn default() -> Self {
        ExhaustionLimit { max_vertices: 22 }
    }
}

impl ExhaustionLimit {
    /// Reads [`EXHAUSTION_LIMIT_ENV`], falling back to the default when unset.
    pub fn from_env() -> Result<Self, CriterionError> {
        match std::env::var(EXHAUSTION_LIMIT_ENV) {
            Ok(v) => v
                .trim()
                .parse::<u32>()
                .ok()
                .filter(|&n| n <= 63)
                .map(|max_vertices| ExhaustionLimit { max_vertices })
                .ok_or(CriterionError::BadLimit(v)),
            Err(_) => Ok(Self::default()),
        }
    }

    fn admit(&self, vertices: usize) -> Result<(), CriterionError> {
        if vertices as u64 > u64::from(self.max_vertices.min(63)) {
            Err(CriterionError::LimitExceeded {
                vertices,
                limit: self.max_vertices,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("exhaustion limit exceeded: {vertices} vertices to enumerate, limit {limit}")]
    LimitExceeded { vertices: usize, limit: u32 },
    #[error("corollary not applicable: {0}")]
    NotApplicable(String),
    #[error("gy has {found} entries, expected {expected}")]
    LowerBoundsLength { expected: usize, found: usize },
    #[error("invalid exhaustion limit {0:?}")]
    BadLimit(String),
}

/// Which inequality family a witness violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `f(B) >= Σ_{x∈A} (g(x) ∸ e(x, Y∖B))`
    NewCriterion,
    /// `g(A) <= Σ_y min{f(y), e(y, A)}` over `A ⊆ X`
    CymerKanoX,
    /// `g(B) <= Σ_x min{f(x), e(x, B)}` over `B ⊆ Y`
    CymerKanoY,
    /// `f(A) >= Σ_{u∉A} (g(u) ∸ deg_{G−A}(u))` over `A ⊆ X ∪ Y`
    Heinrich,
    /// `f(X) = f(Y)`
    OreBalance,
    /// `f(A) <= Σ_y min{f(y), e(y, A)}` over `A ⊆ X`
    OreSubset,
    /// `f(N(S)) >= g(S)`
    Hall,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::NewCriterion => "new",
            Family::CymerKanoX => "cymer-kano-x",
            Family::CymerKanoY => "cymer-kano-y",
            Family::Heinrich => "heinrich",
            Family::OreBalance => "ore-balance",
            Family::OreSubset => "ore-subset",
            Family::Hall => "hall",
        }
    }
}

/// A violated inequality: `required > available` strictly, except for
/// [`Family::OreBalance`] where the two merely differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub family: Family,
    /// X-side subset (`A` or `S`), when the family has one.
    pub a_set: Option<BTreeSet<usize>>,
    /// Y-side subset (`B`, or the Y part of Heinrich's `A`), when the family has one.
    pub b_set: Option<BTreeSet<usize>>,
    pub required: u64,
    pub available: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl CriterionReport {
    fn holds() -> Self {
        CriterionReport {
            holds: true,
            witness: None,
        }
    }

    fn fails(w: Witness) -> Self {
        CriterionReport {
            holds: false,
            witness: Some(w),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    New,
    CymerKano,
    Heinrich,
    Ore,
    Hall { m_floor: u64 },
}

impl Criterion {
    pub fn name(&self) -> &'static str {
        match self {
            Criterion::New => "new",
            Criterion::CymerKano => "cymer-kano",
            Criterion::Heinrich => "heinrich",
            Criterion::Ore => "ore",
            Criterion::Hall { .. } => "hall",
        }
    }

    /// Runs the checker. `g_y` is used by the general `(g, f)` criteria only.
    pub fn check(
        &self,
        inst: &Instance,
        g_y: Option<&[u64]>,
        limit: ExhaustionLimit,
    ) -> Result<CriterionReport, CriterionError> {
        match *self {
            Criterion::New => check_new_criterion(inst, limit),
            Criterion::CymerKano => check_cymer_kano(inst, g_y, limit),
            Criterion::Heinrich => check_heinrich(inst, g_y, limit),
            Criterion::Ore => check_ore_f_factor(inst, limit),
            Criterion::Hall { m_floor } => check_hall_condition(inst, m_floor, limit),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = String;

    /// Parses every name but `hall`, which needs its floor supplied separately.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "new" => Ok(Criterion::New),
            "cymer-kano" => Ok(Criterion::CymerKano),
            "heinrich" => Ok(Criterion::Heinrich),
            "ore" => Ok(Criterion::Ore),
            other => Err(format!("unknown criterion {other:?}")),
        }
    }
}

fn members(mask: u64, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn masked_sum(values: &[u64], mask: u64) -> u64 {
    values
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &v)| v)
        .sum()
}

fn check_gy(inst: &Instance, g_y: Option<&[u64]>) -> Result<Vec<u64>, CriterionError> {
    match g_y {
        None => Ok(vec![0; inst.y_count()]),
        Some(g) if g.len() == inst.y_count() => Ok(g.to_vec()),
        Some(g) => Err(CriterionError::LowerBoundsLength {
            expected: inst.y_count(),
            found: g.len(),
        }),
    }
}

/// `f(B) >= Σ_{x∈A} (g(x) ∸ e_G(x, Y∖B))` for all `A ⊆ X`, `B ⊆ Y`.
///
/// For fixed `B` the right side is largest when `A` holds exactly the
/// vertices with a positive term, so only `B` is enumerated.
pub fn check_new_criterion(
    inst: &Instance,
    limit: ExhaustionLimit,
) -> Result<CriterionReport, CriterionError> {
    let ny = inst.y_count();
    limit.admit(ny)?;
    let nx = inst.x_count();
    let degree: Vec<u64> = (0..nx).map(|x| inst.degree_x(x)).collect();
    for mask in 0..1u64 << ny {
        let available = masked_sum(inst.f_y(), mask);
        let mut required = 0u64;
        let mut a_set = BTreeSet::new();
        for x in 0..nx {
            let inside = inst.edge_count_where(x, |y| mask >> y & 1 == 1);
            let term = monus(inst.g_x()[x], degree[x] - inside);
            if term > 0 {
                required += term;
                a_set.insert(x);
            }
        }
        if required > available {
            return Ok(CriterionReport::fails(Witness {
                family: Family::NewCriterion,
                a_set: Some(a_set),
                b_set: Some(members(mask, ny)),
                required,
                available,
            }));
        }
    }
    Ok(CriterionReport::holds())
}

/// Both Cymer–Kano families; `g_y` defaults to zero, which makes the Y family
/// hold trivially (it is then skipped).
pub fn check_cymer_kano(
    inst: &Instance,
    g_y: Option<&[u64]>,
    limit: ExhaustionLimit,
) -> Result<CriterionReport, CriterionError> {
    let gy = check_gy(inst, g_y)?;
    let (nx, ny) = (inst.x_count(), inst.y_count());
    limit.admit(nx)?;
    if g_y.is_some() {
        limit.admit(ny)?;
    }

    for mask in 0..1u64 << nx {
        let required = masked_sum(inst.g_x(), mask);
        let available: u64 = (0..ny)
            .map(|y| {
                let into_a: u64 = inst
                    .edge_ids_at_y(y)
                    .iter()
                    .map(|&id| inst.edge(id))
                    .filter(|e| mask >> e.x & 1 == 1)
                    .map(|e| e.multiplicity)
                    .sum();
                inst.f_y()[y].min(into_a)
            })
            .sum();
        if required > available {
            return Ok(CriterionReport::fails(Witness {
                family: Family::CymerKanoX,
                a_set: Some(members(mask, nx)),
                b_set: None,
                required,
                available,
            }));
        }
    }
    if g_y.is_some() {
        for mask in 0..1u64 << ny {
            let required = masked_sum(&gy, mask);
            let available: u64 = (0..nx)
                .map(|x| inst.f_x()[x].min(inst.edge_count_where(x, |y| mask >> y & 1 == 1)))
                .sum();
            if required > available {
                return Ok(CriterionReport::fails(Witness {
                    family: Family::CymerKanoY,
                    a_set: None,
                    b_set: Some(members(mask, ny)),
                    required,
                    available,
                }));
            }
        }
    }
    Ok(CriterionReport::holds())
}

/// `f(A) >= Σ_{u∉A} (g(u) ∸ deg_{G−A}(u))` for all `A ⊆ X ∪ Y`. Bits
/// `0..|X|` of the mask select X-vertices, the rest select Y-vertices.
pub fn check_heinrich(
    inst: &Instance,
    g_y: Option<&[u64]>,
    limit: ExhaustionLimit,
) -> Result<CriterionReport, CriterionError> {
    let gy = check_gy(inst, g_y)?;
    let (nx, ny) = (inst.x_count(), inst.y_count());
    limit.admit(nx + ny)?;

    let mut deg_x = vec![0u64; nx];
    let mut deg_y = vec![0u64; ny];
    for mask in 0..1u64 << (nx + ny) {
        let xs = mask & ((1u64 << nx) - 1);
        let ys = mask >> nx;
        deg_x.fill(0);
        deg_y.fill(0);
        for e in inst.edges() {
            let x_in = xs >> e.x & 1 == 1;
            let y_in = ys >> e.y & 1 == 1;
            if !x_in && !y_in {
                deg_x[e.x] += e.multiplicity;
                deg_y[e.y] += e.multiplicity;
            }
        }
        let available = masked_sum(inst.f_x(), xs) + masked_sum(inst.f_y(), ys);
        let required: u64 = (0..nx)
            .filter(|&x| xs >> x & 1 == 0)
            .map(|x| monus(inst.g_x()[x], deg_x[x]))
            .chain(
                (0..ny)
                    .filter(|&y| ys >> y & 1 == 0)
                    .map(|y| monus(gy[y], deg_y[y])),
            )
            .sum();
        if required > available {
            return Ok(CriterionReport::fails(Witness {
                family: Family::Heinrich,
                a_set: Some(members(xs, nx)),
                b_set: Some(members(ys, ny)),
                required,
                available,
            }));
        }
    }
    Ok(CriterionReport::holds())
}

/// Ore's `f`-factor condition read with `g = f` on both sides: `f_x` and
/// `f_y` are the exact degrees asked for.
pub fn check_ore_f_factor(
    inst: &Instance,
    limit: ExhaustionLimit,
) -> Result<CriterionReport, CriterionError> {
    let (nx, ny) = (inst.x_count(), inst.y_count());
    limit.admit(nx)?;
    let fx_total: u64 = inst.f_x().iter().sum();
    let fy_total: u64 = inst.f_y().iter().sum();
    if fx_total != fy_total {
        return Ok(CriterionReport::fails(Witness {
            family: Family::OreBalance,
            a_set: Some((0..nx).collect()),
            b_set: Some((0..ny).collect()),
            required: fx_total,
            available: fy_total,
        }));
    }
    for mask in 0..1u64 << nx {
        let required = masked_sum(inst.f_x(), mask);
        let available: u64 = (0..ny)
            .map(|y| {
                let into_a: u64 = inst
                    .edge_ids_at_y(y)
                    .iter()
                    .map(|&id| inst.edge(id))
                    .filter(|e| mask >> e.x & 1 == 1)
                    .map(|e| e.multiplicity)
                    .sum();
                inst.f_y()[y].min(into_a)
            })
            .sum();
        if required > available {
            return Ok(CriterionReport::fails(Witness {
                family: Family::OreSubset,
                a_set: Some(members(mask, nx)),
                b_set: None,
                required,
                available,
            }));
        }
    }
    Ok(CriterionReport::holds())
}

/// `f(N_G(S)) >= g(S)` for all `S ⊆ X`, valid when every edge has
/// multiplicity at least `m_floor` and `f(y) <= m_floor` on Y.
pub fn check_hall_condition(
    inst: &Instance,
    m_floor: u64,
    limit: ExhaustionLimit,
) -> Result<CriterionReport, CriterionError> {
    if m_floor == 0 {
        return Err(CriterionError::NotApplicable(
            "multiplicity floor must be positive".into(),
        ));
    }
    if let Some(e) = inst.edges().iter().find(|e| e.multiplicity < m_floor) {
        return Err(CriterionError::NotApplicable(format!(
            "edge ({},{}) has multiplicity {} < {m_floor}",
            e.x, e.y, e.multiplicity
        )));
    }
    if let Some((y, f)) = inst.f_y().iter().enumerate().find(|&(_, &f)| f > m_floor) {
        return Err(CriterionError::NotApplicable(format!(
            "f(y={y}) = {f} exceeds {m_floor}"
        )));
    }
    let (nx, ny) = (inst.x_count(), inst.y_count());
    limit.admit(nx)?;
    let mut covered = vec![false; ny];
    for mask in 0..1u64 << nx {
        let required = masked_sum(inst.g_x(), mask);
        covered.fill(false);
        for x in (0..nx).filter(|&x| mask >> x & 1 == 1) {
            for &id in inst.edge_ids_at_x(x) {
                covered[inst.edge(id).y] = true;
            }
        }
        let available: u64 = (0..ny).filter(|&y| covered[y]).map(|y| inst.f_y()[y]).sum();
        if required > available {
            return Ok(CriterionReport::fails(Witness {
                family: Family::Hall,
                a_set: Some(members(mask, nx)),
                b_set: Some((0..ny).filter(|&y| covered[y]).collect()),
                required,
                available,
            }));
        }
    }
    Ok(CriterionReport::holds())
}
