//! Seeded random instances.
//!
//! The stream is SplitMix64 (state increment `0x9E3779B97F4A7C15`, output
//! mix multipliers `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`, shifts
//! 30/27/31). A draw below `n` is `(u64 * n) >> 64` on the 128-bit product,
//! one `u64` per draw. Draws happen in a fixed order so corpora are
//! reproducible in any language:
//!
//! 1. for `x` in X, for `y` in Y: one Bernoulli draw (`below(den) < num`);
//!    if it hits, one multiplicity draw;
//! 2. `g_x` for every x;
//! 3. the slack `f_x - g_x` for every x;
//! 4. `f_y` for every y.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Instance;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        ((u128::from(self.next_u64()) * u128::from(n)) >> 64) as u64
    }

    /// Uniform in `lo..=hi`.
    pub fn between(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }
}

/// An exact rational probability `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    pub fn new(num: u64, den: u64) -> Option<Self> {
        (den > 0 && num <= den).then_some(Probability { num, den })
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Probability {
    type Err = String;

    /// Accepts `p/q` or a decimal such as `0.25`, read exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid probability {s:?}");
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d = d.trim().parse().map_err(|_| bad())?;
            return Probability::new(n, d).ok_or_else(bad);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        Probability::new(num, den).ok_or_else(bad)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub x_count: usize,
    pub y_count: usize,
    pub edge_prob: Probability,
    pub max_mult: u64,
    pub g_max: u64,
    pub f_slack: u64,
    /// Forces every multiplicity to at least this value and clamps `f_y` to it.
    pub min_mult_floor: Option<u64>,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            x_count: 4,
            y_count: 4,
            edge_prob: Probability::new(1, 2).unwrap(),
            max_mult: 1,
            g_max: 1,
            f_slack: 1,
            min_mult_floor: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("x_count and y_count must be positive")]
    EmptySide,
    #[error("max_mult must be positive")]
    ZeroMultiplicity,
    #[error("min_mult_floor must be positive")]
    ZeroFloor,
    #[error("bounds too large: {0}")]
    TooLarge(String),
}

pub fn gen_random(params: &GenParams) -> Result<Instance, GenError> {
    if params.x_count == 0 || params.y_count == 0 {
        return Err(GenError::EmptySide);
    }
    if params.max_mult == 0 {
        return Err(GenError::ZeroMultiplicity);
    }
    if params.min_mult_floor == Some(0) {
        return Err(GenError::ZeroFloor);
    }
    let f_max = params
        .g_max
        .checked_add(params.f_slack)
        .filter(|&v| v < u64::MAX)
        .ok_or_else(|| GenError::TooLarge("g_max + f_slack".into()))?;
    let (m_lo, m_hi) = match params.min_mult_floor {
        Some(floor) => (floor, params.max_mult.max(floor)),
        None => (1, params.max_mult),
    };

    let mut rng = SplitMix64::new(params.seed);
    let mut edges = Vec::new();
    for x in 0..params.x_count {
        for y in 0..params.y_count {
            if rng.below(params.edge_prob.den) < params.edge_prob.num {
                edges.push((x, y, rng.between(m_lo, m_hi)));
            }
        }
    }
    let g_x: Vec<u64> = (0..params.x_count)
        .map(|_| rng.between(0, params.g_max))
        .collect();
    let f_x: Vec<u64> = g_x
        .iter()
        .map(|&g| g + rng.between(0, params.f_slack))
        .collect();
    let f_y: Vec<u64> = (0..params.y_count)
        .map(|_| {
            let f = rng.between(0, f_max);
            params.min_mult_floor.map_or(f, |floor| f.min(floor))
        })
        .collect();
    Instance::new(params.x_count, params.y_count, edges, g_x, f_x, f_y)
        .map_err(|e| GenError::TooLarge(e.to_string()))
}
