//! Reference evaluators that share no code path with the library's checkers:
//! they work on plain sets and look multiplicities up pair by pair.
#![allow(dead_code)]

use std::collections::BTreeSet;

use bifactor::{gen_random, GenParams, Instance, Probability};

pub fn m(inst: &Instance, x: usize, y: usize) -> u64 {
    inst.multiplicity(x, y)
}

pub fn monus(a: u64, b: u64) -> u64 {
    a.saturating_sub(b)
}

/// Every assignment `0 <= c <= m` in lexicographic order, no pruning.
pub fn all_assignments(inst: &Instance) -> Vec<Vec<u64>> {
    let caps: Vec<u64> = inst.edges().iter().map(|e| e.multiplicity).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u64; caps.len()];
    loop {
        out.push(cur.clone());
        // odometer, last edge fastest
        let mut i = caps.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < caps[i] {
                cur[i] += 1;
                for c in &mut cur[i + 1..] {
                    *c = 0;
                }
                break;
            }
        }
    }
}

pub fn assignment_ok(inst: &Instance, g_y: Option<&[u64]>, c: &[u64]) -> bool {
    let mut dx = vec![0u64; inst.x_count()];
    let mut dy = vec![0u64; inst.y_count()];
    for (e, &v) in inst.edges().iter().zip(c) {
        dx[e.x] += v;
        dy[e.y] += v;
    }
    (0..inst.x_count()).all(|x| inst.g_x()[x] <= dx[x] && dx[x] <= inst.f_x()[x])
        && (0..inst.y_count()).all(|y| g_y.map_or(0, |g| g[y]) <= dy[y] && dy[y] <= inst.f_y()[y])
}

pub fn unpruned_first(inst: &Instance, g_y: Option<&[u64]>) -> Option<Vec<u64>> {
    all_assignments(inst)
        .into_iter()
        .find(|c| assignment_ok(inst, g_y, c))
}

pub fn unpruned_count(inst: &Instance, g_y: Option<&[u64]>) -> u64 {
    all_assignments(inst)
        .iter()
        .filter(|c| assignment_ok(inst, g_y, c))
        .count() as u64
}

pub fn sum_over(values: &[u64], set: &BTreeSet<usize>) -> u64 {
    set.iter().map(|&i| values[i]).sum()
}

/// `(Σ_{x∈A} (g(x) ∸ e(x, Y∖B)), f(B))`
pub fn eval_new(inst: &Instance, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> (u64, u64) {
    let required = a
        .iter()
        .map(|&x| {
            let outside: u64 = (0..inst.y_count())
                .filter(|y| !b.contains(y))
                .map(|y| m(inst, x, y))
                .sum();
            monus(inst.g_x()[x], outside)
        })
        .sum();
    (required, sum_over(inst.f_y(), b))
}

/// `(g(A), Σ_y min{f(y), e(y, A)})`
pub fn eval_cymer_x(inst: &Instance, a: &BTreeSet<usize>) -> (u64, u64) {
    let available = (0..inst.y_count())
        .map(|y| inst.f_y()[y].min(a.iter().map(|&x| m(inst, x, y)).sum()))
        .sum();
    (sum_over(inst.g_x(), a), available)
}

/// `(g_y(B), Σ_x min{f(x), e(x, B)})`
pub fn eval_cymer_y(inst: &Instance, g_y: &[u64], b: &BTreeSet<usize>) -> (u64, u64) {
    let available = (0..inst.x_count())
        .map(|x| inst.f_x()[x].min(b.iter().map(|&y| m(inst, x, y)).sum()))
        .sum();
    (sum_over(g_y, b), available)
}

/// `(Σ_{u∉A} (g(u) ∸ deg_{G−A}(u)), f(A))` with `A = ax ∪ ay`.
pub fn eval_heinrich(
    inst: &Instance,
    g_y: &[u64],
    ax: &BTreeSet<usize>,
    ay: &BTreeSet<usize>,
) -> (u64, u64) {
    let mut required = 0;
    for x in (0..inst.x_count()).filter(|x| !ax.contains(x)) {
        let d: u64 = (0..inst.y_count())
            .filter(|y| !ay.contains(y))
            .map(|y| m(inst, x, y))
            .sum();
        required += monus(inst.g_x()[x], d);
    }
    for y in (0..inst.y_count()).filter(|y| !ay.contains(y)) {
        let d: u64 = (0..inst.x_count())
            .filter(|x| !ax.contains(x))
            .map(|x| m(inst, x, y))
            .sum();
        required += monus(g_y[y], d);
    }
    (
        required,
        sum_over(inst.f_x(), ax) + sum_over(inst.f_y(), ay),
    )
}

/// `(f(A), Σ_y min{f(y), e(y, A)})`
pub fn eval_ore(inst: &Instance, a: &BTreeSet<usize>) -> (u64, u64) {
    let available = (0..inst.y_count())
        .map(|y| inst.f_y()[y].min(a.iter().map(|&x| m(inst, x, y)).sum()))
        .sum();
    (sum_over(inst.f_x(), a), available)
}

/// `(g(S), f(N(S)))`
pub fn eval_hall(inst: &Instance, s: &BTreeSet<usize>) -> (u64, u64) {
    let nbrs: BTreeSet<usize> = (0..inst.y_count())
        .filter(|&y| s.iter().any(|&x| m(inst, x, y) > 0))
        .collect();
    (sum_over(inst.g_x(), s), sum_over(inst.f_y(), &nbrs))
}

/// Size of a maximum matching of the simple graph underlying `inst`, by
/// exhaustive branching on each X-vertex.
pub fn max_matching(inst: &Instance) -> usize {
    fn go(inst: &Instance, x: usize, used: &mut Vec<bool>) -> usize {
        if x == inst.x_count() {
            return 0;
        }
        let mut best = go(inst, x + 1, used);
        for y in 0..inst.y_count() {
            if !used[y] && m(inst, x, y) > 0 {
                used[y] = true;
                best = best.max(1 + go(inst, x + 1, used));
                used[y] = false;
            }
        }
        best
    }
    go(inst, 0, &mut vec![false; inst.y_count()])
}

pub fn prob(num: u64, den: u64) -> Probability {
    Probability::new(num, den).unwrap()
}

/// The small-instance corpus: sizes up to 4x4, multiplicity up to 2, three
/// edge densities, `g_max` and `f_slack` in `0..=2`.
pub fn small_corpus(n: usize) -> Vec<(GenParams, Instance)> {
    let probs = [prob(3, 10), prob(6, 10), prob(9, 10)];
    (0..n)
        .map(|i| {
            let p = GenParams {
                x_count: 1 + i % 4,
                y_count: 1 + (i / 4) % 4,
                edge_prob: probs[(i / 16) % 3],
                max_mult: 1 + ((i / 48) % 2) as u64,
                g_max: ((i / 96) % 3) as u64,
                f_slack: ((i / 288) % 3) as u64,
                min_mult_floor: None,
                seed: i as u64,
            };
            let inst = gen_random(&p).unwrap();
            (p, inst)
        })
        .collect()
}

/// Instances meeting the multiplicity-floor preconditions for `m` in `1..=3`.
pub fn floor_corpus(n: usize) -> Vec<(u64, Instance)> {
    let probs = [prob(3, 10), prob(6, 10), prob(9, 10)];
    (0..n)
        .map(|i| {
            let floor = 1 + (i % 3) as u64;
            let p = GenParams {
                x_count: 1 + (i / 3) % 4,
                y_count: 1 + (i / 12) % 4,
                edge_prob: probs[(i / 48) % 3],
                max_mult: floor + ((i / 144) % 2) as u64,
                g_max: 1 + ((i / 288) % 3) as u64,
                f_slack: (i % 2) as u64,
                min_mult_floor: Some(floor),
                seed: 10_000 + i as u64,
            };
            (floor, gen_random(&p).unwrap())
        })
        .collect()
}

/// Simple bigraphs with `g = f = 1` on X and `f = 1` on Y.
pub fn marriage_corpus(n: usize) -> Vec<Instance> {
    let probs = [prob(2, 10), prob(4, 10), prob(6, 10), prob(8, 10)];
    (0..n)
        .map(|i| {
            let p = GenParams {
                x_count: 1 + i % 5,
                y_count: 1 + (i / 5) % 5,
                edge_prob: probs[(i / 25) % 4],
                max_mult: 1,
                seed: 20_000 + i as u64,
                ..GenParams::default()
            };
            let g = gen_random(&p).unwrap();
            g.with_bounds(
                vec![1; g.x_count()],
                vec![1; g.x_count()],
                vec![1; g.y_count()],
            )
            .unwrap()
        })
        .collect()
}
