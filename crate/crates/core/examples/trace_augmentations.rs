//! Print every augmenting path the solver flips.

use bifactor::solver::NicePath;
use bifactor::{solve_with, AugmentState, Certificate, Instance, SolveObserver, SolveOptions};

struct Tracer;

impl SolveObserver for Tracer {
    fn on_start(&mut self, state: &AugmentState<'_>) {
        println!(
            "start: deficiency {}, deficient {:?}",
            state.delta(),
            state.deficient()
        );
    }

    fn on_flip(&mut self, state: &AugmentState<'_>, path: &NicePath, delta_before: u64) {
        let hops: Vec<String> = path.vertices.iter().map(|v| v.to_string()).collect();
        println!(
            "flip {}: deficiency {} -> {}",
            hops.join(" -> "),
            delta_before,
            state.delta()
        );
    }

    fn on_exhausted(&mut self, _state: &AugmentState<'_>, cert: &Certificate) {
        println!("stuck: A = {:?}, B = {:?}", cert.a_set, cert.b_set);
    }
}

fn main() {
    // x=0 grabs y=0 first, so x=2 must reroute it along an alternating path.
    let inst = Instance::new(
        3,
        3,
        [(0, 0, 1), (0, 1, 1), (1, 1, 1), (1, 2, 1), (2, 0, 1)],
        vec![1, 1, 1],
        vec![1, 1, 1],
        vec![1, 1, 1],
    )
    .unwrap();
    for warm_start in [false, true] {
        println!("warm start: {warm_start}");
        let report = solve_with(&inst, SolveOptions { warm_start }, &mut Tracer);
        println!(
            "{} augmentations, feasible = {}\n",
            report.augmentations,
            report.outcome.is_feasible()
        );
    }
}
