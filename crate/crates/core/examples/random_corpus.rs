//! Generate a reproducible corpus and report how often it is feasible.

use bifactor::{emit_instance, gen_random, solve, GenParams, Probability};

fn main() {
    let mut feasible = 0;
    let n = 500;
    for seed in 0..n {
        let params = GenParams {
            x_count: 8,
            y_count: 6,
            edge_prob: Probability::new(3, 10).unwrap(),
            max_mult: 3,
            g_max: 2,
            f_slack: 1,
            min_mult_floor: None,
            seed,
        };
        let inst = gen_random(&params).unwrap();
        feasible += usize::from(solve(&inst).is_feasible());
        if seed == 0 {
            print!("{}", emit_instance(&inst.into()));
        }
    }
    println!("{feasible}/{n} feasible");
}
