//! Compare the solver with exhaustive enumeration on a batch of random instances.

use bifactor::{
    brute_force_factor, count_factors, gen_random, solve, GenParams, OracleBudget, Probability,
};

fn main() {
    let budget = OracleBudget::default();
    let mut agree = 0;
    for seed in 0..200 {
        let params = GenParams {
            x_count: 3,
            y_count: 3,
            edge_prob: Probability::new(2, 3).unwrap(),
            max_mult: 2,
            g_max: 2,
            f_slack: 1,
            min_mult_floor: None,
            seed,
        };
        let inst = gen_random(&params).unwrap();
        let oracle = brute_force_factor(&inst, None, budget).unwrap();
        if oracle.is_some() == solve(&inst).is_feasible() {
            agree += 1;
        }
        if seed < 5 {
            println!(
                "seed {seed}: {} factors, first = {:?}",
                count_factors(&inst, None, budget).unwrap(),
                oracle.map(|f| f.iter().collect::<Vec<_>>())
            );
        }
    }
    println!("solver and oracle agree on {agree}/200 instances");
}
