//! With unit bounds on X and unit capacity on Y, a factor is an X-saturating
//! matching. An infeasible instance yields a set of suitors with too few partners.

use bifactor::{solve, Instance, SolveOutcome};

fn main() {
    let likes: [&[usize]; 4] = [&[0, 1], &[0], &[0], &[1, 2, 3]];
    let edges: Vec<_> = likes
        .iter()
        .enumerate()
        .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y, 1)))
        .collect();
    let inst = Instance::new(4, 4, edges, vec![1; 4], vec![1; 4], vec![1; 4]).unwrap();
    match solve(&inst) {
        SolveOutcome::Factor(f) => {
            for (x, y, _) in f.iter() {
                println!("x={x} matched with y={y}");
            }
        }
        SolveOutcome::Certificate(c) => {
            let neighbours = inst.neighborhood(&c.a_set);
            println!(
                "no perfect assignment: {:?} only like {:?} (short by {})",
                c.a_set, neighbours, c.deficiency
            );
        }
    }
}
