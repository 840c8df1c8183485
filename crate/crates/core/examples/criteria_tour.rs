//! Evaluate every exhaustive criterion on one feasible and one infeasible instance.

use bifactor::{Criterion, ExhaustionLimit, Instance};

fn show(label: &str, inst: &Instance) {
    println!(
        "{label}: solver says feasible = {}",
        bifactor::solve(inst).is_feasible()
    );
    let limit = ExhaustionLimit::default();
    for criterion in [
        Criterion::New,
        Criterion::CymerKano,
        Criterion::Heinrich,
        Criterion::Ore,
        Criterion::Hall { m_floor: 1 },
    ] {
        match criterion.check(inst, None, limit) {
            Ok(report) => match report.witness {
                None => println!("  {:<11} holds", criterion.name()),
                Some(w) => println!(
                    "  {:<11} fails ({}): A = {:?}, B = {:?}, needs {} but only {}",
                    criterion.name(),
                    w.family.name(),
                    w.a_set,
                    w.b_set,
                    w.required,
                    w.available
                ),
            },
            Err(e) => println!("  {:<11} not evaluated: {e}", criterion.name()),
        }
    }
}

fn main() {
    let edges = [(0, 0, 1), (0, 1, 1), (1, 1, 1), (2, 1, 1), (2, 2, 1)];
    let ok = Instance::new(3, 3, edges, vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]).unwrap();
    show("feasible", &ok);
    let bad = ok
        .with_bounds(vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 0])
        .unwrap();
    show("infeasible", &bad);
}
