//! Solve a small instance, then check the answer with the independent verifiers.

use bifactor::{
    parse_instance, solve, verify_certificate, verify_factor, OutputDocument, SolveOutcome,
};

const INSTANCE: &str = "\
bifactor 1
# three workers, two shifts
xy 3 2
edge 0 0 2
edge 1 0 1
edge 1 1 1
edge 2 1 1
gx 2 1 1
fx 2 2 1
fy 2 2
xnames ann bo cy
ynames early late
";

fn main() {
    let doc = parse_instance(INSTANCE).expect("valid instance");
    let inst = &doc.instance;
    let outcome = solve(inst);
    match &outcome {
        SolveOutcome::Factor(f) => {
            let report = verify_factor(inst, f).unwrap();
            println!("factor found, verified: {}", report.is_valid());
        }
        SolveOutcome::Certificate(c) => {
            let report = verify_certificate(inst, c).unwrap();
            println!("no factor, certificate verified: {}", report.is_valid());
        }
    }
    print!("{}", OutputDocument::from_outcome(&outcome).emit());

    // Tighten the late shift so the instance becomes infeasible.
    let tight = inst
        .with_bounds(inst.g_x().to_vec(), inst.f_x().to_vec(), vec![2, 1])
        .unwrap();
    let outcome = solve(&tight);
    let cert = outcome.certificate().expect("infeasible");
    println!(
        "tightened: A = {:?}, B = {:?}, deficiency {}",
        cert.a_set, cert.b_set, cert.deficiency
    );
    assert!(verify_certificate(&tight, cert).unwrap().is_valid());
}
