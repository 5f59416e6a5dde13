// Singular-value annulus and right eigenvalues against the left spectrum.

use quatleft::quaternion::QuaternionMatrix;
use quatleft::solver::{left_spectrum_report, SolveConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SolveConfig { n_starts: 300, ..SolveConfig::default() };
    let a = QuaternionMatrix::from_int_rows(&[
        [[-1, -2, 3, -2], [-2, 0, -1, 0]],
        [[-1, 0, 0, 0], [3, -2, -1, 2]],
    ])?;
    let r = left_spectrum_report(&a, &cfg)?;
    let ann = r.solution.annulus;
    println!("annulus [{:.6}, {:.6}]", ann.sigma_min, ann.sigma_max);
    println!("right eigenvalues:");
    for z in &r.right.eigenvalues {
        println!("  {:.6} + {:.6}i  |z| = {:.6}", z.re, z.im, z.norm());
    }
    println!("alpha = {:.6}, beta = {:.6}", r.right.alpha, r.right.beta);
    for c in r.solution.all_certified() {
        println!("  left {}  |lambda| = {:.6}", c.lambda.render(), c.lambda.norm());
    }
    println!("annulus holds: {}", r.annulus_contains_all);
    println!("inside [alpha, beta]: {}", r.domination);
    assert!(r.annulus_contains_all);
    assert!(!r.domination);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("bounds example failed");
}
