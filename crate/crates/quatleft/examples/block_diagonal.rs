// Left spectrum of diag(q, B) is {q} together with the spectrum of B.

use quatleft::quaternion::{QuatF, QuaternionMatrix};
use quatleft::solver::{solve_left_eigenvalues, SolveConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SolveConfig { n_starts: 200, ..SolveConfig::default() };
    let a = QuaternionMatrix::from_int_rows(&[
        [[2, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
        [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]],
        [[0, 0, 0, 0], [0, 0, 0, 1], [1, 0, 0, 0]],
    ])?;
    let sol = solve_left_eigenvalues(&a, &cfg)?;
    for c in &sol.isolated {
        println!("{}", c.lambda.render());
    }
    let expected = [QuatF([2.0, 1.0, 0.0, 0.0]), QuatF([1.0, 0.0, 0.0, 1.0]), QuatF([1.0, 0.0, 0.0, -1.0])];
    assert_eq!(sol.isolated.len(), 3);
    for e in expected {
        assert!(sol.isolated.iter().any(|c| c.lambda.dist(e) < 1e-9));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("block example failed");
}
