// Isolated left eigenvalues, including a root hidden in a squared common factor.

use quatleft::quaternion::QuaternionMatrix;
use quatleft::solver::{solve_left_eigenvalues, SolveConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SolveConfig { n_starts: 200, ..SolveConfig::default() };
    let pair = QuaternionMatrix::from_int_rows(&[[[1, 0, 0, 0], [0, 0, 0, 1]], [[0, 0, 0, 1], [1, 0, 0, 0]]])?;
    let triple = QuaternionMatrix::from_int_rows(&[
        [[0, 0, 0, 1], [0, 0, 0, 0], [1, 0, 0, 0]],
        [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]],
        [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]],
    ])?;
    for (name, a, expected) in [("pair", pair, 2), ("triple", triple, 3)] {
        let sol = solve_left_eigenvalues(&a, &cfg)?;
        println!("{name}:");
        for (c, basin) in sol.isolated.iter().zip(&sol.coverage.basins) {
            println!("  {}  sigma_min={:.2e}  basin={basin}", c.lambda.render(), c.pencil_sigma_min);
        }
        assert_eq!(sol.isolated.len(), expected);
        assert!(!sol.manifold_flag);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("solve example failed");
}
