// A matrix whose left spectrum is a 2-sphere.

use quatleft::quaternion::QuaternionMatrix;
use quatleft::solver::{fit_manifold, solve_left_eigenvalues, SolveConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = QuaternionMatrix::from_int_rows(&[[[1, 0, 0, 0], [0, 0, -1, 0]], [[0, 0, 1, 0], [1, 0, 0, 0]]])?;
    let cfg = SolveConfig { n_starts: 200, manifold_samples: 30, ..SolveConfig::default() };
    let sol = solve_left_eigenvalues(&a, &cfg)?;
    assert!(sol.manifold_flag);
    println!("{} manifold points", sol.manifold_points.len());
    for c in sol.manifold_points.iter().take(5) {
        let [l0, l1, l2, l3] = c.lambda.0;
        println!("  {}  (l0-1)^2+l1^2+l3^2 = {:.12}  l2 = {l2:.1e}", c.lambda.render(), (l0 - 1.0).powi(2) + l1 * l1 + l3 * l3);
    }
    let pts: Vec<_> = sol.manifold_points.iter().map(|c| c.lambda).collect();
    let fit = fit_manifold(&pts)?.ok_or("too few points")?;
    println!("affine dim {}, center {}, radius {:.9}", fit.affine_dim, fit.center.render(), fit.radius);
    assert_eq!(fit.affine_dim, 3);
    assert!((fit.radius - 1.0).abs() < 1e-8);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("manifold example failed");
}
