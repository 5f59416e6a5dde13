// Certifying candidates and the closure λ ↦ aλb on A ↦ aAb.

use quatleft::quaternion::{QuatF, Quaternion, QuaternionMatrix};
use quatleft::solver::verify_left_eigenvalue;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = QuaternionMatrix::from_int_rows(&[[[1, 0, 0, 0], [0, 0, 0, 1]], [[0, 0, 0, 1], [1, 0, 0, 0]]])?;
    let lambda = Quaternion::from_ints([1, 0, 0, 1]);
    let good = verify_left_eigenvalue(&a, lambda.to_f64(), 1e-10)?;
    let bad = verify_left_eigenvalue(&a, QuatF([1.0, 1.0, 0.0, 0.0]), 1e-10)?;
    println!("1+k: accepted={} sigma_min={:.2e}", good.accepted, good.pencil_sigma_min);
    println!("1+i: accepted={} sigma_min={:.3}", bad.accepted, bad.pencil_sigma_min);
    assert!(good.accepted && !bad.accepted);

    let (p, q) = (Quaternion::from_ints([1, 2, 0, -1]), Quaternion::from_ints([0, 1, 1, 3]));
    let scaled = a.scalar_left_mul(&p).scalar_right_mul(&q);
    let mapped = &(&p * &lambda) * &q;
    let cert = verify_left_eigenvalue(&scaled, mapped.to_f64(), 1e-8)?;
    println!("a(1+k)b = {mapped}: accepted={}", cert.accepted);
    assert!(cert.accepted);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("verify example failed");
}
