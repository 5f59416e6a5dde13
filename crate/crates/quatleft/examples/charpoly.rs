// Characteristic system of a 2×2 quaternion matrix.

use num::Zero;
use quatleft::charpoly::{build_char_system, minor_relations_hold};
use quatleft::quaternion::{rat, Quaternion, QuaternionMatrix};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = QuaternionMatrix::from_int_rows(&[[[1, 0, 0, 0], [0, 0, 0, 1]], [[0, 0, 0, 1], [1, 0, 0, 0]]])?;
    let mut system = build_char_system(&a)?;
    for (i, eq) in system.equations.iter().enumerate() {
        println!("F{} = {eq}", i + 1);
    }
    let minors = system.minors.as_ref().ok_or("missing minors")?;
    assert!(minor_relations_hold(minors));

    let det = system.full_det()?.clone();
    println!("full det has {} terms, degree {}", det.len(), det.total_degree());
    for root in [[1, 0, 0, 1], [1, 0, 0, -1]] {
        let x = root.map(rat);
        assert!(det.eval_exact(&x).is_zero());
        assert!(system.equations.iter().all(|f| f.eval_exact(&x).is_zero()));
        println!("{} is a root", Quaternion::from_ints(root));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("charpoly example failed");
}
