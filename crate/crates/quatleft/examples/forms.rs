// The 48 real 4×4 representation forms of the quaternions.

use quatleft::checks::check_all_forms;
use quatleft::quaternion::{Quaternion, QuaternionMatrix};
use quatleft::representation::{convert_form, enumerate_forms, form, p_rank};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let forms = enumerate_forms();
    println!("{} forms", forms.len());
    let f1 = form(1)?;
    for (name, m) in ["E", "H", "J", "K"].iter().zip(f1.basis()) {
        println!("{name} = {m:?}");
    }

    let q = Quaternion::from_ints([1, -2, 3, 4]);
    let img = f1.q_map(&q);
    assert_eq!(f1.q_unmap(&img)?, q);

    let checks = check_all_forms(10, 7);
    let passed = checks.iter().filter(|c| c.passed()).count();
    println!("identity suite: {passed}/{} pass", checks.len());
    assert_eq!(passed, 48);

    let a = QuaternionMatrix::from_int_rows(&[[[1, 0, 0, 1], [0, 2, 0, 0]], [[0, 0, 1, 0], [3, 0, 0, 0]]])?;
    let converted = (2..=48).filter(|&k| convert_form(&a, 1, k).is_ok()).count();
    println!("form 1 converts into {converted} other forms");
    println!("rank of P1(A) = {}", p_rank(&f1.p_map(&a))?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("forms example failed");
}
