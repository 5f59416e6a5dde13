// Exact ranks of real representations are multiples of four.

use quatleft::checks::random_matrix;
use quatleft::quaternion::QuaternionMatrix;
use quatleft::representation::{form, p_rank};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let deficient = QuaternionMatrix::from_int_rows(&[[[1, 0, 0, 0], [0, 1, 0, 0]], [[0, 0, 1, 0], [0, 0, 0, -1]]])?;
    println!("[[1, i], [j, -k]] -> rank {}", p_rank(&form(1)?.p_map(&deficient))?);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in [1, 7, 30, 48] {
        let a = random_matrix(&mut rng, 3, 2, 4, 3);
        let r = p_rank(&form(k)?.p_map(&a))?;
        println!("form {k:2}: random 3x2 -> rank {r}");
        assert_eq!(r % 4, 0);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("rank example failed");
}
