//! Randomized exact identity suites for the representation forms, and
//! random rational generators shared by tests and examples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quaternion::{ratio, Quaternion, QuaternionMatrix};
use crate::representation::{elementary_conjugation_check, enumerate_forms, RepresentationForm};

/// Quaternion with coefficients n/d, |n| ≤ num_bound, 1 ≤ d ≤ den_bound.
pub fn random_quaternion<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Quaternion {
    Quaternion(std::array::from_fn(|_| ratio(rng.gen_range(-num_bound..=num_bound), rng.gen_range(1..=den_bound))))
}

pub fn random_nonzero_quaternion<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Quaternion {
    loop {
        let q = random_quaternion(rng, num_bound, den_bound);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, num_bound: i64, den_bound: i64) -> QuaternionMatrix {
    let data = (0..rows * cols).map(|_| random_quaternion(rng, num_bound, den_bound)).collect();
    QuaternionMatrix::new(rows, cols, data).expect("positive dimensions")
}

fn perturbed<R: Rng>(rng: &mut R, q: &Quaternion) -> Quaternion {
    q + &random_nonzero_quaternion(rng, 5, 3)
}

fn perturbed_matrix<R: Rng>(rng: &mut R, a: &QuaternionMatrix) -> QuaternionMatrix {
    let mut b = a.clone();
    let i = rng.gen_range(0..a.rows());
    let j = rng.gen_range(0..a.cols());
    b.set(i, j, perturbed(rng, a.get(i, j)));
    b
}

/// Outcome of the identity suite for one form; each flag covers both
/// directions of the equivalence (true results map to equal matrices,
/// perturbed results do not).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormCheck {
    pub index: usize,
    pub additive: bool,
    pub multiplicative: bool,
    pub left_scalar: bool,
    pub right_scalar: bool,
    pub matrix_product: bool,
    /// Conjugation identities, stated for form 1 only.
    pub conjugation: Option<bool>,
}

impl FormCheck {
    pub fn passed(&self) -> bool {
        self.additive
            && self.multiplicative
            && self.left_scalar
            && self.right_scalar
            && self.matrix_product
            && self.conjugation.unwrap_or(true)
    }
}

pub fn check_form(form: &RepresentationForm, samples: usize, seed: u64) -> FormCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (form.index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut c = FormCheck {
        index: form.index,
        additive: true,
        multiplicative: true,
        left_scalar: true,
        right_scalar: true,
        matrix_product: true,
        conjugation: (form.index == 1).then_some(true),
    };
    for _ in 0..samples {
        let q1 = random_quaternion(&mut rng, 9, 4);
        let q2 = random_quaternion(&mut rng, 9, 4);
        let (a1, a2) = (form.q_map(&q1), form.q_map(&q2));
        let sum = &q1 + &q2;
        let bad = perturbed(&mut rng, &sum);
        c.additive &= a1.add(&a2) == form.q_map(&sum) && a1.add(&a2) != form.q_map(&bad);
        let prod = &q1 * &q2;
        let bad = perturbed(&mut rng, &prod);
        c.multiplicative &= a1.mul(&a2) == form.q_map(&prod) && a1.mul(&a2) != form.q_map(&bad);

        let (m, r, n) = (rng.gen_range(1..=2), rng.gen_range(1..=3), rng.gen_range(1..=2));
        let a = random_matrix(&mut rng, m, n, 9, 4);
        let qa = a.scalar_left_mul(&q1);
        let lhs = form.p_map(&QuaternionMatrix::scalar(m, &q1)).mul(&form.p_map(&a));
        c.left_scalar &= lhs == form.p_map(&qa) && lhs != form.p_map(&perturbed_matrix(&mut rng, &qa));
        let aq = a.scalar_right_mul(&q2);
        let lhs = form.p_map(&a).mul(&form.p_map(&QuaternionMatrix::scalar(n, &q2)));
        c.right_scalar &= lhs == form.p_map(&aq) && lhs != form.p_map(&perturbed_matrix(&mut rng, &aq));

        let x = random_matrix(&mut rng, m, r, 9, 4);
        let y = random_matrix(&mut rng, r, n, 9, 4);
        let xy = x.mul(&y).expect("conformable");
        let lhs = form.p_map(&x).mul(&form.p_map(&y));
        c.matrix_product &= lhs == form.p_map(&xy) && lhs != form.p_map(&perturbed_matrix(&mut rng, &xy));

        if let Some(ok) = c.conjugation.as_mut() {
            *ok &= elementary_conjugation_check(&q1);
        }
    }
    c
}

/// Runs the suite over all 48 forms in enumeration order.
pub fn check_all_forms(samples: usize, seed: u64) -> Vec<FormCheck> {
    enumerate_forms().iter().map(|f| check_form(f, samples, seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_for_every_form() {
        let all = check_all_forms(40, 1);
        assert_eq!(all.len(), 48);
        assert!(all.iter().all(FormCheck::passed));
        assert_eq!(all.iter().filter(|c| c.conjugation.is_some()).count(), 1);
    }

    #[test]
    fn generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 2, 3, 2, 1);
        assert_eq!(a.shape(), (2, 3));
        for q in a.entries() {
            for c in &q.0 {
                assert!(c.is_integer() && c.numer().magnitude() <= &2u32.into());
            }
        }
        assert!(!random_nonzero_quaternion(&mut rng, 1, 1).is_zero());
    }
}
