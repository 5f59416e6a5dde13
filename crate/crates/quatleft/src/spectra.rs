//! Singular values, right eigenvalues and norm bounds for left eigenvalues.

use num::complex::Complex64;

use crate::dense::{complex_eigenvalues, svd, CMat};
use crate::error::{Error, Result};
use crate::quaternion::{QuatMatF, QuaternionMatrix};
use crate::representation::{enumerate_forms, p1_f64, p_rank};

pub const PAIR_TOL: f64 = 1e-8;

/// Bounds σ_min ≤ ‖λ‖ ≤ σ_max for every left eigenvalue λ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnulusBound {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub full_rank: bool,
}

impl AnnulusBound {
    pub fn contains(&self, norm: f64, tol: f64) -> bool {
        norm >= self.sigma_min - tol && norm <= self.sigma_max + tol
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RightSpectrum {
    /// One representative per conjugate pair, imaginary part ≥ 0.
    pub eigenvalues: Vec<Complex64>,
    pub alpha: f64,
    pub beta: f64,
}

/// All 4m singular values of P₁(A), descending.
pub fn raw_singular_values(a: &QuatMatF) -> Result<Vec<f64>> {
    Ok(svd(&p1_f64(a))?.sigma)
}

/// Singular values of A: one per group of four equal values of P₁(A).
pub fn singular_values(a: &QuaternionMatrix) -> Result<Vec<f64>> {
    singular_values_f64(&a.to_f64())
}

pub fn singular_values_f64(a: &QuatMatF) -> Result<Vec<f64>> {
    let raw = raw_singular_values(a)?;
    Ok(raw.chunks(4).map(|c| c.iter().sum::<f64>() / c.len() as f64).collect())
}

pub fn annulus(a: &QuaternionMatrix) -> Result<AnnulusBound> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let d = singular_values(a)?;
    let rank = p_rank(&enumerate_forms()[0].p_map(a))? / 4;
    let full_rank = rank == a.rows();
    Ok(bound_from(&d, full_rank))
}

/// Numeric variant: full rank when σ_min > 1e-12 σ_max.
pub fn annulus_f64(a: &QuatMatF) -> Result<AnnulusBound> {
    if a.rows != a.cols {
        return Err(Error::NotSquare(a.rows, a.cols));
    }
    let d = singular_values_f64(a)?;
    let max = d.first().copied().unwrap_or(0.0);
    let min = d.last().copied().unwrap_or(0.0);
    Ok(bound_from(&d, max > 0.0 && min > 1e-12 * max))
}

fn bound_from(d: &[f64], full_rank: bool) -> AnnulusBound {
    let sigma_max = d.first().copied().unwrap_or(0.0);
    let sigma_min = if full_rank { d.last().copied().unwrap_or(0.0) } else { 0.0 };
    AnnulusBound { sigma_min, sigma_max, full_rank }
}

/// χ(A) = [[A1, A2], [−Ā2, Ā1]] with A = A1 + A2 ȷ, A1 = q0 + q1 i, A2 = q2 + q3 i.
pub fn complex_adjoint(a: &QuatMatF) -> CMat {
    let m = a.rows;
    let mut c = CMat::zeros(2 * m);
    for i in 0..m {
        for j in 0..m {
            let [q0, q1, q2, q3] = a.get(i, j).0;
            let a1 = Complex64::new(q0, q1);
            let a2 = Complex64::new(q2, q3);
            c[(i, j)] = a1;
            c[(i, j + m)] = a2;
            c[(i + m, j)] = -a2.conj();
            c[(i + m, j + m)] = a1.conj();
        }
    }
    c
}

/// Eigenvalues of the complex adjoint before conjugate-pair folding.
pub fn adjoint_eigenvalues(a: &QuatMatF) -> Result<Vec<Complex64>> {
    if a.rows != a.cols {
        return Err(Error::NotSquare(a.rows, a.cols));
    }
    complex_eigenvalues(&complex_adjoint(a))
}

/// Greedy folding of conjugate pairs within `tol`; unmatched values are kept.
pub fn fold_conjugate_pairs(values: &[Complex64], tol: f64) -> Vec<Complex64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.im.total_cmp(&a.im).then(a.re.total_cmp(&b.re)));
    let mut used = vec![false; sorted.len()];
    let mut out = Vec::new();
    for i in 0..sorted.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let z = sorted[i];
        let partner = (0..sorted.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| (sorted[a] - z.conj()).norm().total_cmp(&(sorted[b] - z.conj()).norm()))
            .filter(|&j| (sorted[j] - z.conj()).norm() < tol);
        if let Some(j) = partner {
            used[j] = true;
        }
        out.push(Complex64::new(z.re, z.im.abs()));
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    out
}

pub fn right_eigenvalues(a: &QuaternionMatrix) -> Result<RightSpectrum> {
    right_eigenvalues_f64(&a.to_f64())
}

pub fn right_eigenvalues_f64(a: &QuatMatF) -> Result<RightSpectrum> {
    let raw = adjoint_eigenvalues(a)?;
    let eigenvalues = fold_conjugate_pairs(&raw, PAIR_TOL);
    let norms = raw.iter().map(|z| z.norm());
    let alpha = norms.clone().fold(f64::INFINITY, f64::min);
    let beta = norms.fold(0.0, f64::max);
    Ok(RightSpectrum { eigenvalues, alpha, beta })
}

pub fn domination_tolerance(spec: &RightSpectrum) -> f64 {
    1e-8 * spec.beta.max(1.0)
}

/// True iff every norm lies in [α − tol, β + tol], tol = 1e-8·max(1, β).
pub fn domination_check(spec: &RightSpectrum, left_norms: impl IntoIterator<Item = f64>) -> bool {
    let tol = domination_tolerance(spec);
    left_norms.into_iter().all(|n| n >= spec.alpha - tol && n <= spec.beta + tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{QuatF, Quaternion};

    fn q(c: [i64; 4]) -> Quaternion {
        Quaternion::from_ints(c)
    }

    fn example_41() -> QuaternionMatrix {
        QuaternionMatrix::from_rows(vec![vec![q([1, 0, 0, 0]), q([0, 0, 0, 1])], vec![q([0, 0, 0, 1]), q([1, 0, 0, 0])]])
            .unwrap()
    }

    #[test]
    fn gram_of_example_is_twice_identity() {
        // AᴴA = 2I exactly, so both singular values are √2
        let a = example_41();
        let g = a.conj_transpose().mul(&a).unwrap();
        assert_eq!(g, QuaternionMatrix::scalar(2, &q([2, 0, 0, 0])));
        let s = singular_values(&a).unwrap();
        assert_eq!(s.len(), 2);
        for x in s {
            assert!((x - 2f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn annulus_examples() {
        let b = annulus(&QuaternionMatrix::identity(3)).unwrap();
        assert!((b.sigma_min - 1.0).abs() < 1e-14 && (b.sigma_max - 1.0).abs() < 1e-14 && b.full_rank);
        let z = annulus(&QuaternionMatrix::zeros(2, 2)).unwrap();
        assert_eq!((z.sigma_min, z.sigma_max, z.full_rank), (0.0, 0.0, false));
        let sing = QuaternionMatrix::from_rows(vec![vec![q([1, 0, 0, 0]), q([0, 1, 0, 0])], vec![q([0, 0, 1, 0]), q([0, 0, 0, -1])]])
            .unwrap();
        let s = annulus(&sing).unwrap();
        assert!(!s.full_rank);
        assert_eq!(s.sigma_min, 0.0);
        assert!(s.sigma_max > 0.0);
        assert!(annulus(&QuaternionMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn right_spectrum_of_example() {
        let r = right_eigenvalues(&example_41()).unwrap();
        assert_eq!(r.eigenvalues.len(), 2);
        assert!((r.alpha - 2f64.sqrt()).abs() < 1e-12);
        assert!((r.beta - 2f64.sqrt()).abs() < 1e-12);
        for z in &r.eigenvalues {
            assert!((z.re - 1.0).abs() < 1e-12 && (z.im - 1.0).abs() < 1e-12);
        }
        assert!(domination_check(&r, [2f64.sqrt(), 2f64.sqrt()]));
        assert!(!domination_check(&r, [1.0]));
    }

    #[test]
    fn identity_spectrum() {
        let r = right_eigenvalues(&QuaternionMatrix::identity(3)).unwrap();
        assert_eq!(r.eigenvalues.len(), 3);
        assert!((r.alpha - 1.0).abs() < 1e-14 && (r.beta - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian_has_real_right_eigenvalues() {
        // [[1, −ȷ], [ȷ, 1]] is Hermitian
        let a = QuaternionMatrix::from_rows(vec![vec![q([1, 0, 0, 0]), q([0, 0, -1, 0])], vec![q([0, 0, 1, 0]), q([1, 0, 0, 0])]])
            .unwrap();
        assert_eq!(a.conj_transpose(), a);
        let r = right_eigenvalues(&a).unwrap();
        for z in &r.eigenvalues {
            assert!(z.im.abs() < 1e-10);
        }
        assert!(r.alpha.abs() < 1e-12 && (r.beta - 2.0).abs() < 1e-12);
    }

    #[test]
    fn adjoint_spectrum_closed_under_conjugation() {
        let a = QuatMatF {
            rows: 2,
            cols: 2,
            data: vec![QuatF([0.3, -1.2, 0.5, 2.0]), QuatF([1.0, 0.0, -0.7, 0.1]), QuatF([-0.4, 0.9, 0.2, 0.0]), QuatF([1.5, 0.3, 0.3, -0.8])],
        };
        let e = adjoint_eigenvalues(&a).unwrap();
        for z in &e {
            assert!(e.iter().any(|w| (w - z.conj()).norm() < 1e-9));
        }
        assert_eq!(right_eigenvalues_f64(&a).unwrap().eigenvalues.len(), 2);
    }

    #[test]
    fn singular_values_come_in_fours() {
        let a = QuatMatF {
            rows: 3,
            cols: 3,
            data: (0..9).map(|i| QuatF([(i as f64).sin(), (2.0 * i as f64).cos(), 0.5 - i as f64 * 0.1, 1.0 / (i as f64 + 1.0)])).collect(),
        };
        let raw = raw_singular_values(&a).unwrap();
        for g in raw.chunks(4) {
            let spread = g.iter().fold(0.0f64, |m, x| m.max((x - g[0]).abs()));
            assert!(spread <= 1e-10 * g[0].max(1e-300), "{g:?}");
        }
    }

    #[test]
    fn folding_keeps_unmatched() {
        let v = [Complex64::new(1.0, 2.0), Complex64::new(1.0, -2.0), Complex64::new(3.0, 0.0)];
        let f = fold_conjugate_pairs(&v, 1e-8);
        assert_eq!(f, vec![Complex64::new(1.0, 2.0), Complex64::new(3.0, 0.0)]);
    }
}
