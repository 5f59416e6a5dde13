//! Small dense floating-point kernels: one-sided Jacobi SVD and a
//! Hessenberg + shifted QR eigenvalue solver for complex matrices.

use std::ops::{Index, IndexMut};

use num::complex::Complex64;
use num::Zero;

use crate::error::{Error, Result};

pub const JACOBI_MAX_SWEEPS: usize = 60;
pub const JACOBI_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Mat { rows: r, cols: c, data: rows.iter().flatten().copied().collect() }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..o.cols {
                    out[(i, j)] += a * o[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// A = U diag(sigma) Vᵀ, singular values descending.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: Mat,
    pub sigma: Vec<f64>,
    pub v: Mat,
}

impl Svd {
    pub fn sigma_max(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    pub fn sigma_min(&self) -> f64 {
        self.sigma.last().copied().unwrap_or(0.0)
    }

    /// Right singular vector for the smallest singular value.
    pub fn min_right(&self) -> Vec<f64> {
        self.v.col(self.v.cols - 1)
    }

    pub fn rank(&self, threshold: f64) -> usize {
        self.sigma.iter().filter(|&&s| s > threshold).count()
    }

    /// Right singular vectors with singular value at most `threshold`.
    pub fn null_space(&self, threshold: f64) -> Vec<Vec<f64>> {
        (0..self.v.cols).filter(|&j| self.sigma[j] <= threshold).map(|j| self.v.col(j)).collect()
    }

    /// Minimum-norm least-squares solution of A x = b.
    pub fn solve(&self, b: &[f64], threshold: f64) -> Vec<f64> {
        let n = self.v.rows;
        let mut x = vec![0.0; n];
        for (k, &s) in self.sigma.iter().enumerate() {
            if s <= threshold {
                continue;
            }
            let coef: f64 = (0..self.u.rows).map(|i| self.u[(i, k)] * b[i]).sum::<f64>() / s;
            for (i, xi) in x.iter_mut().enumerate() {
                *xi += coef * self.v[(i, k)];
            }
        }
        x
    }
}

/// One-sided Jacobi SVD. Requires rows ≥ cols; wide inputs are transposed.
/// Returns a thin U (rows × cols) and a square V.
pub fn svd(a: &Mat) -> Result<Svd> {
    if a.rows < a.cols {
        // Aᵀ = U S Vᵀ  =>  A = V S Uᵀ
        let t = svd(&a.transpose())?;
        let mut sigma = t.sigma;
        sigma.resize(a.cols, 0.0);
        return Ok(Svd { u: t.v, sigma, v: complete_basis(&t.u) });
    }
    let (m, n) = (a.rows, a.cols);
    // column-major working copy
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| a.col(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let frob2: f64 = a.data.iter().map(|x| x * x).sum();
    // columns below this are numerically zero
    let negligible = f64::EPSILON * f64::EPSILON * frob2;
    let mut converged = n < 2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|x| x * x).sum();
                let beta: f64 = cols[q].iter().map(|x| x * x).sum();
                let gamma: f64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x * y).sum();
                if gamma == 0.0 || alpha.min(beta) <= negligible || gamma.abs() <= JACOBI_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let (x, y) = (cols[p][i], cols[q][i]);
                    cols[p][i] = c * x - s * y;
                    cols[q][i] = s * x + c * y;
                }
                for i in 0..n {
                    let (x, y) = (v[p][i], v[q][i]);
                    v[p][i] = c * x - s * y;
                    v[q][i] = s * x + c * y;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure("Jacobi SVD"));
    }
    let mut order: Vec<(f64, usize)> = cols.iter().enumerate().map(|(j, c)| (norm(c), j)).collect();
    order.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let sigma: Vec<f64> = order.iter().map(|o| o.0).collect();
    let smax = sigma.first().copied().unwrap_or(0.0);
    let mut u = Mat::zeros(m, n);
    let mut vm = Mat::zeros(n, n);
    for (k, &(s, j)) in order.iter().enumerate() {
        for i in 0..n {
            vm[(i, k)] = v[j][i];
        }
        if s > f64::EPSILON * smax.max(f64::MIN_POSITIVE) * (m as f64) {
            for i in 0..m {
                u[(i, k)] = cols[j][i] / s;
            }
        }
    }
    Ok(Svd { u, sigma, v: vm })
}

/// Extend orthonormal columns to a square orthogonal matrix by Gram–Schmidt.
fn complete_basis(q: &Mat) -> Mat {
    let n = q.rows;
    let mut basis: Vec<Vec<f64>> = (0..q.cols).map(|j| q.col(j)).filter(|c| norm(c) > 0.5).collect();
    for e in 0..n {
        if basis.len() == n {
            break;
        }
        let mut c: Vec<f64> = (0..n).map(|i| if i == e { 1.0 } else { 0.0 }).collect();
        for _ in 0..2 {
            for b in &basis {
                let d: f64 = b.iter().zip(&c).map(|(x, y)| x * y).sum();
                for (ci, bi) in c.iter_mut().zip(b) {
                    *ci -= d * bi;
                }
            }
        }
        let nc = norm(&c);
        if nc > 1e-8 {
            basis.push(c.iter().map(|x| x / nc).collect());
        }
    }
    let mut out = Mat::zeros(n, n);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            out[(i, j)] = b[i];
        }
    }
    out
}

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat { n, data: vec![Complex64::zero(); n * n] }
    }
}

/// Householder reduction to upper Hessenberg form (similarity transform).
pub fn hessenberg(a: &mut CMat) {
    let n = a.n;
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let alpha = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
        let mut v = x.clone();
        v[0] += phase * alpha;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vn;
        }
        // A <- (I - 2vvᴴ) A (I - 2vvᴴ) on rows/cols k+1..n
        for j in 0..n {
            let s: Complex64 = (0..v.len()).map(|t| v[t].conj() * a[(k + 1 + t, j)]).sum();
            for t in 0..v.len() {
                let val = a[(k + 1 + t, j)] - v[t] * s * 2.0;
                a[(k + 1 + t, j)] = val;
            }
        }
        for i in 0..n {
            let s: Complex64 = (0..v.len()).map(|t| a[(i, k + 1 + t)] * v[t]).sum();
            for t in 0..v.len() {
                let val = a[(i, k + 1 + t)] - s * v[t].conj() * 2.0;
                a[(i, k + 1 + t)] = val;
            }
        }
        for i in k + 2..n {
            a[(i, k)] = Complex64::zero();
        }
    }
}

fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    // [c s; -s̄ c] [a; b] = [r; 0]
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, Complex64::zero());
    }
    if na == 0.0 {
        return (0.0, (b / nb).conj());
    }
    let r = (na * na + nb * nb).sqrt();
    let c = na / r;
    let s = (a / na) * b.conj() / r;
    (c, s)
}

/// Eigenvalues of a complex matrix by Hessenberg reduction and
/// Wilkinson-shifted QR. Iteration cap is 30·n in total.
pub fn complex_eigenvalues(a: &CMat) -> Result<Vec<Complex64>> {
    let n = a.n;
    let mut h = a.clone();
    hessenberg(&mut h);
    let mut eig = vec![Complex64::zero(); n];
    let mut hi = n;
    let mut iters = 0usize;
    let cap = 30 * n.max(1);
    let scale = h.data.iter().fold(0.0f64, |m, z| m.max(z.norm())).max(f64::MIN_POSITIVE);
    while hi > 0 {
        if hi == 1 {
            eig[0] = h[(0, 0)];
            break;
        }
        // find the active unreduced block [lo, hi)
        let mut lo = hi - 1;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if sub <= f64::EPSILON * diag.max(f64::EPSILON * scale) {
                h[(lo, lo - 1)] = Complex64::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            eig[hi - 1] = h[(hi - 1, hi - 1)];
            hi -= 1;
            continue;
        }
        iters += 1;
        if iters > cap {
            return Err(Error::ConvergenceFailure("shifted QR"));
        }
        // Wilkinson shift from the trailing 2×2 of the active block
        let (p, q) = (hi - 2, hi - 1);
        let (a11, a12, a21, a22) = (h[(p, p)], h[(p, q)], h[(q, p)], h[(q, q)]);
        let tr = a11 + a22;
        let det = a11 * a22 - a12 * a21;
        let disc = (tr * tr * 0.25 - det).sqrt();
        let l1 = tr * 0.5 + disc;
        let l2 = tr * 0.5 - disc;
        let mut mu = if (l1 - a22).norm() < (l2 - a22).norm() { l1 } else { l2 };
        if iters.is_multiple_of(11) {
            // exceptional shift
            mu += Complex64::new(h[(q, p)].norm(), 0.0);
        }
        for i in lo..hi {
            h[(i, i)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi - 1 {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            rots.push((c, s));
        }
        for (idx, k) in (lo..hi - 1).enumerate() {
            let (c, s) = rots[idx];
            for i in 0..=(k + 1).min(hi - 1) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -s * x + y * c;
            }
        }
        for i in lo..hi {
            h[(i, i)] += mu;
        }
    }
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, SVD};

    fn lcg(seed: &mut u64) -> f64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }

    #[test]
    fn svd_matches_nalgebra() {
        let mut seed = 7;
        for &(m, n) in &[(4, 4), (8, 8), (12, 12), (6, 3), (3, 6)] {
            let a = Mat { rows: m, cols: n, data: (0..m * n).map(|_| lcg(&mut seed)).collect() };
            let s = svd(&a).unwrap();
            let na = DMatrix::from_row_slice(m, n, &a.data);
            let mut expect: Vec<f64> = SVD::new(na, false, false).singular_values.iter().copied().collect();
            expect.sort_by(|x, y| y.total_cmp(x));
            expect.resize(n, 0.0);
            for (x, y) in s.sigma.iter().zip(&expect) {
                assert!((x - y).abs() < 1e-12, "{x} vs {y}");
            }
            // A V = U S on the leading min(m, n) columns
            let av = a.mul(&s.v);
            for k in 0..m.min(n) {
                for i in 0..m {
                    assert!((av[(i, k)] - s.u[(i, k)] * s.sigma[k]).abs() < 1e-12);
                }
            }
            let vtv = s.v.transpose().mul(&s.v);
            for i in 0..n {
                for j in 0..n {
                    let e = if i == j { 1.0 } else { 0.0 };
                    assert!((vtv[(i, j)] - e).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn svd_null_vector_of_singular_matrix() {
        let a = Mat::from_rows(&[vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0], vec![1.0, 0.0, 1.0]]);
        let s = svd(&a).unwrap();
        assert!(s.sigma_min() < 1e-14);
        let v = s.min_right();
        assert!(norm(&a.mul_vec(&v)) < 1e-13);
        assert_eq!(s.rank(1e-10), 2);
    }

    #[test]
    fn pseudo_inverse_solve() {
        let a = Mat::from_rows(&[vec![2.0, 0.0], vec![0.0, 0.0]]);
        let s = svd(&a).unwrap();
        let x = s.solve(&[4.0, 1.0], 1e-12);
        assert!((x[0] - 2.0).abs() < 1e-15 && x[1].abs() < 1e-15);
    }

    #[test]
    fn eigenvalues_match_nalgebra() {
        let mut seed = 99;
        for n in [1usize, 2, 3, 4, 6, 8] {
            let mut a = CMat::zeros(n);
            for z in a.data.iter_mut() {
                *z = Complex64::new(lcg(&mut seed), lcg(&mut seed));
            }
            let ours = complex_eigenvalues(&a).unwrap();
            assert_eq!(ours.len(), n);
            let na = DMatrix::from_row_slice(n, n, &a.data);
            // trace and determinant agree, and every value makes A - zI singular
            let tr: Complex64 = (0..n).map(|i| a[(i, i)]).sum();
            let sum: Complex64 = ours.iter().sum();
            assert!((tr - sum).norm() < 1e-10);
            let prod: Complex64 = ours.iter().product();
            assert!((na.clone().determinant() - prod).norm() < 1e-9);
            for z in &ours {
                let shifted = &na - DMatrix::<Complex64>::identity(n, n) * *z;
                let sv = SVD::new(shifted, false, false).singular_values;
                assert!(sv.min() < 1e-10, "n={n}: {z} not an eigenvalue");
            }
        }
    }

    #[test]
    fn eigenvalues_of_rotation_and_triangular() {
        let mut a = CMat::zeros(2);
        a[(0, 1)] = Complex64::new(-1.0, 0.0);
        a[(1, 0)] = Complex64::new(1.0, 0.0);
        let mut e = complex_eigenvalues(&a).unwrap();
        e.sort_by(|x, y| x.im.total_cmp(&y.im));
        assert!((e[0] - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((e[1] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        let mut t = CMat::zeros(3);
        for i in 0..3 {
            t[(i, i)] = Complex64::new(i as f64 + 1.0, 0.0);
            for j in i + 1..3 {
                t[(i, j)] = Complex64::new(0.5, 0.25);
            }
        }
        let mut e = complex_eigenvalues(&t).unwrap();
        e.sort_by(|x, y| x.re.total_cmp(&y.re));
        for (i, z) in e.iter().enumerate() {
            assert!((z - Complex64::new(i as f64 + 1.0, 0.0)).norm() < 1e-12);
        }
    }
}
