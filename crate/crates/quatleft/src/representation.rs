//! Real 4×4 representations of quaternions.
//!
//! A representation form is a triple (H, J, K) of signed permutation matrices
//! with H² = J² = K² = HJK = −E. There are exactly 48 of them. Form 1 is
//! pinned to the triple whose Q-map has column 1 equal to (q0, q1, q2, q3).

use std::sync::OnceLock;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::dense::Mat;
use crate::error::{Error, Result};
use crate::quaternion::{rat, QuatF, QuatMatF, Quaternion, QuaternionMatrix, Scalar};

pub type SignedPerm = [[i8; 4]; 4];

pub const IDENTITY4: SignedPerm = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

pub const H1: SignedPerm = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
pub const J1: SignedPerm = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]];
/// H1·J1
pub const K1: SignedPerm = [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]];

pub fn sp_mul(a: &SignedPerm, b: &SignedPerm) -> SignedPerm {
    let mut out = [[0i8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn sp_neg(a: &SignedPerm) -> SignedPerm {
    a.map(|r| r.map(|x| -x))
}

pub fn sp_transpose(a: &SignedPerm) -> SignedPerm {
    let mut out = [[0i8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[j][i] = a[i][j];
        }
    }
    out
}

/// H² = J² = K² = HJK = −E
pub fn hamiltonian(h: &SignedPerm, j: &SignedPerm, k: &SignedPerm) -> bool {
    let minus_e = sp_neg(&IDENTITY4);
    sp_mul(h, h) == minus_e
        && sp_mul(j, j) == minus_e
        && sp_mul(k, k) == minus_e
        && sp_mul(&sp_mul(h, j), k) == minus_e
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationForm {
    pub index: usize,
    pub h: SignedPerm,
    pub j: SignedPerm,
    pub k: SignedPerm,
}

fn all_signed_perms() -> Vec<SignedPerm> {
    let mut perms = Vec::new();
    let mut p = [0usize, 1, 2, 3];
    heap_permutations(&mut p, 4, &mut perms);
    perms.sort();
    let mut out = Vec::with_capacity(384);
    for perm in perms {
        for signs in 0u8..16 {
            let mut m = [[0i8; 4]; 4];
            for (i, &c) in perm.iter().enumerate() {
                m[i][c] = if signs >> i & 1 == 1 { -1 } else { 1 };
            }
            out.push(m);
        }
    }
    out
}

fn heap_permutations(p: &mut [usize; 4], n: usize, out: &mut Vec<[usize; 4]>) {
    if n == 1 {
        out.push(*p);
        return;
    }
    for i in 0..n {
        heap_permutations(p, n - 1, out);
        if n.is_multiple_of(2) {
            p.swap(i, n - 1);
        } else {
            p.swap(0, n - 1);
        }
    }
}

fn search_forms() -> Vec<RepresentationForm> {
    let minus_e = sp_neg(&IDENTITY4);
    let roots: Vec<SignedPerm> = all_signed_perms().into_iter().filter(|m| sp_mul(m, m) == minus_e).collect();
    let mut triples = Vec::new();
    for h in &roots {
        for j in &roots {
            let k = sp_mul(h, j);
            if hamiltonian(h, j, &k) {
                triples.push((*h, *j, k));
            }
        }
    }
    triples.sort();
    let pinned = (H1, J1, K1);
    let pos = triples.iter().position(|t| *t == pinned).expect("pinned form missing from search");
    triples.remove(pos);
    triples.insert(0, pinned);
    let forms: Vec<RepresentationForm> = triples
        .into_iter()
        .enumerate()
        .map(|(i, (h, j, k))| RepresentationForm { index: i + 1, h, j, k })
        .collect();
    assert_eq!(forms.len(), 48, "expected 48 representation forms, found {}", forms.len());
    for f in &forms {
        assert!(f.supports_partition(), "form {} basis supports overlap", f.index);
    }
    forms
}

/// All 48 forms, in a fixed order with form 1 first.
pub fn enumerate_forms() -> &'static [RepresentationForm] {
    static FORMS: OnceLock<Vec<RepresentationForm>> = OnceLock::new();
    FORMS.get_or_init(search_forms)
}

pub fn form(k: usize) -> Result<&'static RepresentationForm> {
    if k == 0 || k > 48 {
        return Err(Error::InvalidForm(k));
    }
    Ok(&enumerate_forms()[k - 1])
}

impl RepresentationForm {
    pub fn basis(&self) -> [SignedPerm; 4] {
        [IDENTITY4, self.h, self.j, self.k]
    }

    // every position of the 4×4 grid is covered by exactly one of E, H, J, K
    fn supports_partition(&self) -> bool {
        let mut count = [[0; 4]; 4];
        for b in self.basis() {
            for i in 0..4 {
                for j in 0..4 {
                    if b[i][j] != 0 {
                        count[i][j] += 1;
                    }
                }
            }
        }
        count.iter().flatten().all(|&c| c == 1)
    }

    pub fn q_map(&self, q: &Quaternion) -> RealMatrix {
        let mut m = RealMatrix::zeros(4, 4);
        for (c, b) in q.0.iter().zip(self.basis()) {
            for i in 0..4 {
                for j in 0..4 {
                    // supports partition the grid, so each entry is set once
                    match b[i][j] {
                        1 => m.data[i * 4 + j] = c.clone(),
                        -1 => m.data[i * 4 + j] = -c,
                        _ => {}
                    }
                }
            }
        }
        m
    }

    pub fn q_map_f64(&self, q: QuatF) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for (c, b) in q.0.iter().zip(self.basis()) {
            for i in 0..4 {
                for j in 0..4 {
                    m[i][j] += f64::from(b[i][j]) * c;
                }
            }
        }
        m
    }

    pub fn q_unmap(&self, m: &RealMatrix) -> Result<Quaternion> {
        if m.shape() != (4, 4) {
            return Err(Error::NotInRepresentation);
        }
        let basis = self.basis();
        let mut q = Quaternion::zero();
        for (t, b) in basis.iter().enumerate() {
            let col = (0..4).find(|&j| b[0][j] != 0).expect("signed permutation row");
            let v = m.get(0, col).clone();
            q.0[t] = if b[0][col] < 0 { -v } else { v };
        }
        if &self.q_map(&q) == m {
            Ok(q)
        } else {
            Err(Error::NotInRepresentation)
        }
    }

    pub fn p_map(&self, a: &QuaternionMatrix) -> RealMatrix {
        let (m, n) = a.shape();
        let mut out = RealMatrix::zeros(4 * m, 4 * n);
        for bi in 0..m {
            for bj in 0..n {
                let blk = self.q_map(a.get(bi, bj));
                for i in 0..4 {
                    for j in 0..4 {
                        out.data[(4 * bi + i) * 4 * n + 4 * bj + j] = blk.data[i * 4 + j].clone();
                    }
                }
            }
        }
        out
    }

    pub fn p_map_f64(&self, a: &QuatMatF) -> Mat {
        let mut out = Mat::zeros(4 * a.rows, 4 * a.cols);
        for bi in 0..a.rows {
            for bj in 0..a.cols {
                let blk = self.q_map_f64(a.get(bi, bj));
                for (i, row) in blk.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        out[(4 * bi + i, 4 * bj + j)] = *v;
                    }
                }
            }
        }
        out
    }
}

pub fn q_map(k: usize, q: &Quaternion) -> Result<RealMatrix> {
    Ok(form(k)?.q_map(q))
}

pub fn q_unmap(k: usize, m: &RealMatrix) -> Result<Quaternion> {
    form(k)?.q_unmap(m)
}

pub fn p_map(k: usize, a: &QuaternionMatrix) -> Result<RealMatrix> {
    Ok(form(k)?.p_map(a))
}

/// P₁ of a floating matrix.
pub fn p1_f64(a: &QuatMatF) -> Mat {
    enumerate_forms()[0].p_map_f64(a)
}

/// Exact rank of a representation image. Errors if the rank is not a multiple of 4.
pub fn p_rank(m: &RealMatrix) -> Result<usize> {
    let r = m.rank();
    if !r.is_multiple_of(4) {
        return Err(Error::RankNotMultipleOfFour(r));
    }
    Ok(r)
}

/// The matrix B with P_k̃(B) = P_k(A), when every block lies in form k̃'s span.
pub fn convert_form(a: &QuaternionMatrix, k: usize, k_tilde: usize) -> Result<QuaternionMatrix> {
    let from = form(k)?;
    let to = form(k_tilde)?;
    let data = a
        .entries()
        .iter()
        .map(|q| to.q_unmap(&from.q_map(q)))
        .collect::<Result<Vec<_>>>()?;
    QuaternionMatrix::new(a.rows(), a.cols(), data)
}

/// Swap of rows i and j (1-based) of the 4×4 identity.
fn elem_swap(i: usize, j: usize) -> RealMatrix {
    let mut m = RealMatrix::identity(4);
    m.swap_rows(i - 1, j - 1);
    m
}

/// Identity with entry (i,i) replaced by c.
fn elem_scale(i: usize, c: i64) -> RealMatrix {
    let mut m = RealMatrix::identity(4);
    m.data[(i - 1) * 4 + (i - 1)] = rat(c);
    m
}

/// The three sign-permutation conjugations that fix Q₁(q).
pub fn conjugation_identities() -> [(RealMatrix, RealMatrix); 3] {
    let build = |swaps: [(usize, usize); 2], scales: [usize; 2]| {
        // left = P(s2) P(s1) P(d2(-1)) P(d1(-1)); right is its reverse
        let s2 = elem_swap(swaps[1].0, swaps[1].1);
        let s1 = elem_swap(swaps[0].0, swaps[0].1);
        let d2 = elem_scale(scales[1], -1);
        let d1 = elem_scale(scales[0], -1);
        let left = s2.mul(&s1).mul(&d2).mul(&d1);
        let right = d1.mul(&d2).mul(&s1).mul(&s2);
        (left, right)
    };
    [
        build([(1, 2), (3, 4)], [1, 4]),
        build([(1, 3), (2, 4)], [3, 4]),
        build([(1, 4), (2, 3)], [2, 4]),
    ]
}

pub fn elementary_conjugation_check(q: &Quaternion) -> bool {
    let qm = enumerate_forms()[0].q_map(q);
    conjugation_identities().iter().all(|(l, r)| l.mul(&qm).mul(r) == qm)
}

// integer rows with every entry below 2^40 in magnitude
fn small_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    const LIMIT: i64 = 1 << 40;
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_i64().filter(|v| v.abs() < LIMIT)).collect())
        .collect()
}

/// Dense exact real matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RealMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_signed_perm(p: &SignedPerm) -> Self {
        RealMatrix { rows: 4, cols: 4, data: p.iter().flatten().map(|&x| rat(i64::from(x))).collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RealMatrix { rows, cols, data }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.shape(), o.shape());
        RealMatrix { data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(), ..*self }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimensions");
        // integer rows of self and integer columns of o, one reduction per entry
        let lhs = self.integer_rows();
        let row_den: Vec<BigInt> = (0..self.rows).map(|i| self.row_lcm(i)).collect();
        let t = o.transpose();
        let rhs = t.integer_rows();
        let col_den: Vec<BigInt> = (0..o.cols).map(|j| t.row_lcm(j)).collect();
        if let (Some(l), Some(r)) = (small_rows(&lhs), small_rows(&rhs)) {
            return Self::from_fn(self.rows, o.cols, |i, j| {
                let acc: i128 = l[i].iter().zip(&r[j]).map(|(&x, &y)| i128::from(x) * i128::from(y)).sum();
                Scalar::new(BigInt::from(acc), &row_den[i] * &col_den[j])
            });
        }
        Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = BigInt::zero();
            for (x, y) in lhs[i].iter().zip(&rhs[j]) {
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            Scalar::new(acc, &row_den[i] * &col_den[j])
        })
    }

    fn row_lcm(&self, i: usize) -> BigInt {
        self.data[i * self.cols..(i + 1) * self.cols].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn to_f64(&self) -> Mat {
        let mut m = Mat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = crate::quaternion::scalar_to_f64(self.get(i, j));
            }
        }
        m
    }

    // rows scaled to integers, then fraction-free elimination
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.integer_rows();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, p);
            for r in rank + 1..m {
                for c in col + 1..n {
                    let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                    a[r][c] = v / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Exact determinant (square only).
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let scale = (0..n).fold(Scalar::one(), |acc, i| {
            let row = &self.data[i * n..(i + 1) * n];
            acc * Scalar::from_integer(row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom())))
        });
        let mut a = self.integer_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else { return Scalar::zero() };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for r in k + 1..n {
                for c in k + 1..n {
                    let v = &a[k][k] * &a[r][c] - &a[r][k] * &a[k][c];
                    a[r][c] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = if n == 0 { BigInt::one() } else { a[n - 1][n - 1].clone() };
        Scalar::from_integer(d * sign) / scale
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn max_abs(&self) -> Scalar {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Scalar::zero)
    }
}
