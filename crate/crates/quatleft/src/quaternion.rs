//! Exact quaternion scalars and dense quaternion matrices.
//!
//! Coefficients are arbitrary-precision rationals. A floating view
//! ([`QuatF`], [`QuatMatF`]) is produced on demand for the numeric kernels.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn rat(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn scalar_to_f64(s: &Scalar) -> f64 {
    // to_f64 on BigRational handles huge numerators/denominators
    s.to_f64().unwrap_or_else(|| {
        if s.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// q0 + q1 ℏ + q2 ȷ + q3 κ with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion(pub [Scalar; 4]);

impl Quaternion {
    pub fn new(q0: Scalar, q1: Scalar, q2: Scalar, q3: Scalar) -> Self {
        Quaternion([q0, q1, q2, q3])
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Quaternion(c.map(rat))
    }

    pub fn real(r: Scalar) -> Self {
        Quaternion([r, Scalar::zero(), Scalar::zero(), Scalar::zero()])
    }

    pub fn zero() -> Self {
        Self::from_ints([0, 0, 0, 0])
    }

    pub fn one() -> Self {
        Self::from_ints([1, 0, 0, 0])
    }

    pub fn hbar() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    pub fn jmath() -> Self {
        Self::from_ints([0, 0, 1, 0])
    }

    pub fn kappa() -> Self {
        Self::from_ints([0, 0, 0, 1])
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.0;
        Quaternion([a.clone(), -b, -c, -d])
    }

    pub fn norm2(&self) -> Scalar {
        self.0.iter().fold(Scalar::zero(), |acc, c| acc + c * c)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm2();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Quaternion(self.conj().0.map(|c| c / &n)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Quaternion(self.0.clone().map(|c| c * s))
    }

    /// Similarity test: equal real parts and equal norms.
    pub fn similar(&self, other: &Self) -> bool {
        self.0[0] == other.0[0] && self.norm2() == other.norm2()
    }

    pub fn to_f64(&self) -> QuatF {
        QuatF([
            scalar_to_f64(&self.0[0]),
            scalar_to_f64(&self.0[1]),
            scalar_to_f64(&self.0[2]),
            scalar_to_f64(&self.0[3]),
        ])
    }

    /// Exact rational value of a float quaternion (binary expansion).
    pub fn from_f64(q: &QuatF) -> Option<Self> {
        let c: Option<Vec<Scalar>> = q.0.iter().map(|&x| BigRational::from_float(x)).collect();
        let c = c?;
        Some(Quaternion([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
    }
}

fn hamilton<T>(a: &[T; 4], b: &[T; 4]) -> [T; 4]
where
    T: Clone + Add<Output = T> + Sub<Output = T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let [a0, a1, a2, a3] = a;
    let [b0, b1, b2, b3] = b;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

impl<'a> Add<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion([
            &self.0[0] + &rhs.0[0],
            &self.0[1] + &rhs.0[1],
            &self.0[2] + &rhs.0[2],
            &self.0[3] + &rhs.0[3],
        ])
    }
}

impl<'a> Sub<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        Quaternion([
            &self.0[0] - &rhs.0[0],
            &self.0[1] - &rhs.0[1],
            &self.0[2] - &rhs.0[2],
            &self.0[3] - &rhs.0[3],
        ])
    }
}

impl<'a> Mul<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        Quaternion(hamilton(&self.0, &rhs.0))
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion(self.0.clone().map(|c| -c))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Quaternion> for Quaternion {
            type Output = Quaternion;
            fn $f(self, rhs: Quaternion) -> Quaternion {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let units = ["", "ℏ", "ȷ", "κ"];
        let mut wrote = false;
        for (c, u) in self.0.iter().zip(units) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if wrote {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            if u.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{u}")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Floating quaternion used by the numeric kernels.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct QuatF(pub [f64; 4]);

impl QuatF {
    pub const ZERO: QuatF = QuatF([0.0; 4]);
    pub const ONE: QuatF = QuatF([1.0, 0.0, 0.0, 0.0]);

    pub fn conj(self) -> Self {
        let [a, b, c, d] = self.0;
        QuatF([a, -b, -c, -d])
    }

    pub fn norm2(self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        QuatF(self.0.map(|x| x * s))
    }

    pub fn inv(self) -> Self {
        self.conj().scale(1.0 / self.norm2())
    }

    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// "a + bℏ + cȷ + dκ" with 6 significant digits.
    pub fn render(self) -> String {
        let f = |x: f64| {
            let x = if x == 0.0 { 0.0 } else { x };
            format_sig(x, 6)
        };
        let [a, b, c, d] = self.0;
        let term = |x: f64, u: &str| {
            if x < 0.0 {
                format!(" - {}{u}", f(-x))
            } else {
                format!(" + {}{u}", f(x))
            }
        };
        format!("{}{}{}{}", f(a), term(b, "ℏ"), term(c, "ȷ"), term(d, "κ"))
    }
}

/// Shortest-ish rendering with `sig` significant digits.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=9).contains(&exp) {
        return format!("{:.*e}", sig - 1, x);
    }
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl Add for QuatF {
    type Output = QuatF;
    fn add(self, o: QuatF) -> QuatF {
        QuatF([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2], self.0[3] + o.0[3]])
    }
}

impl Sub for QuatF {
    type Output = QuatF;
    fn sub(self, o: QuatF) -> QuatF {
        QuatF([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2], self.0[3] - o.0[3]])
    }
}

impl Neg for QuatF {
    type Output = QuatF;
    fn neg(self) -> QuatF {
        self.scale(-1.0)
    }
}

impl Mul for QuatF {
    type Output = QuatF;
    fn mul(self, o: QuatF) -> QuatF {
        QuatF(hamilton(&self.0, &o.0))
    }
}

/// Dense row-major quaternion matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

pub type QuaternionVector = QuaternionMatrix;

impl QuaternionMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "construct",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(QuaternionMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                op: "from_rows",
                left: (m, n),
                right: (m, 0),
            });
        }
        Self::new(m, n, rows.into_iter().flatten().collect())
    }

    /// Rows of integer coefficient arrays.
    pub fn from_int_rows<R: AsRef<[[i64; 4]]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.as_ref().iter().map(|&c| Quaternion::from_ints(c)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuaternionMatrix { rows, cols, data: vec![Quaternion::zero(); rows * cols] }
    }

    pub fn identity(m: usize) -> Self {
        Self::scalar(m, &Quaternion::one())
    }

    /// q·I
    pub fn scalar(m: usize, q: &Quaternion) -> Self {
        let mut a = Self::zeros(m, m);
        for i in 0..m {
            a.data[i * m + i] = q.clone();
        }
        a
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Quaternion {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        self.data[i * self.cols + j] = q;
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    fn check_same(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { op, left: self.shape(), right: other.shape() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(QuaternionMatrix { data, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(QuaternionMatrix { data, ..*self })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { op: "mul", left: self.shape(), right: other.shape() });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Quaternion::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.data[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    /// q·A
    pub fn scalar_left_mul(&self, q: &Quaternion) -> Self {
        let data = self.data.iter().map(|a| q * a).collect();
        QuaternionMatrix { data, ..*self }
    }

    /// A·q
    pub fn scalar_right_mul(&self, q: &Quaternion) -> Self {
        let data = self.data.iter().map(|a| a * q).collect();
        QuaternionMatrix { data, ..*self }
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    /// A − λI
    pub fn shift(&self, lambda: &Quaternion) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        self.sub(&Self::scalar(self.rows, lambda))
    }

    /// Submatrix keeping the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        QuaternionMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn to_f64(&self) -> QuatMatF {
        QuatMatF { rows: self.rows, cols: self.cols, data: self.data.iter().map(Quaternion::to_f64).collect() }
    }
}

/// Floating quaternion matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QuatMatF {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<QuatF>,
}

impl QuatMatF {
    pub fn get(&self, i: usize, j: usize) -> QuatF {
        self.data[i * self.cols + j]
    }

    pub fn mul_vec(&self, v: &[QuatF]) -> Vec<QuatF> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(QuatF::ZERO, |acc, j| acc + self.get(i, j) * v[j]))
            .collect()
    }

    pub fn shift(&self, lambda: QuatF) -> QuatMatF {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out.data[i * self.cols + i] = out.data[i * self.cols + i] - lambda;
        }
        out
    }
}

pub fn vec_norm(v: &[QuatF]) -> f64 {
    v.iter().map(|q| q.norm2()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(c: [i64; 4]) -> Quaternion {
        Quaternion::from_ints(c)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(q([1, 0, 0, 1]) + q([1, 0, 0, -1]), q([2, 0, 0, 0]));
        let x = q([3, -1, 4, 1]);
        assert_eq!(Quaternion::zero() + x.clone(), x);
        assert_eq!(q([1, 1, 0, 0]) + q([2, 0, 1, 0]), q([3, 1, 1, 0]));
    }

    #[test]
    fn unit_products() {
        let (h, j, k) = (Quaternion::hbar(), Quaternion::jmath(), Quaternion::kappa());
        assert_eq!(&h * &j, k);
        assert_eq!(&j * &h, -&k);
        let minus_one = q([-1, 0, 0, 0]);
        assert_eq!(&h * &h, minus_one);
        assert_eq!(&j * &j, minus_one);
        assert_eq!(&k * &k, minus_one);
        assert_eq!(&(&h * &j) * &k, minus_one);
        assert_eq!(q([1, 1, 0, 0]) * q([1, 0, 1, 0]), q([1, 1, 1, 1]));
    }

    #[test]
    fn conj_norm_inverse() {
        assert_eq!(q([1, 1, 0, 0]).conj(), q([1, -1, 0, 0]));
        assert_eq!(q([1, 1, 1, 1]).norm2(), rat(4));
        let inv = q([0, 0, 0, 2]).inv().unwrap();
        assert_eq!(inv, Quaternion::new(rat(0), rat(0), rat(0), ratio(-1, 2)));
        assert_eq!(Quaternion::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn similarity_examples() {
        assert!(Quaternion::hbar().similar(&Quaternion::kappa()));
        let a = q([1, 1, 0, 0]);
        let b = q([1, -1, 0, 0]);
        assert!(a.similar(&b));
        // σ = ȷ realizes it
        let s = Quaternion::jmath();
        assert_eq!(&(&s.inv().unwrap() * &a) * &s, b);
        assert!(!q([1, 0, 0, 0]).similar(&q([2, 0, 0, 0])));
    }

    #[test]
    fn left_and_right_scalar_products_differ() {
        let a = QuaternionMatrix::from_rows(vec![vec![Quaternion::jmath()]]).unwrap();
        let l = a.scalar_left_mul(&Quaternion::hbar());
        let r = a.scalar_right_mul(&Quaternion::hbar());
        assert_eq!(l.get(0, 0), &Quaternion::kappa());
        assert_eq!(r.get(0, 0), &-Quaternion::kappa());
    }

    #[test]
    fn example_eigenvector_product() {
        let one = Quaternion::one();
        let k = Quaternion::kappa();
        let a = QuaternionMatrix::from_rows(vec![vec![one.clone(), k.clone()], vec![k.clone(), one.clone()]]).unwrap();
        let v = QuaternionMatrix::from_rows(vec![vec![one.clone()], vec![one.clone()]]).unwrap();
        let av = a.mul(&v).unwrap();
        let lv = v.scalar_left_mul(&(&one + &k));
        assert_eq!(av, lv);
        assert_eq!(QuaternionMatrix::identity(2).mul(&a).unwrap(), a);
    }

    #[test]
    fn dimension_errors() {
        let a = QuaternionMatrix::zeros(2, 3);
        let b = QuaternionMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.sub(&QuaternionMatrix::zeros(3, 2)).is_err());
        assert!(QuaternionMatrix::new(0, 0, vec![]).is_err());
        assert!(matches!(a.shift(&Quaternion::one()), Err(Error::NotSquare(2, 3))));
    }

    #[test]
    fn display() {
        assert_eq!(q([1, 0, 0, -1]).to_string(), "1 - κ");
        assert_eq!(Quaternion::new(ratio(1, 2), rat(2), rat(0), rat(0)).to_string(), "1/2 + 2ℏ");
        assert_eq!(Quaternion::zero().to_string(), "0");
        assert_eq!(QuatF([1.0, 0.0, 0.0, -1.0]).render(), "1 + 0ℏ + 0ȷ - 1κ");
        assert_eq!(QuatF([0.742934135878, 0.0, 0.0, 1.0 / 3.0]).render(), "0.742934 + 0ℏ + 0ȷ + 0.333333κ");
    }

    pub(crate) fn arb_quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4((-20i64..=20, 1i64..=6))
            .prop_map(|c| Quaternion(c.map(|(n, d)| ratio(n, d))))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in arb_quat(), b in arb_quat()) {
            prop_assert_eq!((&a * &b).norm2(), a.norm2() * b.norm2());
        }

        #[test]
        fn conj_reverses_products(a in arb_quat(), b in arb_quat()) {
            prop_assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
        }

        #[test]
        fn multiplication_associates(a in arb_quat(), b in arb_quat(), c in arb_quat()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn inverse_is_two_sided(a in arb_quat()) {
            prop_assume!(!a.is_zero());
            let inv = a.inv().unwrap();
            prop_assert_eq!(&inv * &a, Quaternion::one());
            prop_assert_eq!(&a * &inv, Quaternion::one());
        }

        #[test]
        fn conj_norm_relation(a in arb_quat()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!(&a.conj() * &a, Quaternion::real(a.norm2()));
        }

        #[test]
        fn similarity_is_equivalence(a in arb_quat(), s in arb_quat(), t in arb_quat()) {
            prop_assume!(!s.is_zero() && !t.is_zero());
            let b = &(&s.inv().unwrap() * &a) * &s;
            let c = &(&t.inv().unwrap() * &b) * &t;
            prop_assert!(a.similar(&a));
            prop_assert!(a.similar(&b) && b.similar(&a));
            prop_assert!(b.similar(&c) && a.similar(&c));
        }
    }
}
