//! Sparse polynomials in four variables over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::dense::Mat;
use crate::error::{Error, Result};
use crate::quaternion::{scalar_to_f64, Scalar};
use crate::representation::RealMatrix;

/// Exponent vector (e0, e1, e2, e3), ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2], self.0[3] + o.0[3]])
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    fn div(&self, o: &Monomial) -> Monomial {
        Monomial([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2], self.0[3] - o.0[3]])
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct MultiPoly4 {
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly4 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(c, Monomial::default())
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::term(Scalar::one(), Monomial(e))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly4 { terms }
    }

    /// Linear polynomial c0 + c1 x0 + ... (affine form).
    pub fn affine(constant: Scalar, coeffs: [Scalar; 4]) -> Self {
        let mut p = Self::constant(constant);
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term(Monomial::unit(i), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly4 { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        MultiPoly4 { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Exact quotient, or None when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let tm = m.div(&lm);
            let tc = c / &lc;
            for (dm, dc) in &d.terms {
                rem.add_term(dm.mul(&tm), -(dc * &tc));
            }
            q.add_term(tm, tc);
        }
        Some(q)
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut nm = *m;
            nm.0[var] -= 1;
            out.add_term(nm, c * Scalar::from_integer(e.into()));
        }
        out
    }

    pub fn eval_exact(&self, x: &[Scalar; 4]) -> Scalar {
        let mut powers: [Vec<Scalar>; 4] = Default::default();
        for (v, p) in powers.iter_mut().enumerate() {
            p.push(Scalar::one());
            let d = self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0);
            for _ in 0..d {
                let next = p.last().unwrap() * &x[v];
                p.push(next);
            }
        }
        self.terms.iter().fold(Scalar::zero(), |acc, (m, c)| {
            acc + c * &powers[0][m.0[0] as usize] * &powers[1][m.0[1] as usize] * &powers[2][m.0[2] as usize]
                * &powers[3][m.0[3] as usize]
        })
    }

    pub fn eval(&self, x: &[f64; 4]) -> f64 {
        self.compile().eval(x)
    }

    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly::new(self)
    }

    /// Leading coefficient is positive.
    pub fn normalize_sign(&self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| scalar_to_f64(c).abs()).fold(0.0, f64::max)
    }

    /// Substitute x_var = value.
    pub fn substitute(&self, var: usize, value: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut nm = *m;
            nm.0[var] = 0;
            let mut f = c.clone();
            for _ in 0..m.0[var] {
                f *= value;
            }
            out.add_term(nm, f);
        }
        out
    }
}

impl Monomial {
    pub fn unit(i: usize) -> Monomial {
        let mut e = [0; 4];
        e[i] = 1;
        Monomial(e)
    }
}

impl fmt::Display for MultiPoly4 {
    /// Terms in descending graded-lex order, variables l0..l3.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("l{v}")),
                    _ => factors.push(format!("l{v}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Flat floating-point evaluator.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    coeffs: Vec<f64>,
    exps: Vec<[u32; 4]>,
    max_exp: [u32; 4],
}

impl CompiledPoly {
    fn new(p: &MultiPoly4) -> Self {
        let mut max_exp = [0; 4];
        let mut coeffs = Vec::with_capacity(p.len());
        let mut exps = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            for v in 0..4 {
                max_exp[v] = max_exp[v].max(m.0[v]);
            }
            coeffs.push(scalar_to_f64(c));
            exps.push(m.0);
        }
        CompiledPoly { coeffs, exps, max_exp }
    }

    pub fn eval(&self, x: &[f64; 4]) -> f64 {
        let mut powers: [Vec<f64>; 4] = Default::default();
        for v in 0..4 {
            let mut acc = 1.0;
            powers[v].push(1.0);
            for _ in 0..self.max_exp[v] {
                acc *= x[v];
                powers[v].push(acc);
            }
        }
        self.coeffs
            .iter()
            .zip(&self.exps)
            .map(|(c, e)| {
                c * powers[0][e[0] as usize] * powers[1][e[1] as usize] * powers[2][e[2] as usize]
                    * powers[3][e[3] as usize]
            })
            .sum()
    }
}

/// Dense matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<MultiPoly4>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<MultiPoly4>) -> Self {
        assert_eq!(data.len(), rows * cols);
        PolyMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![MultiPoly4::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = MultiPoly4::one();
        }
        PolyMatrix { rows: n, cols: n, data }
    }

    pub fn from_real(m: &RealMatrix) -> Self {
        let (r, c) = m.shape();
        PolyMatrix { rows: r, cols: c, data: m.entries().iter().map(|x| MultiPoly4::constant(x.clone())).collect() }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly4 {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly4) {
        self.data[i * self.cols + j] = p;
    }

    pub fn max_entry_degree(&self) -> u32 {
        self.data.iter().map(MultiPoly4::total_degree).max().unwrap_or(0)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if let Some(&i) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::IndexOutOfRange(format!("row {i} of {}", self.rows)));
        }
        if let Some(&j) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexOutOfRange(format!("column {j} of {}", self.cols)));
        }
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Ok(PolyMatrix { rows: rows.len(), cols: cols.len(), data })
    }

    pub fn eval(&self, x: &[f64; 4]) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|p| p.eval(x)).collect() }
    }

    pub fn eval_exact(&self, x: &[Scalar; 4]) -> RealMatrix {
        RealMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval_exact(x))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut data = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                data.push((0..self.cols).fold(MultiPoly4::zero(), |acc, k| acc.add(&self.get(i, k).mul(o.get(k, j)))));
            }
        }
        PolyMatrix { rows: self.rows, cols: o.cols, data }
    }

    pub fn det(&self) -> Result<MultiPoly4> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        Ok(match self.rows {
            0..=4 => self.det_cofactor(),
            5..=20 => self.det_subset_expansion(),
            _ => self.det_bareiss(),
        })
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> MultiPoly4 {
        assert_eq!(self.rows, self.cols);
        let idx: Vec<usize> = (0..self.rows).collect();
        cofactor(self, &idx, &idx)
    }

    /// Fraction-free Bareiss elimination over the polynomial ring.
    pub fn det_bareiss(&self) -> MultiPoly4 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return MultiPoly4::one();
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = MultiPoly4::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                // prefer the sparsest usable pivot
                let Some(p) = (k + 1..n).filter(|&r| !a.get(r, k).is_zero()).min_by_key(|&r| a.get(r, k).len())
                else {
                    return MultiPoly4::zero();
                };
                a.swap_rows(k, p);
                negate = !negate;
            }
            let pivot = a.get(k, k).clone();
            for r in k + 1..n {
                let ark = a.get(r, k).clone();
                for c in k + 1..n {
                    let num = pivot.mul(a.get(r, c)).sub(&ark.mul(a.get(k, c)));
                    let v = if num.is_zero() {
                        num
                    } else {
                        num.div_exact(&prev).expect("Bareiss division is exact")
                    };
                    a.set(r, c, v);
                }
                a.set(r, k, MultiPoly4::zero());
            }
            prev = pivot;
        }
        let d = a.get(n - 1, n - 1).clone();
        if negate {
            d.neg()
        } else {
            d
        }
    }
}

impl PolyMatrix {
    /// Laplace expansion over column prefixes, memoized on row subsets.
    /// Cost is driven by the number of nonzero entries; suited to sparse
    /// matrices with low-degree entries such as the pencil.
    pub fn det_subset_expansion(&self) -> MultiPoly4 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        assert!(n < 32, "subset expansion limited to n < 32");
        if n == 0 {
            return MultiPoly4::one();
        }
        let mut layer: BTreeMap<u32, MultiPoly4> = BTreeMap::new();
        layer.insert(0, MultiPoly4::one());
        for k in 0..n {
            let mut next: BTreeMap<u32, MultiPoly4> = BTreeMap::new();
            for (&set, d) in &layer {
                for r in 0..n {
                    if set >> r & 1 == 1 {
                        continue;
                    }
                    let e = self.get(r, k);
                    if e.is_zero() {
                        continue;
                    }
                    let grown = set | 1 << r;
                    let pos = (grown & ((1u32 << r) - 1)).count_ones() as usize;
                    let t = d.mul(e);
                    let slot = next.entry(grown).or_default();
                    *slot = if (pos + k).is_multiple_of(2) { slot.add(&t) } else { slot.sub(&t) };
                }
            }
            next.retain(|_, p| !p.is_zero());
            if next.is_empty() {
                return MultiPoly4::zero();
            }
            layer = next;
        }
        layer.remove(&((1u32 << n) - 1)).unwrap_or_default()
    }
}

fn cofactor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> MultiPoly4 {
    match rows.len() {
        0 => MultiPoly4::one(),
        1 => m.get(rows[0], cols[0]).clone(),
        _ => {
            let r0 = rows[0];
            let rest = &rows[1..];
            let mut acc = MultiPoly4::zero();
            for (jj, &c) in cols.iter().enumerate() {
                let e = m.get(r0, c);
                if e.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let t = e.mul(&cofactor(m, rest, &sub_cols));
                acc = if jj % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

pub fn poly_minor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Result<MultiPoly4> {
    if rows.len() != cols.len() {
        return Err(Error::IndexOutOfRange(format!("{} rows vs {} columns", rows.len(), cols.len())));
    }
    m.submatrix(rows, cols)?.det()
}

pub fn poly_det(m: &PolyMatrix) -> Result<MultiPoly4> {
    m.det()
}
