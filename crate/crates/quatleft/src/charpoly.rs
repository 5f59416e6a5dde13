//! The symbolic pencil P₁(A − λI), its sixteen generalized minors and the
//! four-equation characteristic system.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mpoly::{CompiledPoly, MultiPoly4, PolyMatrix};
use crate::quaternion::{ratio, Quaternion, QuaternionMatrix, Scalar};
use crate::representation::{enumerate_forms, p_rank};

/// Row/column selector pairs (r, c) for C1..C16, 1-based within a block.
pub const MINOR_SELECTORS: [(usize, usize); 16] = [
    (1, 1),
    (2, 2),
    (3, 3),
    (4, 4),
    (1, 2),
    (2, 1),
    (3, 4),
    (4, 3),
    (1, 3),
    (2, 4),
    (3, 1),
    (4, 2),
    (1, 4),
    (2, 3),
    (3, 2),
    (4, 1),
];

/// Sign s_t such that s_t·C_t is constant within each group of four.
pub const RELATION_SIGNS: [i8; 16] = [1, 1, 1, 1, -1, 1, -1, 1, -1, 1, 1, -1, -1, -1, 1, 1];

/// Group representatives C1, C5, C9, C13 (0-based indices).
pub const REPRESENTATIVES: [usize; 4] = [0, 4, 8, 12];

#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    pub m: usize,
    pub matrix: PolyMatrix,
    pub source: QuaternionMatrix,
}

impl Pencil {
    /// Numeric P₁(A − λI).
    pub fn eval(&self, lambda: &[f64; 4]) -> crate::dense::Mat {
        self.matrix.eval(lambda)
    }

    pub fn eval_exact(&self, lambda: &Quaternion) -> crate::representation::RealMatrix {
        self.matrix.eval_exact(&lambda.0)
    }
}

pub fn build_pencil(a: &QuaternionMatrix) -> Result<Pencil> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let m = a.rows();
    let f1 = &enumerate_forms()[0];
    let basis = f1.basis();
    let mut p = PolyMatrix::new(4 * m, 4 * m, vec![MultiPoly4::zero(); 16 * m * m]);
    for bi in 0..m {
        for bj in 0..m {
            let blk = f1.q_map(a.get(bi, bj));
            for i in 0..4 {
                for j in 0..4 {
                    let mut e = MultiPoly4::constant(blk.get(i, j).clone());
                    if bi == bj {
                        // subtract λ0 E + λ1 H + λ2 J + λ3 K
                        for (v, b) in basis.iter().enumerate() {
                            if b[i][j] != 0 {
                                let coef = Scalar::from_integer((-i64::from(b[i][j])).into());
                                e = e.add(&MultiPoly4::var(v).scale(&coef));
                            }
                        }
                    }
                    p.set(4 * bi + i, 4 * bj + j, e);
                }
            }
        }
    }
    Ok(Pencil { m, matrix: p, source: a.clone() })
}

/// Placement of the (m−1)-order block B′: the block row and block column
/// deleted from A (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PivotBlock {
    pub deleted_row: usize,
    pub deleted_col: usize,
    /// Rank of P₁(B′) divided by 4.
    pub n: usize,
}

impl PivotBlock {
    pub fn is_full(&self, m: usize) -> bool {
        self.n + 1 == m
    }
}

fn placements(m: usize) -> Vec<(usize, usize)> {
    let mut out = vec![(m - 1, 0)];
    for i in 0..m {
        for j in 0..m {
            if (i, j) != (m - 1, 0) {
                out.push((i, j));
            }
        }
    }
    out
}

fn block_rank(a: &QuaternionMatrix, i0: usize, j0: usize) -> Result<usize> {
    let m = a.rows();
    let rows: Vec<usize> = (0..m).filter(|&i| i != i0).collect();
    let cols: Vec<usize> = (0..m).filter(|&j| j != j0).collect();
    let sub = a.select(&rows, &cols);
    Ok(p_rank(&enumerate_forms()[0].p_map(&sub))? / 4)
}

fn best_placement(ranks: &[((usize, usize), usize)]) -> PivotBlock {
    let best = ranks.iter().map(|r| r.1).max().unwrap_or(0);
    let ((i, j), n) = *ranks.iter().find(|r| r.1 == best).expect("nonempty placements");
    PivotBlock { deleted_row: i, deleted_col: j, n }
}

/// Pivot block for the pencil: ranks taken at two random rational λ samples
/// that must agree.
pub fn select_pivot_block(a: &QuaternionMatrix) -> Result<PivotBlock> {
    let m = a.rows();
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    if m < 2 {
        return Err(Error::Precondition("pivot selection needs m > 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b10c);
    let mut sample = || {
        let c: [Scalar; 4] = std::array::from_fn(|_| ratio(rng.gen_range(-997..=997), rng.gen_range(1..=89)));
        Quaternion(c)
    };
    let places = placements(m);
    let mut prev: Option<Vec<((usize, usize), usize)>> = None;
    for _ in 0..6 {
        let shifted = a.shift(&sample())?;
        let ranks = places
            .iter()
            .map(|&(i, j)| Ok(((i, j), block_rank(&shifted, i, j)?)))
            .collect::<Result<Vec<_>>>()?;
        if let Some(p) = &prev {
            if *p == ranks {
                return Ok(best_placement(&ranks));
            }
            // keep the elementwise maximum as the generic estimate
            let merged: Vec<_> = p.iter().zip(&ranks).map(|(x, y)| (x.0, x.1.max(y.1))).collect();
            prev = Some(merged);
        } else {
            prev = Some(ranks);
        }
    }
    Ok(best_placement(&prev.expect("sampled")))
}

/// Same search on the constant matrix A itself.
pub fn select_pivot_block_constant(a: &QuaternionMatrix) -> Result<PivotBlock> {
    let m = a.rows();
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    if m < 2 {
        return Err(Error::Precondition("pivot selection needs m > 1".into()));
    }
    let ranks = placements(m)
        .into_iter()
        .map(|(i, j)| Ok(((i, j), block_rank(a, i, j)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(best_placement(&ranks))
}

/// Row and column index lists of C_t (t = 1..16) for a pivot placement.
pub fn minor_indices(m: usize, pivot: &PivotBlock, t: usize) -> (Vec<usize>, Vec<usize>) {
    let (r, c) = MINOR_SELECTORS[t - 1];
    let mut rows: Vec<usize> = (0..4 * m).filter(|x| x / 4 != pivot.deleted_row).collect();
    rows.push(4 * pivot.deleted_row + r - 1);
    rows.sort_unstable();
    let mut cols: Vec<usize> = (0..4 * m).filter(|x| x / 4 != pivot.deleted_col).collect();
    cols.push(4 * pivot.deleted_col + c - 1);
    cols.sort_unstable();
    (rows, cols)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinorSet {
    pub minors: Vec<MultiPoly4>,
    pub pivot: PivotBlock,
    pub m: usize,
}

impl MinorSet {
    /// C_t, 1-based.
    pub fn c(&self, t: usize) -> &MultiPoly4 {
        &self.minors[t - 1]
    }

    /// 4n
    pub fn n_star(&self) -> usize {
        4 * self.pivot.n
    }
}

pub fn extract_minors(pencil: &Pencil, pivot: &PivotBlock) -> Result<MinorSet> {
    let m = pencil.m;
    let minors = (1..=16usize)
        .into_par_iter()
        .map(|t| {
            let (rows, cols) = minor_indices(m, pivot, t);
            crate::mpoly::poly_minor(&pencil.matrix, &rows, &cols)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MinorSet { minors, pivot: *pivot, m })
}

/// Checks C1=C2=C3=C4; −C5=C6=−C7=C8; −C9=C10=C11=−C12; −C13=−C14=C15=C16.
pub fn verify_minor_relations(set: &MinorSet) -> Result<()> {
    for g in 0..4 {
        let first = 4 * g;
        let base = set.minors[first].scale(&Scalar::from_integer(RELATION_SIGNS[first].into()));
        for t in first + 1..first + 4 {
            let other = set.minors[t].scale(&Scalar::from_integer(RELATION_SIGNS[t].into()));
            if other != base {
                return Err(Error::RelationViolation { left: first + 1, right: t + 1, difference: other.sub(&base) });
            }
        }
    }
    Ok(())
}

pub fn minor_relations_hold(set: &MinorSet) -> bool {
    verify_minor_relations(set).is_ok()
}

#[derive(Clone, Debug)]
pub struct CharSystem {
    pub pencil: Pencil,
    /// F1..F4, or all sixteen minors when no full-rank pivot block exists.
    pub equations: Vec<MultiPoly4>,
    pub minors: Option<MinorSet>,
    /// The single eigenvalue when m = 1.
    pub trivial: Option<Quaternion>,
    full_det: Option<MultiPoly4>,
}

impl CharSystem {
    pub fn m(&self) -> usize {
        self.pencil.m
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial.is_some()
    }

    pub fn full_det(&mut self) -> Result<&MultiPoly4> {
        if self.full_det.is_none() {
            self.full_det = Some(full_generalized_charpoly(&self.pencil)?);
        }
        Ok(self.full_det.as_ref().expect("just computed"))
    }

    pub fn compiled(&self) -> CompiledSystem {
        CompiledSystem::new(&self.equations)
    }

    pub fn max_degree(&self) -> u32 {
        self.equations.iter().map(MultiPoly4::total_degree).max().unwrap_or(0)
    }
}

pub fn build_char_system(a: &QuaternionMatrix) -> Result<CharSystem> {
    let pencil = build_pencil(a)?;
    if pencil.m == 1 {
        return Ok(CharSystem {
            trivial: Some(a.get(0, 0).clone()),
            pencil,
            equations: Vec::new(),
            minors: None,
            full_det: None,
        });
    }
    let pivot = select_pivot_block(a)?;
    let minors = extract_minors(&pencil, &pivot)?;
    let equations = if pivot.is_full(pencil.m) {
        verify_minor_relations(&minors)?;
        REPRESENTATIVES.iter().map(|&t| minors.minors[t].clone()).collect()
    } else {
        minors.minors.clone()
    };
    Ok(CharSystem { pencil, equations, minors: Some(minors), trivial: None, full_det: None })
}

pub fn full_generalized_charpoly(pencil: &Pencil) -> Result<MultiPoly4> {
    pencil.matrix.det()
}

/// Floating evaluation of a polynomial system and its Jacobian.
#[derive(Clone, Debug)]
pub struct CompiledSystem {
    funcs: Vec<CompiledPoly>,
    partials: Vec<[CompiledPoly; 4]>,
}

impl CompiledSystem {
    pub fn new(eqs: &[MultiPoly4]) -> Self {
        let funcs = eqs.iter().map(MultiPoly4::compile).collect();
        let partials = eqs.iter().map(|p| std::array::from_fn(|v| p.partial(v).compile())).collect();
        CompiledSystem { funcs, partials }
    }

    pub fn len(&self) -> usize {
        self.funcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.funcs.is_empty()
    }

    pub fn eval(&self, x: &[f64; 4]) -> Vec<f64> {
        self.funcs.iter().map(|f| f.eval(x)).collect()
    }

    /// Row-major len × 4 Jacobian.
    pub fn jacobian(&self, x: &[f64; 4]) -> crate::dense::Mat {
        let mut j = crate::dense::Mat::zeros(self.len(), 4);
        for (i, row) in self.partials.iter().enumerate() {
            for (v, p) in row.iter().enumerate() {
                j[(i, v)] = p.eval(x);
            }
        }
        j
    }
}
