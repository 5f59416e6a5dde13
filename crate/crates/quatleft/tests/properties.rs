use nalgebra::{Complex, DMatrix};
use num::Zero;
use proptest::prelude::*;
use quatleft::charpoly::build_char_system;
use quatleft::quaternion::{ratio, QuatF, Quaternion, QuaternionMatrix};
use quatleft::representation::{form, p_rank};
use quatleft::solver::verify_left_eigenvalue;
use quatleft::spectra::{adjoint_eigenvalues, annulus, complex_adjoint};

fn arb_quat(bound: i64) -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4((-bound..=bound, 1i64..=3)).prop_map(|c| Quaternion(c.map(|(n, d)| ratio(n, d))))
}

fn arb_nonzero(bound: i64) -> impl Strategy<Value = Quaternion> {
    arb_quat(bound).prop_filter("nonzero", |q| !q.is_zero())
}

fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QuaternionMatrix> {
    prop::collection::vec(arb_quat(4), rows * cols).prop_map(move |d| QuaternionMatrix::new(rows, cols, d).unwrap())
}

fn arb_shape_matrix() -> impl Strategy<Value = QuaternionMatrix> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| arb_matrix(r, c))
}

/// 2×2 matrix with planted eigenpair A (1, u)ᵀ = λ (1, u)ᵀ.
fn arb_planted() -> impl Strategy<Value = (QuaternionMatrix, Quaternion)> {
    (arb_quat(3), arb_nonzero(3), arb_quat(3), arb_quat(3)).prop_map(|(lambda, u, b, d)| {
        let a00 = &lambda - &(&b * &u);
        let a10 = &(&lambda * &u) - &(&d * &u);
        (QuaternionMatrix::from_rows(vec![vec![a00, b], vec![a10, d]]).unwrap(), lambda)
    })
}

fn block_diag(a: &QuaternionMatrix, b: &QuaternionMatrix) -> QuaternionMatrix {
    let (n, m) = (a.rows(), b.rows());
    let mut out = QuaternionMatrix::zeros(n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..m {
        for j in 0..m {
            out.set(n + i, n + j, b.get(i, j).clone());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rank_is_a_multiple_of_four(a in arb_shape_matrix(), k in 1usize..=48) {
        let r = p_rank(&form(k).unwrap().p_map(&a)).unwrap();
        prop_assert_eq!(r % 4, 0);
        prop_assert!(r <= 4 * a.rows().min(a.cols()));
    }

    #[test]
    fn rank_is_form_independent(a in arb_shape_matrix(), k in 2usize..=48) {
        let r1 = p_rank(&form(1).unwrap().p_map(&a)).unwrap();
        prop_assert_eq!(p_rank(&form(k).unwrap().p_map(&a)).unwrap(), r1);
    }

    #[test]
    fn submatrix_rank_never_exceeds_full(a in arb_matrix(3, 3), rows in prop::sample::subsequence(vec![0, 1, 2], 1..=3), cols in prop::sample::subsequence(vec![0, 1, 2], 1..=3)) {
        let f = form(1).unwrap();
        let sub = p_rank(&f.p_map(&a.select(&rows, &cols))).unwrap();
        prop_assert_eq!(sub % 4, 0);
        prop_assert!(sub <= p_rank(&f.p_map(&a)).unwrap());
    }

    #[test]
    fn block_diagonal_representation_is_blockwise(a in arb_matrix(1, 1), b in arb_matrix(2, 2), k in 1usize..=48) {
        let f = form(k).unwrap();
        let whole = f.p_map(&block_diag(&a, &b));
        let (pa, pb) = (f.p_map(&a), f.p_map(&b));
        for i in 0..12 {
            for j in 0..12 {
                let expected = match (i < 4, j < 4) {
                    (true, true) => pa.get(i, j).clone(),
                    (false, false) => pb.get(i - 4, j - 4).clone(),
                    _ => Zero::zero(),
                };
                prop_assert_eq!(whole.get(i, j), &expected);
            }
        }
        let ra = p_rank(&pa).unwrap();
        let rb = p_rank(&pb).unwrap();
        prop_assert_eq!(p_rank(&whole).unwrap(), ra + rb);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn determinant_vanishes_iff_system_vanishes((a, lambda) in arb_planted(), points in prop::collection::vec(arb_quat(5), 10)) {
        let mut sys = build_char_system(&a).unwrap();
        let eqs = sys.equations.clone();
        let det = sys.full_det().unwrap().clone();
        prop_assert!(det.eval_exact(&lambda.0).is_zero());
        prop_assert!(eqs.iter().all(|f| f.eval_exact(&lambda.0).is_zero()));
        for x in points {
            let det_zero = det.eval_exact(&x.0).is_zero();
            let all_zero = eqs.iter().all(|f| f.eval_exact(&x.0).is_zero());
            prop_assert_eq!(det_zero, all_zero);
        }
    }

    #[test]
    fn scaling_maps_eigenvalues((a, lambda) in arb_planted(), p in arb_nonzero(4), q in arb_nonzero(4)) {
        prop_assert!(verify_left_eigenvalue(&a, lambda.to_f64(), 1e-8).unwrap().accepted);
        let scaled = a.scalar_left_mul(&p).scalar_right_mul(&q);
        let mapped = &(&p * &lambda) * &q;
        prop_assert!(verify_left_eigenvalue(&scaled, mapped.to_f64(), 1e-8).unwrap().accepted);
    }

    #[test]
    fn planted_eigenvalue_lies_in_annulus((a, lambda) in arb_planted()) {
        let ann = annulus(&a).unwrap();
        prop_assert!(ann.contains(lambda.to_f64().norm(), 1e-8));
    }

    #[test]
    fn adjoint_eigenvalues_match_nalgebra(a in arb_matrix(2, 2)) {
        let af = a.to_f64();
        let adj = complex_adjoint(&af);
        let n = 4;
        let oracle = DMatrix::from_fn(n, n, |i, j| Complex::new(adj[(i, j)].re, adj[(i, j)].im));
        let want: Vec<Complex<f64>> = oracle.eigenvalues().expect("oracle eigenvalues").iter().copied().collect();
        let got = adjoint_eigenvalues(&af).unwrap();
        let scale = 1.0 + want.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for z in &got {
            prop_assert!(want.iter().any(|w| (w - z).norm() < 1e-8 * scale), "{z} not in {want:?}");
        }
        prop_assert_eq!(got.len(), want.len());
    }
}

#[test]
fn scalar_quaternion_is_left_eigenvalue_of_scalar_matrix() {
    let q = Quaternion::from_ints([1, -2, 0, 3]);
    let a = QuaternionMatrix::scalar(2, &q);
    assert!(verify_left_eigenvalue(&a, q.to_f64(), 1e-10).unwrap().accepted);
    assert!(!verify_left_eigenvalue(&a, QuatF([1.0, 2.0, 0.0, 3.0]), 1e-10).unwrap().accepted);
}
