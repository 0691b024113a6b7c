use boolalg::linalg::{
    hermite_form, hermite_form_direct, hnf_basis, integer_nullspace, is_hnf, is_lll_reduced, lll_reduce, modular_rcf, rational_solve,
    same_lattice, IntMatrix, LllDelta, RatMatrix, Solution,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r).prop_map(|rows| IntMatrix::from_i64(&rows)))
}

/// Rows with many repeats and zero columns, so that rank deficiency and
/// non-pivot gaps are common.
fn degenerate_matrix() -> impl Strategy<Value = IntMatrix> {
    (small_matrix(4, 6), prop::collection::vec((0usize..4, -3i64..=3, 0usize..4, -3i64..=3), 0..4)).prop_map(|(base, combos)| {
        let mut rows = base.row_vecs();
        for (a, x, b, y) in combos {
            let (a, b) = (a % base.rows(), b % base.rows());
            let row: Vec<BigInt> = base.row(a).iter().zip(base.row(b)).map(|(p, q)| p * BigInt::from(x) + q * BigInt::from(y)).collect();
            rows.push(row);
        }
        IntMatrix::from_rows(rows, base.cols()).unwrap()
    })
}

fn check_hnf(m: &IntMatrix, h: &IntMatrix, u: &IntMatrix) -> Result<(), TestCaseError> {
    prop_assert!(is_hnf(h), "not in Hermite form: {:?}", h);
    prop_assert_eq!(u.mul(m).unwrap().row_vecs(), h.row_vecs());
    prop_assert!(u.determinant().unwrap().abs().is_one(), "transform not unimodular");
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_transform_is_unimodular(m in degenerate_matrix()) {
        let r = hermite_form(&m);
        check_hnf(&m, &r.h, &r.u)?;
        let d = hermite_form_direct(&m);
        check_hnf(&m, &d.h, &d.u)?;
        prop_assert_eq!(r.h.row_vecs(), d.h.row_vecs());
        prop_assert_eq!(r.rank, d.rank);
    }

    #[test]
    fn hnf_is_invariant_under_row_permutation(m in degenerate_matrix(), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..m.rows()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = m.select_rows(&order);
        prop_assert_eq!(hnf_basis(&m).row_vecs(), hnf_basis(&p).row_vecs());
    }

    #[test]
    fn kernel_rows_of_transform_span_the_nullspace(m in degenerate_matrix()) {
        let r = hermite_form(&m);
        let k = r.kernel_rows();
        let z = k.mul(&m).unwrap();
        prop_assert!((0..z.rows()).all(|i| z.is_zero_row(i)));
        let n = integer_nullspace(&m, LllDelta::DEFAULT).unwrap();
        prop_assert_eq!(n.rows(), k.rows());
        if n.rows() > 0 {
            prop_assert!(same_lattice(&n, &k));
        }
    }

    #[test]
    fn lll_preserves_lattice(m in small_matrix(5, 6)) {
        let basis = hnf_basis(&m);
        prop_assume!(basis.rows() > 0);
        for delta in [LllDelta::DEFAULT, LllDelta::STRONG] {
            let r = lll_reduce(&basis, delta).unwrap();
            prop_assert!(is_lll_reduced(&r, delta));
            prop_assert!(same_lattice(&r, &basis));
        }
    }

    #[test]
    fn nullspace_is_normalized(m in degenerate_matrix()) {
        let n = integer_nullspace(&m, LllDelta::STRONG).unwrap();
        let mut last = None;
        for i in 0..n.rows() {
            let lead = n.row(i).iter().position(|x| !x.is_zero()).unwrap();
            prop_assert!(n.get(i, lead).is_positive());
            prop_assert!(last.is_none_or(|l| l <= lead));
            last = Some(lead);
        }
    }

    #[test]
    fn modular_rank_never_exceeds_rational_rank(m in degenerate_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 101, 2_147_483_647])) {
        let rcf = modular_rcf(&m, p).unwrap();
        prop_assert!(rcf.rank <= m.to_rational().rank());
    }

    #[test]
    fn rational_solve_reproduces_rhs(m in small_matrix(4, 4), b in prop::collection::vec(-5i64..=5, 4)) {
        let a = m.to_rational();
        let rhs = RatMatrix::from_i64(&b[..a.rows()].iter().map(|&x| vec![x]).collect::<Vec<_>>());
        match rational_solve(&a, &rhs).unwrap() {
            Solution::Unique(x) => prop_assert_eq!(a.mul(&x).unwrap().row_vecs(), rhs.row_vecs()),
            Solution::Inconsistent { .. } => prop_assert!(a.rank() < a.rows()),
        }
    }
}

#[test]
fn hand_reduced_rank_one_example() {
    let m = IntMatrix::from_i64(&[vec![2, 4], vec![1, 2]]);
    let r = hermite_form(&m);
    assert_eq!(r.rank, 1);
    let k = r.kernel_rows();
    assert_eq!(k.rows(), 1);
    assert_eq!(k.get(0, 1), &(k.get(0, 0) * BigInt::from(-2)));
}

#[test]
fn classic_lll_example_keeps_lattice() {
    let b = IntMatrix::from_i64(&[vec![1, 0], vec![4, 1]]);
    let r = lll_reduce(&b, LllDelta::DEFAULT).unwrap();
    assert_eq!(hnf_basis(&b).row_vecs(), hnf_basis(&r).row_vecs());
}
