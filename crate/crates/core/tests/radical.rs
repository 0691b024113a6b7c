mod common;

use boolalg::fixtures;
use boolalg::linalg::{hermite_form, is_hnf, is_unimodular, same_lattice, IntMatrix, LllDelta};
use boolalg::monoid::{ElementIndex, MonoidTable};
use boolalg::radical::{
    annihilated_by_delta, build_delta, canonical_basis, check_two_sided_ideal, expected_nullity, multiply, nilpotency_index, radical_basis,
    verify_structural_form, IntVec,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use common::reference;

#[test]
fn rank_and_nullity() {
    let r = reference().radical().unwrap();
    assert_eq!(r.delta_rank, 470);
    assert_eq!(r.nullity, 42);
    assert_eq!(expected_nullity(3), Some(42));
}

#[test]
fn delta_is_symmetric_with_small_entries() {
    let t = &reference().table;
    let d = build_delta(t);
    assert!(d.is_symmetric());
    // Δ(p, q) counts fixed points of p·q: at most 512, at least 1 (zero).
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            let x = d.get(i, j);
            assert!(*x >= BigInt::from(1) && *x <= BigInt::from(512));
        }
    }
    assert_eq!(d.get(273, 273), &BigInt::from(512));
}

#[test]
fn basis_has_the_structural_form() {
    let p = reference();
    let r = p.radical().unwrap();
    let report = verify_structural_form(&r.basis, &p.table).unwrap();
    assert!(report.all_rows_match());
    assert!(report.leaders_are_nonregular_set);
    assert!(report.same_lattice_as_flip_rule);
    assert_eq!(r.basis, canonical_basis(&p.table).unwrap());
    assert!(annihilated_by_delta(&r.basis, &build_delta(&p.table)));
}

#[test]
fn basis_matches_the_published_rows() {
    let r = reference().radical().unwrap();
    let rows = fixtures::radical_rows().unwrap();
    assert_eq!(rows.len(), r.basis.len());
    for want in rows {
        let got: Vec<(u32, i64)> =
            r.basis.rows.iter().find(|row| row.leading.get() == want[0].0).unwrap().terms.iter().map(|&(k, c)| (k.get(), c)).collect();
        assert_eq!(got, want);
    }
}

#[test]
fn ideal_of_square_zero() {
    let p = reference();
    let b = &p.radical().unwrap().basis;
    check_two_sided_ideal(b, &p.table).unwrap();
    assert_eq!(nilpotency_index(b, &p.table).unwrap(), 2);
}

#[test]
fn reduction_parameter_does_not_change_the_lattice() {
    let t = &reference().table;
    let weak = radical_basis(t, LllDelta::DEFAULT).unwrap();
    let strong = &reference().radical().unwrap().basis;
    assert!(same_lattice(&weak.basis.to_matrix(512), &strong.to_matrix(512)));
}

#[test]
fn hermite_form_of_delta() {
    let t = &reference().table;
    let d = build_delta(t);
    let res = hermite_form(&d);
    assert_eq!(res.rank, 470);
    assert!(is_hnf(&res.h));
    assert!(is_unimodular(&res.u));
    assert_eq!(res.u.mul(&d).unwrap(), res.h);
    let kernel = res.kernel_rows();
    assert_eq!(kernel.rows(), 42);
    let prod = kernel.mul(&d).unwrap();
    assert!((0..prod.rows()).all(|i| prod.is_zero_row(i)));
    let flip = reference().radical().unwrap().basis.to_matrix(512);
    assert!(same_lattice(&kernel, &flip));
}

#[test]
fn two_by_two_is_semisimple() {
    let t = MonoidTable::build(2).unwrap();
    let r = radical_basis(&t, LllDelta::DEFAULT).unwrap();
    assert_eq!(r.nullity, 0);
    assert_eq!(r.delta_rank, 16);
    assert_eq!(expected_nullity(2), Some(0));
}

fn delta() -> &'static IntMatrix {
    static D: std::sync::OnceLock<IntMatrix> = std::sync::OnceLock::new();
    D.get_or_init(|| build_delta(&reference().table))
}

fn vector(row: &[(ElementIndex, i64)], scale: i64) -> IntVec {
    row.iter().map(|&(k, c)| (k.offset(), c * scale)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn radical_times_anything_stays_radical(
        coeffs in prop::collection::vec(-3i64..=3, 42),
        k in 1u32..=512,
        left in any::<bool>(),
    ) {
        let p = reference();
        let b = &p.radical().unwrap().basis;
        let mut x = IntVec::new();
        for (row, &c) in b.rows.iter().zip(&coeffs) {
            for (pos, v) in vector(&row.terms, c) {
                *x.entry(pos).or_insert(0) += v;
            }
        }
        x.retain(|_, v| *v != 0);
        let g: IntVec = [(ElementIndex(k).offset(), 1)].into_iter().collect();
        let y = if left { multiply(&p.table, &g, &x) } else { multiply(&p.table, &x, &g) };
        let dense: Vec<BigInt> = (0..512).map(|i| BigInt::from(*y.get(&i).unwrap_or(&0))).collect();
        let m = IntMatrix::from_rows(vec![dense], 512).unwrap();
        // Δ·y = 0 characterises the radical.
        let prod = m.mul(delta()).unwrap();
        prop_assert!(prod.row(0).iter().all(Zero::is_zero));
    }
}
