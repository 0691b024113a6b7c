mod common;

use boolalg::center::{center_basis, commutator_rank_mod_p, is_central, to_rat};
use boolalg::checks::fixture_center;
use boolalg::linalg::{BasisExpander, LllDelta};
use boolalg::radical::IntVec;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use common::reference;

#[test]
fn commutator_rank_and_dimension() {
    let c = reference().center().unwrap();
    assert_eq!(c.basis.commutator.modulus, 101);
    assert_eq!(c.basis.commutator.rank, 456);
    assert_eq!(c.basis.dim(), 14);
    assert_eq!(c.basis.names.join(""), "ABCDEFGHIJKLMN");
}

#[test]
fn rank_is_the_same_for_another_prime() {
    let sc = &reference().semisimple().unwrap().constants;
    let r = commutator_rank_mod_p(sc, 2_147_483_647).unwrap();
    assert_eq!((r.rank, r.nullity), (456, 14));
}

#[test]
fn every_basis_vector_is_central() {
    let p = reference();
    let sc = &p.semisimple().unwrap().constants;
    for v in &p.center().unwrap().basis.vectors {
        assert!(is_central(sc, v));
    }
    let s = p.semisimple().unwrap();
    let one: IntVec = [(s.identity, 1)].into_iter().collect();
    assert!(is_central(sc, &one));
    // A rank-one idempotent does not commute with everything.
    let e: IntVec = [(s.basis.position(boolalg::monoid::ElementIndex(257)).unwrap(), 1)].into_iter().collect();
    assert!(!is_central(sc, &e));
}

#[test]
fn reference_basis_is_the_published_one() {
    let p = reference();
    let (published, table) = fixture_center(p).unwrap();
    let c = p.center().unwrap();
    assert_eq!(c.basis.vectors, published);
    assert_eq!(c.table, table);
}

#[test]
fn basis_is_sorted_by_length() {
    let lens = reference().center().unwrap().basis.squared_lengths();
    assert!(lens.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(lens[0], 1);
}

#[test]
fn default_reduction_spans_the_same_center() {
    let p = reference();
    let sc = &p.semisimple().unwrap().constants;
    let weak = center_basis(sc, LllDelta::DEFAULT, 101).unwrap();
    let strong = BasisExpander::new(&p.center().unwrap().basis.rational()).unwrap();
    assert_eq!(weak.dim(), 14);
    for v in &weak.vectors {
        assert!(is_central(sc, v));
        assert!(strong.expand(&to_rat(v)).is_some());
    }
}

#[test]
fn table_is_commutative_with_unit() {
    let c = &reference().center().unwrap().table;
    assert!(c.is_commutative());
    let s = reference().semisimple().unwrap();
    let one = s.one();
    let expander = BasisExpander::new(&reference().center().unwrap().basis.rational()).unwrap();
    let u = expander.expand(&one).unwrap();
    for a in 0..14 {
        let mut ea = vec![BigRational::zero(); 14];
        ea[a] = BigRational::from_integer(1.into());
        assert_eq!(c.multiply(&u, &ea), ea);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn table_is_associative(a in 0usize..14, b in 0usize..14, c in 0usize..14) {
        let t = &reference().center().unwrap().table;
        let e = |i: usize| {
            let mut v = vec![BigRational::zero(); 14];
            v[i] = BigRational::from_integer(1.into());
            v
        };
        let (x, y, z) = (e(a), e(b), e(c));
        prop_assert_eq!(t.multiply(&t.multiply(&x, &y), &z), t.multiply(&x, &t.multiply(&y, &z)));
    }

    /// Integer combinations of the basis stay central.
    #[test]
    fn combinations_are_central(coeffs in prop::collection::vec(-2i64..=2, 14)) {
        let p = reference();
        let sc = &p.semisimple().unwrap().constants;
        let mut z = IntVec::new();
        for (v, &c) in p.center().unwrap().basis.vectors.iter().zip(&coeffs) {
            for (&k, &x) in v {
                *z.entry(k).or_insert(0) += c * x;
            }
        }
        z.retain(|_, x| *x != 0);
        prop_assert!(is_central(sc, &z));
    }
}
