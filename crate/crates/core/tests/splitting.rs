mod common;

use boolalg::center::is_central;
use boolalg::checks::{fixture_center, idempotents_sum_to_one, minimal_polynomial_in, third_splitting_dims};
use boolalg::fixtures;
use boolalg::pipeline::{Pipeline, PipelineConfig, Stage};
use boolalg::splitting::{primitive_idempotents, CentralIdeal, Poly};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use common::{reference, scaled};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn fourteen_idempotents_in_the_center() {
    let p = reference();
    let set = p.idempotents().unwrap();
    let table = &p.center().unwrap().table;
    assert_eq!(set.len(), 14);
    let one = CentralIdeal::whole(table).unwrap().identity;
    assert!(set.verify(table, &one));
    assert!(idempotents_sum_to_one(p).unwrap());
}

/// `e_i·e_j = δ_ij·e_i` checked in the 470-dimensional quotient itself.
#[test]
fn orthogonal_in_the_quotient() {
    let p = reference();
    let sc = &p.semisimple().unwrap().constants;
    let ints: Vec<(i64, _)> = p.idempotent_vectors.iter().map(scaled).collect();
    for (i, (di, ei)) in ints.iter().enumerate() {
        assert!(is_central(sc, ei));
        for (j, (dj, ej)) in ints.iter().enumerate() {
            let prod = sc.multiply_int(ei, ej).unwrap();
            if i == j {
                let want: std::collections::BTreeMap<usize, i64> = ei.iter().map(|(&k, &c)| (k, c * di)).collect();
                assert_eq!(prod, want, "e{} is not idempotent", i + 1);
            } else {
                assert!(prod.is_empty(), "e{}·e{} ≠ 0 (scales {di}, {dj})", i + 1, j + 1);
            }
        }
    }
}

#[test]
fn idempotents_are_the_published_ones() {
    let p = reference();
    let ours = &p.idempotents().unwrap().idempotents;
    let published = fixtures::idempotents().unwrap();
    assert_eq!(published.len(), ours.len());
    for row in published {
        assert!(ours.contains(&row.coords), "{} not computed", row.id);
    }
}

#[test]
fn published_minimal_polynomials() {
    let (_, table) = fixture_center(reference()).unwrap();
    let a = minimal_polynomial_in(&table, "A", None).unwrap();
    assert_eq!(a, Poly::from_roots(&[q(0), q(1)]));
    assert_eq!(a.factored(), "t(t - 1)");
    let an = minimal_polynomial_in(&table, "A-N", Some("A-B")).unwrap();
    assert_eq!(an, Poly::from_roots(&[q(-1), q(5)]));
    assert_eq!(an.to_string(), "t^2 - 4t - 5");
    assert_eq!(third_splitting_dims(&table).unwrap(), (2, 10));
}

#[test]
fn every_split_uses_distinct_rational_roots() {
    let set = reference().idempotents().unwrap();
    // A binary tree with 14 leaves has 13 internal nodes.
    assert_eq!(set.steps.len(), 13);
    for st in &set.steps {
        let (roots, rest) = st.minpoly.rational_roots();
        assert_eq!(rest.degree(), 0);
        assert!(roots.windows(2).all(|w| w[0] < w[1]));
        assert!(roots.len() >= 2);
        assert_eq!(st.dims.0 + st.dims.1, st.ideal_dim);
    }
    assert_eq!(set.steps[0].ideal_dim, 14);
}

#[test]
fn n2_has_five_idempotents() {
    let p = Pipeline::run(PipelineConfig { n: 2, ..PipelineConfig::default() }, Stage::Idempotents).unwrap();
    let table = &p.center().unwrap().table;
    let set = primitive_idempotents(table).unwrap();
    assert_eq!(set.len(), 5);
    assert!(set.verify(table, &CentralIdeal::whole(table).unwrap().identity));
}

fn distinct_roots() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::btree_set((-20i64..=20, 1i64..=4), 1..6).prop_map(|s| {
        let mut v: Vec<BigRational> = s.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect();
        v.sort();
        v.dedup();
        v
    })
}

proptest! {
    #[test]
    fn roots_are_recovered(roots in distinct_roots()) {
        let p = Poly::from_roots(&roots);
        prop_assert_eq!(p.degree(), roots.len());
        let (found, rest) = p.rational_roots();
        prop_assert_eq!(found, roots.clone());
        prop_assert_eq!(rest.degree(), 0);
        for r in &roots {
            prop_assert!(p.eval(r).is_zero());
        }
    }

    #[test]
    fn deflation_inverts_multiplication(roots in distinct_roots()) {
        let p = Poly::from_roots(&roots);
        let r = roots.last().unwrap();
        prop_assert_eq!(p.deflate(r), Poly::from_roots(&roots[..roots.len() - 1]));
    }
}
