use boolalg::fixtures;
use boolalg::monoid::{devadze_generators, BoolMat, ElementIndex, MonoidTable};
use proptest::prelude::*;

fn table() -> &'static MonoidTable {
    static T: std::sync::OnceLock<MonoidTable> = std::sync::OnceLock::new();
    T.get_or_init(|| MonoidTable::build(3).unwrap())
}

#[test]
fn nonregular_elements_match_the_list() {
    let mut want = fixtures::nonregular().unwrap();
    want.sort();
    assert_eq!(table().nonregular_set().unwrap(), want);
    assert_eq!(table().regular_set().unwrap().len(), 470);
}

#[test]
fn dclasses_match_the_table() {
    let classes = table().d_classes().unwrap();
    let rows = fixtures::dclasses().unwrap();
    assert_eq!(classes.len(), rows.len());
    for row in rows {
        let c = classes.iter().find(|c| c.representative == row.minimal).unwrap();
        assert_eq!((c.size(), c.regular, c.prime), (row.size, row.regular, row.prime), "{}", row.id);
    }
    assert_eq!(classes.iter().map(|c| c.size()).sum::<usize>(), 512);
}

#[test]
fn five_generators_suffice() {
    let t = table();
    let gens = devadze_generators(t).unwrap();
    assert_eq!(t.closure(&gens).len(), 512);
    for k in 0..5 {
        let mut fewer = gens.to_vec();
        fewer.remove(k);
        assert!(t.closure(&fewer).len() < 512);
    }
}

#[test]
fn regular_iff_inner_inverse_exists() {
    let t = table();
    for a in t.indices() {
        let brute = t.indices().any(|x| t.mul(t.mul(a, x), a) == a);
        assert_eq!(t.is_regular(a), brute, "element {}", a.get());
    }
}

proptest! {
    #[test]
    fn associative(a in 1u32..=512, b in 1u32..=512, c in 1u32..=512) {
        let t = table();
        let (a, b, c) = (ElementIndex(a), ElementIndex(b), ElementIndex(c));
        prop_assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
    }

    #[test]
    fn table_agrees_with_matrix_product(a in 1u32..=512, b in 1u32..=512) {
        let t = table();
        let (a, b) = (ElementIndex(a), ElementIndex(b));
        let m = t.element(a).unwrap().mul(&t.element(b).unwrap()).unwrap();
        prop_assert_eq!(m.index(), t.mul(a, b));
    }

    #[test]
    fn permutations_are_units(bits in 0u16..512) {
        let t = table();
        let m = BoolMat::from_bits(3, bits).unwrap();
        let unit = t.indices().any(|x| t.mul(m.index(), x) == t.identity());
        prop_assert_eq!(unit, m.is_permutation());
    }
}
