mod common;

use boolalg::fixtures;
use boolalg::linalg::add_scaled;
use boolalg::monoid::{devadze_generators, ElementIndex};
use boolalg::radical::IntVec;
use boolalg::wedderburn::{identity_mat, left_ideal_dim, mat_mul, matrix_units, GeneratorChoice, Representation};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{reference, scaled};

#[test]
fn dimensions_and_degrees() {
    let dec = reference().decomposition().unwrap();
    assert_eq!(dec.dims(), [1, 1, 1, 4, 9, 9, 9, 9, 36, 36, 49, 81, 81, 144]);
    assert_eq!(dec.degrees(), [1, 1, 1, 2, 3, 3, 3, 3, 6, 6, 7, 9, 9, 12]);
    assert_eq!(dec.dims().iter().sum::<usize>(), 470);
}

#[test]
fn identities_are_the_central_idempotents() {
    let p = reference();
    let dec = p.decomposition().unwrap();
    for c in &dec.components {
        assert!(p.idempotent_vectors.contains(&c.identity));
        assert_eq!(c.basis.len(), c.dim());
    }
}

#[test]
fn generator_search_results() {
    let p = reference();
    let s = p.semisimple().unwrap();
    for c in &p.decomposition().unwrap().components {
        let want = if c.d == 2 { GeneratorChoice::Pair(0, 1) } else { GeneratorChoice::Single(0) };
        assert_eq!(c.choice, want, "d = {}", c.d);
        assert_eq!(left_ideal_dim(&s.constants, &c.generator).unwrap(), c.d);
        assert!(c.contains(&s.constants, &c.generator));
        if c.d == 7 {
            let mut x = s.class_of(ElementIndex(1)).unwrap();
            add_scaled(&mut x, &-BigRational::one(), &s.class_of(ElementIndex(512)).unwrap());
            assert_eq!(c.generator, x);
        }
    }
}

#[test]
fn published_left_ideal_generators() {
    let p = reference();
    let s = p.semisimple().unwrap();
    let dec = p.decomposition().unwrap();
    for g in fixtures::left_ideal_generators().unwrap() {
        let x = fixtures::to_quotient(s, &g.terms).unwrap();
        assert_eq!(left_ideal_dim(&s.constants, &x).unwrap(), g.d, "{}", g.id);
        assert!(dec.components.iter().any(|c| c.d == g.d && c.contains(&s.constants, &x)), "{}", g.id);
    }
}

#[test]
fn ideals_annihilate_each_other() {
    let p = reference();
    let sc = &p.semisimple().unwrap().constants;
    let comps = &p.decomposition().unwrap().components;
    for (i, a) in comps.iter().enumerate() {
        let (_, ea) = scaled(&a.identity);
        for (j, b) in comps.iter().enumerate() {
            if i == j {
                continue;
            }
            for v in b.basis.iter().take(3) {
                let (_, v) = scaled(v);
                assert!(sc.multiply_int(&ea, &v).unwrap().is_empty());
                assert!(sc.multiply_int(&v, &ea).unwrap().is_empty());
            }
        }
    }
}

#[test]
fn matrix_units_in_every_ideal() {
    let p = reference();
    let s = p.semisimple().unwrap();
    for c in &p.decomposition().unwrap().components {
        let units = matrix_units(s, c).unwrap();
        assert!(units.verify(&s.constants).unwrap(), "d = {}", c.d);
        assert_eq!(units.trace_sum(), c.identity);
    }
}

/// `e·[p] = Σ R(p)_ij E_ij`: the matrices are the ideal's own coordinates.
#[test]
fn representation_matches_the_ideal_action() {
    let p = reference();
    let s = p.semisimple().unwrap();
    let gens = devadze_generators(&p.table).unwrap();
    for c in &p.decomposition().unwrap().components {
        let units = matrix_units(s, c).unwrap();
        for &g in gens.iter().chain(&[ElementIndex(1), ElementIndex(95), ElementIndex(512)]) {
            let image = s.mul(&c.identity, &s.class_of(g).unwrap());
            assert_eq!(c.rep.to_ideal(&units, g), image, "d = {}, element {}", c.d, g.get());
        }
    }
}

#[test]
fn identity_and_zero() {
    for c in &reference().decomposition().unwrap().components {
        let r = &c.rep;
        assert_eq!(r.matrix(ElementIndex(274)), &identity_mat(c.d));
        let z = r.matrix(ElementIndex(1));
        assert_eq!(mat_mul(z, z).as_ref(), Some(z));
    }
}

#[test]
fn homomorphism_exhaustive_for_small_degrees() {
    let t = &reference().table;
    let all: Vec<(ElementIndex, ElementIndex)> = t.indices().flat_map(|a| t.indices().map(move |b| (a, b))).collect();
    for c in reference().decomposition().unwrap().components.iter().filter(|c| c.d <= 3) {
        assert_eq!(c.rep.homomorphism_failure(t, all.iter().copied()), None, "d = {}", c.d);
    }
}

#[test]
fn homomorphism_on_random_pairs() {
    let t = &reference().table;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pairs: Vec<(ElementIndex, ElementIndex)> =
        (0..100_000).map(|_| (ElementIndex(rng.gen_range(1..=512)), ElementIndex(rng.gen_range(1..=512)))).collect();
    for c in &reference().decomposition().unwrap().components {
        assert_eq!(c.rep.homomorphism_failure(t, pairs.iter().copied()), None, "d = {}", c.d);
    }
}

#[test]
fn faithfulness_and_image_sizes() {
    let comps = &reference().decomposition().unwrap().components;
    let faithful: Vec<usize> = comps.iter().filter(|c| c.rep.is_faithful()).map(|c| c.d).collect();
    assert_eq!(faithful, [7]);
    let mut big: Vec<(usize, usize)> = comps.iter().filter(|c| c.d >= 9).map(|c| (c.d, c.rep.image_size())).collect();
    big.sort();
    assert_eq!(big, [(9, 166), (9, 247), (12, 463)]);
}

/// The published generator images extend to representations with the
/// same characters as ours, and the same image sizes.
#[test]
fn published_generator_images() {
    let p = reference();
    let t = &p.table;
    let gens = devadze_generators(t).unwrap();
    let comps = &p.decomposition().unwrap().components;
    for r in fixtures::generator_images().unwrap() {
        let rep = Representation::from_generators(t, &gens, &r.images).unwrap();
        assert_eq!(rep.matrix(t.identity()), &identity_mat(r.d));
        let chi: Vec<i64> = t.indices().map(|k| rep.trace(k)).collect();
        let ours = comps.iter().find(|c| t.indices().map(|k| c.rep.trace(k)).collect::<Vec<_>>() == chi).unwrap();
        assert_eq!(ours.d, r.d, "{}", r.id);
        assert_eq!(ours.rep.image_size(), rep.image_size(), "{}", r.id);
        assert_eq!(ours.traces(&gens), r.traces(), "{}", r.id);
    }
}

/// `[g]·l_j = Σ_i R(g)_ij·l_i` on the integer lattice basis.
#[test]
fn matrices_act_on_the_lattice_basis() {
    let p = reference();
    let sc = &p.semisimple().unwrap().constants;
    let s = p.semisimple().unwrap();
    let gens = devadze_generators(&p.table).unwrap();
    let sparse = |v: &[i64]| -> IntVec { v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect() };
    for c in &p.decomposition().unwrap().components {
        assert_eq!(c.left_basis.len(), c.d);
        let basis: Vec<IntVec> = c.left_basis.iter().map(|l| sparse(l)).collect();
        for &g in &gens {
            let (_, gv) = scaled(&s.class_of(g).unwrap());
            let m = c.rep.matrix(g);
            for j in 0..c.d {
                let mut want = IntVec::new();
                for (i, l) in basis.iter().enumerate() {
                    for (&k, &x) in l {
                        *want.entry(k).or_insert(0) += m[i][j] * x;
                    }
                }
                want.retain(|_, x| *x != 0);
                assert_eq!(sc.multiply_int(&gv, &basis[j]).unwrap(), want, "d = {}, generator {}", c.d, g.get());
            }
        }
    }
}
