//! Brute-force values for 2×2 Boolean matrices, computed without the
//! library, compared against `data/n2_oracle.txt` and against the pipeline.
//! Set `BOOLALG_BLESS=1` to rewrite the data file.

use std::collections::{BTreeMap, BTreeSet};

use boolalg::fixtures::{n2_oracle, N2Oracle};
use boolalg::pipeline::{Pipeline, PipelineConfig, Stage};

const N: usize = 2;
const ORDER: usize = 16;

type M = [[bool; N]; N];

fn mat(bits: usize) -> M {
    let mut m = [[false; N]; N];
    for i in 0..N {
        for j in 0..N {
            m[i][j] = bits >> (N * N - 1 - (N * i + j)) & 1 == 1;
        }
    }
    m
}

fn bits(m: &M) -> usize {
    let mut b = 0;
    for row in m {
        for &x in row {
            b = b << 1 | x as usize;
        }
    }
    b
}

fn mul(a: usize, b: usize) -> usize {
    let (x, y) = (mat(a), mat(b));
    let mut m = [[false; N]; N];
    for i in 0..N {
        for j in 0..N {
            m[i][j] = (0..N).any(|k| x[i][k] && y[k][j]);
        }
    }
    bits(&m)
}

fn is_perm(a: usize) -> bool {
    let m = mat(a);
    m.iter().all(|r| r.iter().filter(|&&x| x).count() == 1) && (0..N).all(|j| m.iter().filter(|r| r[j]).count() == 1)
}

/// Rank over ℚ by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            for j in c + 1..cols {
                rows[i][j] = (rows[r][c] * rows[i][j] - rows[i][c] * rows[r][j]) / prev;
            }
            rows[i][c] = 0;
        }
        prev = rows[r][c];
        r += 1;
    }
    r
}

fn brute_force() -> N2Oracle {
    let all: Vec<usize> = (0..ORDER).collect();
    let table: Vec<Vec<u32>> = all.iter().map(|&a| all.iter().map(|&b| mul(a, b) as u32 + 1).collect()).collect();
    let regular = |x: usize| all.iter().any(|&y| mul(mul(x, y), x) == x);
    let nonregular: Vec<u32> = all.iter().filter(|&&x| !regular(x)).map(|&x| x as u32 + 1).collect();
    let two_sided = |x: usize| -> BTreeSet<usize> { all.iter().flat_map(|&a| all.iter().map(move |&b| mul(mul(a, x), b))).collect() };
    let right = |x: usize| -> BTreeSet<usize> { all.iter().map(|&a| mul(x, a)).collect() };
    let left = |x: usize| -> BTreeSet<usize> { all.iter().map(|&a| mul(a, x)).collect() };
    let prime = |x: usize| !is_perm(x) && !all.iter().any(|&y| all.iter().any(|&z| !is_perm(y) && !is_perm(z) && mul(y, z) == x));

    let mut classes: BTreeMap<BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
    for &x in &all {
        classes.entry(two_sided(x)).or_default().push(x);
    }
    let mut dclasses = Vec::new();
    let mut degrees = Vec::new();
    for members in classes.values() {
        let rep = *members.iter().min().unwrap();
        let reg = regular(rep);
        dclasses.push((rep as u32 + 1, members.len(), reg, members.iter().all(|&x| prime(x))));
        if !reg {
            continue;
        }
        let r_classes: BTreeSet<BTreeSet<usize>> = members.iter().map(|&x| right(x)).collect();
        let e = *members.iter().find(|&&x| mul(x, x) == x).unwrap();
        let h = members.iter().filter(|&&x| right(x) == right(e) && left(x) == left(e)).count();
        let group_degrees: &[usize] = match h {
            1 => &[1],
            2 => &[1, 1],
            _ => panic!("maximal subgroup of order {h} is outside this oracle"),
        };
        degrees.extend(group_degrees.iter().map(|g| g * r_classes.len()));
    }
    dclasses.sort();
    degrees.sort();

    // Radical of a finite-dimensional algebra in characteristic 0: the
    // kernel of the trace form Tr(L_ab).
    let trace_form: Vec<Vec<i128>> =
        all.iter().map(|&a| all.iter().map(|&b| all.iter().filter(|&&y| mul(mul(a, b), y) == y).count() as i128).collect()).collect();
    let radical_dim = ORDER - rank(trace_form);
    assert_eq!(radical_dim, 0, "the center computation below assumes a semisimple algebra");
    // Σ_k z_k (k·g − g·k) = 0 read on every element m.
    let mut eqs = Vec::new();
    for &g in &all {
        for &m in &all {
            eqs.push(all.iter().map(|&k| (mul(k, g) == m) as i128 - (mul(g, k) == m) as i128).collect());
        }
    }
    let center_dim = ORDER - rank(eqs);
    N2Oracle {
        order: ORDER,
        identity: bits(&[[true, false], [false, true]]) as u32 + 1,
        table,
        nonregular,
        dclasses,
        radical_dim,
        quotient_dim: ORDER - radical_dim,
        center_dim,
        ideal_dims: degrees.iter().map(|d| d * d).collect(),
        degrees,
    }
}

#[test]
fn committed_oracle_matches_brute_force() {
    let fresh = brute_force();
    if std::env::var_os("BOOLALG_BLESS").is_some() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/n2_oracle.txt");
        std::fs::write(path, fresh.to_text()).unwrap();
    }
    assert_eq!(n2_oracle().unwrap(), fresh);
}

#[test]
fn oracle_is_self_consistent() {
    let o = brute_force();
    assert_eq!(o.degrees.len(), o.center_dim);
    assert_eq!(o.degrees.iter().map(|d| d * d).sum::<usize>(), o.quotient_dim);
}

#[test]
fn pipeline_matches_oracle() {
    let o = n2_oracle().unwrap();
    let p = Pipeline::run(PipelineConfig { n: 2, ..PipelineConfig::default() }, Stage::Wedderburn).unwrap();
    let t = &p.table;
    assert_eq!(t.order(), o.order);
    assert_eq!(t.identity().get(), o.identity);
    for (a, row) in t.indices().zip(&o.table) {
        let ours: Vec<u32> = t.indices().map(|b| t.mul(a, b).get()).collect();
        assert_eq!(&ours, row, "table row {}", a.get());
    }
    let nonregular: Vec<u32> = t.nonregular_set().unwrap().iter().map(|k| k.get()).collect();
    assert_eq!(nonregular, o.nonregular);
    let mut classes: Vec<(u32, usize, bool, bool)> =
        t.d_classes().unwrap().iter().map(|c| (c.representative.get(), c.size(), c.regular, c.prime)).collect();
    classes.sort();
    assert_eq!(classes, o.dclasses);
    assert_eq!(p.radical().unwrap().nullity, o.radical_dim);
    assert_eq!(p.semisimple().unwrap().dim(), o.quotient_dim);
    assert_eq!(p.center().unwrap().basis.dim(), o.center_dim);
    assert_eq!(p.idempotents().unwrap().len(), o.center_dim);
    let dec = p.decomposition().unwrap();
    let mut dims = dec.dims();
    dims.sort();
    assert_eq!(dims, o.ideal_dims);
    let mut degrees = dec.degrees();
    degrees.sort();
    assert_eq!(degrees, o.degrees);
}
