//! Comparison of a full `n = 3` run against the bundled reference data.
//! Every check is exact and is named after the fixture record it reads.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::center::{center_multiplication, CenterTable};
use crate::error::{Error, Result};
use crate::fixtures::{self, to_quotient, to_quotient_int};
use crate::linalg::span::{add_scaled, BasisExpander, SparseRat};
use crate::monoid::{devadze_generators, ElementIndex};
use crate::pipeline::Pipeline;
use crate::radical::IntVec;
use crate::splitting::{minimal_polynomial, split_with_root, CentralIdeal, Poly};
use crate::wedderburn::{left_ideal_dim, Representation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

fn check(id: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { id: id.into(), passed, detail: detail.into() }
}

/// The published center basis over quotient positions, with its table.
pub fn fixture_center(p: &Pipeline) -> Result<(Vec<IntVec>, CenterTable)> {
    let s = p.semisimple()?;
    let names = fixtures::center_names();
    let vectors = fixtures::center_basis()?.iter().map(|e| to_quotient_int(s, &e.id, &e.scaled())).collect::<Result<Vec<_>>>()?;
    let table = center_multiplication(&s.constants, &vectors, &names)?;
    Ok((vectors, table))
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn coords(table: &CenterTable, text: &str) -> Result<Vec<BigRational>> {
    crate::notation::parse_combination(text, &table.names)
}

/// Minimal polynomial of `x` in the ideal generated by `generator`, both
/// given as combinations of the published center basis.
pub fn minimal_polynomial_in(table: &CenterTable, x: &str, generator: Option<&str>) -> Result<Poly> {
    let ideal = match generator {
        None => CentralIdeal::whole(table)?,
        Some(g) => CentralIdeal::from_span(table, &crate::splitting::ideal_generated(table, &coords(table, g)?))?,
    };
    minimal_polynomial(table, &coords(table, x)?, &ideal.identity)
}

/// Reruns the first three published splittings and returns the dimensions
/// of the two pieces of the third.
pub fn third_splitting_dims(table: &CenterTable) -> Result<(usize, usize)> {
    let whole = CentralIdeal::whole(table)?;
    let first = split_with_root(table, &whole, &coords(table, "A")?, &q(0))?;
    let x2 = coords(table, "A-N")?;
    // Of the two pieces, continue with the 12-dimensional one.
    let second = [q(-1), q(5)]
        .iter()
        .map(|r| split_with_root(table, &first.right, &x2, r))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flat_map(|s| [s.left, s.right])
        .find(|i| i.dim() == 12)
        .ok_or_else(|| Error::Structure("no 12-dimensional piece after the second splitting".into()))?;
    let half = BigRational::new(5.into(), 2.into());
    let mut x3 = coords(table, "A-N")?;
    x3[12] -= half;
    let third = split_with_root(table, &second, &x3, &q(-1))?;
    Ok((third.left.dim(), third.right.dim()))
}

fn scaled_sum(vectors: &[IntVec], coeffs: &[BigRational]) -> SparseRat {
    let mut out = SparseRat::new();
    for (c, v) in coeffs.iter().zip(vectors) {
        if !c.is_zero() {
            add_scaled(&mut out, c, &crate::center::to_rat(v));
        }
    }
    out
}

/// All reference checks; requires a complete `n = 3` run.
pub fn reference_checks(p: &Pipeline) -> Result<Vec<Check>> {
    if p.config.n != 3 {
        return Err(Error::Config("reference data exists only for n = 3".into()));
    }
    let t = &p.table;
    let s = p.semisimple()?;
    let sc = &s.constants;
    let dec = p.decomposition()?;
    let mut out = Vec::new();

    let mut expected = fixtures::nonregular()?;
    expected.sort();
    let found = t.nonregular_set()?;
    out.push(check("nonregular", found == expected, format!("{} computed, {} listed", found.len(), expected.len())));

    let classes = t.d_classes()?;
    for row in fixtures::dclasses()? {
        let c = classes.iter().find(|c| c.representative == row.minimal);
        let ok = c.is_some_and(|c| c.size() == row.size && c.regular == row.regular && c.prime == row.prime);
        let detail =
            c.map_or("no class with this minimal element".into(), |c| format!("size {} regular {} prime {}", c.size(), c.regular, c.prime));
        out.push(check(row.id, ok, detail));
    }
    out.push(check("dclasses", classes.len() == fixtures::dclasses()?.len(), format!("{} classes", classes.len())));

    let radical = p.radical()?;
    let span = radical.basis.span();
    for row in fixtures::radical_rows()? {
        let leader = row.first().map_or(0, |r| r.0);
        let terms: Vec<(ElementIndex, i64)> = row.iter().map(|&(k, c)| (ElementIndex(k), c)).collect();
        let equal = radical.basis.rows.iter().any(|r| r.terms == terms);
        let v = crate::linalg::sparse_from_ints(row.iter().map(|&(k, c)| (ElementIndex(k).offset(), c)));
        let inside = span.contains(&v);
        out.push(check(format!("radical_basis:{leader}"), equal && inside, format!("reproduced {equal}, in span {inside}")));
    }

    let center = p.center()?;
    let expander =
        BasisExpander::new(&center.basis.rational()).map_err(|i| Error::Structure(format!("center basis vector {i} is dependent")))?;
    let (fvecs, ftable) = fixture_center(p)?;
    for (e, v) in fixtures::center_basis()?.iter().zip(&fvecs) {
        let ok = expander.expand(&crate::center::to_rat(v)).is_some();
        out.push(check(e.id.clone(), ok, if ok { "in the computed center" } else { "outside the computed center" }));
    }
    for (a, row) in fixtures::center_products()?.into_iter().enumerate() {
        let bad: Vec<String> = (0..row.len()).filter(|&b| ftable.entries[a][b] != row[b]).map(|b| ftable.names[b].clone()).collect();
        out.push(check(
            format!("center_products:{}", ftable.names[a]),
            bad.is_empty(),
            if bad.is_empty() { "row matches".to_string() } else { format!("columns differ: {}", bad.join(",")) },
        ));
    }

    let pa = minimal_polynomial_in(&ftable, "A", None)?;
    out.push(check("minpoly:A", pa == Poly::from_roots(&[q(0), q(1)]), pa.factored()));
    let pan = minimal_polynomial_in(&ftable, "A-N", Some("A-B"))?;
    out.push(check("minpoly:A-N", pan == Poly::from_roots(&[q(-1), q(5)]), pan.factored()));
    let dims = third_splitting_dims(&ftable)?;
    out.push(check("splitting:third", dims == (2, 10), format!("{dims:?}")));

    for row in fixtures::idempotents()? {
        let idem = ftable.multiply(&row.coords, &row.coords) == row.coords;
        let v = scaled_sum(&fvecs, &row.coords);
        let ours = p.idempotent_vectors.contains(&v);
        out.push(check(row.id, idem && ours, format!("idempotent {idem}, among computed {ours}")));
    }

    let dims = dec.dims();
    for (i, e) in fixtures::ideal_identities()?.iter().enumerate() {
        let v = to_quotient(s, &e.scaled())?;
        let at = dec.components.iter().position(|c| c.identity == v);
        let ok = at.is_some_and(|k| dims[k] == dims[i]);
        out.push(check(
            e.id.clone(),
            ok,
            at.map_or("not a computed identity".into(), |k| format!("identity of ideal {} (dim {})", k + 1, dims[k])),
        ));
    }

    for g in fixtures::left_ideal_generators()? {
        let x = to_quotient(s, &g.terms)?;
        let dim = left_ideal_dim(sc, &x)?;
        let home = dec.components.iter().find(|c| c.contains(sc, &x));
        let ok = dim == g.d && home.is_some_and(|c| c.d == g.d);
        out.push(check(g.id, ok, format!("left ideal dim {dim}, inside d = {:?}", home.map(|c| c.d))));
    }

    let gens = devadze_generators(t)?;
    let characters: Vec<Vec<i64>> = dec.components.iter().map(|c| t.indices().map(|k| c.rep.trace(k)).collect()).collect();
    for r in fixtures::generator_images()? {
        let (ok, detail) = match Representation::from_generators(t, &gens, &r.images) {
            Ok(rep) => {
                let chi: Vec<i64> = t.indices().map(|k| rep.trace(k)).collect();
                match characters.iter().position(|c| *c == chi) {
                    Some(k) => (dec.components[k].d == r.d, format!("character of ideal {}", k + 1)),
                    None => (false, "character matches no computed representation".into()),
                }
            }
            Err(e) => (false, e.to_string()),
        };
        out.push(check(r.id, ok, detail));
    }
    Ok(out)
}

/// Sum of the idempotents equals the identity coset.
pub fn idempotents_sum_to_one(p: &Pipeline) -> Result<bool> {
    let mut sum = SparseRat::new();
    for e in &p.idempotent_vectors {
        add_scaled(&mut sum, &BigRational::one(), e);
    }
    Ok(sum == p.semisimple()?.one())
}
