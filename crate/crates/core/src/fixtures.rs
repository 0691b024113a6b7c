//! Reference data for `n = 3`, bundled from `data/`. Each record carries an
//! id of the form `file:key` so that failed checks can name it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::span::{add_scaled, SparseRat};
use crate::monoid::{BoolMat, ElementIndex};
use crate::notation::{letter_names, parse_combination, parse_signed_sum};
use crate::radical::IntVec;
use crate::semisimple::Semisimple;

const NONREGULAR: &str = include_str!("../data/nonregular.txt");
const DCLASSES: &str = include_str!("../data/dclasses.txt");
const RADICAL_BASIS: &str = include_str!("../data/radical_basis.txt");
const CENTER_BASIS: &str = include_str!("../data/center_basis.txt");
const CENTER_PRODUCTS: &str = include_str!("../data/center_products.txt");
const IDEMPOTENTS: &str = include_str!("../data/idempotents.txt");
const IDEAL_IDENTITIES: &str = include_str!("../data/ideal_identities.txt");
const LEFT_IDEAL_GENERATORS: &str = include_str!("../data/left_ideal_generators.txt");
const GENERATOR_IMAGES: &str = include_str!("../data/generator_images.txt");
const N2_ORACLE: &str = include_str!("../data/n2_oracle.txt");

/// Sum of rational multiples of monoid elements.
pub type Terms = Vec<(u32, BigRational)>;

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn bad(file: &str, line: usize, what: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{file}:{line}: {what}"))
}

fn parse_q(file: &str, line: usize, s: &str) -> Result<BigRational> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((n, d)) => {
            n.parse::<BigInt>().ok().zip(d.parse::<BigInt>().ok()).filter(|(_, d)| !d.is_zero()).map(|(n, d)| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    };
    r.ok_or_else(|| bad(file, line, format!("bad rational `{s}`")))
}

/// `"001011110"` → the 3×3 matrix with those rows.
pub fn parse_bits(bits: &str) -> Result<BoolMat> {
    let n = (1..=4).find(|n| n * n == bits.len()).ok_or_else(|| Error::Parse(bits.to_string()))?;
    let rows: Vec<&str> = (0..n).map(|i| &bits[i * n..(i + 1) * n]).collect();
    rows.join(";").parse()
}

/// The non-regular elements, as lex indices.
pub fn nonregular() -> Result<Vec<ElementIndex>> {
    lines(NONREGULAR).map(|(_, l)| parse_bits(l).map(|m| m.index())).collect()
}

/// One row of the D-class summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DClassRow {
    pub id: String,
    pub minimal: ElementIndex,
    pub size: usize,
    pub regular: bool,
    pub prime: bool,
}

pub fn dclasses() -> Result<Vec<DClassRow>> {
    let f = "dclasses";
    let flag = |n: usize, s: &str| match s {
        "yes" => Ok(true),
        "no" => Ok(false),
        _ => Err(bad(f, n, format!("expected yes/no, got `{s}`"))),
    };
    lines(DCLASSES)
        .map(|(n, l)| {
            let w: Vec<&str> = l.split_whitespace().collect();
            if w.len() != 4 {
                return Err(bad(f, n, "expected 4 fields"));
            }
            Ok(DClassRow {
                id: format!("{f}:{}", w[0]),
                minimal: parse_bits(w[0])?.index(),
                size: w[1].parse().map_err(|_| bad(f, n, "bad size"))?,
                regular: flag(n, w[2])?,
                prime: flag(n, w[3])?,
            })
        })
        .collect()
}

fn integer_terms(file: &str, line: usize, terms: Terms) -> Result<Vec<(u32, i64)>> {
    terms
        .into_iter()
        .map(|(k, c)| {
            c.is_integer()
                .then(|| c.to_integer().to_i64())
                .flatten()
                .map(|c| (k, c))
                .ok_or_else(|| bad(file, line, "non-integer coefficient"))
        })
        .collect()
}

/// Radical basis rows over monoid indices.
pub fn radical_rows() -> Result<Vec<Vec<(u32, i64)>>> {
    lines(RADICAL_BASIS)
        .map(|(n, l)| integer_terms("radical_basis", n, parse_signed_sum(l).map_err(|e| bad("radical_basis", n, e))?))
        .collect()
}

/// A named element `scale · terms`.
#[derive(Clone, Debug)]
pub struct NamedElement {
    pub id: String,
    pub name: String,
    pub scale: BigRational,
    pub terms: Terms,
}

impl NamedElement {
    /// `scale · terms` with the scale multiplied through.
    pub fn scaled(&self) -> Terms {
        self.terms.iter().map(|(k, c)| (*k, c * &self.scale)).collect()
    }
}

fn named(file: &'static str, text: &str) -> Result<Vec<NamedElement>> {
    lines(text)
        .map(|(n, l)| {
            let parts: Vec<&str> = l.split('|').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(bad(file, n, "expected `name | scale | terms`"));
            }
            Ok(NamedElement {
                id: format!("{file}:{}", parts[0]),
                name: parts[0].to_string(),
                scale: parse_q(file, n, parts[1])?,
                terms: parse_signed_sum(parts[2]).map_err(|e| bad(file, n, e))?,
            })
        })
        .collect()
}

/// The published integer center basis `A … N`.
pub fn center_basis() -> Result<Vec<NamedElement>> {
    named("center_basis", CENTER_BASIS)
}

/// Center basis names in order.
pub fn center_names() -> Vec<String> {
    letter_names(14)
}

/// `products[a][b]`: coordinates of `v_a·v_b` over the center basis.
pub fn center_products() -> Result<Vec<Vec<Vec<BigRational>>>> {
    let names = center_names();
    lines(CENTER_PRODUCTS)
        .map(|(n, l)| {
            let row = l
                .split(';')
                .map(|c| parse_combination(c.trim(), &names).map_err(|e| bad("center_products", n, e)))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != names.len() {
                return Err(bad("center_products", n, "wrong number of cells"));
            }
            Ok(row)
        })
        .collect()
}

/// A primitive central idempotent over the center basis.
#[derive(Clone, Debug)]
pub struct IdempotentRow {
    pub id: String,
    pub coords: Vec<BigRational>,
}

/// The fourteen primitive idempotents, stored as six times their
/// coordinates over `A … N`.
pub fn idempotents() -> Result<Vec<IdempotentRow>> {
    let six = BigRational::from_integer(6.into());
    lines(IDEMPOTENTS)
        .enumerate()
        .map(|(i, (n, l))| {
            let coords = l.split_whitespace().map(|w| parse_q("idempotents", n, w).map(|c| c / &six)).collect::<Result<Vec<_>>>()?;
            if coords.len() != 14 {
                return Err(bad("idempotents", n, "expected 14 coordinates"));
            }
            Ok(IdempotentRow { id: format!("idempotents:{}", i + 1), coords })
        })
        .collect()
}

/// Identities of the simple components, in order of increasing dimension.
pub fn ideal_identities() -> Result<Vec<NamedElement>> {
    named("ideal_identities", IDEAL_IDENTITIES)
}

/// An element generating a minimal left ideal of dimension `d`.
#[derive(Clone, Debug)]
pub struct LeftIdealGenerator {
    pub id: String,
    pub d: usize,
    pub terms: Terms,
}

pub fn left_ideal_generators() -> Result<Vec<LeftIdealGenerator>> {
    let f = "left_ideal_generators";
    lines(LEFT_IDEAL_GENERATORS)
        .enumerate()
        .map(|(i, (n, l))| {
            let (d, t) = l.split_once('|').ok_or_else(|| bad(f, n, "expected `d | terms`"))?;
            Ok(LeftIdealGenerator {
                id: format!("{f}:{}", i + 1),
                d: d.trim().parse().map_err(|_| bad(f, n, "bad d"))?,
                terms: parse_signed_sum(t).map_err(|e| bad(f, n, e))?,
            })
        })
        .collect()
}

/// Images of the five generators under one irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepImages {
    pub id: String,
    pub rep: usize,
    pub d: usize,
    /// `images[g][row][col]`.
    pub images: Vec<Vec<Vec<i64>>>,
}

impl RepImages {
    pub fn traces(&self) -> Vec<i64> {
        self.images.iter().map(|m| (0..self.d).map(|i| m[i][i]).sum()).collect()
    }
}

pub fn generator_images() -> Result<Vec<RepImages>> {
    let f = "generator_images";
    let mut out: Vec<RepImages> = Vec::new();
    for (n, l) in lines(GENERATOR_IMAGES) {
        let w: Vec<&str> = l.split_whitespace().collect();
        if w.first() == Some(&"rep") {
            if w.len() != 4 || w[2] != "d" {
                return Err(bad(f, n, "expected `rep N d D`"));
            }
            let rep: usize = w[1].parse().map_err(|_| bad(f, n, "bad rep"))?;
            let d = w[3].parse().map_err(|_| bad(f, n, "bad d"))?;
            out.push(RepImages { id: format!("{f}:rep {rep}"), rep, d, images: Vec::new() });
        } else if l.starts_with('g') {
            out.last_mut().ok_or_else(|| bad(f, n, "block before rep"))?.images.push(Vec::new());
        } else {
            let row = w.iter().map(|x| x.parse::<i64>().map_err(|_| bad(f, n, "bad entry"))).collect::<Result<Vec<_>>>()?;
            let m = out.last_mut().and_then(|r| r.images.last_mut()).ok_or_else(|| bad(f, n, "row before block"))?;
            m.push(row);
        }
    }
    for r in &out {
        let ok = r.images.len() == 5 && r.images.iter().all(|m| m.len() == r.d && m.iter().all(|row| row.len() == r.d));
        if !ok {
            return Err(Error::Parse(format!("{}: expected five {}×{} matrices", r.id, r.d, r.d)));
        }
    }
    Ok(out)
}

/// Coset in the quotient of a combination of monoid elements.
pub fn to_quotient(s: &Semisimple, terms: &[(u32, BigRational)]) -> Result<SparseRat> {
    let mut out = SparseRat::new();
    for (k, c) in terms {
        add_scaled(&mut out, c, &s.class_of(ElementIndex(*k))?);
    }
    Ok(out)
}

/// Integer vector over quotient positions; every index must be regular.
pub fn to_quotient_int(s: &Semisimple, id: &str, terms: &[(u32, BigRational)]) -> Result<IntVec> {
    let mut v = IntVec::new();
    for (k, c) in terms {
        let pos = s.basis.position(ElementIndex(*k)).ok_or_else(|| Error::Structure(format!("{id}: {k} is not regular")))?;
        let c = c.to_integer().to_i64().filter(|_| c.is_integer());
        v.insert(pos, c.ok_or_else(|| Error::Structure(format!("{id}: non-integer coefficient")))?);
    }
    Ok(v)
}

/// Brute-force values for `n = 2`; regenerated by the `n2_oracle` test.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct N2Oracle {
    pub order: usize,
    pub identity: u32,
    /// `table[p-1][q-1]` is the index of `p·q`.
    pub table: Vec<Vec<u32>>,
    pub nonregular: Vec<u32>,
    /// (minimal element, size, regular, prime), sorted.
    pub dclasses: Vec<(u32, usize, bool, bool)>,
    pub radical_dim: usize,
    pub quotient_dim: usize,
    pub center_dim: usize,
    /// Sorted ascending.
    pub degrees: Vec<usize>,
    pub ideal_dims: Vec<usize>,
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl N2Oracle {
    pub fn to_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut s = String::from("# brute-force values for the 16-element monoid of 2x2 Boolean matrices\n");
        s += &format!("order {}\nidentity {}\n", self.order, self.identity);
        for row in &self.table {
            s += &format!("row {}\n", join(row));
        }
        s += &format!("nonregular {}\n", join(&self.nonregular));
        for &(k, size, reg, prime) in &self.dclasses {
            s += &format!("dclass {k} {size} {} {}\n", yn(reg), yn(prime));
        }
        s += &format!("radical_dim {}\nquotient_dim {}\ncenter_dim {}\n", self.radical_dim, self.quotient_dim, self.center_dim);
        s += &format!("degrees {}\nideal_dims {}\n", join(&self.degrees), join(&self.ideal_dims));
        s
    }
}

pub fn n2_oracle() -> Result<N2Oracle> {
    const FILE: &str = "n2_oracle.txt";
    let mut o = N2Oracle::default();
    for (no, line) in lines(N2_ORACLE) {
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        let nums = |what: &str| -> Result<Vec<usize>> {
            rest.split_whitespace().map(|x| x.parse().map_err(|_| bad(FILE, no, format!("bad {what} `{x}`")))).collect()
        };
        let one = |what: &str| -> Result<usize> { nums(what)?.first().copied().ok_or_else(|| bad(FILE, no, "missing value")) };
        let flag = |x: &str| match x {
            "yes" => Ok(true),
            "no" => Ok(false),
            _ => Err(bad(FILE, no, format!("expected yes/no, got `{x}`"))),
        };
        match key {
            "order" => o.order = one(key)?,
            "identity" => o.identity = one(key)? as u32,
            "row" => o.table.push(nums(key)?.into_iter().map(|x| x as u32).collect()),
            "nonregular" => o.nonregular = nums(key)?.into_iter().map(|x| x as u32).collect(),
            "dclass" => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 4 {
                    return Err(bad(FILE, no, "dclass needs 4 fields"));
                }
                let k = f[0].parse().map_err(|_| bad(FILE, no, "bad element"))?;
                let size = f[1].parse().map_err(|_| bad(FILE, no, "bad size"))?;
                o.dclasses.push((k, size, flag(f[2])?, flag(f[3])?));
            }
            "radical_dim" => o.radical_dim = one(key)?,
            "quotient_dim" => o.quotient_dim = one(key)?,
            "center_dim" => o.center_dim = one(key)?,
            "degrees" => o.degrees = nums(key)?,
            "ideal_dims" => o.ideal_dims = nums(key)?,
            _ => return Err(bad(FILE, no, format!("unknown key `{key}`"))),
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        assert_eq!(nonregular().unwrap().len(), 42);
        assert_eq!(dclasses().unwrap().len(), 11);
        assert_eq!(radical_rows().unwrap().len(), 42);
        assert_eq!(center_basis().unwrap().len(), 14);
        assert_eq!(center_products().unwrap().len(), 14);
        assert_eq!(idempotents().unwrap().len(), 14);
        assert_eq!(ideal_identities().unwrap().len(), 14);
        assert_eq!(left_ideal_generators().unwrap().len(), 11);
        let reps = generator_images().unwrap();
        assert_eq!(reps.iter().map(|r| r.d * r.d).sum::<usize>(), 470);
    }

    #[test]
    fn bits_are_row_major() {
        let m = parse_bits("100010001").unwrap();
        assert_eq!(m.index(), ElementIndex(274));
    }
}
