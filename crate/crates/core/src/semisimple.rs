//! The semisimple quotient `S = A/R` on the basis of regular-element cosets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::span::{add_scaled, SparseRat};
use crate::monoid::{ElementIndex, MonoidTable};
use crate::radical::{IntVec, RadicalBasis};

/// Order-preserving numbering of the regular elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientBasis {
    s: Vec<ElementIndex>,
    #[serde(skip)]
    inverse: Vec<Option<u32>>,
}

impl QuotientBasis {
    pub fn new(t: &MonoidTable) -> Result<Self> {
        let s = t.regular_set()?;
        let mut inverse = vec![None; t.order()];
        for (i, k) in s.iter().enumerate() {
            inverse[k.offset()] = Some(i as u32);
        }
        Ok(QuotientBasis { s, inverse })
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Regular element represented by position `i` (zero-based).
    pub fn element(&self, i: usize) -> ElementIndex {
        self.s[i]
    }

    pub fn elements(&self) -> &[ElementIndex] {
        &self.s
    }

    /// Position of a regular element, `None` for non-regular ones.
    pub fn position(&self, k: ElementIndex) -> Option<usize> {
        self.inverse.get(k.offset()).copied().flatten().map(|i| i as usize)
    }
}

/// Rewrites non-regular elements modulo the radical: each non-regular
/// element equals minus the rest of the radical row it leads.
#[derive(Clone, Debug)]
pub struct Rewriter {
    // offset of a non-regular element -> replacement over quotient positions
    rules: Vec<Option<Vec<(u32, i64)>>>,
}

impl Rewriter {
    pub fn new(t: &MonoidTable, radical: &RadicalBasis, qb: &QuotientBasis) -> Result<Self> {
        let mut rules = vec![None; t.order()];
        for row in &radical.rows {
            let lead = row.terms.first().ok_or_else(|| Error::Structure("empty radical row".into()))?;
            if lead.0 != row.leading || lead.1.abs() != 1 {
                return Err(Error::Structure(format!("radical row {} is not monic", row.leading.get())));
            }
            let sign = lead.1;
            let mut rest = Vec::with_capacity(row.terms.len() - 1);
            for &(k, c) in &row.terms[1..] {
                let pos = qb.position(k).ok_or_else(|| {
                    Error::Structure(format!("radical row {} has a second non-regular term {}", row.leading.get(), k.get()))
                })?;
                rest.push((pos as u32, -c * sign));
            }
            rules[row.leading.offset()] = Some(rest);
        }
        Ok(Rewriter { rules })
    }

    /// Class of the monoid element `k` as integer terms over quotient positions.
    pub fn class_of(&self, qb: &QuotientBasis, k: ElementIndex) -> Result<Vec<(u32, i64)>> {
        if let Some(p) = qb.position(k) {
            return Ok(vec![(p as u32, 1)]);
        }
        self.rules.get(k.offset()).cloned().flatten().ok_or(Error::MissingRadicalRow(k.get()))
    }

    /// Image in the quotient of an integer combination of monoid elements.
    pub fn project(&self, qb: &QuotientBasis, v: &IntVec) -> Result<SparseRat> {
        let mut out = SparseRat::new();
        for (&k, &c) in v {
            for (p, d) in self.class_of(qb, ElementIndex::from_offset(k))? {
                let e = out.entry(p as usize).or_insert_with(BigRational::zero);
                *e += BigRational::from_integer(BigInt::from(c * d));
                if e.is_zero() {
                    out.remove(&(p as usize));
                }
            }
        }
        Ok(out)
    }
}

/// Product of the cosets of two regular elements, as integer terms over
/// regular elements.
pub fn multiply_cosets(
    t: &MonoidTable,
    qb: &QuotientBasis,
    rw: &Rewriter,
    p: ElementIndex,
    q: ElementIndex,
) -> Result<Vec<(ElementIndex, i64)>> {
    if qb.position(p).is_none() || qb.position(q).is_none() {
        return Err(Error::Structure(format!("{} or {} is not regular", p.get(), q.get())));
    }
    let mut terms: Vec<(ElementIndex, i64)> = rw.class_of(qb, t.mul(p, q))?.into_iter().map(|(i, c)| (qb.element(i as usize), c)).collect();
    terms.sort();
    Ok(terms)
}

/// All products of basis cosets, stored flat: the product of positions
/// `(i, j)` is `terms[starts[i·n + j] .. starts[i·n + j + 1]]`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    n: usize,
    starts: Vec<u32>,
    terms: Vec<(u16, i8)>,
}

impl StructureConstants {
    pub fn build(t: &MonoidTable, qb: &QuotientBasis, rw: &Rewriter) -> Result<Self> {
        let n = qb.len();
        let mut starts = Vec::with_capacity(n * n + 1);
        let mut terms = Vec::with_capacity(n * n * 2);
        starts.push(0);
        for i in 0..n {
            let p = qb.element(i);
            for j in 0..n {
                let m = t.mul(p, qb.element(j));
                let mut class = rw.class_of(qb, m)?;
                class.sort();
                for (k, c) in class {
                    terms.push((k as u16, c as i8));
                }
                starts.push(terms.len() as u32);
            }
        }
        Ok(StructureConstants { n, starts, terms })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `[s(i)]·[s(j)]` as `(position, coefficient)` pairs.
    pub fn product(&self, i: usize, j: usize) -> &[(u16, i8)] {
        let at = i * self.n + j;
        &self.terms[self.starts[at] as usize..self.starts[at + 1] as usize]
    }

    /// Number of products with more than one term.
    pub fn multi_term_count(&self) -> usize {
        (0..self.n * self.n).filter(|&a| self.starts[a + 1] - self.starts[a] > 1).count()
    }

    /// Histogram of product support sizes.
    pub fn support_sizes(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut h = std::collections::BTreeMap::new();
        for a in 0..self.n * self.n {
            *h.entry((self.starts[a + 1] - self.starts[a]) as usize).or_insert(0) += 1;
        }
        h
    }

    /// Bilinear extension of the product to rational vectors.
    pub fn multiply(&self, a: &SparseRat, b: &SparseRat) -> SparseRat {
        let mut acc: Vec<BigRational> = Vec::new();
        let mut touched = vec![false; self.n];
        acc.resize(self.n, BigRational::zero());
        for (&i, x) in a {
            for (&j, y) in b {
                let xy = x * y;
                for &(k, c) in self.product(i, j) {
                    let k = k as usize;
                    touched[k] = true;
                    if c == 1 {
                        acc[k] += &xy;
                    } else if c == -1 {
                        acc[k] -= &xy;
                    } else {
                        acc[k] += &xy * BigRational::from_integer(BigInt::from(c));
                    }
                }
            }
        }
        let mut out = SparseRat::new();
        for (k, v) in acc.into_iter().enumerate() {
            if touched[k] && !v.is_zero() {
                out.insert(k, v);
            }
        }
        out
    }

    /// Product of integer vectors; `None` if a coefficient leaves `i64`.
    pub fn multiply_int(&self, a: &IntVec, b: &IntVec) -> Option<IntVec> {
        let mut acc = vec![0i128; self.n];
        for (&i, &x) in a {
            for (&j, &y) in b {
                let xy = x as i128 * y as i128;
                for &(k, c) in self.product(i, j) {
                    acc[k as usize] += xy * c as i128;
                }
            }
        }
        let mut out = IntVec::new();
        for (k, v) in acc.into_iter().enumerate() {
            if v != 0 {
                out.insert(k, i64::try_from(v).ok()?);
            }
        }
        Some(out)
    }

    /// `a·[s(j)]`, cheaper than the general product.
    pub fn multiply_basis_right(&self, a: &SparseRat, j: usize) -> SparseRat {
        let mut out = SparseRat::new();
        for (&i, x) in a {
            for &(k, c) in self.product(i, j) {
                add_scaled(&mut out, &(x * BigRational::from_integer(BigInt::from(c))), &unit(k as usize));
            }
        }
        out
    }

    /// `[s(i)]·b`.
    pub fn multiply_basis_left(&self, i: usize, b: &SparseRat) -> SparseRat {
        let mut out = SparseRat::new();
        for (&j, y) in b {
            for &(k, c) in self.product(i, j) {
                add_scaled(&mut out, &(y * BigRational::from_integer(BigInt::from(c))), &unit(k as usize));
            }
        }
        out
    }
}

fn unit(k: usize) -> SparseRat {
    let mut v = SparseRat::new();
    v.insert(k, BigRational::one());
    v
}

/// The quotient algebra with its basis, rewrite rules and structure constants.
#[derive(Clone, Debug)]
pub struct Semisimple {
    pub basis: QuotientBasis,
    pub rewriter: Rewriter,
    pub constants: StructureConstants,
    /// Position of the identity element's coset.
    pub identity: usize,
}

impl Semisimple {
    pub fn new(t: &MonoidTable, radical: &RadicalBasis) -> Result<Self> {
        let basis = QuotientBasis::new(t)?;
        let rewriter = Rewriter::new(t, radical, &basis)?;
        let constants = StructureConstants::build(t, &basis, &rewriter)?;
        let identity = basis.position(t.identity()).ok_or_else(|| Error::Structure("identity is not regular".into()))?;
        Ok(Semisimple { basis, rewriter, constants, identity })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn one(&self) -> SparseRat {
        unit(self.identity)
    }

    pub fn basis_vector(&self, i: usize) -> SparseRat {
        unit(i)
    }

    /// Coset of a single monoid element.
    pub fn class_of(&self, k: ElementIndex) -> Result<SparseRat> {
        let v: IntVec = [(k.offset(), 1)].into_iter().collect();
        self.rewriter.project(&self.basis, &v)
    }

    pub fn mul(&self, a: &SparseRat, b: &SparseRat) -> SparseRat {
        self.constants.multiply(a, b)
    }

    /// Converts a vector over quotient positions to one over monoid indices.
    pub fn to_monoid_terms(&self, v: &SparseRat) -> Vec<(ElementIndex, BigRational)> {
        v.iter().map(|(&i, c)| (self.basis.element(i), c.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_basis_is_increasing() {
        let t = MonoidTable::build(2).unwrap();
        let qb = QuotientBasis::new(&t).unwrap();
        assert_eq!(qb.len(), 16);
        assert!(qb.elements().windows(2).all(|w| w[0] < w[1]));
        for i in 0..qb.len() {
            assert_eq!(qb.position(qb.element(i)), Some(i));
        }
    }
}
