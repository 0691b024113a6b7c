//! Incrementally maintained rational row spaces of sparse vectors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse rational vector keyed by coordinate.
pub type SparseRat = BTreeMap<usize, BigRational>;

/// Converts integer `(coordinate, value)` pairs into a sparse rational vector.
pub fn sparse_from_ints<I: IntoIterator<Item = (usize, i64)>>(terms: I) -> SparseRat {
    let mut v = SparseRat::new();
    for (k, c) in terms {
        add_scaled(&mut v, &BigRational::from_integer(BigInt::from(c)), &single(k));
    }
    v
}

fn single(k: usize) -> SparseRat {
    let mut v = SparseRat::new();
    v.insert(k, BigRational::one());
    v
}

/// `dst ← dst + c·src`, dropping entries that cancel.
pub fn add_scaled(dst: &mut SparseRat, c: &BigRational, src: &SparseRat) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in src {
        let e = dst.entry(k).or_insert_with(BigRational::zero);
        *e += c * x;
        if e.is_zero() {
            dst.remove(&k);
        }
    }
}

/// Row space in reduced row echelon form: every row has a leading 1 whose
/// column is zero in all other rows.
#[derive(Clone, Debug, Default)]
pub struct RowSpan {
    // pivot column -> row
    rows: BTreeMap<usize, SparseRat>,
}

impl RowSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rows<I: IntoIterator<Item = SparseRat>>(rows: I) -> Self {
        let mut s = Self::new();
        for r in rows {
            s.insert(r);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// The reduced rows, in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseRat> {
        self.rows.values()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: SparseRat) -> SparseRat {
        for (p, row) in &self.rows {
            if let Some(c) = v.get(p).cloned() {
                add_scaled(&mut v, &-c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseRat) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Coefficients of `v` on the reduced rows (in pivot order), or `None`
    /// if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseRat) -> Option<Vec<BigRational>> {
        let coords: Vec<BigRational> = self.rows.keys().map(|p| v.get(p).cloned().unwrap_or_else(BigRational::zero)).collect();
        let mut rest = v.clone();
        for (c, row) in coords.iter().zip(self.rows.values()) {
            add_scaled(&mut rest, &-c.clone(), row);
        }
        rest.is_empty().then_some(coords)
    }

    /// Adds `v`; returns its new pivot if the rank grew.
    pub fn insert(&mut self, v: SparseRat) -> Option<usize> {
        let mut r = self.reduce(v);
        let (&p, lead) = r.iter().next()?;
        let inv = BigRational::one() / lead;
        for x in r.values_mut() {
            *x *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                add_scaled(row, &-c, &r);
            }
        }
        self.rows.insert(p, r);
        Some(p)
    }
}

/// Expresses vectors as combinations of a fixed, linearly independent list
/// of basis vectors.
#[derive(Clone, Debug)]
pub struct BasisExpander {
    len: usize,
    // (pivot, reduced data part, combination of the original vectors)
    rows: Vec<(usize, SparseRat, Vec<BigRational>)>,
}

impl BasisExpander {
    /// Fails with the index of the first vector that depends on earlier ones.
    pub fn new(basis: &[SparseRat]) -> std::result::Result<Self, usize> {
        let len = basis.len();
        let mut rows: Vec<(usize, SparseRat, Vec<BigRational>)> = Vec::with_capacity(len);
        for (i, b) in basis.iter().enumerate() {
            let mut data = b.clone();
            let mut tag = vec![BigRational::zero(); len];
            tag[i] = BigRational::one();
            for (p, row, t) in &rows {
                if let Some(c) = data.get(p).cloned() {
                    add_scaled(&mut data, &-c.clone(), row);
                    for (x, y) in tag.iter_mut().zip(t) {
                        *x -= &c * y;
                    }
                }
            }
            let Some((&p, lead)) = data.iter().next() else {
                return Err(i);
            };
            let inv = BigRational::one() / lead;
            for x in data.values_mut() {
                *x *= &inv;
            }
            for x in tag.iter_mut() {
                *x *= &inv;
            }
            for (_, row, t) in rows.iter_mut() {
                if let Some(c) = row.get(&p).cloned() {
                    add_scaled(row, &-c.clone(), &data);
                    for (x, y) in t.iter_mut().zip(&tag) {
                        *x -= &c * y;
                    }
                }
            }
            rows.push((p, data, tag));
        }
        Ok(BasisExpander { len, rows })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coefficients `c` with `v = Σ c[i]·basis[i]`, or `None` if `v` is
    /// outside the span.
    pub fn expand(&self, v: &SparseRat) -> Option<Vec<BigRational>> {
        let mut rest = v.clone();
        let mut out = vec![BigRational::zero(); self.len];
        for (p, row, tag) in &self.rows {
            if let Some(c) = v.get(p) {
                add_scaled(&mut rest, &-c.clone(), row);
                for (x, y) in out.iter_mut().zip(tag) {
                    *x += c * y;
                }
            }
        }
        rest.is_empty().then_some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(terms: &[(usize, i64)]) -> SparseRat {
        sparse_from_ints(terms.iter().copied())
    }

    #[test]
    fn insert_and_membership() {
        let mut s = RowSpan::new();
        assert_eq!(s.insert(v(&[(0, 2), (1, 4)])), Some(0));
        assert_eq!(s.insert(v(&[(0, 1), (1, 2)])), None);
        assert_eq!(s.insert(v(&[(1, 1), (2, 1)])), Some(1));
        assert!(s.contains(&v(&[(0, 1), (2, -2)])));
        assert!(!s.contains(&v(&[(2, 1)])));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn coordinates_reconstruct() {
        let s = RowSpan::from_rows([v(&[(0, 1), (3, 1)]), v(&[(1, 1), (3, -1)])]);
        let target = v(&[(0, 2), (1, 3), (3, -1)]);
        let c = s.coordinates(&target).unwrap();
        assert_eq!(c, vec![BigRational::from_integer(2.into()), BigRational::from_integer(3.into())]);
        assert!(s.coordinates(&v(&[(3, 1)])).is_none());
    }

    #[test]
    fn expander_recovers_coefficients() {
        let basis = [v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 2)]), v(&[(0, 3), (2, 1)])];
        let e = BasisExpander::new(&basis).unwrap();
        let target = v(&[(0, 5), (1, 1), (2, 9)]);
        let c = e.expand(&target).unwrap();
        let mut back = SparseRat::new();
        for (ci, b) in c.iter().zip(&basis) {
            add_scaled(&mut back, ci, b);
        }
        assert_eq!(back, target);
        assert!(BasisExpander::new(&[v(&[(0, 1)]), v(&[(0, 2)])]).is_err());
        let e = BasisExpander::new(&basis[..2]).unwrap();
        assert!(e.expand(&v(&[(2, 1)])).is_none());
    }
}
