//! The monoid of `n × n` Boolean matrices under the product with `1 + 1 = 1`.
//!
//! Elements are identified with the integers `1..=2^(n²)` by reading the
//! entries in row-major order as a binary numeral and adding one. The
//! zero matrix is therefore element 1 and the all-ones matrix is the last
//! element.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 4;
/// Largest dimension for which the multiplication table is stored densely.
pub const MAX_DENSE_DIM: usize = 3;

fn check_dim(n: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n, "2..=4"))
    }
}

/// Number of elements of the monoid of `n × n` Boolean matrices.
pub fn monoid_order(n: usize) -> usize {
    1usize << (n * n)
}

/// An `n × n` Boolean matrix packed into a bit pattern.
///
/// Entry `(i, j)` (zero-based) lives at bit `n² − 1 − (n·i + j)`, so the raw
/// bits are exactly `λ − 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolMat {
    n: u8,
    bits: u16,
}

impl BoolMat {
    pub fn from_bits(n: usize, bits: u16) -> Result<Self> {
        check_dim(n)?;
        if n < 4 && u32::from(bits) >= (1u32 << (n * n)) {
            return Err(Error::Parse(format!("bit pattern {bits:#x} too wide for n = {n}")));
        }
        Ok(BoolMat { n: n as u8, bits })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_bits(n, 0)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_rows(n, &(0..n).map(|i| 1u16 << (n - 1 - i)).collect::<Vec<_>>())
    }

    pub fn ones(n: usize) -> Result<Self> {
        check_dim(n)?;
        let bits = ((1u32 << (n * n)) - 1) as u16;
        Ok(BoolMat { n: n as u8, bits })
    }

    /// Builds a matrix from row masks; bit `n − 1 − j` of `rows[i]` is entry `(i, j)`.
    pub fn from_rows(n: usize, rows: &[u16]) -> Result<Self> {
        check_dim(n)?;
        if rows.len() != n {
            return Err(Error::DimensionMismatch(format!("{} rows for n = {n}", rows.len())));
        }
        let mut bits = 0u16;
        for &r in rows {
            if r >> n != 0 {
                return Err(Error::Parse(format!("row mask {r:#b} too wide")));
            }
            bits = (bits << n) | r;
        }
        Ok(BoolMat { n: n as u8, bits })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(&self) -> u16 {
        self.bits
    }

    #[inline]
    pub fn row(&self, i: usize) -> u16 {
        let n = self.n();
        (self.bits >> (n * (n - 1 - i))) & ((1 << n) - 1)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.row(i) >> (self.n() - 1 - j)) & 1 == 1
    }

    pub fn with_entry(&self, i: usize, j: usize, value: bool) -> Self {
        let n = self.n();
        let bit = 1u16 << (n * n - 1 - (n * i + j));
        let bits = if value { self.bits | bit } else { self.bits & !bit };
        BoolMat { n: self.n, bits }
    }

    pub fn count_zeros(&self) -> usize {
        let n = self.n();
        n * n - self.bits.count_ones() as usize
    }

    /// Zero entries in row-major order.
    pub fn zeros(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| !self.get(i, j)).collect()
    }

    pub fn is_permutation(&self) -> bool {
        let n = self.n();
        let mut seen = 0u16;
        for i in 0..n {
            let r = self.row(i);
            if r.count_ones() != 1 || seen & r != 0 {
                return false;
            }
            seen |= r;
        }
        true
    }

    /// Boolean product.
    pub fn mul(&self, other: &BoolMat) -> Result<BoolMat> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("cannot multiply {0}×{0} by {1}×{1}", self.n, other.n)));
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    fn mul_unchecked(&self, other: &BoolMat) -> BoolMat {
        let n = self.n();
        let mut bits = 0u16;
        for i in 0..n {
            let a = self.row(i);
            let mut acc = 0u16;
            for k in 0..n {
                if (a >> (n - 1 - k)) & 1 == 1 {
                    acc |= other.row(k);
                }
            }
            bits = (bits << n) | acc;
        }
        BoolMat { n: self.n, bits }
    }

    /// Lexicographic index `λ(m)` in `1..=2^(n²)`.
    pub fn index(&self) -> ElementIndex {
        ElementIndex(u32::from(self.bits) + 1)
    }

    /// Inverse of [`BoolMat::index`].
    pub fn from_index(k: ElementIndex, n: usize) -> Result<BoolMat> {
        check_dim(n)?;
        let max = monoid_order(n) as u32;
        if k.0 == 0 || k.0 > max {
            return Err(Error::IndexOutOfRange { index: k.0, max });
        }
        Ok(BoolMat { n: n as u8, bits: (k.0 - 1) as u16 })
    }
}

impl fmt::Display for BoolMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        for i in 0..n {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BoolMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolMat({self})")
    }
}

impl FromStr for BoolMat {
    type Err = Error;

    /// Parses rows of `0`/`1` separated by semicolons, e.g. `"011;101;110"`.
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.trim().split(';').map(str::trim).collect();
        let n = rows.len();
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(Error::Parse(s.to_string()));
        }
        let mut masks = Vec::with_capacity(n);
        for r in rows {
            if r.len() != n {
                return Err(Error::Parse(s.to_string()));
            }
            let mut mask = 0u16;
            for c in r.chars() {
                mask = (mask << 1)
                    | match c {
                        '0' => 0,
                        '1' => 1,
                        _ => return Err(Error::Parse(s.to_string())),
                    };
            }
            masks.push(mask);
        }
        BoolMat::from_rows(n, &masks)
    }
}

/// One-based lexicographic index of a monoid element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementIndex(pub u32);

impl ElementIndex {
    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Zero-based position, used for vector coordinates.
    #[inline]
    pub fn offset(self) -> usize {
        self.0 as usize - 1
    }

    #[inline]
    pub fn from_offset(offset: usize) -> Self {
        ElementIndex(offset as u32 + 1)
    }
}

impl fmt::Display for ElementIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn lex_index(m: &BoolMat) -> ElementIndex {
    m.index()
}

pub fn from_index(k: ElementIndex, n: usize) -> Result<BoolMat> {
    BoolMat::from_index(k, n)
}

pub fn bool_mul(a: &BoolMat, b: &BoolMat) -> Result<BoolMat> {
    a.mul(b)
}

/// A D-class, keyed by its lex-minimal element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DClass {
    pub representative: ElementIndex,
    pub members: Vec<ElementIndex>,
    pub regular: bool,
    pub prime: bool,
}

impl DClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug)]
struct Metadata {
    regular: Vec<bool>,
    prime: Vec<bool>,
    dclass_id: Vec<usize>,
    classes: Vec<DClass>,
}

/// Multiplication table `μ` of the Boolean matrix monoid.
///
/// Dense (with regularity, primality and D-class data) for `n ≤ 3`; for
/// `n = 4` products are computed on demand and the classification data is
/// unavailable.
#[derive(Clone, Debug)]
pub struct MonoidTable {
    n: usize,
    order: usize,
    products: Option<Vec<u16>>,
    meta: Option<Metadata>,
}

impl MonoidTable {
    pub fn build(n: usize) -> Result<Self> {
        check_dim(n)?;
        let order = monoid_order(n);
        if n > MAX_DENSE_DIM {
            return Ok(MonoidTable { n, order, products: None, meta: None });
        }
        let products: Vec<u16> = (0..order)
            .into_par_iter()
            .flat_map_iter(|p| {
                let a = BoolMat { n: n as u8, bits: p as u16 };
                (0..order).map(move |q| a.mul_unchecked(&BoolMat { n: n as u8, bits: q as u16 }).bits)
            })
            .collect();
        let mut table = MonoidTable { n, order, products: Some(products), meta: None };
        table.meta = Some(table.classify());
        Ok(table)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_dense(&self) -> bool {
        self.products.is_some()
    }

    pub fn element(&self, k: ElementIndex) -> Result<BoolMat> {
        BoolMat::from_index(k, self.n)
    }

    pub fn indices(&self) -> impl Iterator<Item = ElementIndex> {
        (1..=self.order as u32).map(ElementIndex)
    }

    pub fn identity(&self) -> ElementIndex {
        BoolMat::identity(self.n).expect("dimension checked").index()
    }

    /// `μ` on zero-based offsets.
    #[inline]
    pub fn mul_offset(&self, p: usize, q: usize) -> usize {
        match &self.products {
            Some(t) => t[p * self.order + q] as usize,
            None => {
                let a = BoolMat { n: self.n as u8, bits: p as u16 };
                let b = BoolMat { n: self.n as u8, bits: q as u16 };
                a.mul_unchecked(&b).bits as usize
            }
        }
    }

    #[inline]
    pub fn mul(&self, p: ElementIndex, q: ElementIndex) -> ElementIndex {
        ElementIndex::from_offset(self.mul_offset(p.offset(), q.offset()))
    }

    /// True iff `x y x = x` for some `y`.
    pub fn is_regular(&self, k: ElementIndex) -> bool {
        if let Some(meta) = &self.meta {
            return meta.regular[k.offset()];
        }
        self.regular_by_search(k.offset())
    }

    fn regular_by_search(&self, x: usize) -> bool {
        (0..self.order).any(|y| self.mul_offset(self.mul_offset(x, y), x) == x)
    }

    fn meta(&self) -> Result<&Metadata> {
        self.meta.as_ref().ok_or(Error::UnsupportedDimension(self.n, "n ≤ 3 for classification data"))
    }

    pub fn regular_flags(&self) -> Result<&[bool]> {
        Ok(&self.meta()?.regular)
    }

    /// Sorted indices of the regular elements (`𝓡`).
    pub fn regular_set(&self) -> Result<Vec<ElementIndex>> {
        let meta = self.meta()?;
        Ok(self.indices().filter(|k| meta.regular[k.offset()]).collect())
    }

    /// Sorted indices of the non-regular elements (`𝓝𝓡`).
    pub fn nonregular_set(&self) -> Result<Vec<ElementIndex>> {
        let meta = self.meta()?;
        Ok(self.indices().filter(|k| !meta.regular[k.offset()]).collect())
    }

    /// D-classes sorted by their lex-minimal representative.
    pub fn d_classes(&self) -> Result<&[DClass]> {
        Ok(&self.meta()?.classes)
    }

    pub fn dclass_id(&self, k: ElementIndex) -> Result<usize> {
        Ok(self.meta()?.dclass_id[k.offset()])
    }

    /// Prime in the sense of de Caen and Gregory: not a permutation matrix,
    /// and every factorisation `x = y z` has a permutation factor.
    pub fn is_prime(&self, k: ElementIndex) -> Result<bool> {
        Ok(self.meta()?.prime[k.offset()])
    }

    fn classify(&self) -> Metadata {
        let order = self.order;
        let regular: Vec<bool> = (0..order).into_par_iter().map(|x| self.regular_by_search(x)).collect();

        let perm: Vec<bool> = (0..order).map(|x| BoolMat { n: self.n as u8, bits: x as u16 }.is_permutation()).collect();
        let mut composite = vec![false; order];
        for y in (0..order).filter(|&y| !perm[y]) {
            for z in (0..order).filter(|&z| !perm[z]) {
                composite[self.mul_offset(y, z)] = true;
            }
        }
        let prime: Vec<bool> = (0..order).map(|x| !perm[x] && !composite[x]).collect();

        // Two-sided ideal fingerprints as bitsets.
        let words = order.div_ceil(64);
        let fingerprints: Vec<Vec<u64>> = (0..order)
            .into_par_iter()
            .map(|x| {
                let mut left = vec![false; order];
                for a in 0..order {
                    left[self.mul_offset(a, x)] = true;
                }
                let mut fp = vec![0u64; words];
                for (l, _) in left.iter().enumerate().filter(|(_, &hit)| hit) {
                    for b in 0..order {
                        let m = self.mul_offset(l, b);
                        fp[m / 64] |= 1 << (m % 64);
                    }
                }
                fp
            })
            .collect();

        let mut by_fingerprint: HashMap<&[u64], usize> = HashMap::new();
        let mut dclass_id = vec![0usize; order];
        let mut classes: Vec<DClass> = Vec::new();
        for x in 0..order {
            let id = *by_fingerprint.entry(&fingerprints[x]).or_insert_with(|| {
                classes.push(DClass {
                    representative: ElementIndex::from_offset(x),
                    members: Vec::new(),
                    regular: regular[x],
                    prime: prime[x],
                });
                classes.len() - 1
            });
            dclass_id[x] = id;
            classes[id].members.push(ElementIndex::from_offset(x));
        }
        Metadata { regular, prime, dclass_id, classes }
    }

    /// Closure of a generating set under `μ`, together with the identity.
    pub fn closure(&self, generators: &[ElementIndex]) -> Vec<ElementIndex> {
        let mut seen = vec![false; self.order];
        let id = self.identity().offset();
        seen[id] = true;
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y = self.mul_offset(x, g.offset());
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).map(ElementIndex::from_offset).collect()
    }
}

/// Matrices of the minimal generating set of `𝓑₃`.
pub const DEVADZE_GENERATORS: [&str; 5] = ["010;100;001", "010;001;100", "100;110;001", "100;010;000", "011;101;110"];

/// The five Devadze generators of `𝓑₃`, verified to generate the monoid.
pub fn devadze_generators(table: &MonoidTable) -> Result<[ElementIndex; 5]> {
    if table.n() != 3 {
        return Err(Error::UnsupportedDimension(table.n(), "3 for the Devadze generators"));
    }
    let mut gens = [ElementIndex(0); 5];
    for (g, text) in gens.iter_mut().zip(DEVADZE_GENERATORS) {
        *g = text.parse::<BoolMat>()?.index();
    }
    let closure = table.closure(&gens).len();
    if closure != table.order() {
        return Err(Error::ClosureFailure { found: closure, expected: table.order() });
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t3() -> &'static MonoidTable {
        use std::sync::OnceLock;
        static T: OnceLock<MonoidTable> = OnceLock::new();
        T.get_or_init(|| MonoidTable::build(3).unwrap())
    }

    #[test]
    fn lex_index_examples() {
        assert_eq!(BoolMat::zero(3).unwrap().index(), ElementIndex(1));
        assert_eq!(BoolMat::identity(3).unwrap().index(), ElementIndex(274));
        assert_eq!(BoolMat::ones(3).unwrap().index(), ElementIndex(512));
        assert_eq!("011;101;110".parse::<BoolMat>().unwrap().index(), ElementIndex(239));
    }

    #[test]
    fn from_index_examples_and_range() {
        assert_eq!(BoolMat::from_index(ElementIndex(1), 3).unwrap(), BoolMat::zero(3).unwrap());
        assert_eq!(BoolMat::from_index(ElementIndex(512), 3).unwrap(), BoolMat::ones(3).unwrap());
        assert_eq!(BoolMat::from_index(ElementIndex(274), 3).unwrap(), BoolMat::identity(3).unwrap());
        assert!(BoolMat::from_index(ElementIndex(0), 3).is_err());
        assert!(BoolMat::from_index(ElementIndex(513), 3).is_err());
        assert!(BoolMat::from_index(ElementIndex(1), 5).is_err());
    }

    #[test]
    fn index_roundtrip_all_small_dims() {
        for n in 2..=3 {
            for k in 1..=monoid_order(n) as u32 {
                let m = BoolMat::from_index(ElementIndex(k), n).unwrap();
                assert_eq!(m.index(), ElementIndex(k));
                assert_eq!(m.to_string().parse::<BoolMat>().unwrap(), m);
            }
        }
    }

    #[test]
    fn products() {
        let j = BoolMat::ones(3).unwrap();
        assert_eq!(j.mul(&j).unwrap(), j);
        let g1: BoolMat = DEVADZE_GENERATORS[0].parse().unwrap();
        assert_eq!(g1.mul(&g1).unwrap(), BoolMat::identity(3).unwrap());
        assert!(g1.mul(&BoolMat::zero(2).unwrap()).is_err());
    }

    // Direct product from the entrywise definition.
    fn naive_product(a: &BoolMat, b: &BoolMat) -> BoolMat {
        let n = a.n();
        let mut c = BoolMat::zero(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                let v = (0..n).any(|k| a.get(i, k) && b.get(k, j));
                c = c.with_entry(i, j, v);
            }
        }
        c
    }

    #[test]
    fn table_matches_entrywise_product() {
        let t = t3();
        let m95 = BoolMat::from_index(ElementIndex(95), 3).unwrap();
        assert_eq!(t.mul(ElementIndex(95), ElementIndex(95)), naive_product(&m95, &m95).index());
        for p in (1..=512).step_by(7) {
            for q in (1..=512).step_by(5) {
                let a = BoolMat::from_index(ElementIndex(p), 3).unwrap();
                let b = BoolMat::from_index(ElementIndex(q), 3).unwrap();
                assert_eq!(t.mul(ElementIndex(p), ElementIndex(q)), naive_product(&a, &b).index());
            }
        }
    }

    #[test]
    fn zero_and_identity_rows() {
        let t = t3();
        for k in t.indices() {
            assert_eq!(t.mul(ElementIndex(1), k), ElementIndex(1));
            assert_eq!(t.mul(ElementIndex(274), k), k);
            assert_eq!(t.mul(k, ElementIndex(274)), k);
        }
    }

    #[test]
    fn associativity_exhaustive_n2() {
        let t = MonoidTable::build(2).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                for c in 0..16 {
                    assert_eq!(t.mul_offset(t.mul_offset(a, b), c), t.mul_offset(a, t.mul_offset(b, c)));
                }
            }
        }
    }

    #[test]
    fn regularity() {
        let t = t3();
        assert!(t.is_regular(ElementIndex(274)));
        assert!(!t.is_regular(ElementIndex(95)));
        assert_eq!(t.nonregular_set().unwrap().len(), 42);
        assert_eq!(t.regular_set().unwrap().len(), 470);
    }

    #[test]
    fn primality() {
        let t = t3();
        assert!(!t.is_prime(ElementIndex(274)).unwrap());
        assert!(t.is_prime(ElementIndex(239)).unwrap());
        assert_eq!(t.indices().filter(|&k| t.is_prime(k).unwrap()).count(), 6);
    }

    #[test]
    fn dclass_sizes() {
        let t = t3();
        let classes = t.d_classes().unwrap();
        assert_eq!(classes.len(), 11);
        assert_eq!(classes[0].size(), 1);
        let mut sizes: Vec<usize> = classes.iter().map(DClass::size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 6, 6, 18, 18, 36, 36, 36, 49, 144, 162]);
        assert_eq!(sizes.iter().sum::<usize>(), 512);
    }

    #[test]
    fn generators() {
        let t = t3();
        let gens = devadze_generators(t).unwrap();
        assert_eq!(gens[4], ElementIndex(239));
        for skip in 0..5 {
            let rest: Vec<_> = gens.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, g)| *g).collect();
            assert!(t.closure(&rest).len() < 512);
        }
        assert!(devadze_generators(&MonoidTable::build(2).unwrap()).is_err());
    }

    #[test]
    fn lazy_n4() {
        let t = MonoidTable::build(4).unwrap();
        assert_eq!(t.order(), 65536);
        assert!(!t.is_dense());
        let id = t.identity();
        let k = ElementIndex(12345);
        assert_eq!(t.mul(id, k), k);
        assert!(t.is_regular(id));
        assert!(t.d_classes().is_err());
    }

    #[test]
    fn parse_errors() {
        assert!("01;1".parse::<BoolMat>().is_err());
        assert!("012;101;110".parse::<BoolMat>().is_err());
        assert!("0".parse::<BoolMat>().is_err());
    }
}
