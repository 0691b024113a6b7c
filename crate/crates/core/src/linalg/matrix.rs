use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
    }

    /// Builds a matrix from rows; all rows must share `cols` entries.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row of length {} in {cols}-column matrix", bad.len())));
        }
        let n = rows.len();
        Ok(IntMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [BigInt] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!("{}×{} times {}×{}", self.rows, self.cols, other.rows, other.cols)));
        }
        if let Some(out) = self.mul_small(other) {
            return Ok(out);
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    // Product in i128 when every entry fits in 32 bits and the inner
    // dimension keeps the sums far from overflow.
    fn mul_small(&self, other: &IntMatrix) -> Option<IntMatrix> {
        let small =
            |m: &IntMatrix| -> Option<Vec<i64>> { m.data.iter().map(|x| x.to_i64().filter(|v| v.unsigned_abs() < 1 << 31)).collect() };
        if self.cols >= 1 << 60 {
            return None;
        }
        let a = small(self)?;
        let b = small(other)?;
        let (n, m) = (self.cols, other.cols);
        let mut acc = vec![0i128; m];
        let mut data = Vec::with_capacity(self.rows * m);
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for (dst, &y) in acc.iter_mut().zip(&b[k * m..(k + 1) * m]) {
                    *dst += (x * y) as i128;
                }
            }
            data.extend(acc.iter().map(|&v| BigInt::from(v)));
        }
        Some(IntMatrix { rows: self.rows, cols: m, data })
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| BigRational::from_integer(self.get(i, j).clone()))
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * prev)
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}×{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dense row-major matrix of exact rationals (always in lowest terms).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Result of a row reduction: the reduced rows and their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row of length {} in {cols}-column matrix", bad.len())));
        }
        let n = rows.len();
        Ok(RatMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_i64(rows).to_rational()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!("{}×{} times {}×{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form; pivot search is left to right, lowest row first.
    pub fn rref(&self) -> Rref {
        let rows = rref_rows(self.row_vecs(), self.cols);
        let pivots = rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect();
        let n = rows.len();
        Rref { matrix: RatMatrix::from_rows(rows, self.cols).unwrap_or_else(|_| RatMatrix::zeros(n, self.cols)), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn right_nullspace(&self) -> Vec<Vec<BigRational>> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[free] = BigRational::one();
                for (r, &p) in rref.pivots.iter().enumerate() {
                    v[p] = -rref.matrix.get(r, free).clone();
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : y · self = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<BigRational>> {
        self.transpose().right_nullspace()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}×{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row-reduces a list of rational rows; returns the nonzero rows of the
/// reduced row echelon form ordered by pivot column.
pub fn rref_rows(mut rows: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut().skip(c) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot, rest) = tail.split_first_mut().expect("pivot row");
        let support: Vec<usize> = (c..cols).filter(|&j| !pivot[j].is_zero()).collect();
        for other in head.iter_mut().chain(rest.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let coef = other[c].clone();
            for &j in &support {
                let d = &coef * &pivot[j];
                other[j] -= d;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Exact rational solution of `a · x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// A particular solution with every free variable set to zero.
    Unique(RatMatrix),
    /// Some right-hand-side column has no solution; the index is the first such column.
    Inconsistent { column: usize },
}

pub fn rational_solve(a: &RatMatrix, b: &RatMatrix) -> Result<Solution> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!("{} equations but {} right-hand-side rows", a.rows(), b.rows())));
    }
    let n = a.cols();
    let k = b.cols();
    let aug: Vec<Vec<BigRational>> = (0..a.rows()).map(|i| a.row(i).iter().chain(b.row(i)).cloned().collect()).collect();
    let reduced = rref_rows(aug, n + k);
    let mut x = RatMatrix::zeros(n, k);
    for row in &reduced {
        let p = row.iter().position(|v| !v.is_zero()).expect("nonzero row");
        if p >= n {
            return Ok(Solution::Inconsistent { column: p - n });
        }
        for j in 0..k {
            x.set(p, j, row[n + j].clone());
        }
    }
    Ok(Solution::Unique(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(18));
        let s = IntMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert!(s.determinant().unwrap().is_zero());
    }

    #[test]
    fn solve_identity() {
        let b = RatMatrix::from_fn(3, 2, |i, j| q(i as i64 + 1, j as i64 + 2));
        assert_eq!(rational_solve(&RatMatrix::identity(3), &b).unwrap(), Solution::Unique(b));
    }

    #[test]
    fn solve_inconsistent() {
        let a = RatMatrix::zeros(2, 2);
        let b = RatMatrix::from_i64(&[vec![0], vec![1]]);
        assert_eq!(rational_solve(&a, &b).unwrap(), Solution::Inconsistent { column: 0 });
    }

    #[test]
    fn solve_underdetermined_sets_free_to_zero() {
        let a = RatMatrix::from_i64(&[vec![1, 1, 1]]);
        let b = RatMatrix::from_i64(&[vec![3]]);
        let Solution::Unique(x) = rational_solve(&a, &b).unwrap() else { panic!() };
        assert_eq!(x, RatMatrix::from_i64(&[vec![3], vec![0], vec![0]]));
    }

    #[test]
    fn nullspaces() {
        let m = RatMatrix::from_i64(&[vec![2, 4], vec![1, 2]]);
        let left = m.left_nullspace();
        assert_eq!(left, vec![vec![q(-1, 2), q(1, 1)]]);
        let right = m.right_nullspace();
        assert_eq!(right, vec![vec![q(-2, 1), q(1, 1)]]);
    }
}
