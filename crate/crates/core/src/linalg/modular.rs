//! Linear algebra over the prime field `𝔽_p` for word-sized `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntMatrix;
use crate::error::{Error, Result};

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let f = Fp { p: n };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a % n, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest prime strictly less than `n`, if any.
pub fn prev_prime(n: u64) -> Option<u64> {
    (2..n).rev().find(|&c| is_prime(c))
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Arithmetic in `𝔽_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 63 {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.p <= u32::MAX as u64 {
            (a * b) % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced residue fits")
    }

    /// Symmetric lift into `(−p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// `dst ← dst − c·src` on dense rows.
    #[inline]
    pub fn axpy(&self, dst: &mut [u64], c: u64, src: &[u64]) {
        if c == 0 {
            return;
        }
        let nc = self.neg(c);
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = self.add(*d, self.mul(nc, s));
            }
        }
    }
}

/// Row canonical form over `𝔽_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModRcf {
    pub modulus: u64,
    pub rank: usize,
    /// Pivot columns in increasing order (zero-based).
    pub pivots: Vec<usize>,
    /// The reduced matrix, rows × cols, residues in `0..p`.
    pub matrix: Vec<Vec<u64>>,
}

/// Row canonical form of an integer matrix modulo a prime.
pub fn modular_rcf(m: &IntMatrix, p: u64) -> Result<ModRcf> {
    let f = Fp::new(p)?;
    let mut rows: Vec<Vec<u64>> = (0..m.rows()).map(|i| m.row(i).iter().map(|v| f.from_bigint(v)).collect()).collect();
    let (rank, pivots) = rcf_in_place(&f, &mut rows, m.cols());
    Ok(ModRcf { modulus: p, rank, pivots, matrix: rows })
}

/// Reduces `rows` to row canonical form in place; returns rank and pivot columns.
pub fn rcf_in_place(f: &Fp, rows: &mut [Vec<u64>], cols: usize) -> (usize, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row exists");
        for other in head.iter_mut().chain(rest.iter_mut()) {
            let coef = other[c];
            f.axpy(other, coef, pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

/// Incrementally maintained row canonical form of a growing set of vectors.
///
/// Each inserted vector is reduced against the current basis; if a nonzero
/// remainder is left it becomes a new basis row and its pivot is cleared
/// from every other row, so the basis stays fully reduced.
#[derive(Clone, Debug)]
pub struct StreamingEchelon {
    field: Fp,
    width: usize,
    rows: Vec<Vec<u64>>,
    pivot_cols: Vec<usize>,
    row_of_col: Vec<Option<usize>>,
}

impl StreamingEchelon {
    pub fn new(field: Fp, width: usize) -> Self {
        StreamingEchelon { field, width, rows: Vec::new(), pivot_cols: Vec::new(), row_of_col: vec![None; width] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Inserts a sparse vector given as `(column, residue)` pairs. Returns
    /// the new pivot column if the vector was independent of the basis.
    pub fn insert_sparse(&mut self, entries: &[(usize, u64)]) -> Option<usize> {
        let f = self.field;
        let mut v = vec![0u64; self.width];
        for &(c, x) in entries {
            v[c] = f.add(v[c], x % f.modulus());
        }
        let mut reducers: Vec<(usize, u64)> = Vec::new();
        for &(c, _) in entries {
            if let Some(r) = self.row_of_col[c] {
                if v[c] != 0 && !reducers.iter().any(|&(rr, _)| rr == r) {
                    reducers.push((r, v[c]));
                }
            }
        }
        if reducers.is_empty() && entries.iter().all(|&(c, _)| v[c] == 0) {
            return None;
        }
        // Pivot columns of a reduced basis are zero in every other basis
        // row, so the coefficients read off the input are final.
        for (r, coef) in reducers {
            f.axpy(&mut v, coef, &self.rows[r]);
        }
        self.push_reduced(v)
    }

    /// Inserts a dense vector.
    pub fn insert(&mut self, dense: &[u64]) -> Option<usize> {
        let f = self.field;
        let mut v: Vec<u64> = dense.iter().map(|x| x % f.modulus()).collect();
        for (r, &c) in self.pivot_cols.iter().enumerate() {
            let coef = v[c];
            if coef != 0 {
                f.axpy(&mut v, coef, &self.rows[r]);
            }
        }
        self.push_reduced(v)
    }

    fn push_reduced(&mut self, mut v: Vec<u64>) -> Option<usize> {
        let f = self.field;
        let c = v.iter().position(|&x| x != 0)?;
        let inv = f.inv(v[c]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let coef = row[c];
            f.axpy(row, coef, &v);
        }
        self.row_of_col[c] = Some(self.rows.len());
        self.rows.push(v);
        self.pivot_cols.push(c);
        Some(c)
    }

    /// Row canonical form of the accumulated basis, rows sorted by pivot.
    pub fn into_rcf(self) -> ModRcf {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivot_cols[r]);
        let pivots = order.iter().map(|&r| self.pivot_cols[r]).collect();
        let mut rows = self.rows;
        let matrix = order.iter().map(|&r| std::mem::take(&mut rows[r])).collect();
        ModRcf { modulus: self.field.modulus(), rank: order.len(), pivots, matrix }
    }
}

/// Right kernel basis of a matrix in row canonical form: one vector per
/// free column, with a 1 in that column and zeros in the other free columns.
pub fn kernel_from_rcf(f: &Fp, rcf: &ModRcf, cols: usize) -> Vec<(usize, Vec<u64>)> {
    let mut is_pivot = vec![false; cols];
    for &c in &rcf.pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (r, &pc) in rcf.pivots.iter().enumerate() {
                v[pc] = f.neg(rcf.matrix[r][free]);
            }
            (free, v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(101));
        assert!(!is_prime(100));
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(is_prime((1 << 61) - 1));
        assert_eq!(next_prime(470), 479);
        assert!(Fp::new(91).is_err());
    }

    #[test]
    fn field_ops() {
        let f = Fp::new(101).unwrap();
        assert_eq!(f.mul(f.inv(37), 37), 1);
        assert_eq!(f.from_i64(-1), 100);
        assert_eq!(f.lift(100), -1);
        assert_eq!(f.sub(3, 5), 99);
    }

    #[test]
    fn rcf_examples() {
        let id = IntMatrix::identity(4);
        let r = modular_rcf(&id, 101).unwrap();
        assert_eq!(r.rank, 4);
        assert_eq!(r.pivots, vec![0, 1, 2, 3]);

        let m = IntMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        let r = modular_rcf(&m, 101).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.matrix[0], vec![1, 2]);
        assert!(modular_rcf(&m, 100).is_err());
    }

    #[test]
    fn streaming_matches_batch() {
        let f = Fp::new(101).unwrap();
        let data: Vec<Vec<i64>> =
            vec![vec![0, 1, 2, 0, 3], vec![0, 2, 4, 0, 6], vec![1, 0, 0, 5, 0], vec![1, 1, 2, 5, 3], vec![0, 0, 0, 1, 1]];
        let mut s = StreamingEchelon::new(f, 5);
        let accepted: Vec<bool> = data
            .iter()
            .map(|row| {
                let sparse: Vec<(usize, u64)> = row.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, f.from_i64(x))).collect();
                s.insert_sparse(&sparse).is_some()
            })
            .collect();
        assert_eq!(accepted, vec![true, false, true, false, true]);
        let batch = modular_rcf(&IntMatrix::from_i64(&data), 101).unwrap();
        let streamed = s.into_rcf();
        assert_eq!(streamed.rank, batch.rank);
        assert_eq!(streamed.pivots, batch.pivots);
        assert_eq!(streamed.matrix, batch.matrix[..batch.rank].to_vec());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = Fp::new(101).unwrap();
        let m = IntMatrix::from_i64(&[vec![1, 2, 3, 4], vec![2, 4, 7, 9]]);
        let rcf = modular_rcf(&m, 101).unwrap();
        for (_, v) in kernel_from_rcf(&f, &rcf, 4) {
            for i in 0..2 {
                let dot = (0..4).fold(0, |acc, j| f.add(acc, f.mul(f.from_bigint(m.get(i, j)), v[j])));
                assert_eq!(dot, 0);
            }
        }
    }
}
