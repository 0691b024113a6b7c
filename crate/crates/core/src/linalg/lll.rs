//! Exact LLL reduction using only integer arithmetic.
//!
//! The Gram–Schmidt data is kept as the integers `d_i` (Gram determinants of
//! the leading sublattices) and `λ_ij = d_j μ_ij`, so no rational numbers
//! appear.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Lovász constant `num/den`, strictly between 1/4 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LllDelta {
    num: u64,
    den: u64,
}

impl LllDelta {
    pub const DEFAULT: LllDelta = LllDelta { num: 3, den: 4 };
    pub const STRONG: LllDelta = LllDelta { num: 99, den: 100 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        // 1/4 < num/den < 1
        if den == 0 || 4 * num <= den || num >= den {
            return Err(Error::BadLllDelta(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(LllDelta { num: num / g, den: den / g })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }
}

impl Default for LllDelta {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for LllDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for LllDelta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadLllDelta(s.to_string());
        let (n, d) = s.trim().split_once('/').ok_or_else(bad)?;
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let d: u64 = d.trim().parse().map_err(|_| bad())?;
        LllDelta::new(n, d)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// Nearest integer to `a / b` for `b > 0`, halves rounded up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

struct Lll {
    basis: Vec<Vec<BigInt>>,
    // d[0] = 1, d[i] for i = 1..=k
    d: Vec<BigInt>,
    // lambda[i][j] for j < i (zero-based vectors)
    lambda: Vec<Vec<BigInt>>,
    delta: LllDelta,
}

impl Lll {
    fn new(basis: Vec<Vec<BigInt>>, delta: LllDelta) -> Self {
        let k = basis.len();
        Lll { basis, d: vec![BigInt::one(); k + 1], lambda: vec![vec![BigInt::zero(); k]; k], delta }
    }

    // Integral Gram–Schmidt data for vector k, given rows 0..k are done.
    fn incorporate(&mut self, k: usize) -> Result<()> {
        for j in 0..=k {
            let mut u = dot(&self.basis[k], &self.basis[j]);
            for i in 0..j {
                u = (&self.d[i + 1] * &u - &self.lambda[k][i] * &self.lambda[j][i]) / &self.d[i];
            }
            if j < k {
                self.lambda[k][j] = u;
            } else {
                if u.is_zero() {
                    return Err(Error::DependentRows);
                }
                self.d[k + 1] = u;
            }
        }
        Ok(())
    }

    fn reduce(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        if BigInt::from(2) * self.lambda[k][l].abs() <= *dl {
            return;
        }
        let q = round_div(&self.lambda[k][l], dl);
        let (head, tail) = self.basis.split_at_mut(k);
        for (x, y) in tail[0].iter_mut().zip(&head[l]) {
            if !y.is_zero() {
                *x -= &q * y;
            }
        }
        let qd = &q * &self.d[l + 1];
        self.lambda[k][l] -= qd;
        for i in 0..l {
            let t = &q * &self.lambda[l][i];
            self.lambda[k][i] -= t;
        }
    }

    fn lovasz_fails(&self, k: usize) -> bool {
        let a = BigInt::from(self.delta.num);
        let b = BigInt::from(self.delta.den);
        let lam = &self.lambda[k][k - 1];
        b * (&self.d[k + 1] * &self.d[k - 1] + lam * lam) < a * &self.d[k] * &self.d[k]
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.basis.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = std::mem::take(&mut self.lambda[k][j]);
            self.lambda[k][j] = std::mem::replace(&mut self.lambda[k - 1][j], t);
        }
        let lam = self.lambda[k][k - 1].clone();
        let b = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=kmax {
            let t = self.lambda[i][k].clone();
            let new_ik = (&self.d[k + 1] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k];
            let new_ik1 = (&b * &t + &lam * &new_ik) / &self.d[k + 1];
            self.lambda[i][k] = new_ik;
            self.lambda[i][k - 1] = new_ik1;
        }
        self.d[k] = b;
    }

    fn run(mut self) -> Result<Vec<Vec<BigInt>>> {
        let n = self.basis.len();
        if n == 0 {
            return Ok(self.basis);
        }
        self.incorporate(0)?;
        let mut kmax = 0;
        let mut k = 1;
        while k < n {
            if k > kmax {
                kmax = k;
                self.incorporate(k)?;
            }
            self.reduce(k, k - 1);
            if self.lovasz_fails(k) {
                self.swap(k, kmax);
                k = (k - 1).max(1);
                continue;
            }
            for l in (0..k.saturating_sub(1)).rev() {
                self.reduce(k, l);
            }
            k += 1;
        }
        Ok(self.basis)
    }
}

/// LLL-reduces the rows of `basis`, which must be linearly independent.
pub fn lll_reduce(basis: &IntMatrix, delta: LllDelta) -> Result<IntMatrix> {
    let rows = Lll::new(basis.row_vecs(), delta).run()?;
    IntMatrix::from_rows(rows, basis.cols())
}

/// Pairwise reduction: while some `b_i − q·b_j` (integer `q`) is strictly
/// shorter than `b_i`, replace `b_i` by it. The lattice is unchanged and the
/// total squared length strictly decreases, so this terminates. LLL only
/// size-reduces against Gram–Schmidt vectors, so short differences of two
/// basis vectors can survive it.
pub fn pair_reduce(basis: &IntMatrix) -> IntMatrix {
    let mut rows = basis.row_vecs();
    let mut norms: Vec<BigInt> = rows.iter().map(|r| dot(r, r)).collect();
    loop {
        let mut changed = false;
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                if i == j || norms[j].is_zero() {
                    continue;
                }
                let ip = dot(&rows[i], &rows[j]);
                if BigInt::from(2) * ip.abs() <= norms[j] {
                    continue;
                }
                let q = round_div(&ip, &norms[j]);
                let (bj, bi) = if i < j {
                    let (a, b) = rows.split_at_mut(j);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[j], &mut b[0])
                };
                for (x, y) in bi.iter_mut().zip(bj) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
                norms[i] = dot(&rows[i], &rows[i]);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    IntMatrix::from_rows(rows, basis.cols()).expect("shape preserved")
}

/// Reduces vectors against a fixed independent basis by nearest-plane
/// rounding, i.e. subtracts the integer combination of the basis that makes
/// every Gram–Schmidt coefficient at most 1/2 in absolute value.
pub struct SizeReducer {
    lll: Lll,
}

impl SizeReducer {
    pub fn new(basis: &IntMatrix) -> Result<Self> {
        let mut lll = Lll::new(basis.row_vecs(), LllDelta::DEFAULT);
        for k in 0..basis.rows() {
            lll.incorporate(k)?;
        }
        Ok(SizeReducer { lll })
    }

    pub fn reduce(&self, v: &mut [BigInt]) {
        let l = &self.lll;
        let k = l.basis.len();
        let mut lam: Vec<BigInt> = Vec::with_capacity(k);
        for j in 0..k {
            let mut u = dot(v, &l.basis[j]);
            for i in 0..j {
                u = (&l.d[i + 1] * &u - &lam[i] * &l.lambda[j][i]) / &l.d[i];
            }
            lam.push(u);
        }
        for j in (0..k).rev() {
            let dj = &l.d[j + 1];
            if BigInt::from(2) * lam[j].abs() <= *dj {
                continue;
            }
            let q = round_div(&lam[j], dj);
            for (x, y) in v.iter_mut().zip(&l.basis[j]) {
                if !y.is_zero() {
                    *x -= &q * y;
                }
            }
            lam[j] -= &q * dj;
            for i in 0..j {
                let t = &q * &l.lambda[j][i];
                lam[i] -= t;
            }
        }
    }
}

/// Checks size reduction and the Lovász condition exactly (via rational
/// Gram–Schmidt); used by tests and verification code.
pub fn is_lll_reduced(basis: &IntMatrix, delta: LllDelta) -> bool {
    use num_rational::BigRational;
    let k = basis.rows();
    let rows: Vec<Vec<BigRational>> = (0..k).map(|i| basis.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let rdot =
        |a: &[BigRational], b: &[BigRational]| -> BigRational { a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y) };
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    let mut norms: Vec<BigRational> = Vec::with_capacity(k);
    let mut mu = vec![vec![BigRational::zero(); k]; k];
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for i in 0..k {
        let mut v = rows[i].clone();
        for j in 0..i {
            mu[i][j] = rdot(&rows[i], &star[j]) / &norms[j];
            if mu[i][j].abs() > half {
                return false;
            }
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        let nv = rdot(&v, &v);
        if nv.is_zero() {
            return false;
        }
        norms.push(nv);
        star.push(v);
    }
    let delta = BigRational::new(BigInt::from(delta.num), BigInt::from(delta.den));
    (1..k).all(|i| norms[i].clone() >= (&delta - &mu[i][i - 1] * &mu[i][i - 1]) * &norms[i - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_reduction_shortens_a_difference() {
        let b = IntMatrix::from_i64(&[vec![6, 6, 0], vec![6, 2, 7]]);
        let r = pair_reduce(&b);
        assert!(same_lattice_small(&b, &r));
        let rows = r.row_vecs();
        let n: Vec<BigInt> = rows.iter().map(|x| dot(x, x)).collect();
        assert!(n.iter().sum::<BigInt>() < BigInt::from(72 + 89));
        let ip = dot(&rows[0], &rows[1]);
        assert!(BigInt::from(2) * ip.abs() <= n[0].clone().min(n[1].clone()));
    }

    fn same_lattice_small(a: &IntMatrix, b: &IntMatrix) -> bool {
        super::super::hnf::hnf_basis(a).row_vecs() == super::super::hnf::hnf_basis(b).row_vecs()
    }

    #[test]
    fn delta_parsing() {
        assert_eq!("99/100".parse::<LllDelta>().unwrap(), LllDelta::STRONG);
        assert_eq!("6/8".parse::<LllDelta>().unwrap(), LllDelta::DEFAULT);
        assert!("1/4".parse::<LllDelta>().is_err());
        assert!("1/1".parse::<LllDelta>().is_err());
        assert!("x".parse::<LllDelta>().is_err());
    }

    #[test]
    fn orthogonal_basis_unchanged() {
        let b = IntMatrix::from_i64(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 1]]);
        let r = lll_reduce(&b, LllDelta::DEFAULT).unwrap();
        // Lovász swaps may reorder, but vectors stay the same up to sign.
        let mut rows: Vec<Vec<BigInt>> = r.row_vecs().into_iter().map(|v| v.iter().map(|x| x.abs()).collect()).collect();
        rows.sort();
        let mut expected: Vec<Vec<BigInt>> = b.row_vecs();
        expected.sort();
        assert_eq!(rows, expected);
    }

    #[test]
    fn classic_example() {
        let b = IntMatrix::from_i64(&[vec![1, 0], vec![4, 1]]);
        let r = lll_reduce(&b, LllDelta::DEFAULT).unwrap();
        assert!(is_lll_reduced(&r, LllDelta::DEFAULT));
        assert_eq!(r.determinant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn textbook_3d() {
        // Reduced basis from Cohen's worked example.
        let b = IntMatrix::from_i64(&[vec![1, 1, 1], vec![-1, 0, 2], vec![3, 5, 6]]);
        let r = lll_reduce(&b, LllDelta::DEFAULT).unwrap();
        assert!(is_lll_reduced(&r, LllDelta::DEFAULT));
        assert_eq!(r.determinant().unwrap().abs(), b.determinant().unwrap().abs());
    }

    #[test]
    fn dependent_rows_rejected() {
        let b = IntMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(lll_reduce(&b, LllDelta::DEFAULT).unwrap_err(), Error::DependentRows);
    }
}
