//! Exact left kernels by multimodular elimination and rational
//! reconstruction, and LLL-reduced integer nullspace bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::hnf::hnf_basis;
use super::lll::{lll_reduce, LllDelta};
use super::modular::{kernel_from_rcf, prev_prime, rcf_in_place, Fp};
use super::IntMatrix;
use crate::error::{Error, Result};

const MAX_PRIMES: usize = 400;
const FIRST_PRIME: u64 = 2_147_483_647;

/// Combines `x ≡ a (mod m)` and `x ≡ b (mod p)` into a residue modulo `m·p`.
pub fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let f = Fp::new(p).expect("prime modulus");
    let a_mod_p = f.from_bigint(a);
    let m_inv = f.inv(f.from_bigint(m));
    let t = f.mul(f.sub(b, a_mod_p), m_inv);
    let x = a + m * BigInt::from(t);
    x.mod_floor(&(m * pb))
}

/// The unique `r/s` with `|r|, s ≤ √(m/2)` and `r ≡ s·a (mod m)`, if any.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Left kernel of an integer matrix.
#[derive(Clone, Debug)]
pub struct LeftKernel {
    /// Rank of the matrix over ℚ.
    pub rank: usize,
    /// Row indices that are not combinations of later rows, in increasing order.
    pub free: Vec<usize>,
    /// Integer basis of `{x ∈ ℤ^rows : x·m = 0}`, one row per free index.
    pub basis: IntMatrix,
    /// True when each basis row has a 1 at its own free index and 0 at the
    /// other free indices.
    pub unit_on_free: bool,
}

struct Modular {
    rank: usize,
    free: Vec<usize>,
    // kernel vectors mod p, indexed [free][row]
    vectors: Vec<Vec<u64>>,
}

// Rows are processed in reverse order so that elimination prefers later
// rows as pivots; each kernel vector then has its lowest nonzero entry at
// a free row.
fn kernel_mod_p(m: &IntMatrix, p: u64) -> Modular {
    let f = Fp::new(p).expect("prime");
    let (rows, cols) = (m.rows(), m.cols());
    let mut t: Vec<Vec<u64>> = (0..cols).map(|c| (0..rows).map(|i| f.from_bigint(m.get(rows - 1 - i, c))).collect()).collect();
    let (rank, pivots) = rcf_in_place(&f, &mut t, rows);
    let rcf = super::ModRcf { modulus: p, rank, pivots, matrix: t };
    let mut ker: Vec<(usize, Vec<u64>)> =
        kernel_from_rcf(&f, &rcf, rows).into_iter().map(|(free, v)| (rows - 1 - free, v.into_iter().rev().collect())).collect();
    ker.sort_by_key(|(free, _)| *free);
    Modular { rank, free: ker.iter().map(|(f, _)| *f).collect(), vectors: ker.into_iter().map(|(_, v)| v).collect() }
}

fn verify(m: &IntMatrix, basis: &[Vec<BigInt>]) -> bool {
    basis.par_iter().all(|x| {
        (0..m.cols()).all(|c| {
            let mut s = BigInt::zero();
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    let v = m.get(i, c);
                    if !v.is_zero() {
                        s += xi * v;
                    }
                }
            }
            s.is_zero()
        })
    })
}

fn primitive_row(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Exact left kernel. The rank is certified: elimination modulo a prime can
/// only under-estimate it, and an exactly verified kernel of the
/// complementary dimension bounds it from above.
pub fn left_kernel(m: &IntMatrix) -> Result<LeftKernel> {
    let rows = m.rows();
    let mut p = FIRST_PRIME;
    let mut best: Option<Modular> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    for _ in 0..MAX_PRIMES {
        let cur = kernel_mod_p(m, p);
        let restart = match &best {
            None => true,
            // Unlucky primes lose rank or push free rows later.
            Some(b) => cur.rank > b.rank || (cur.rank == b.rank && cur.free > b.free),
        };
        let skip = match &best {
            Some(b) => cur.rank < b.rank || (cur.rank == b.rank && cur.free < b.free),
            None => false,
        };
        if restart {
            residues = cur.vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
            modulus = BigInt::from(p);
            best = Some(cur);
        } else if !skip {
            residues.par_iter_mut().zip(&cur.vectors).for_each(|(acc, v)| {
                for (a, &b) in acc.iter_mut().zip(v) {
                    *a = crt(a, &modulus, b, p);
                }
            });
            modulus *= BigInt::from(p);
        }
        p = prev_prime(p).expect("enough primes below 2^31");
        if skip {
            continue;
        }
        let b = best.as_ref().expect("set above");
        if b.free.is_empty() {
            return Ok(LeftKernel { rank: b.rank, free: Vec::new(), basis: IntMatrix::zeros(0, rows), unit_on_free: true });
        }
        let recon: Option<Vec<Vec<BigRational>>> =
            residues.par_iter().map(|v| v.iter().map(|a| rational_reconstruct(a, &modulus)).collect()).collect();
        let Some(recon) = recon else { continue };
        let basis: Vec<Vec<BigInt>> = recon.iter().map(|v| primitive_row(v)).collect();
        if !verify(m, &basis) {
            continue;
        }
        let unit_on_free = recon.iter().all(|v| v.iter().all(|x| x.is_integer()));
        let mut kernel = LeftKernel { rank: b.rank, free: b.free.clone(), basis: IntMatrix::from_rows(basis, rows)?, unit_on_free };
        if !unit_on_free {
            kernel.basis = saturate(&kernel.basis)?;
        }
        return Ok(kernel);
    }
    Err(Error::Structure(format!("left kernel did not stabilise after {MAX_PRIMES} primes")))
}

/// Basis of `span_ℚ(rows) ∩ ℤ^n` for independent integer rows.
pub fn saturate(b: &IntMatrix) -> Result<IntMatrix> {
    let (k, n) = (b.rows(), b.cols());
    if k == 0 {
        return Ok(b.clone());
    }
    // Complete-to-lattice trick: x ∈ ℤ^n lies in the ℚ-span iff x is in the
    // left kernel of a matrix whose left kernel over ℚ is the span. Use the
    // right kernel of b: x·N = 0 with N a basis of the right nullspace.
    let rat = b.to_rational();
    let right = rat.right_nullspace();
    if right.is_empty() {
        return Ok(IntMatrix::identity(n));
    }
    let ncols: Vec<Vec<BigInt>> = right.iter().map(|v| primitive_row(v)).collect();
    // x·Nᵀ = 0 over ℤ; the lattice {x ∈ ℤ^n : x·Nᵀ = 0} is saturated.
    let nt = IntMatrix::from_rows(ncols, n)?.transpose();
    let aug: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = nt.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let h = hnf_basis(&IntMatrix::from_rows(aug, nt.cols() + n)?);
    let lead = nt.cols();
    let out: Vec<Vec<BigInt>> =
        h.row_vecs().into_iter().filter(|r| r[..lead].iter().all(|x| x.is_zero())).map(|r| r[lead..].to_vec()).collect();
    if out.len() != k {
        return Err(Error::Structure(format!("saturation produced {} rows, expected {k}", out.len())));
    }
    IntMatrix::from_rows(out, n)
}

/// LLL-reduced basis of the left integer nullspace, each row scaled so its
/// first nonzero entry is positive, sorted by the position of that entry
/// (ties by the row itself).
pub fn integer_nullspace(m: &IntMatrix, delta: LllDelta) -> Result<IntMatrix> {
    let kernel = left_kernel(m)?;
    if kernel.basis.rows() == 0 {
        return Ok(kernel.basis);
    }
    let reduced = lll_reduce(&kernel.basis, delta)?;
    Ok(normalize_rows(&reduced))
}

/// Sign-normalizes rows (first nonzero entry positive) and sorts them by
/// leading index, then lexicographically.
pub fn normalize_rows(m: &IntMatrix) -> IntMatrix {
    let mut rows: Vec<(usize, Vec<BigInt>)> = m
        .row_vecs()
        .into_iter()
        .map(|mut r| {
            let lead = r.iter().position(|x| !x.is_zero()).unwrap_or(r.len());
            if lead < r.len() && r[lead].is_negative() {
                for x in r.iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            (lead, r)
        })
        .collect();
    rows.sort();
    IntMatrix::from_rows(rows.into_iter().map(|(_, r)| r).collect(), m.cols()).expect("shape")
}
