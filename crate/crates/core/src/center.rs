//! The center of the semisimple quotient: a modular rank computation picks
//! out independent commutator equations, an exact integer kernel of those
//! equations gives a lattice basis, and LLL followed by pairwise reduction
//! shortens it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::modular::next_prime;
use crate::linalg::span::{sparse_from_ints, BasisExpander, SparseRat};
use crate::linalg::{left_kernel, lll_reduce, pair_reduce, Fp, IntMatrix, LllDelta, StreamingEchelon};
use crate::notation::{combination, letter_names};
use crate::radical::IntVec;
use crate::semisimple::StructureConstants;

pub const DEFAULT_MODULUS: u64 = 101;

// Primes tried before giving up on an exactly central basis.
const MAX_ATTEMPTS: usize = 6;

/// Rank modulo `p` of the commutator system `Σ_j (d_ij^k − d_ji^k) z_j = 0`,
/// one equation per pair `(i, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorRank {
    pub modulus: u64,
    pub rank: usize,
    pub nullity: usize,
    /// Zero-based `(i, k)` pairs of the equations that raised the rank, in
    /// the order `i` then `k`.
    pub pairs: Vec<(usize, usize)>,
}

fn coefficient(product: &[(u16, i8)], k: usize) -> i64 {
    product.binary_search_by_key(&(k as u16), |&(kk, _)| kk).map(|at| product[at].1 as i64).unwrap_or(0)
}

/// Coefficients over `j` of the commutator equation `(i, k)`.
pub fn commutator_row(sc: &StructureConstants, i: usize, k: usize) -> Vec<i64> {
    (0..sc.dim()).map(|j| coefficient(sc.product(i, j), k) - coefficient(sc.product(j, i), k)).collect()
}

/// Streams the `n² × n` commutator system through an incremental echelon
/// form modulo `p`; the full system is never stored.
pub fn commutator_rank_mod_p(sc: &StructureConstants, p: u64) -> Result<CommutatorRank> {
    let f = Fp::new(p)?;
    let n = sc.dim();
    let mut ech = StreamingEchelon::new(f, n);
    let mut pairs = Vec::new();
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    for i in 0..n {
        rows.iter_mut().for_each(Vec::clear);
        for j in 0..n {
            for &(k, c) in sc.product(i, j) {
                rows[k as usize].push((j, f.from_i64(c as i64)));
            }
            for &(k, c) in sc.product(j, i) {
                rows[k as usize].push((j, f.from_i64(-(c as i64))));
            }
        }
        for (k, r) in rows.iter().enumerate() {
            if !r.is_empty() && ech.insert_sparse(r).is_some() {
                pairs.push((i, k));
            }
        }
    }
    let rank = ech.rank();
    Ok(CommutatorRank { modulus: p, rank, nullity: n - rank, pairs })
}

/// `z·g = g·z` for every basis coset `g`, checked exactly.
pub fn is_central(sc: &StructureConstants, z: &IntVec) -> bool {
    let n = sc.dim();
    let mut left = vec![0i128; n];
    let mut right = vec![0i128; n];
    (0..n).all(|g| {
        left.iter_mut().for_each(|x| *x = 0);
        right.iter_mut().for_each(|x| *x = 0);
        for (&i, &c) in z {
            for &(k, d) in sc.product(i, g) {
                left[k as usize] += c as i128 * d as i128;
            }
            for &(k, d) in sc.product(g, i) {
                right[k as usize] += c as i128 * d as i128;
            }
        }
        left == right
    })
}

/// Integer lattice basis of the center, with its multiplication table.
#[derive(Clone, Debug, Serialize)]
pub struct CenterBasis {
    /// Basis vectors over quotient positions, sorted by squared length and
    /// then by leading position, each with a positive leading entry.
    pub vectors: Vec<IntVec>,
    pub names: Vec<String>,
    pub commutator: CommutatorRank,
}

impl CenterBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn squared_lengths(&self) -> Vec<i64> {
        self.vectors.iter().map(|v| v.values().map(|c| c * c).sum()).collect()
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.vectors.iter().flat_map(|v| v.values()).map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn rational(&self) -> Vec<SparseRat> {
        self.vectors.iter().map(to_rat).collect()
    }

    /// Element of the center with the given coordinates over this basis.
    pub fn combine(&self, coeffs: &[BigRational]) -> SparseRat {
        let mut out = SparseRat::new();
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            crate::linalg::add_scaled(&mut out, c, &to_rat(v));
        }
        out
    }
}

/// Integer vector as a rational one.
pub fn to_rat(v: &IntVec) -> SparseRat {
    sparse_from_ints(v.iter().map(|(&k, &c)| (k, c)))
}

fn row_to_intvec(row: &[BigInt]) -> Result<IntVec> {
    let mut v = IntVec::new();
    for (j, x) in row.iter().enumerate() {
        if !x.is_zero() {
            let c = x.to_i64().ok_or_else(|| Error::Structure("center basis entry exceeds i64".into()))?;
            v.insert(j, c);
        }
    }
    Ok(v)
}

/// Sign-normalises and sorts by `(squared length, leading position, vector)`.
pub fn sort_basis(vectors: &mut [IntVec]) {
    for v in vectors.iter_mut() {
        if v.values().next().is_some_and(|&c| c < 0) {
            v.values_mut().for_each(|c| *c = -*c);
        }
    }
    vectors.sort_by_cached_key(|v| {
        let len: i64 = v.values().map(|c| c * c).sum();
        let lead = v.keys().next().copied().unwrap_or(usize::MAX);
        (len, lead, v.iter().map(|(&k, &c)| (k, c)).collect::<Vec<_>>())
    });
}

/// Center of the quotient. Equations are selected modulo `modulus`; if the
/// resulting kernel is not exactly central the selection was unlucky and
/// the next prime above the dimension is tried.
pub fn center_basis(sc: &StructureConstants, delta: LllDelta, modulus: u64) -> Result<CenterBasis> {
    let n = sc.dim();
    let mut p = modulus;
    let mut failed = None;
    for _ in 0..MAX_ATTEMPTS {
        let commutator = commutator_rank_mod_p(sc, p)?;
        let rows: Vec<Vec<i64>> = commutator.pairs.iter().map(|&(i, k)| commutator_row(sc, i, k)).collect();
        let z0 = if rows.is_empty() { IntMatrix::zeros(0, n) } else { IntMatrix::from_i64(&rows) };
        // x·Z0ᵀ = 0 is the right kernel of Z0.
        let kernel = left_kernel(&z0.transpose())?;
        let reduced = pair_reduce(&lll_reduce(&kernel.basis, delta)?);
        let mut vectors = (0..reduced.rows()).map(|i| row_to_intvec(reduced.row(i))).collect::<Result<Vec<_>>>()?;
        match vectors.iter().position(|z| !is_central(sc, z)) {
            None => {
                sort_basis(&mut vectors);
                let names = letter_names(vectors.len());
                return Ok(CenterBasis { vectors, names, commutator });
            }
            Some(bad) => failed = Some(bad),
        }
        p = next_prime(p.max(n as u64) + 1);
    }
    Err(Error::NotCentral(failed.unwrap_or(0)))
}

/// Products of basis elements expressed over the same basis:
/// `entries[a][b][c]` is the coefficient of basis element `c` in `v_a·v_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterTable {
    pub names: Vec<String>,
    pub entries: Vec<Vec<Vec<BigRational>>>,
}

impl CenterTable {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| (0..n).all(|b| self.entries[a][b] == self.entries[b][a]))
    }

    /// Text of the entry `v_a·v_b`, for example `5B - 4N`.
    pub fn cell(&self, a: usize, b: usize) -> String {
        combination(&self.entries[a][b], &self.names).replace(' ', "")
    }

    /// Product of two elements given by coordinates over the basis.
    pub fn multiply(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let n = self.dim();
        let mut out = vec![BigRational::zero(); n];
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if y[b].is_zero() {
                    continue;
                }
                let xy = &x[a] * &y[b];
                for (o, e) in out.iter_mut().zip(&self.entries[a][b]) {
                    if !e.is_zero() {
                        *o += &xy * e;
                    }
                }
            }
        }
        out
    }

    /// Grid with one row per left factor, cells separated by two spaces.
    pub fn to_text(&self) -> String {
        let n = self.dim();
        let cells: Vec<Vec<String>> = (0..n).map(|a| (0..n).map(|b| self.cell(a, b)).collect()).collect();
        let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
        let mut s = String::new();
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            s.push_str(line.join("  ").trim_end());
            s.push('\n');
        }
        s
    }
}

/// Multiplication table of any basis of a commutative subalgebra, given as
/// integer vectors over quotient positions.
pub fn center_multiplication(sc: &StructureConstants, vectors: &[IntVec], names: &[String]) -> Result<CenterTable> {
    let rat: Vec<SparseRat> = vectors.iter().map(to_rat).collect();
    let expander = BasisExpander::new(&rat).map_err(|i| Error::Structure(format!("basis vector {} is dependent", names[i])))?;
    let n = vectors.len();
    let mut entries = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let p = sc.multiply_int(&vectors[a], &vectors[b]).ok_or_else(|| Error::Structure("product coefficient overflow".into()))?;
            entries[a][b] = expander.expand(&to_rat(&p)).ok_or_else(|| Error::NotInSpan(format!("{}·{}", names[a], names[b])))?;
        }
    }
    Ok(CenterTable { names: names.to_vec(), entries })
}

/// Multiplication table for rational basis vectors.
pub fn rational_multiplication(sc: &StructureConstants, vectors: &[SparseRat], names: &[String]) -> Result<CenterTable> {
    let expander = BasisExpander::new(vectors).map_err(|i| Error::Structure(format!("basis vector {} is dependent", names[i])))?;
    let n = vectors.len();
    let mut entries = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let p = sc.multiply(&vectors[a], &vectors[b]);
            entries[a][b] = expander.expand(&p).ok_or_else(|| Error::NotInSpan(format!("{}·{}", names[a], names[b])))?;
        }
    }
    Ok(CenterTable { names: names.to_vec(), entries })
}

/// The center with its table.
#[derive(Clone, Debug)]
pub struct Center {
    pub basis: CenterBasis,
    pub table: CenterTable,
}

pub fn compute_center(sc: &StructureConstants, delta: LllDelta, modulus: u64) -> Result<Center> {
    let basis = center_basis(sc, delta, modulus)?;
    let table = center_multiplication(sc, &basis.vectors, &basis.names)?;
    Ok(Center { basis, table })
}
