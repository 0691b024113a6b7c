//! Wedderburn decomposition of the quotient: the two-sided ideal of each
//! primitive central idempotent, a minimal left ideal inside it, matrix
//! units, and the integer representation on a lattice in the left ideal.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::span::{add_scaled, RowSpan, SparseRat};
use crate::linalg::{hnf_basis, lll_reduce, pair_reduce, rational_solve, Fp, IntMatrix, LllDelta, RatMatrix, Solution, StreamingEchelon};
use crate::monoid::{ElementIndex, MonoidTable};
use crate::radical::IntVec;
use crate::semisimple::{Semisimple, StructureConstants};

/// Prime for rank pre-selection; every selection is then checked exactly.
const WORK_PRIME: u64 = 2_147_483_647;
const SEED: u64 = 0x5eed_b001;
const RANDOM_TRIES: usize = 2000;

/// Square integer matrix, row-major.
pub type IntMat = Vec<Vec<i64>>;

fn denominator_lcm(v: &SparseRat) -> BigInt {
    v.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// `D·v` as integers, with `D` the least common denominator.
pub fn clear_denominators(v: &SparseRat) -> Result<(i64, Vec<(usize, i64)>)> {
    let d = denominator_lcm(v);
    let terms = v
        .iter()
        .map(|(&k, c)| {
            (c * BigRational::from_integer(d.clone()))
                .to_integer()
                .to_i64()
                .map(|c| (k, c))
                .ok_or_else(|| Error::Structure("coefficient exceeds i64".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((d.to_i64().ok_or_else(|| Error::Structure("denominator exceeds i64".into()))?, terms))
}

fn from_ints(terms: &[(usize, i64)]) -> SparseRat {
    terms.iter().filter(|(_, c)| *c != 0).map(|&(k, c)| (k, BigRational::from_integer(c.into()))).collect()
}

fn sparse(dense: &[i64]) -> Vec<(usize, i64)> {
    dense.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, &c)| (k, c)).collect()
}

/// `Σ_t c_t [s(t)] · x` for integer `x`, dense.
fn left_mul(sc: &StructureConstants, left: &[(usize, i64)], x: &[(usize, i64)]) -> Result<Vec<i64>> {
    let mut acc = vec![0i128; sc.dim()];
    for &(g, a) in left {
        for &(j, b) in x {
            let ab = a as i128 * b as i128;
            for &(k, c) in sc.product(g, j) {
                acc[k as usize] += ab * c as i128;
            }
        }
    }
    acc.into_iter().map(|v| i64::try_from(v).map_err(|_| Error::Structure("product coefficient exceeds i64".into()))).collect()
}

/// Linearly independent integer vectors with a nonsingular minor, giving
/// exact coordinates for vectors in their span.
#[derive(Clone, Debug)]
pub struct Frame {
    rows: Vec<Vec<i64>>,
    cols: Vec<usize>,
    // det · (minor)⁻¹
    adj: Vec<Vec<i128>>,
    det: i128,
}

impl Frame {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        let f = Fp::new(WORK_PRIME)?;
        let mut ech = StreamingEchelon::new(f, width);
        let mut cols = Vec::new();
        for r in &rows {
            let entries: Vec<(usize, u64)> = sparse(r).into_iter().map(|(k, c)| (k, f.from_i64(c))).collect();
            cols.push(ech.insert_sparse(&entries).ok_or(Error::DependentRows)?);
        }
        cols.sort_unstable();
        let d = rows.len();
        let minor = IntMatrix::from_fn(d, d, |i, c| BigInt::from(rows[i][cols[c]]));
        let det = minor.determinant()?;
        let inv = match rational_solve(&minor.to_rational(), &RatMatrix::identity(d))? {
            Solution::Unique(x) => x,
            Solution::Inconsistent { .. } => return Err(Error::DependentRows),
        };
        if minor.to_rational().mul(&inv)? != RatMatrix::identity(d) {
            return Err(Error::DependentRows);
        }
        let detq = BigRational::from_integer(det.clone());
        let adj = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let v = inv.get(i, j) * &detq;
                        v.to_integer()
                            .to_i128()
                            .filter(|_| v.is_integer())
                            .ok_or_else(|| Error::Structure("adjugate entry too large".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let det = det.to_i128().ok_or_else(|| Error::Structure("minor determinant too large".into()))?;
        Ok(Frame { rows, cols, adj, det })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `det · coordinates` of `v`, or `None` when `v` is outside the span.
    pub fn scaled_coords(&self, v: &[i64]) -> Option<Vec<i128>> {
        let d = self.len();
        let a: Vec<i128> = (0..d).map(|j| (0..d).map(|c| v[self.cols[c]] as i128 * self.adj[c][j]).sum()).collect();
        let ok = (0..v.len()).all(|k| {
            let s: i128 = (0..d).map(|i| a[i] * self.rows[i][k] as i128).sum();
            s == self.det * v[k] as i128
        });
        ok.then_some(a)
    }

    /// Integer coordinates of `v`, or `None` if `v` is outside the lattice
    /// spanned by the rows.
    pub fn int_coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let a = self.scaled_coords(v)?;
        a.iter().map(|x| (x % self.det == 0).then(|| (x / self.det) as i64)).collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.scaled_coords(v).is_some()
    }
}

/// Exact rank of the span of `vectors` with a frame on independent members.
/// Selection happens modulo a prime and is then verified; `limit` stops
/// early once the rank exceeds it.
pub fn span_frame(vectors: &[Vec<i64>], limit: Option<usize>) -> Result<Option<Frame>> {
    let width = vectors.first().map_or(0, Vec::len);
    let mut p = WORK_PRIME;
    for _ in 0..4 {
        let f = Fp::new(p)?;
        let mut ech = StreamingEchelon::new(f, width);
        let mut chosen = Vec::new();
        for v in vectors {
            let entries: Vec<(usize, u64)> = sparse(v).into_iter().map(|(k, c)| (k, f.from_i64(c))).collect();
            if ech.insert_sparse(&entries).is_some() {
                chosen.push(v.clone());
                if limit.is_some_and(|l| chosen.len() > l) {
                    return Ok(None);
                }
            }
        }
        let frame = Frame::new(chosen)?;
        if vectors.iter().all(|v| frame.contains(v)) {
            return Ok(Some(frame));
        }
        p = crate::linalg::modular::prev_prime(p - 1).ok_or(Error::NotPrime(p))?;
    }
    Err(Error::Structure("rank selection failed for every prime tried".into()))
}

/// The left ideal `S·x` as the dense vectors `[s(g)]·x`, one per basis coset.
pub fn left_multiples(sc: &StructureConstants, x: &[(usize, i64)]) -> Result<Vec<Vec<i64>>> {
    (0..sc.dim()).map(|g| left_mul(sc, &[(g, 1)], x)).collect()
}

/// Exact dimension of the left ideal generated by `x`.
pub fn left_ideal_dim(sc: &StructureConstants, x: &SparseRat) -> Result<usize> {
    let (_, xi) = clear_denominators(x)?;
    Ok(span_frame(&left_multiples(sc, &xi)?, None)?.map_or(0, |f| f.len()))
}

/// How the minimal-left-ideal generator was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorChoice {
    /// The `i`-th row-reduced basis vector (zero-based).
    Single(usize),
    /// The sum of basis vectors `i` and `j`.
    Pair(usize, usize),
    /// The `k`-th seeded random combination.
    Random(usize),
}

impl std::fmt::Display for GeneratorChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeneratorChoice::Single(i) => write!(f, "basis vector {}", i + 1),
            GeneratorChoice::Pair(i, j) => write!(f, "basis vectors {} + {}", i + 1, j + 1),
            GeneratorChoice::Random(k) => write!(f, "random combination {}", k + 1),
        }
    }
}

/// Integer matrices `R(p)` for every monoid element, acting on column
/// coordinates over a lattice basis of the left ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub d: usize,
    /// Indexed by element offset.
    pub matrices: Vec<IntMat>,
}

pub fn mat_mul(a: &IntMat, b: &IntMat) -> Option<IntMat> {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let s: i128 = (0..d).map(|k| a[i][k] as i128 * b[k][j] as i128).sum();
                    i64::try_from(s).ok()
                })
                .collect()
        })
        .collect()
}

pub fn identity_mat(d: usize) -> IntMat {
    (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect()
}

impl Representation {
    pub fn matrix(&self, k: ElementIndex) -> &IntMat {
        &self.matrices[k.offset()]
    }

    pub fn trace(&self, k: ElementIndex) -> i64 {
        let m = self.matrix(k);
        (0..self.d).map(|i| m[i][i]).sum()
    }

    /// Injective on the monoid.
    pub fn is_faithful(&self) -> bool {
        let distinct: HashSet<&IntMat> = self.matrices.iter().collect();
        distinct.len() == self.matrices.len()
    }

    /// First pair `(p, q)` with `R(pq) ≠ R(p)R(q)`.
    pub fn homomorphism_failure<I>(&self, t: &MonoidTable, pairs: I) -> Option<(ElementIndex, ElementIndex)>
    where
        I: IntoIterator<Item = (ElementIndex, ElementIndex)>,
    {
        pairs.into_iter().find(|&(p, q)| mat_mul(self.matrix(p), self.matrix(q)).as_ref() != Some(self.matrix(t.mul(p, q))))
    }
}

impl Representation {
    /// Extends images of monoid generators to every element by walking
    /// words breadth-first from the identity; a word reaching an element
    /// twice with different matrices makes the images inconsistent.
    pub fn from_generators(t: &MonoidTable, gens: &[ElementIndex], images: &[IntMat]) -> Result<Self> {
        let d = images.first().map_or(0, Vec::len);
        let mut matrices: Vec<Option<IntMat>> = vec![None; t.order()];
        matrices[t.identity().offset()] = Some(identity_mat(d));
        let mut queue = std::collections::VecDeque::from([t.identity()]);
        while let Some(k) = queue.pop_front() {
            let m = matrices[k.offset()].clone().expect("queued elements have images");
            for (&g, img) in gens.iter().zip(images) {
                let kg = t.mul(k, g);
                let prod = mat_mul(&m, img).ok_or_else(|| Error::Structure("matrix entry overflow".into()))?;
                match &matrices[kg.offset()] {
                    Some(old) if *old != prod => {
                        return Err(Error::Inconsistent(format!("two words for element {} give different matrices", kg.get())))
                    }
                    Some(_) => {}
                    None => {
                        matrices[kg.offset()] = Some(prod);
                        queue.push_back(kg);
                    }
                }
            }
        }
        let found = matrices.iter().filter(|m| m.is_some()).count();
        if found != t.order() {
            return Err(Error::ClosureFailure { found, expected: t.order() });
        }
        Ok(Representation { d, matrices: matrices.into_iter().flatten().collect() })
    }

    /// Number of distinct matrices over the monoid.
    pub fn image_size(&self) -> usize {
        self.matrices.iter().collect::<HashSet<_>>().len()
    }
}

/// One simple two-sided ideal `S·e ≅ M_d(ℚ)`.
#[derive(Clone, Debug)]
pub struct SimpleComponent {
    pub identity: SparseRat,
    /// Row-reduced basis over quotient positions.
    pub basis: Vec<SparseRat>,
    pub d: usize,
    pub generator: SparseRat,
    pub choice: GeneratorChoice,
    /// Lattice basis `l_1 … l_d` of the minimal left ideal `S·x`, stable
    /// under every monoid element.
    pub left_basis: Vec<Vec<i64>>,
    pub rep: Representation,
}

impl SimpleComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn traces(&self, elements: &[ElementIndex]) -> Vec<i64> {
        elements.iter().map(|&g| self.rep.trace(g)).collect()
    }

    /// Whether `v` lies in this ideal, i.e. `v·e = v`.
    pub fn contains(&self, sc: &StructureConstants, v: &SparseRat) -> bool {
        sc.multiply(v, &self.identity) == *v
    }
}

/// Row-reduced basis of `S·e`.
pub fn two_sided_ideal(sc: &StructureConstants, e: &SparseRat) -> Result<Vec<SparseRat>> {
    let (_, ei) = clear_denominators(e)?;
    let mults = left_multiples(sc, &ei)?;
    // Pre-select independent multiples modulo a prime; the rank is
    // certified by the dimensions summing to dim S in `decompose`.
    let f = Fp::new(WORK_PRIME)?;
    let mut ech = StreamingEchelon::new(f, sc.dim());
    let mut span = RowSpan::new();
    for v in &mults {
        let entries: Vec<(usize, u64)> = sparse(v).into_iter().map(|(k, c)| (k, f.from_i64(c))).collect();
        if ech.insert_sparse(&entries).is_some() {
            span.insert(from_ints(&sparse(v)));
        }
    }
    Ok(span.rows().cloned().collect())
}

fn exact_sqrt(n: usize) -> Option<usize> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

fn try_generator(sc: &StructureConstants, x: &SparseRat, d: usize) -> Result<Option<Frame>> {
    if x.is_empty() {
        return Ok(None);
    }
    let (_, xi) = clear_denominators(x)?;
    Ok(span_frame(&left_multiples(sc, &xi)?, Some(d))?.filter(|f| f.len() == d))
}

/// A generator of a minimal left ideal inside the ideal with the given
/// row-reduced basis: basis vectors in order, then sums of two, then
/// seeded random 0/1 and −1/0/1 combinations.
pub fn minimal_left_ideal(sc: &StructureConstants, basis: &[SparseRat], d: usize) -> Result<(SparseRat, GeneratorChoice, Frame)> {
    for (i, b) in basis.iter().enumerate() {
        if let Some(f) = try_generator(sc, b, d)? {
            return Ok((b.clone(), GeneratorChoice::Single(i), f));
        }
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let mut x = basis[i].clone();
            add_scaled(&mut x, &BigRational::one(), &basis[j]);
            if let Some(f) = try_generator(sc, &x, d)? {
                return Ok((x, GeneratorChoice::Pair(i, j), f));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for k in 0..RANDOM_TRIES {
        let lo = if k < RANDOM_TRIES / 2 { 0 } else { -1 };
        let mut x = SparseRat::new();
        for b in basis {
            let c: i64 = rng.gen_range(lo..=1);
            if c != 0 {
                add_scaled(&mut x, &BigRational::from_integer(c.into()), b);
            }
        }
        if let Some(f) = try_generator(sc, &x, d)? {
            return Ok((x, GeneratorChoice::Random(k), f));
        }
    }
    Err(Error::NoMinimalLeftIdeal(basis.len()))
}

/// Replaces a rational frame of `S·x` by an LLL-reduced basis of the lattice
/// spanned by the integer multiples `[s(g)]·x`, which every monoid element
/// maps into itself.
fn lattice_basis(frame: &Frame, mults: &[Vec<i64>]) -> Result<Frame> {
    let d = frame.len();
    let coords: Vec<Vec<BigInt>> = mults
        .iter()
        .map(|v| {
            frame
                .scaled_coords(v)
                .map(|a| a.into_iter().map(BigInt::from).collect())
                .ok_or_else(|| Error::Structure("left multiple outside the left ideal".into()))
        })
        .collect::<Result<_>>()?;
    let h = hnf_basis(&IntMatrix::from_rows(coords, d)?);
    if h.rows() != d {
        return Err(Error::Structure("left ideal lattice has the wrong rank".into()));
    }
    let det = BigInt::from(frame.det);
    let width = frame.rows[0].len();
    let mut rows = IntMatrix::zeros(d, width);
    for i in 0..d {
        for k in 0..width {
            let s: BigInt = (0..d).map(|j| h.get(i, j) * BigInt::from(frame.rows[j][k])).sum();
            let (q, r) = s.div_rem(&det);
            if !r.is_zero() {
                return Err(Error::Structure("left ideal lattice vector is not integral".into()));
            }
            rows.set(i, k, q);
        }
    }
    let reduced = pair_reduce(&lll_reduce(&rows, LllDelta::STRONG)?);
    let out = (0..d)
        .map(|i| reduced.row(i).iter().map(|x| x.to_i64().ok_or_else(|| Error::Structure("lattice entry exceeds i64".into()))).collect())
        .collect::<Result<Vec<Vec<i64>>>>()?;
    Frame::new(out)
}

fn representation(t: &MonoidTable, s: &Semisimple, frame: &Frame) -> Result<Representation> {
    let d = frame.len();
    let sc = &s.constants;
    let left: Vec<Vec<(usize, i64)>> = frame.rows().iter().map(|r| sparse(r)).collect();
    // R(g) for each basis coset, then extended to all elements by the
    // rewrite rules.
    let regular: Vec<IntMat> = (0..sc.dim())
        .map(|g| {
            let mut m = vec![vec![0i64; d]; d];
            for (j, l) in left.iter().enumerate() {
                let c = frame
                    .int_coords(&left_mul(sc, &[(g, 1)], l)?)
                    .ok_or_else(|| Error::Structure("representation is not integral on the left ideal lattice".into()))?;
                for i in 0..d {
                    m[i][j] = c[i];
                }
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    let matrices = t
        .indices()
        .map(|k| {
            let mut m = vec![vec![0i64; d]; d];
            for (p, c) in s.rewriter.class_of(&s.basis, k)? {
                for i in 0..d {
                    for j in 0..d {
                        m[i][j] += c * regular[p as usize][i][j];
                    }
                }
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    Ok(Representation { d, matrices })
}

fn component(t: &MonoidTable, s: &Semisimple, e: &SparseRat) -> Result<SimpleComponent> {
    let sc = &s.constants;
    let basis = two_sided_ideal(sc, e)?;
    let d = exact_sqrt(basis.len()).ok_or(Error::NotSquare(basis.len()))?;
    let (generator, choice, frame) = minimal_left_ideal(sc, &basis, d)?;
    let (_, xi) = clear_denominators(&generator)?;
    let frame = lattice_basis(&frame, &left_multiples(sc, &xi)?)?;
    let rep = representation(t, s, &frame)?;
    Ok(SimpleComponent { identity: e.clone(), basis, d, generator, choice, left_basis: frame.rows, rep })
}

/// The full decomposition, ideals sorted by dimension and then by the
/// leading position of their identity.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub components: Vec<SimpleComponent>,
}

impl Decomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(SimpleComponent::dim).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.d).collect()
    }
}

pub fn decompose(t: &MonoidTable, s: &Semisimple, idempotents: &[SparseRat]) -> Result<Decomposition> {
    let mut components = idempotents.par_iter().map(|e| component(t, s, e)).collect::<Result<Vec<_>>>()?;
    // Each selected rank is a lower bound; their sum equalling dim S makes
    // every one exact.
    let total: usize = components.iter().map(SimpleComponent::dim).sum();
    if total != s.dim() {
        return Err(Error::Structure(format!("ideal dimensions sum to {total}, not {}", s.dim())));
    }
    components.sort_by_key(|c| (c.dim(), c.identity.keys().next().copied().unwrap_or(usize::MAX)));
    Ok(Decomposition { components })
}

/// Matrix units `E_ij` of one ideal, determined by `E_ij·l_k = δ_jk·l_i`.
#[derive(Clone, Debug)]
pub struct MatrixUnits {
    pub d: usize,
    /// `units[i·d + j] = E_ij` over quotient positions.
    pub units: Vec<SparseRat>,
}

impl MatrixUnits {
    pub fn get(&self, i: usize, j: usize) -> &SparseRat {
        &self.units[i * self.d + j]
    }

    /// `Σ E_ii`.
    pub fn trace_sum(&self) -> SparseRat {
        let mut out = SparseRat::new();
        for i in 0..self.d {
            add_scaled(&mut out, &BigRational::one(), self.get(i, i));
        }
        out
    }

    /// Checks `E_ij·E_kl = δ_jk·E_il` for every quadruple with exact
    /// integer arithmetic after clearing a common denominator.
    pub fn verify(&self, sc: &StructureConstants) -> Result<bool> {
        let d = self.d;
        let den = self.units.iter().fold(BigInt::one(), |acc, u| acc.lcm(&denominator_lcm(u)));
        let dq = BigRational::from_integer(den.clone());
        let den = den.to_i64().ok_or_else(|| Error::Structure("denominator exceeds i64".into()))?;
        let scaled: Vec<IntVec> = self
            .units
            .iter()
            .map(|u| {
                u.iter()
                    .map(|(&k, c)| {
                        (c * &dq).to_integer().to_i64().map(|c| (k, c)).ok_or_else(|| Error::Structure("unit entry exceeds i64".into()))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let target: Vec<IntVec> = scaled.iter().map(|u| u.iter().map(|(&k, &c)| (k, c * den)).collect()).collect();
        let quads: Vec<(usize, usize, usize, usize)> =
            (0..d).flat_map(|i| (0..d).flat_map(move |j| (0..d).flat_map(move |k| (0..d).map(move |l| (i, j, k, l))))).collect();
        Ok(quads.par_iter().all(|&(i, j, k, l)| {
            let Some(p) = sc.multiply_int(&scaled[i * d + j], &scaled[k * d + l]) else { return false };
            if j == k {
                p == target[i * d + l]
            } else {
                p.is_empty()
            }
        }))
    }
}

/// Solves for `E_ij` inside the ideal. The representation on the left
/// ideal is injective on the ideal, so `E_ij` is the unique element acting
/// as the unit matrix `e_ij`.
pub fn matrix_units(s: &Semisimple, c: &SimpleComponent) -> Result<MatrixUnits> {
    let d = c.d;
    let dd = d * d;
    // Action of each ideal basis vector, flattened.
    let actions: Vec<Vec<BigRational>> = c
        .basis
        .iter()
        .map(|b| {
            let mut m = vec![BigRational::zero(); dd];
            for (&pos, coef) in b {
                let r = &c.rep.regular_matrix(s, pos);
                for (slot, x) in m.iter_mut().zip(r.iter().flatten()) {
                    if *x != 0 {
                        *slot += coef * BigRational::from_integer((*x).into());
                    }
                }
            }
            m
        })
        .collect();
    // Σ_m c_m·action_m = unit_ij, for all (i, j) at once.
    let a = RatMatrix::from_fn(dd, dd, |r, m| actions[m][r].clone());
    let x = match rational_solve(&a, &RatMatrix::identity(dd))? {
        Solution::Unique(x) => x,
        Solution::Inconsistent { column } => return Err(Error::Inconsistent(format!("matrix unit {column} has no solution"))),
    };
    if a.mul(&x)? != RatMatrix::identity(dd) {
        return Err(Error::Inconsistent("ideal does not act faithfully on the left ideal".into()));
    }
    let units = (0..dd)
        .map(|u| {
            let mut e = SparseRat::new();
            for (m, b) in c.basis.iter().enumerate() {
                let coef = x.get(m, u);
                if !coef.is_zero() {
                    add_scaled(&mut e, coef, b);
                }
            }
            e
        })
        .collect();
    Ok(MatrixUnits { d, units })
}

impl Representation {
    /// `R` of the basis coset at quotient position `pos`.
    pub fn regular_matrix(&self, s: &Semisimple, pos: usize) -> &IntMat {
        self.matrix(s.basis.element(pos))
    }

    /// `Σ R_ij·E_ij`, the image of `R(p)` back in the ideal.
    pub fn to_ideal(&self, units: &MatrixUnits, p: ElementIndex) -> SparseRat {
        let m = self.matrix(p);
        let mut out = SparseRat::new();
        for i in 0..self.d {
            for j in 0..self.d {
                if m[i][j] != 0 {
                    add_scaled(&mut out, &BigRational::from_integer(m[i][j].into()), units.get(i, j));
                }
            }
        }
        out
    }
}

/// Renders a matrix with `.` for zero entries, columns right-aligned.
pub fn matrix_text(m: &IntMat) -> String {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|&x| if x == 0 { ".".into() } else { x.to_string() }).collect()).collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells.iter().map(|r| r.iter().map(|c| format!("{c:>w$}")).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_coordinates() {
        let f = Frame::new(vec![vec![2, 0, 1], vec![0, 3, 1]]).unwrap();
        assert_eq!(f.int_coords(&[2, 3, 2]), Some(vec![1, 1]));
        assert_eq!(f.int_coords(&[1, 0, 0]), None);
        assert!(f.scaled_coords(&[1, 0, 0]).is_none());
        assert!(f.contains(&[4, -3, 1]));
        assert!(Frame::new(vec![vec![1, 2], vec![2, 4]]).is_err());
    }

    #[test]
    fn dot_matrix_text() {
        assert_eq!(matrix_text(&vec![vec![1, 0], vec![0, -1]]), " 1  .\n . -1");
    }
}
