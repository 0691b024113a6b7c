//! Splitting the center into orthogonal primitive idempotents: pick an
//! element of a central ideal, factor its minimal polynomial over ℚ, and
//! split the ideal along a coprime factorisation until every piece is
//! one-dimensional.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::center::CenterTable;
use crate::error::{Error, Result};
use crate::linalg::span::{BasisExpander, RowSpan, SparseRat};
use crate::notation::combination;

/// Element of the center as coordinates over the center basis.
pub type Coords = Vec<BigRational>;

fn to_sparse(v: &[BigRational]) -> SparseRat {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn to_dense(v: &SparseRat, n: usize) -> Coords {
    let mut out = vec![BigRational::zero(); n];
    for (&i, c) in v {
        out[i] = c.clone();
    }
    out
}

fn scale(v: &[BigRational], c: &BigRational) -> Coords {
    v.iter().map(|x| x * c).collect()
}

fn add(a: &[BigRational], b: &[BigRational]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn is_zero(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Monic polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `(t − r₁)(t − r₂)…`
    pub fn from_roots(roots: &[BigRational]) -> Self {
        let mut p = Poly::new(vec![BigRational::one()]);
        for r in roots {
            p = p.mul_linear(r);
        }
        p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    fn mul_linear(&self, r: &BigRational) -> Poly {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * r;
        }
        Poly::new(out)
    }

    /// Quotient by `t − r`, assuming `r` is a root.
    pub fn deflate(&self, r: &BigRational) -> Poly {
        let d = self.degree();
        let mut q = vec![BigRational::zero(); d];
        let mut carry = BigRational::zero();
        for i in (1..=d).rev() {
            carry = &self.coeffs[i] + carry * r;
            q[i - 1] = carry.clone();
        }
        Poly::new(q)
    }

    /// Rational roots with multiplicity, in increasing order, and the
    /// remaining factor without rational roots.
    pub fn rational_roots(&self) -> (Vec<BigRational>, Poly) {
        let mut p = self.clone();
        let mut roots = Vec::new();
        while p.degree() > 0 {
            match first_rational_root(&p) {
                Some(r) => {
                    p = p.deflate(&r);
                    roots.push(r);
                }
                None => break,
            }
        }
        roots.sort();
        (roots, p)
    }

    /// Value at an element of a commutative algebra with the given
    /// identity.
    pub fn eval_at(&self, table: &CenterTable, x: &[BigRational], identity: &[BigRational]) -> Coords {
        let mut acc = vec![BigRational::zero(); x.len()];
        for c in self.coeffs.iter().rev() {
            acc = add(&table.multiply(&acc, x), &scale(identity, c));
        }
        acc
    }

    /// Product of linear factors, e.g. `t(t - 1)` or `(t + 1)(t - 5)`;
    /// falls back to the expanded form when it does not split.
    pub fn factored(&self) -> String {
        let (roots, rest) = self.rational_roots();
        if rest.degree() > 0 {
            return self.to_string();
        }
        let mut s = String::new();
        for r in roots {
            if r.is_zero() {
                s.push('t');
            } else if r.is_negative() {
                s.push_str(&format!("(t + {})", -r));
            } else {
                s.push_str(&format!("(t - {r})"));
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn first_rational_root(p: &Poly) -> Option<BigRational> {
    if p.coeffs[0].is_zero() {
        return Some(BigRational::zero());
    }
    // Primitive integer form.
    let l = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let lead = ints.last().cloned()?;
    let mut best: Option<BigRational> = None;
    for a in divisors(&ints[0]) {
        for b in divisors(&lead) {
            for cand in [BigRational::new(a.clone(), b.clone()), BigRational::new(-a.clone(), b.clone())] {
                if p.eval(&cand).is_zero() && best.as_ref().is_none_or(|x| cand < *x) {
                    best = Some(cand);
                }
            }
        }
    }
    best
}

/// Ideal of the center generated by `y`: the span of `y·v` over the basis.
pub fn ideal_generated(table: &CenterTable, y: &[BigRational]) -> RowSpan {
    let n = table.dim();
    let mut span = RowSpan::new();
    for b in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[b] = BigRational::one();
        span.insert(to_sparse(&table.multiply(y, &e)));
    }
    span
}

/// The element `e` of the span with `e·x = x` for every `x` in it.
pub fn ideal_identity(table: &CenterTable, span: &RowSpan) -> Result<Coords> {
    let n = table.dim();
    let basis: Vec<Coords> = span.rows().map(|r| to_dense(r, n)).collect();
    let k = basis.len();
    if k == 0 {
        return Err(Error::Structure("zero ideal has no identity".into()));
    }
    // Σ_a c_a·(x_a·x_b) = x_b for every b, read on every coordinate.
    let products: Vec<Vec<Coords>> = basis.iter().map(|xa| basis.iter().map(|xb| table.multiply(xa, xb)).collect()).collect();
    let rows = k * n;
    let a = crate::linalg::RatMatrix::from_fn(rows, k, |r, c| products[c][r / n][r % n].clone());
    let rhs = crate::linalg::RatMatrix::from_fn(rows, 1, |r, _| basis[r / n][r % n].clone());
    match crate::linalg::rational_solve(&a, &rhs)? {
        crate::linalg::Solution::Unique(sol) => {
            let mut e = vec![BigRational::zero(); n];
            for (ci, x) in basis.iter().enumerate() {
                e = add(&e, &scale(x, sol.get(ci, 0)));
            }
            Ok(e)
        }
        crate::linalg::Solution::Inconsistent { .. } => Err(Error::Structure("ideal has no identity element".into())),
    }
}

/// Least-degree monic `p` with `p(x) = 0`, constants read as multiples of
/// `identity`.
pub fn minimal_polynomial(table: &CenterTable, x: &[BigRational], identity: &[BigRational]) -> Result<Poly> {
    let mut powers: Vec<SparseRat> = vec![to_sparse(identity)];
    let mut cur = identity.to_vec();
    for _ in 0..=table.dim() {
        cur = table.multiply(&cur, x);
        let expander =
            BasisExpander::new(&powers).map_err(|_| Error::Structure("powers became dependent before the loop detected it".into()))?;
        if let Some(c) = expander.expand(&to_sparse(&cur)) {
            let mut coeffs: Vec<BigRational> = c.into_iter().map(|v| -v).collect();
            coeffs.push(BigRational::one());
            return Ok(Poly::new(coeffs));
        }
        powers.push(to_sparse(&cur));
    }
    Err(Error::Structure("minimal polynomial degree exceeds the dimension".into()))
}

/// A central ideal given by a row-reduced basis over center coordinates.
#[derive(Clone, Debug)]
pub struct CentralIdeal {
    pub basis: Vec<Coords>,
    pub identity: Coords,
}

impl CentralIdeal {
    pub fn from_span(table: &CenterTable, span: &RowSpan) -> Result<Self> {
        let identity = ideal_identity(table, span)?;
        let basis = span.rows().map(|r| to_dense(r, table.dim())).collect();
        Ok(CentralIdeal { basis, identity })
    }

    /// The whole center.
    pub fn whole(table: &CenterTable) -> Result<Self> {
        let n = table.dim();
        let span = RowSpan::from_rows((0..n).map(|i| {
            let mut v = SparseRat::new();
            v.insert(i, BigRational::one());
            v
        }));
        Self::from_span(table, &span)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let rows: Vec<SparseRat> = self.basis.iter().map(|b| to_sparse(b)).collect();
        RowSpan::from_rows(rows).contains(&to_sparse(v))
    }

    fn is_scalar(&self, x: &[BigRational]) -> bool {
        let at = self.identity.iter().position(|c| !c.is_zero());
        match at {
            Some(i) => {
                let c = &x[i] / &self.identity[i];
                is_zero(&sub(x, &scale(&self.identity, &c)))
            }
            None => is_zero(x),
        }
    }
}

/// One splitting `X = Y ⊕ Z` along `p = (t − r)·q`.
#[derive(Clone, Debug)]
pub struct Split {
    pub x: Coords,
    pub minpoly: Poly,
    pub root: BigRational,
    /// `y = x − r`, generating `Y`.
    pub y: Coords,
    /// `z = q(x)`, generating `Z`.
    pub z: Coords,
    pub left: CentralIdeal,
    pub right: CentralIdeal,
}

/// Splits along the factor `t − root` of the minimal polynomial of `x`.
pub fn split_with_root(table: &CenterTable, ideal: &CentralIdeal, x: &[BigRational], root: &BigRational) -> Result<Split> {
    let minpoly = minimal_polynomial(table, x, &ideal.identity)?;
    let (roots, rest) = minpoly.rational_roots();
    if rest.degree() > 0 {
        return Err(Error::NonLinearFactor(rest.to_string()));
    }
    if let Some(w) = roots.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::RepeatedRoot(w[0].to_string()));
    }
    if roots.len() < 2 {
        return Err(Error::NoSplittingElement(ideal.dim()));
    }
    if !roots.contains(root) {
        return Err(Error::Structure(format!("{root} is not a root of {minpoly}")));
    }
    let y = sub(x, &scale(&ideal.identity, root));
    let q = minpoly.deflate(root);
    let z = q.eval_at(table, x, &ideal.identity);
    let left = CentralIdeal::from_span(table, &ideal_generated(table, &y))?;
    let right = CentralIdeal::from_span(table, &ideal_generated(table, &z))?;
    if left.dim() + right.dim() != ideal.dim() || !is_zero(&table.multiply(&y, &z)) {
        return Err(Error::Structure("split pieces are not complementary".into()));
    }
    Ok(Split { x: x.to_vec(), minpoly, root: root.clone(), y, z, left, right })
}

/// Splits along the smallest rational root of the minimal polynomial.
pub fn split_once(table: &CenterTable, ideal: &CentralIdeal, x: &[BigRational]) -> Result<Split> {
    let minpoly = minimal_polynomial(table, x, &ideal.identity)?;
    let (roots, rest) = minpoly.rational_roots();
    if rest.degree() > 0 {
        return Err(Error::NonLinearFactor(rest.to_string()));
    }
    let root = roots.first().cloned().ok_or(Error::NoSplittingElement(ideal.dim()))?;
    split_with_root(table, ideal, x, &root)
}

/// Record of one splitting, for reports.
#[derive(Clone, Debug)]
pub struct SplitStep {
    pub ideal_dim: usize,
    pub x: Coords,
    pub minpoly: Poly,
    pub dims: (usize, usize),
}

/// Candidate splitting elements: row-reduced basis vectors, then sums of two.
fn candidates(ideal: &CentralIdeal) -> impl Iterator<Item = Coords> + '_ {
    let k = ideal.basis.len();
    let singles = ideal.basis.iter().cloned();
    let pairs = (0..k).flat_map(move |a| (a + 1..k).map(move |b| add(&ideal.basis[a], &ideal.basis[b])));
    singles.chain(pairs)
}

fn choose_split(table: &CenterTable, ideal: &CentralIdeal) -> Result<Split> {
    for x in candidates(ideal) {
        if ideal.is_scalar(&x) {
            continue;
        }
        match split_once(table, ideal, &x) {
            Ok(s) => return Ok(s),
            // A prime-power minimal polynomial: try the next element.
            Err(Error::NoSplittingElement(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoSplittingElement(ideal.dim()))
}

/// Orthogonal primitive idempotents of the center.
#[derive(Clone, Debug)]
pub struct IdempotentSet {
    /// Coordinates over the center basis, sorted by their coordinates.
    pub idempotents: Vec<Coords>,
    pub steps: Vec<SplitStep>,
}

impl IdempotentSet {
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    /// `e² = e`, `ef = 0` for every pair, and `Σe = one`.
    pub fn verify(&self, table: &CenterTable, one: &[BigRational]) -> bool {
        let n = table.dim();
        let mut sum = vec![BigRational::zero(); n];
        for (i, e) in self.idempotents.iter().enumerate() {
            sum = add(&sum, e);
            for (j, f) in self.idempotents.iter().enumerate() {
                let p = table.multiply(e, f);
                let ok = if i == j { p == *e } else { is_zero(&p) };
                if !ok {
                    return false;
                }
            }
        }
        sum == one
    }

    /// Rows scaled by the common denominator, as integers over the basis.
    pub fn common_denominator(&self) -> (BigInt, Vec<Vec<BigInt>>) {
        let l = self.idempotents.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let rows =
            self.idempotents.iter().map(|e| e.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()).collect();
        (l, rows)
    }

    pub fn describe(&self, names: &[String]) -> Vec<String> {
        self.idempotents.iter().map(|e| combination(e, names)).collect()
    }
}

/// Splits the whole center recursively until all pieces are
/// one-dimensional; each piece's identity is a primitive idempotent.
pub fn primitive_idempotents(table: &CenterTable) -> Result<IdempotentSet> {
    let whole = CentralIdeal::whole(table)?;
    let mut stack = vec![whole];
    let mut idempotents = Vec::new();
    let mut steps = Vec::new();
    while let Some(ideal) = stack.pop() {
        if ideal.dim() == 1 {
            idempotents.push(ideal.identity);
            continue;
        }
        let s = choose_split(table, &ideal)?;
        steps.push(SplitStep { ideal_dim: ideal.dim(), x: s.x.clone(), minpoly: s.minpoly.clone(), dims: (s.left.dim(), s.right.dim()) });
        // Left piece is processed first.
        stack.push(s.right);
        stack.push(s.left);
    }
    idempotents.sort_by(|a, b| {
        let key = |v: &Coords| v.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX);
        key(a).cmp(&key(b)).then_with(|| a.cmp(b))
    });
    Ok(IdempotentSet { idempotents, steps })
}

/// Scalar `c` with `(c·g)² = c·g` for a generator `g` of a one-dimensional
/// ideal, i.e. `g² = λg` and `c = 1/λ`.
pub fn idempotent_scaling(table: &CenterTable, g: &[BigRational]) -> Result<BigRational> {
    let sq = table.multiply(g, g);
    let at = g.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::Structure("zero generator".into()))?;
    let lambda = &sq[at] / &g[at];
    if lambda.is_zero() || sq != scale(g, &lambda) {
        return Err(Error::Structure("generator does not span a one-dimensional ideal".into()));
    }
    Ok(BigRational::one() / lambda)
}

/// Integer value of a rational, if it is one.
pub fn as_integer(c: &BigRational) -> Option<i64> {
    c.is_integer().then(|| c.to_integer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn roots_and_factored_form() {
        let p = Poly::from_roots(&[q(-1), q(5)]);
        assert_eq!(p.to_string(), "t^2 - 4t - 5");
        assert_eq!(p.factored(), "(t + 1)(t - 5)");
        let p = Poly::from_roots(&[q(0), q(1)]);
        assert_eq!(p.factored(), "t(t - 1)");
        let half = BigRational::new(3.into(), 2.into());
        let p = Poly::from_roots(&[q(-1), half.clone(), q(-6)]);
        let (roots, rest) = p.rational_roots();
        assert_eq!(roots, vec![q(-6), q(-1), half]);
        assert_eq!(rest.degree(), 0);
        // t² + 1 has no rational roots.
        let (roots, rest) = Poly::new(vec![q(1), q(0), q(1)]).rational_roots();
        assert!(roots.is_empty());
        assert_eq!(rest.degree(), 2);
    }

    #[test]
    fn deflation_is_exact() {
        let p = Poly::from_roots(&[q(2), q(3), q(-4)]);
        assert_eq!(p.deflate(&q(3)), Poly::from_roots(&[q(2), q(-4)]));
    }
}
