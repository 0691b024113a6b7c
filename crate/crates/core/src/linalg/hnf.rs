//! Row-style Hermite normal form with a unimodular transform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::kernel::left_kernel;
use super::lll::SizeReducer;
use super::IntMatrix;

/// `u · m = h`, `u` unimodular, `h` in row Hermite normal form.
#[derive(Clone, Debug)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

impl HnfResult {
    /// Rows of `u` mapping `m` to zero: a basis of its left integer kernel.
    pub fn kernel_rows(&self) -> IntMatrix {
        let idx: Vec<usize> = (self.rank..self.u.rows()).collect();
        self.u.select_rows(&idx)
    }
}

/// Arithmetic needed by the elimination; `None` signals overflow.
trait Entry: Clone + PartialEq + std::fmt::Debug {
    fn e_zero() -> Self;
    fn e_one() -> Self;
    fn e_is_zero(&self) -> bool;
    fn e_is_negative(&self) -> bool;
    fn div_floor(&self, d: &Self) -> Option<Self>;
    /// Exact quotient if `d` divides `self`.
    fn div_exact(&self, d: &Self) -> Option<Option<Self>>;
    /// `a·x + b·y`
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    /// `self − q·y`
    fn sub_mul(&self, q: &Self, y: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// `(g, s, t)` with `s·a + t·b = g = gcd(a, b) > 0`.
    fn xgcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)>;
    /// `0 ≤ self < p` for positive `p`.
    fn in_range(&self, p: &Self) -> bool;
}

macro_rules! machine_entry {
    ($t:ty) => {
        impl Entry for $t {
            fn e_zero() -> Self {
                0
            }
            fn e_one() -> Self {
                1
            }
            fn e_is_zero(&self) -> bool {
                *self == 0
            }
            fn e_is_negative(&self) -> bool {
                *self < 0
            }
            fn div_floor(&self, d: &Self) -> Option<Self> {
                if *self == <$t>::MIN && *d == -1 {
                    return None;
                }
                Some(Integer::div_floor(self, d))
            }
            fn div_exact(&self, d: &Self) -> Option<Option<Self>> {
                if *self == <$t>::MIN && *d == -1 {
                    return None;
                }
                Some((self % d == 0).then(|| self / d))
            }
            fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
                a.checked_mul(*x)?.checked_add(b.checked_mul(*y)?)
            }
            fn sub_mul(&self, q: &Self, y: &Self) -> Option<Self> {
                q.checked_mul(*y).and_then(|p| self.checked_sub(p))
            }
            fn neg(&self) -> Option<Self> {
                self.checked_neg()
            }
            fn in_range(&self, p: &Self) -> bool {
                *self >= 0 && self < p
            }
            fn xgcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)> {
                if *a == <$t>::MIN || *b == <$t>::MIN {
                    return None;
                }
                let e = a.extended_gcd(b);
                Some(if e.gcd < 0 { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) })
            }
        }
    };
}

machine_entry!(i64);
machine_entry!(i128);

impl Entry for BigInt {
    fn e_zero() -> Self {
        Zero::zero()
    }
    fn e_one() -> Self {
        num_traits::One::one()
    }
    fn e_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn e_is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn div_floor(&self, d: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, d))
    }
    fn div_exact(&self, d: &Self) -> Option<Option<Self>> {
        let (q, r) = self.div_rem(d);
        Some(Zero::is_zero(&r).then_some(q))
    }
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x + b * y)
    }
    fn sub_mul(&self, q: &Self, y: &Self) -> Option<Self> {
        Some(self - q * y)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn in_range(&self, p: &Self) -> bool {
        !Signed::is_negative(self) && self < p
    }
    fn xgcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)> {
        let e = a.extended_gcd(b);
        Some(if Signed::is_negative(&e.gcd) { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) })
    }
}

struct Overflow;

// Rows are updated in place: after an overflow the whole elimination is
// restarted in a wider type, so partial updates are never observed.
fn sub_mul_row<E: Entry>(dst: &mut [E], q: &E, src: &[E]) -> Result<(), Overflow> {
    for (x, y) in dst.iter_mut().zip(src) {
        if !y.e_is_zero() {
            *x = x.sub_mul(q, y).ok_or(Overflow)?;
        }
    }
    Ok(())
}

fn negate_row<E: Entry>(row: &mut [E]) -> Result<(), Overflow> {
    for x in row.iter_mut() {
        *x = x.neg().ok_or(Overflow)?;
    }
    Ok(())
}

/// `(x, y) ← (a·x + b·y, c·x + d·y)` entrywise.
fn combine_rows<E: Entry>(x: &mut [E], y: &mut [E], a: &E, b: &E, c: &E, d: &E) -> Result<(), Overflow> {
    for (xi, yi) in x.iter_mut().zip(y.iter_mut()) {
        if xi.e_is_zero() && yi.e_is_zero() {
            continue;
        }
        let nx = E::lin(a, xi, b, yi).ok_or(Overflow)?;
        *yi = E::lin(c, xi, d, yi).ok_or(Overflow)?;
        *xi = nx;
    }
    Ok(())
}

type Eliminated<E> = (Vec<Vec<E>>, Option<Vec<Vec<E>>>, usize);

/// Builds the Hermite form one input row at a time. Before each insertion
/// the accumulated rows are exactly the Hermite form of the rows seen so
/// far, so coefficients stay near the size of that (unique) form instead
/// of growing through long chains of unreduced row operations.
fn insertion_in<E: Entry>(input: Vec<Vec<E>>, cols: usize, track: bool) -> Result<Eliminated<E>, Overflow> {
    let n = input.len();
    let unit = |i: usize| -> Vec<E> { (0..n).map(|j| if i == j { E::e_one() } else { E::e_zero() }).collect() };
    // Hermite rows sorted by pivot column, with their transforms.
    let mut h: Vec<Vec<E>> = Vec::new();
    let mut piv: Vec<usize> = Vec::new();
    let mut u: Vec<Vec<E>> = Vec::new();
    let mut kernel: Vec<Vec<E>> = Vec::new();
    for (idx, mut v) in input.into_iter().enumerate() {
        let mut uv = if track { unit(idx) } else { Vec::new() };
        loop {
            let Some(c) = v.iter().position(|x| !x.e_is_zero()) else {
                if track {
                    kernel.push(uv);
                }
                break;
            };
            let Ok(k) = piv.binary_search(&c) else {
                if v[c].e_is_negative() {
                    negate_row(&mut v)?;
                    if track {
                        negate_row(&mut uv)?;
                    }
                }
                let at = piv.partition_point(|&q| q < c);
                piv.insert(at, c);
                h.insert(at, v);
                if track {
                    u.insert(at, uv);
                }
                break;
            };
            let p = h[k][c].clone();
            if let Some(q) = v[c].div_exact(&p).ok_or(Overflow)? {
                sub_mul_row(&mut v[c..], &q, &h[k][c..])?;
                if track {
                    sub_mul_row(&mut uv, &q, &u[k])?;
                }
            } else {
                let x = v[c].clone();
                let (g, s, t) = E::xgcd(&p, &x).ok_or(Overflow)?;
                let a = p.div_exact(&g).ok_or(Overflow)?.expect("gcd divides");
                let b = x.div_exact(&g).ok_or(Overflow)?.expect("gcd divides");
                let nb = b.neg().ok_or(Overflow)?;
                // [row; v] ← [[s, t], [−b, a]]·[row; v], determinant 1.
                combine_rows(&mut h[k][c..], &mut v[c..], &s, &t, &nb, &a)?;
                if track {
                    combine_rows(&mut u[k], &mut uv, &s, &t, &nb, &a)?;
                }
            }
        }
        // Restore reduction above every pivot, top row first.
        for j in 0..h.len() {
            for k in j + 1..h.len() {
                let c = piv[k];
                if h[j][c].e_is_zero() || h[j][c].in_range(&h[k][c]) {
                    continue;
                }
                let q = h[j][c].div_floor(&h[k][c]).ok_or(Overflow)?;
                if q.e_is_zero() {
                    continue;
                }
                let (top, bottom) = h.split_at_mut(k);
                sub_mul_row(&mut top[j][c..], &q, &bottom[0][c..])?;
                if track {
                    let (top, bottom) = u.split_at_mut(k);
                    sub_mul_row(&mut top[j], &q, &bottom[0])?;
                }
            }
        }
    }
    let rank = h.len();
    h.extend(std::iter::repeat_with(|| vec![E::e_zero(); cols]).take(n - rank));
    let u = track.then(|| {
        u.extend(kernel);
        u
    });
    Ok((h, u, rank))
}

fn euclid(a: Vec<Vec<BigInt>>, cols: usize, track: bool) -> Eliminated<BigInt> {
    let small: Option<Vec<Vec<i64>>> = a.iter().map(|row| row.iter().map(|x| x.to_i64()).collect()).collect();
    if let Some(small) = small {
        if let Ok((h, u, r)) = insertion_in::<i64>(small.clone(), cols, track) {
            let big = |m: Vec<Vec<i64>>| m.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
            return (big(h), u.map(big), r);
        }
        let wide: Vec<Vec<i128>> = small.into_iter().map(|row| row.into_iter().map(i128::from).collect()).collect();
        if let Ok((h, u, r)) = insertion_in::<i128>(wide, cols, track) {
            let big = |m: Vec<Vec<i128>>| m.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
            return (big(h), u.map(big), r);
        }
    }
    match insertion_in::<BigInt>(a, cols, track) {
        Ok(res) => res,
        Err(Overflow) => unreachable!("big integers do not overflow"),
    }
}

/// Hermite normal form by direct elimination on the whole matrix.
pub fn hermite_form_direct(m: &IntMatrix) -> HnfResult {
    let (h, u, rank) = euclid(m.row_vecs(), m.cols(), true);
    HnfResult {
        h: IntMatrix::from_rows(h, m.cols()).expect("shape preserved"),
        u: IntMatrix::from_rows(u.expect("tracked"), m.rows()).expect("shape preserved"),
        rank,
    }
}

/// Hermite normal form `h = u · m`.
///
/// For rank-deficient input the left kernel is found first by multimodular
/// elimination. When that kernel has a basis that restricts to the identity
/// on its free rows, those rows complete the independent rows of `m` to a
/// unimodular matrix, and elimination only has to run on the full-rank part.
/// This keeps the transform small; the kernel rows also size-reduce the
/// top rows of `u`. Otherwise falls back to [`hermite_form_direct`].
pub fn hermite_form(m: &IntMatrix) -> HnfResult {
    let n = m.rows();
    let Ok(kernel) = left_kernel(m) else {
        return hermite_form_direct(m);
    };
    if kernel.basis.rows() == 0 || !kernel.unit_on_free {
        return hermite_form_direct(m);
    }
    let mut is_free = vec![false; n];
    for &f in &kernel.free {
        is_free[f] = true;
    }
    let dependent: Vec<usize> = (0..n).filter(|&i| !is_free[i]).collect();
    let part = m.select_rows(&dependent);
    let top = hermite_form_direct(&part);
    debug_assert_eq!(top.rank, dependent.len());

    let reducer = SizeReducer::new(&kernel.basis).ok();
    let mut u_rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..top.u.rows() {
        let mut row = vec![BigInt::zero(); n];
        for (j, &orig) in dependent.iter().enumerate() {
            row[orig] = top.u.get(i, j).clone();
        }
        if let Some(r) = reducer.as_ref() {
            r.reduce(&mut row);
        }
        u_rows.push(row);
    }
    u_rows.extend(kernel.basis.row_vecs());
    let mut h_rows = top.h.row_vecs();
    h_rows.truncate(top.rank);
    h_rows.extend(std::iter::repeat_with(|| vec![BigInt::zero(); m.cols()]).take(n - top.rank));
    HnfResult {
        h: IntMatrix::from_rows(h_rows, m.cols()).expect("shape"),
        u: IntMatrix::from_rows(u_rows, n).expect("shape"),
        rank: top.rank,
    }
}

/// Nonzero rows of the Hermite normal form, without the transform. Two
/// integer matrices generate the same row lattice iff these agree.
pub fn hnf_basis(m: &IntMatrix) -> IntMatrix {
    let (mut h, _, rank) = euclid(m.row_vecs(), m.cols(), false);
    h.truncate(rank);
    IntMatrix::from_rows(h, m.cols()).expect("shape")
}

/// Whether the rows of `a` and `b` generate the same lattice.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.cols() == b.cols() && hnf_basis(a).row_vecs() == hnf_basis(b).row_vecs()
}

/// Whether a square integer matrix has an integer inverse, i.e. its rows
/// generate `ℤ^n`. Rows are inserted last-first, which keeps the
/// intermediate forms small for transforms whose trailing rows are sparse.
pub fn is_unimodular(u: &IntMatrix) -> bool {
    if u.rows() != u.cols() {
        return false;
    }
    let rev: Vec<usize> = (0..u.rows()).rev().collect();
    hnf_basis(&u.select_rows(&rev)).row_vecs() == IntMatrix::identity(u.rows()).row_vecs()
}

/// Checks the row Hermite normal form conditions.
pub fn is_hnf(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..h.rows() {
        let row = h.row(i);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            seen_zero = true;
            continue;
        };
        if seen_zero || last_pivot.is_some_and(|q| p <= q) || !row[p].is_positive() {
            return false;
        }
        for k in 0..i {
            let x = h.get(k, p);
            if x.is_negative() || x >= &row[p] {
                return false;
            }
        }
        last_pivot = Some(p);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntMatrix, r: &HnfResult) {
        assert!(is_hnf(&r.h), "{:?}", r.h);
        assert_eq!(r.u.mul(m).unwrap().row_vecs(), r.h.row_vecs());
        assert!(r.u.determinant().unwrap().abs().is_one());
    }

    #[test]
    fn identity() {
        let m = IntMatrix::identity(3);
        let r = hermite_form(&m);
        assert_eq!(r.rank, 3);
        assert_eq!(r.h.row_vecs(), m.row_vecs());
        assert_eq!(r.u.row_vecs(), m.row_vecs());
    }

    #[test]
    fn rank_one() {
        let m = IntMatrix::from_i64(&[vec![2, 4], vec![1, 2]]);
        for r in [hermite_form(&m), hermite_form_direct(&m)] {
            check(&m, &r);
            assert_eq!(r.rank, 1);
            assert_eq!(r.h.row_vecs(), IntMatrix::from_i64(&[vec![1, 2], vec![0, 0]]).row_vecs());
            let k = r.kernel_rows();
            let (a, b) = (k.get(0, 0).clone(), k.get(0, 1).clone());
            assert_eq!(a * 2, -b, "kernel row proportional to (1, -2)");
        }
    }

    #[test]
    fn reduces_above_pivots() {
        let m = IntMatrix::from_i64(&[vec![3, 5, 7], vec![0, 4, 9], vec![0, 0, 5]]);
        let r = hermite_form(&m);
        check(&m, &r);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn staged_and_direct_agree_on_h() {
        let m = IntMatrix::from_i64(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0], vec![1, 3, 4, 4], vec![5, 0, 2, 1]]);
        let a = hermite_form(&m);
        let b = hermite_form_direct(&m);
        check(&m, &a);
        check(&m, &b);
        assert_eq!(a.h.row_vecs(), b.h.row_vecs());
        assert!(same_lattice(&a.kernel_rows(), &b.kernel_rows()));
    }
}
