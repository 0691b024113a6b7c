//! The radical of the monoid algebra: the nullspace of the fixed-point
//! matrix Δ, a reduced integer basis for it, and checks of its structure.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::span::{sparse_from_ints, RowSpan, SparseRat};
use crate::linalg::{integer_nullspace, left_kernel, same_lattice, IntMatrix, LllDelta};
use crate::monoid::{BoolMat, ElementIndex, MonoidTable};
pub use crate::notation::signed_sum;

/// Sparse integer combination of monoid elements, keyed by zero-based offset.
pub type IntVec = BTreeMap<usize, i64>;

/// `|{k : m·k = k}|` for every element `m`.
pub fn fixed_point_counts(t: &MonoidTable) -> Vec<u64> {
    let n = t.order();
    (0..n).map(|m| (0..n).filter(|&k| t.mul_offset(m, k) == k).count() as u64).collect()
}

/// `Δ_ij = |{k : (j·i)·k = k}|`, indexed by zero-based offsets.
pub fn build_delta(t: &MonoidTable) -> IntMatrix {
    let fix = fixed_point_counts(t);
    let n = t.order();
    IntMatrix::from_fn(n, n, |i, j| BigInt::from(fix[t.mul_offset(j, i)]))
}

/// Product in the monoid algebra of two sparse integer vectors.
pub fn multiply(t: &MonoidTable, a: &IntVec, b: &IntVec) -> IntVec {
    let mut out = IntVec::new();
    for (&p, &x) in a {
        for (&q, &y) in b {
            let e = out.entry(t.mul_offset(p, q)).or_insert(0);
            *e += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn to_rat(v: &IntVec) -> SparseRat {
    sparse_from_ints(v.iter().map(|(&k, &c)| (k, c)))
}

/// One basis vector of the radical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalRow {
    pub leading: ElementIndex,
    pub terms: Vec<(ElementIndex, i64)>,
}

impl RadicalRow {
    pub fn to_vec(&self) -> IntVec {
        self.terms.iter().map(|&(k, c)| (k.offset(), c)).collect()
    }

    /// Signed-sum notation such as `95 - 96 - 127 + 128`.
    pub fn signed_sum(&self) -> String {
        signed_sum(self.terms.iter().map(|&(k, c)| (k.get(), c)))
    }
}

/// Integer basis of the radical, one row per non-regular leading element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalBasis {
    pub rows: Vec<RadicalRow>,
}

impl RadicalBasis {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn leading(&self) -> Vec<ElementIndex> {
        self.rows.iter().map(|r| r.leading).collect()
    }

    pub fn row_with_leader(&self, leader: ElementIndex) -> Option<&RadicalRow> {
        self.rows.iter().find(|r| r.leading == leader)
    }

    pub fn to_matrix(&self, order: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), order);
        for (i, r) in self.rows.iter().enumerate() {
            for &(k, c) in &r.terms {
                m.set(i, k.offset(), BigInt::from(c));
            }
        }
        m
    }

    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        let mut rows = Vec::with_capacity(m.rows());
        for i in 0..m.rows() {
            let mut terms = Vec::new();
            for (k, c) in m.row(i).iter().enumerate() {
                if !c.is_zero() {
                    let c = c.to_i64().ok_or_else(|| Error::Structure(format!("coefficient {c} too large")))?;
                    terms.push((ElementIndex::from_offset(k), c));
                }
            }
            let leading = terms.first().map(|t| t.0).ok_or_else(|| Error::Structure("zero radical row".into()))?;
            rows.push(RadicalRow { leading, terms });
        }
        Ok(RadicalBasis { rows })
    }

    /// Row space over ℚ.
    pub fn span(&self) -> RowSpan {
        RowSpan::from_rows(self.rows.iter().map(|r| to_rat(&r.to_vec())))
    }
}

/// Rank data of Δ together with the reduced radical basis.
#[derive(Clone, Debug)]
pub struct Radical {
    pub delta_rank: usize,
    pub nullity: usize,
    pub basis: RadicalBasis,
}

/// Expected radical dimension, where known.
pub fn expected_nullity(n: usize) -> Option<usize> {
    match n {
        2 => Some(0),
        3 => Some(42),
        _ => None,
    }
}

/// Computes the radical as the integer nullspace of Δ, LLL-reduced with
/// Lovász constant `delta` and normalised (leading coefficient positive,
/// rows sorted by leading element).
pub fn radical_basis(t: &MonoidTable, delta: LllDelta) -> Result<Radical> {
    let d = build_delta(t);
    radical_from_delta(t, &d, delta)
}

pub fn radical_from_delta(t: &MonoidTable, d: &IntMatrix, delta: LllDelta) -> Result<Radical> {
    let kernel = left_kernel(d)?;
    let nullity = kernel.basis.rows();
    if let Some(expected) = expected_nullity(t.n()) {
        if nullity != expected {
            return Err(Error::UnexpectedNullity { found: nullity, expected });
        }
    }
    let reduced = if nullity == 0 { kernel.basis } else { integer_nullspace(d, delta)? };
    Ok(Radical { delta_rank: kernel.rank, nullity, basis: RadicalBasis::from_matrix(&reduced)? })
}

/// The zero that stays fixed for a leader with four zeros: the only zero
/// lying in a row with two zeros and in a column with two zeros.
fn anchor_zero(m: &BoolMat) -> Option<(usize, usize)> {
    let zeros = m.zeros();
    let row_count = |i: usize| zeros.iter().filter(|z| z.0 == i).count();
    let col_count = |j: usize| zeros.iter().filter(|z| z.1 == j).count();
    let cands: Vec<(usize, usize)> = zeros.iter().copied().filter(|&(i, j)| row_count(i) == 2 && col_count(j) == 2).collect();
    (cands.len() == 1).then(|| cands[0])
}

/// Reconstructs the radical vector led by the non-regular element `leader`:
/// the three designated zeros of the leader are switched to ones in all
/// eight ways, each term signed by the parity of the number switched.
pub fn flip_rule_row(leader: &BoolMat) -> Result<RadicalRow> {
    let zeros = leader.zeros();
    let flip: Vec<(usize, usize)> = match zeros.len() {
        3 => zeros,
        4 => {
            let anchor = anchor_zero(leader)
                .ok_or_else(|| Error::Structure(format!("leader {} has no unique anchor zero", leader.index().get())))?;
            zeros.into_iter().filter(|&z| z != anchor).collect()
        }
        k => return Err(Error::Structure(format!("leader {} has {k} zeros", leader.index().get()))),
    };
    let mut terms: Vec<(ElementIndex, i64)> = (0u32..8)
        .map(|mask| {
            let mut m = *leader;
            for (b, &(i, j)) in flip.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    m = m.with_entry(i, j, true);
                }
            }
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            (m.index(), sign)
        })
        .collect();
    terms.sort();
    Ok(RadicalRow { leading: leader.index(), terms })
}

/// The flip-rule basis built from every non-regular element.
pub fn canonical_basis(t: &MonoidTable) -> Result<RadicalBasis> {
    let rows = t.nonregular_set()?.into_iter().map(|k| flip_rule_row(&t.element(k)?)).collect::<Result<Vec<_>>>()?;
    Ok(RadicalBasis { rows })
}

/// Outcome of checking one basis row against the flip rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub leading: ElementIndex,
    pub leading_nonregular: bool,
    pub matches_flip_rule: bool,
    pub zeros: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub rows: Vec<RowCheck>,
    /// Leaders are exactly the non-regular elements, each once.
    pub leaders_are_nonregular_set: bool,
    /// The flip-rule basis generates the same integer lattice.
    pub same_lattice_as_flip_rule: bool,
}

impl StructuralReport {
    pub fn all_rows_match(&self) -> bool {
        self.rows.iter().all(|r| r.leading_nonregular && r.matches_flip_rule)
    }
}

pub fn verify_structural_form(b: &RadicalBasis, t: &MonoidTable) -> Result<StructuralReport> {
    let mut rows = Vec::with_capacity(b.len());
    for r in &b.rows {
        let m = t.element(r.leading)?;
        let expected = flip_rule_row(&m).ok();
        rows.push(RowCheck {
            leading: r.leading,
            leading_nonregular: !t.is_regular(r.leading),
            matches_flip_rule: expected.as_ref() == Some(r),
            zeros: m.count_zeros(),
        });
    }
    let mut leaders = b.leading();
    leaders.sort();
    let nr = t.nonregular_set()?;
    let canonical = canonical_basis(t)?;
    Ok(StructuralReport {
        rows,
        leaders_are_nonregular_set: leaders == nr,
        same_lattice_as_flip_rule: same_lattice(&b.to_matrix(t.order()), &canonical.to_matrix(t.order())),
    })
}

/// Checks `Δ·v = 0` for every basis row.
pub fn annihilated_by_delta(b: &RadicalBasis, d: &IntMatrix) -> bool {
    b.rows.iter().all(|r| {
        (0..d.rows()).all(|i| {
            let s: BigInt = r.terms.iter().map(|&(k, c)| d.get(i, k.offset()) * c).sum();
            s.is_zero()
        })
    })
}

/// Checks that `[p]·r` and `r·[p]` lie in the span for every monoid
/// element `p` and basis row `r`.
pub fn check_two_sided_ideal(b: &RadicalBasis, t: &MonoidTable) -> Result<()> {
    let span = b.span();
    for r in &b.rows {
        let v = r.to_vec();
        for p in 0..t.order() {
            let e: IntVec = [(p, 1)].into_iter().collect();
            for prod in [multiply(t, &e, &v), multiply(t, &v, &e)] {
                if !span.contains(&to_rat(&prod)) {
                    return Err(Error::NotInSpan(format!("product of element {} with radical row {}", p + 1, r.leading.get())));
                }
            }
        }
    }
    Ok(())
}

/// Smallest `k` with `R^k = 0`, where `R^{j+1}` is spanned by products of a
/// spanning set of `R^j` with the basis. Also checks `R·R ⊆ R`.
pub fn nilpotency_index(b: &RadicalBasis, t: &MonoidTable) -> Result<usize> {
    if b.is_empty() {
        return Ok(1);
    }
    let span = b.span();
    let base: Vec<IntVec> = b.rows.iter().map(|r| r.to_vec()).collect();
    let mut power: Vec<SparseRat> = base.iter().map(to_rat).collect();
    let limit = b.len() + 1;
    for k in 2..=limit {
        let mut next = RowSpan::new();
        for u in &power {
            for r in &base {
                let prod = multiply_rat(t, u, r);
                if k == 2 && !span.contains(&prod) {
                    return Err(Error::NotInSpan("product of two radical vectors".into()));
                }
                next.insert(prod);
            }
        }
        if next.rank() == 0 {
            return Ok(k);
        }
        power = next.rows().cloned().collect();
    }
    Err(Error::Structure(format!("radical powers did not vanish by exponent {limit}")))
}

fn multiply_rat(t: &MonoidTable, a: &SparseRat, b: &IntVec) -> SparseRat {
    let mut out: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (&p, x) in a {
        for (&q, &y) in b {
            let e = out.entry(t.mul_offset(p, q)).or_insert_with(BigRational::zero);
            *e += x * BigRational::from_integer(BigInt::from(y));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}
