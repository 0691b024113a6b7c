//! Exact integer and rational dense linear algebra.

pub mod hnf;
pub mod kernel;
pub mod lll;
pub mod matrix;
pub mod modular;
pub mod span;

pub use span::{add_scaled, sparse_from_ints, BasisExpander, RowSpan, SparseRat};

pub use hnf::{hermite_form, hermite_form_direct, hnf_basis, is_hnf, is_unimodular, same_lattice, HnfResult};
pub use kernel::{integer_nullspace, left_kernel, normalize_rows, LeftKernel};
pub use lll::{is_lll_reduced, lll_reduce, pair_reduce, LllDelta, SizeReducer};
pub use matrix::{rational_solve, IntMatrix, RatMatrix, Rref, Solution};
pub use modular::{modular_rcf, Fp, ModRcf, StreamingEchelon};
