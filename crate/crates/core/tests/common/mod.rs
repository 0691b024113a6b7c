#![allow(dead_code)]

use std::sync::OnceLock;

use boolalg::linalg::SparseRat;
use boolalg::pipeline::{Pipeline, PipelineConfig, Stage};
use boolalg::radical::IntVec;
use boolalg::wedderburn::clear_denominators;

/// Full `n = 3` run at the reference settings, shared by every test in
/// one binary.
pub fn reference() -> &'static Pipeline {
    static P: OnceLock<Pipeline> = OnceLock::new();
    P.get_or_init(|| Pipeline::run(PipelineConfig::reference(), Stage::Wedderburn).expect("reference run"))
}

/// `v` scaled to integers, with the scale.
pub fn scaled(v: &SparseRat) -> (i64, IntVec) {
    let (den, terms) = clear_denominators(v).expect("small denominators");
    (den, terms.into_iter().collect())
}
