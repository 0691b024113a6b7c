//! The staged computation from the monoid table to the irreducible
//! representations, with per-stage timings.

use std::time::Instant;

use crate::center::{compute_center, Center, DEFAULT_MODULUS};
use crate::error::{Error, Result};
use crate::linalg::span::SparseRat;
use crate::linalg::LllDelta;
use crate::monoid::MonoidTable;
use crate::radical::{radical_basis, Radical};
use crate::semisimple::Semisimple;
use crate::splitting::{primitive_idempotents, IdempotentSet};
use crate::wedderburn::{decompose, Decomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub n: usize,
    pub delta: LllDelta,
    pub modulus: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { n: 3, delta: LllDelta::DEFAULT, modulus: DEFAULT_MODULUS }
    }
}

impl PipelineConfig {
    /// `n = 3`, `δ = 99/100`, modulus 101: the settings under which the
    /// bundled reference data is reproduced verbatim.
    pub fn reference() -> Self {
        PipelineConfig { n: 3, delta: LllDelta::STRONG, modulus: DEFAULT_MODULUS }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Monoid,
    Radical,
    Quotient,
    Center,
    Idempotents,
    Wedderburn,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Monoid => "monoid",
            Stage::Radical => "radical",
            Stage::Quotient => "quotient",
            Stage::Center => "center",
            Stage::Idempotents => "idempotents",
            Stage::Wedderburn => "wedderburn",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Pipeline {
    pub config: PipelineConfig,
    pub table: MonoidTable,
    pub radical: Option<Radical>,
    pub semisimple: Option<Semisimple>,
    pub center: Option<Center>,
    pub idempotents: Option<IdempotentSet>,
    /// The idempotents over quotient positions, in the same order.
    pub idempotent_vectors: Vec<SparseRat>,
    pub decomposition: Option<Decomposition>,
    /// Wall-clock seconds per completed stage.
    pub timings: Vec<(Stage, f64)>,
}

fn missing(stage: Stage) -> Error {
    Error::Config(format!("the {} stage was not run", stage.name()))
}

impl Pipeline {
    /// Runs every stage up to and including `last`.
    pub fn run(config: PipelineConfig, last: Stage) -> Result<Self> {
        let mut timings = Vec::new();
        let mut clock = Instant::now();
        let mut lap = |stage: Stage, timings: &mut Vec<(Stage, f64)>| {
            timings.push((stage, clock.elapsed().as_secs_f64()));
            clock = Instant::now();
        };
        let table = MonoidTable::build(config.n)?;
        lap(Stage::Monoid, &mut timings);
        let mut p = Pipeline {
            config,
            table,
            radical: None,
            semisimple: None,
            center: None,
            idempotents: None,
            idempotent_vectors: Vec::new(),
            decomposition: None,
            timings: Vec::new(),
        };
        if last >= Stage::Radical {
            p.radical = Some(radical_basis(&p.table, config.delta)?);
            lap(Stage::Radical, &mut timings);
        }
        if last >= Stage::Quotient {
            p.semisimple = Some(Semisimple::new(&p.table, &p.radical()?.basis)?);
            lap(Stage::Quotient, &mut timings);
        }
        if last >= Stage::Center {
            p.center = Some(compute_center(&p.semisimple()?.constants, config.delta, config.modulus)?);
            lap(Stage::Center, &mut timings);
        }
        if last >= Stage::Idempotents {
            let center = p.center()?;
            let set = primitive_idempotents(&center.table)?;
            p.idempotent_vectors = set.idempotents.iter().map(|e| center.basis.combine(e)).collect();
            p.idempotents = Some(set);
            lap(Stage::Idempotents, &mut timings);
        }
        if last >= Stage::Wedderburn {
            p.decomposition = Some(decompose(&p.table, p.semisimple()?, &p.idempotent_vectors)?);
            lap(Stage::Wedderburn, &mut timings);
        }
        p.timings = timings;
        Ok(p)
    }

    pub fn radical(&self) -> Result<&Radical> {
        self.radical.as_ref().ok_or_else(|| missing(Stage::Radical))
    }

    pub fn semisimple(&self) -> Result<&Semisimple> {
        self.semisimple.as_ref().ok_or_else(|| missing(Stage::Quotient))
    }

    pub fn center(&self) -> Result<&Center> {
        self.center.as_ref().ok_or_else(|| missing(Stage::Center))
    }

    pub fn idempotents(&self) -> Result<&IdempotentSet> {
        self.idempotents.as_ref().ok_or_else(|| missing(Stage::Idempotents))
    }

    pub fn decomposition(&self) -> Result<&Decomposition> {
        self.decomposition.as_ref().ok_or_else(|| missing(Stage::Wedderburn))
    }
}
