//! JSON payloads and text renderings for each subcommand. Rationals are
//! emitted as strings such as `"-1/6"`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use boolalg::checks::Check;
use boolalg::linalg::SparseRat;
use boolalg::monoid::devadze_generators;
use boolalg::notation::{rational_signed_sum, signed_sum};
use boolalg::pipeline::Pipeline;
use boolalg::radical::nilpotency_index;
use boolalg::semisimple::Semisimple;
use boolalg::wedderburn::{matrix_text, IntMat};
use boolalg::Result;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

fn terms(s: &Semisimple, v: &SparseRat) -> String {
    rational_signed_sum(s.to_monoid_terms(v).into_iter().map(|(k, c)| (k.get(), c)))
}

fn dotted(rows: &[Vec<String>]) -> String {
    let w = rows.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(|c| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

#[derive(Serialize)]
pub struct TableReport {
    pub order: usize,
    pub identity: u32,
    pub zero: u32,
    /// `rows[p-1][q-1]` is the index of `p·q`.
    pub rows: Vec<Vec<u32>>,
}

impl TableReport {
    pub fn new(p: &Pipeline) -> Self {
        let t = &p.table;
        let rows = t.indices().map(|a| t.indices().map(|b| t.mul(a, b).get()).collect()).collect();
        TableReport { order: t.order(), identity: t.identity().get(), zero: 1, rows }
    }

    pub fn text(&self) -> String {
        self.rows.iter().map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ") + "\n").collect()
    }
}

#[derive(Serialize)]
pub struct DClassEntry {
    pub representative: u32,
    pub matrix: String,
    pub size: usize,
    pub regular: bool,
    pub prime: bool,
}

#[derive(Serialize)]
pub struct DClassesReport {
    pub nonregular: Vec<u32>,
    pub classes: Vec<DClassEntry>,
}

impl DClassesReport {
    pub fn new(p: &Pipeline) -> Result<Self> {
        let t = &p.table;
        let classes = t
            .d_classes()?
            .iter()
            .map(|c| {
                Ok(DClassEntry {
                    representative: c.representative.get(),
                    matrix: t.element(c.representative)?.to_string(),
                    size: c.size(),
                    regular: c.regular,
                    prime: c.prime,
                })
            })
            .collect::<Result<_>>()?;
        Ok(DClassesReport { nonregular: t.nonregular_set()?.iter().map(|k| k.get()).collect(), classes })
    }

    pub fn text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut s = String::new();
        for c in &self.classes {
            let _ = writeln!(s, "{:>4}  {}  {:>4}  {:<3}  {}", c.representative, c.matrix, c.size, yn(c.regular), yn(c.prime));
        }
        s
    }
}

#[derive(Serialize)]
pub struct RadicalReport {
    pub delta_rank: usize,
    pub nullity: usize,
    pub nilpotency_index: usize,
    pub rows: Vec<String>,
}

impl RadicalReport {
    pub fn new(p: &Pipeline) -> Result<Self> {
        let r = p.radical()?;
        Ok(RadicalReport {
            delta_rank: r.delta_rank,
            nullity: r.nullity,
            nilpotency_index: nilpotency_index(&r.basis, &p.table)?,
            rows: r.basis.rows.iter().map(|row| row.signed_sum()).collect(),
        })
    }

    /// One row per line and nothing else.
    pub fn text(&self) -> String {
        self.rows.iter().map(|r| format!("{r}\n")).collect()
    }
}

#[derive(Serialize)]
pub struct CenterVector {
    pub name: String,
    pub squared_length: i64,
    pub terms: String,
}

#[derive(Serialize)]
pub struct CenterReport {
    pub modulus: u64,
    pub commutator_rank: usize,
    pub dim: usize,
    pub basis: Vec<CenterVector>,
    /// `table[a][b]` is `v_a·v_b` over the basis names.
    pub table: Vec<Vec<String>>,
}

impl CenterReport {
    pub fn new(p: &Pipeline) -> Result<Self> {
        let c = p.center()?;
        let s = p.semisimple()?;
        let lens = c.basis.squared_lengths();
        let basis = c
            .basis
            .vectors
            .iter()
            .zip(&c.basis.names)
            .zip(lens)
            .map(|((v, name), len)| CenterVector {
                name: name.clone(),
                squared_length: len,
                terms: signed_sum(v.iter().map(|(&k, &x)| (s.basis.element(k).get(), x))),
            })
            .collect();
        let n = c.table.dim();
        Ok(CenterReport {
            modulus: c.basis.commutator.modulus,
            commutator_rank: c.basis.commutator.rank,
            dim: c.basis.dim(),
            basis,
            table: (0..n).map(|a| (0..n).map(|b| c.table.cell(a, b)).collect()).collect(),
        })
    }

    pub fn text(&self) -> String {
        let mut s = format!("commutator rank mod {}: {}\ncenter dimension: {}\n\n", self.modulus, self.commutator_rank, self.dim);
        for v in &self.basis {
            let _ = writeln!(s, "{} = {}", v.name, v.terms);
        }
        s.push('\n');
        s.push_str(&dotted(&self.table));
        s
    }
}

#[derive(Serialize)]
pub struct SplitEntry {
    pub ideal_dim: usize,
    pub element: String,
    pub minimal_polynomial: String,
    pub piece_dims: (usize, usize),
}

#[derive(Serialize)]
pub struct IdempotentsReport {
    pub count: usize,
    /// Common denominator of the coordinates over the center basis.
    pub denominator: String,
    pub center_names: Vec<String>,
    /// `denominator ×` coordinates over the center basis.
    pub over_center: Vec<Vec<String>>,
    pub over_quotient: Vec<String>,
    pub splittings: Vec<SplitEntry>,
}

impl IdempotentsReport {
    pub fn new(p: &Pipeline) -> Result<Self> {
        let set = p.idempotents()?;
        let s = p.semisimple()?;
        let names = &p.center()?.table.names;
        let (den, rows) = set.common_denominator();
        Ok(IdempotentsReport {
            count: set.len(),
            denominator: den.to_string(),
            center_names: names.clone(),
            over_center: rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            over_quotient: p.idempotent_vectors.iter().map(|e| terms(s, e)).collect(),
            splittings: set
                .steps
                .iter()
                .map(|st| SplitEntry {
                    ideal_dim: st.ideal_dim,
                    element: boolalg::notation::combination(&st.x, names),
                    minimal_polynomial: st.minpoly.factored(),
                    piece_dims: st.dims,
                })
                .collect(),
        })
    }

    pub fn text(&self) -> String {
        let mut s = format!("{} idempotents, coordinates × {} over the center basis\n\n", self.count, self.denominator);
        let mut grid = vec![self.center_names.clone()];
        grid.extend(self.over_center.iter().map(|r| r.iter().map(|c| if c == "0" { ".".into() } else { c.clone() }).collect()));
        s.push_str(&dotted(&grid));
        s.push('\n');
        for (i, e) in self.over_quotient.iter().enumerate() {
            let _ = writeln!(s, "e{} = {}", i + 1, e);
        }
        s
    }
}

#[derive(Serialize)]
pub struct IdealEntry {
    pub d: usize,
    pub dim: usize,
    pub identity: String,
    pub generator: String,
    pub search: String,
    pub traces: Vec<i64>,
    pub faithful: bool,
    pub image_size: usize,
    /// Images of the generating set (`g1 … g5` for `n = 3`, every
    /// element otherwise), keyed by name.
    pub generators: BTreeMap<String, IntMat>,
}

#[derive(Serialize)]
pub struct WedderburnReport {
    pub dims: Vec<usize>,
    pub degrees: Vec<usize>,
    pub ideals: Vec<IdealEntry>,
}

fn generator_keys(p: &Pipeline) -> Vec<(String, boolalg::monoid::ElementIndex)> {
    match devadze_generators(&p.table) {
        Ok(g) => g.iter().enumerate().map(|(i, &k)| (format!("g{}", i + 1), k)).collect(),
        Err(_) => p.table.indices().map(|k| (format!("{:03}", k.get()), k)).collect(),
    }
}

impl WedderburnReport {
    pub fn new(p: &Pipeline) -> Result<Self> {
        let dec = p.decomposition()?;
        let s = p.semisimple()?;
        let keys = generator_keys(p);
        let ideals = dec
            .components
            .iter()
            .map(|c| IdealEntry {
                d: c.d,
                dim: c.dim(),
                identity: terms(s, &c.identity),
                generator: terms(s, &c.generator),
                search: c.choice.to_string(),
                traces: keys.iter().map(|(_, k)| c.rep.trace(*k)).collect(),
                faithful: c.rep.is_faithful(),
                image_size: c.rep.image_size(),
                generators: keys.iter().map(|(name, k)| (name.clone(), c.rep.matrix(*k).clone())).collect(),
            })
            .collect();
        Ok(WedderburnReport { dims: dec.dims(), degrees: dec.degrees(), ideals })
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.ideals.iter().enumerate() {
            let _ = writeln!(
                s,
                "ideal {:>2}  d = {:>2}  dim = {:>3}  traces {:?}  faithful {}  image {}",
                i + 1,
                c.d,
                c.dim,
                c.traces,
                if c.faithful { "yes" } else { "no" },
                c.image_size
            );
            let _ = writeln!(s, "  identity  = {}", c.identity);
            let _ = writeln!(s, "  generator = {} ({})", c.generator, c.search);
        }
        s
    }

    /// Generator images only, in the layout of the `reps` subcommand.
    pub fn reps(&self) -> RepsReport {
        RepsReport {
            ideals: self
                .ideals
                .iter()
                .map(|c| RepEntry {
                    d: c.d,
                    identity: c.identity.clone(),
                    generators: c.generators.clone(),
                    traces: c.traces.clone(),
                    faithful: c.faithful,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct RepEntry {
    pub d: usize,
    pub identity: String,
    pub generators: BTreeMap<String, IntMat>,
    pub traces: Vec<i64>,
    pub faithful: bool,
}

#[derive(Serialize)]
pub struct RepsReport {
    pub ideals: Vec<RepEntry>,
}

impl RepsReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        for (i, r) in self.ideals.iter().enumerate() {
            let _ = writeln!(s, "representation {} (d = {})", i + 1, r.d);
            for (name, m) in &r.generators {
                let _ = writeln!(s, "{name}:\n{}\n", matrix_text(m));
            }
        }
        s
    }
}

#[derive(Serialize)]
pub struct PaperReport {
    pub passed: usize,
    pub failed: Vec<String>,
    pub checks: Vec<Check>,
}

impl PaperReport {
    pub fn new(checks: Vec<Check>) -> Self {
        let failed = checks.iter().filter(|c| !c.passed).map(|c| c.id.clone()).collect();
        PaperReport { passed: checks.iter().filter(|c| c.passed).count(), failed, checks }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(s, "{:<4} {:<32} {}", if c.passed { "ok" } else { "FAIL" }, c.id, c.detail);
        }
        let _ = writeln!(s, "{} passed, {} failed", self.passed, self.failed.len());
        s
    }
}
