mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use boolalg::linalg::LllDelta;
use boolalg::pipeline::{Pipeline, PipelineConfig, Stage};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::*;

#[derive(Parser)]
#[command(name = "boolalg", version, about = "Structure of the rational monoid algebra of n×n Boolean matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Matrix size.
    #[arg(long, global = true, env = "BOOLALG_N", default_value_t = 3)]
    n: usize,

    /// Lovász constant for lattice reduction, as P/Q.
    #[arg(long, global = true, env = "BOOLALG_LLL_DELTA", default_value = "3/4")]
    lll_delta: LllDelta,

    /// Prime for the commutator rank computation.
    #[arg(long, global = true, env = "BOOLALG_MODULUS", default_value_t = 101)]
    modulus: u64,

    #[arg(long, global = true, env = "BOOLALG_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true, env = "BOOLALG_OUT")]
    out: Option<PathBuf>,

    /// Include per-stage wall-clock timings (JSON only; makes output
    /// non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, Subcommand)]
enum Command {
    /// Multiplication table by lexicographic index.
    Table,
    /// D-classes and the non-regular elements.
    Dclasses,
    /// Integer basis of the radical.
    Radical,
    /// Center basis and its multiplication table.
    Center,
    /// Orthogonal primitive central idempotents.
    Idempotents,
    /// Simple components, minimal left ideals, representation summary.
    Wedderburn,
    /// Representation matrices of the generators.
    Reps,
    /// Full n = 3 run at δ = 99/100 checked against the bundled reference data.
    Paper,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Table => "table",
            Command::Dclasses => "dclasses",
            Command::Radical => "radical",
            Command::Center => "center",
            Command::Idempotents => "idempotents",
            Command::Wedderburn => "wedderburn",
            Command::Reps => "reps",
            Command::Paper => "paper",
        }
    }

    fn last_stage(self) -> Stage {
        match self {
            Command::Table | Command::Dclasses => Stage::Monoid,
            Command::Radical => Stage::Radical,
            Command::Center => Stage::Center,
            Command::Idempotents => Stage::Idempotents,
            Command::Wedderburn | Command::Reps | Command::Paper => Stage::Wedderburn,
        }
    }
}

#[derive(Serialize)]
struct ConfigEcho {
    n: usize,
    lll_delta: String,
    modulus: u64,
}

#[derive(Serialize)]
struct Timing {
    stage: &'static str,
    seconds: f64,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema_version: u32,
    command: &'static str,
    config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<Vec<Timing>>,
    #[serde(flatten)]
    payload: T,
}

struct Output {
    text: String,
    json: String,
}

fn render<T: Serialize>(cli: &Cli, p: &Pipeline, payload: T, text: String) -> Result<Output, String> {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command: cli.command.name(),
        config: ConfigEcho { n: p.config.n, lll_delta: p.config.delta.to_string(), modulus: p.config.modulus },
        timings: cli.timings.then(|| p.timings.iter().map(|&(s, t)| Timing { stage: s.name(), seconds: t }).collect()),
        payload,
    };
    let json = serde_json::to_string_pretty(&env).map_err(|e| e.to_string())? + "\n";
    Ok(Output { text, json })
}

/// Returns the output and whether every reference check passed.
fn execute(cli: &Cli) -> Result<(Output, Vec<String>), String> {
    let config = if cli.command == Command::Paper {
        PipelineConfig::reference()
    } else {
        PipelineConfig { n: cli.n, delta: cli.lll_delta, modulus: cli.modulus }
    };
    let p = Pipeline::run(config, cli.command.last_stage()).map_err(|e| e.to_string())?;
    let err = |e: boolalg::Error| e.to_string();
    let mut failed = Vec::new();
    let out = match cli.command {
        Command::Table => {
            let r = TableReport::new(&p);
            let text = r.text();
            render(cli, &p, r, text)?
        }
        Command::Dclasses => {
            let r = DClassesReport::new(&p).map_err(err)?;
            let text = r.text();
            render(cli, &p, r, text)?
        }
        Command::Radical => {
            let r = RadicalReport::new(&p).map_err(err)?;
            let text = r.text();
            render(cli, &p, r, text)?
        }
        Command::Center => {
            let r = CenterReport::new(&p).map_err(err)?;
            let text = r.text();
            render(cli, &p, r, text)?
        }
        Command::Idempotents => {
            let r = IdempotentsReport::new(&p).map_err(err)?;
            let text = r.text();
            render(cli, &p, r, text)?
        }
        Command::Wedderburn => {
            let r = WedderburnReport::new(&p).map_err(err)?;
            let text = r.text();
            render(cli, &p, r, text)?
        }
        Command::Reps => {
            let r = WedderburnReport::new(&p).map_err(err)?.reps();
            let text = r.text();
            render(cli, &p, r, text)?
        }
        Command::Paper => {
            let r = PaperReport::new(boolalg::checks::reference_checks(&p).map_err(err)?);
            failed = r.failed.clone();
            let text = r.text();
            render(cli, &p, r, text)?
        }
    };
    Ok((out, failed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, failed) = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = match cli.format {
        Format::Json => out.json,
        Format::Text => out.text,
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if !failed.is_empty() {
        eprintln!("failing fixtures: {}", failed.join(", "));
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
