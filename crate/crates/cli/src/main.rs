//! `khtool`: Khovanov and Lee homology, s-invariants, skein triangles and the cable
//! induction from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use khcore::io::{run, Cache, KnotEntry, Ledger, RunManifest, Task};
use khcore::kh::Deformation;
use khcore::link::{negative_five_two, to_pd};

#[derive(Parser)]
#[command(name = "khtool", version, about = "Khovanov-type homology of link diagrams")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Prime of the coefficient field.
    #[arg(long, global = true, default_value_t = 3)]
    field: u32,
    /// Frobenius algebra; `homology` defaults to khovanov, everything else to lee.
    #[arg(long, global = true)]
    deformation: Option<DeformationArg>,
    /// Diagrams (or cables) with more crossings are skipped.
    #[arg(long, global = true, default_value_t = 60)]
    budget_crossings: usize,
    /// Generator budget of the scanning engine.
    #[arg(long, global = true)]
    memory_budget: Option<usize>,
    /// Directory of cached results.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeformationArg {
    Khovanov,
    Lee,
    BarNatan,
}

impl From<DeformationArg> for Deformation {
    fn from(d: DeformationArg) -> Self {
        match d {
            DeformationArg::Khovanov => Deformation::Khovanov,
            DeformationArg::Lee => Deformation::Lee,
            DeformationArg::BarNatan => Deformation::BarNatan,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Verb {
    /// Homology, bigraded for khovanov and by homological degree otherwise.
    Homology { input: String },
    /// The s-invariant.
    SInvariant { input: String },
    /// Exactness of the skein triangles.
    Triangle {
        input: String,
        /// Only this crossing (0-based); every crossing by default.
        #[arg(long)]
        crossing: Option<usize>,
    },
    /// Vanishing above degree 0, Kh⁰ = Lee⁰, and the skein steps over the cables of a negative knot.
    Induct {
        input: String,
        #[arg(long, default_value_t = 1)]
        max_m: usize,
    },
    /// s of the 1-framed (2n+1)-cable against s(K) - 2n.
    VerifySinv {
        input: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Every task of a JSON run manifest.
    Run { manifest: PathBuf },
}

/// A built-in name, a file, or inline braid-word or PD text.
fn knot_entry(input: &str) -> Result<KnotEntry> {
    let builtin = match input {
        "unknot" => Some(KnotEntry::braid(input, "1:")),
        "3_1" | "trefoil" => Some(KnotEntry::braid(input, "2: -1 -1 -1")),
        "5_2" => Some(KnotEntry::pd(input, &to_pd(&negative_five_two()))),
        _ => None,
    };
    if let Some(k) = builtin {
        return Ok(k);
    }
    let (name, text) = match std::fs::read_to_string(input) {
        Ok(t) => (input.to_string(), t.trim().to_string()),
        Err(_) => (input.to_string(), input.to_string()),
    };
    if text.contains('X') || text.contains('[') {
        Ok(KnotEntry::pd(&name, &text))
    } else if text.contains(':') {
        Ok(KnotEntry::braid(&name, &text))
    } else {
        bail!("{input:?} is neither a known knot, a file, a braid word nor a PD code")
    }
}

fn manifest(cli: &Cli) -> Result<RunManifest> {
    let (input, task) = match &cli.verb {
        Verb::Homology { input } => (input, Task::Homology),
        Verb::SInvariant { input } => (input, Task::SInvariant),
        Verb::Triangle { input, crossing } => (input, Task::Triangle { crossing: *crossing }),
        Verb::Induct { input, max_m } => (input, Task::Induct { max_m: *max_m }),
        Verb::VerifySinv { input, n } => (input, Task::VerifySinv { n: *n }),
        Verb::Run { manifest } => {
            let text = std::fs::read_to_string(manifest).with_context(|| format!("reading {}", manifest.display()))?;
            return Ok(RunManifest::from_json(&text)?);
        }
    };
    let default = if matches!(cli.verb, Verb::Homology { .. }) { Deformation::Khovanov } else { Deformation::Lee };
    let mut m = RunManifest::new(vec![knot_entry(input)?], vec![task]);
    m.field = cli.field;
    m.deformation = cli.deformation.map(Into::into).unwrap_or(default);
    m.budget_crossings = cli.budget_crossings;
    m.memory_budget = cli.memory_budget;
    Ok(m)
}

fn emit(ledger: &Ledger, how: Emit) {
    match how {
        Emit::Text => print!("{}", ledger.to_text()),
        Emit::Json => println!("{}", ledger.to_json()),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let outcome = manifest(&cli).and_then(|m| {
        for p in m.validate() {
            log::warn!("{p}");
        }
        let cache = match &cli.cache {
            Some(dir) => Cache::at(dir)?,
            None => Cache::none(),
        };
        Ok(run(&m, &cache)?)
    });
    match outcome {
        Ok(o) => {
            log::info!("{} computed, {} from cache", o.computed, o.cached);
            emit(&o.ledger, cli.emit);
            ExitCode::from(o.ledger.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("khtool: {e:#}");
            ExitCode::from(1)
        }
    }
}
