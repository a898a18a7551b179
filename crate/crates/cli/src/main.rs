mod commands;
mod report;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::GroupSource;
use num_complex::Complex64;
use report::{render_csv, render_json, render_table, Report};
use std::path::PathBuf;
use std::process::ExitCode;
use tubecat::scalar::{Cyclo, Rational};

#[derive(Parser)]
#[command(name = "tubecat", version, about = "Tube algebras, central unitaries and Temperley-Lieb checks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Residual tolerance; also fixes how many digits floats print with.
    #[arg(long, global = true, env = "TUBECAT_TOL", default_value_t = 1e-9)]
    tol: f64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Mode {
    /// Cyclotomic arithmetic.
    #[default]
    Exact,
    /// Complex floating point.
    Float,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct GroupArgs {
    /// Built-in group: Z/n, S3 or A4.
    #[arg(long)]
    group: Option<String>,
    /// Group JSON file with explicit unitary irreps.
    #[arg(long)]
    group_file: Option<PathBuf>,
}

impl GroupArgs {
    fn source(&self) -> GroupSource {
        match (&self.group, &self.group_file) {
            (Some(g), _) => GroupSource::Builtin(g.clone()),
            (None, Some(p)) => GroupSource::File(p.clone()),
            (None, None) => unreachable!("clap requires one selector"),
        }
    }
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct RingArgs {
    /// Built-in group whose representation ring is used.
    #[arg(long)]
    group: Option<String>,
    /// Group JSON file.
    #[arg(long)]
    group_file: Option<PathBuf>,
    /// Fusion ring JSON file.
    #[arg(long)]
    ring: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// τ(U^k) from diagram counts against the spectral measure.
    Moments {
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        /// Loop value d, an integer or fraction such as 7/2.
        #[arg(long, default_value = "3")]
        delta: String,
        /// Allow k above the enumeration limit.
        #[arg(long)]
        force: bool,
    },
    /// |NC₂°(k)| against the Riordan numbers and SO(3) multiplicities.
    Riordan {
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        #[arg(long)]
        force: bool,
    },
    /// Index of a full subcategory given by comma-separated label names.
    Index {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        sub: String,
    },
    /// Spectrum of U_i and the trace of the projection onto its fixed space.
    TubeSpectrum {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        label: String,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
    },
    /// Residual of the projection identity for each (i, α) and subcategory.
    Lemma39 {
        #[command(flatten)]
        group: GroupArgs,
        /// Defaults to every full subcategory.
        #[arg(long)]
        sub: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
    },
    /// Markov sum of the subcategory inclusion against its index.
    Markov {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        sub: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
    },
    /// Haar trace and Markov sum of the quantum double.
    Double {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
    },
    /// The resolution checks in the Temperley-Lieb-Jones category.
    Tlj {
        /// +1 or -1; both when omitted.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sgn)]
        sgn: Option<i8>,
        /// Numeric δ ≥ 2; symbolic when omitted.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Every check at its default setting.
    Suite,
}

fn parse_sgn(s: &str) -> std::result::Result<i8, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("expected 1 or -1, got {s}")),
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    match s.trim().parse::<Rational>() {
        Ok(q) => Ok(q),
        Err(_) => bail!("cannot parse '{s}' as a rational number"),
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let tol = cli.tol;
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("tolerance must be positive, got {tol}");
    }
    let (name, checks) = match &cli.cmd {
        Cmd::Moments { kmax, delta, force } => ("moments", commands::moments(*kmax, &parse_rational(delta)?, *force)?),
        Cmd::Riordan { kmax, force } => ("riordan", commands::riordan(*kmax, *force)?),
        Cmd::Index { ring, sub } => {
            let checks = match (&ring.group, &ring.group_file, &ring.ring) {
                (Some(g), _, _) => commands::index_of_group(&GroupSource::Builtin(g.clone()), sub)?,
                (_, Some(p), _) => commands::index_of_group(&GroupSource::File(p.clone()), sub)?,
                (_, _, Some(p)) => commands::index_of_ring(p, sub)?,
                _ => unreachable!("clap requires one selector"),
            };
            ("index", checks)
        }
        Cmd::TubeSpectrum { group, label, mode } => {
            let src = group.source();
            let checks = match mode {
                Mode::Exact => commands::tube_spectrum(src.load::<Cyclo>()?, &src.describe(), label, tol)?,
                Mode::Float => commands::tube_spectrum(src.load::<Complex64>()?, &src.describe(), label, tol)?,
            };
            ("tube-spectrum", checks)
        }
        Cmd::Lemma39 { group, sub, mode } => {
            let src = group.source();
            let checks = match mode {
                Mode::Exact => commands::lemma39(src.load::<Cyclo>()?, &src.describe(), sub.as_deref(), tol)?,
                Mode::Float => commands::lemma39(src.load::<Complex64>()?, &src.describe(), sub.as_deref(), tol)?,
            };
            ("lemma39", checks)
        }
        Cmd::Markov { group, sub, mode } => {
            let src = group.source();
            let checks = match mode {
                Mode::Exact => commands::markov(src.load::<Cyclo>()?, &src.describe(), sub.as_deref(), tol)?,
                Mode::Float => commands::markov(src.load::<Complex64>()?, &src.describe(), sub.as_deref(), tol)?,
            };
            ("markov", checks)
        }
        Cmd::Double { group, pairs, seed, mode } => {
            let src = group.source();
            let checks = match mode {
                Mode::Exact => commands::double(src.load::<Cyclo>()?, &src.describe(), *pairs, *seed, tol)?,
                Mode::Float => commands::double(src.load::<Complex64>()?, &src.describe(), *pairs, *seed, tol)?,
            };
            ("double", checks)
        }
        Cmd::Tlj { sgn, delta } => ("tlj", commands::tlj(*sgn, *delta, tol)?),
        Cmd::Suite => ("suite", commands::suite(tol)?),
    };
    Ok(Report::new(name, tol, checks))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Csv => render_csv(&report),
                Format::Json => render_json(&report),
                Format::Table => render_table(&report),
            };
            print!("{text}");
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
