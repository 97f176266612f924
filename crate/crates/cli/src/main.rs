//! `rq2`: classify, prepare and connect real two-qubit states, export orbit meshes.
//!
//! States are four amplitudes in the order `00 01 10 11`. When `classify`,
//! `prepare` or `connect` get no positional amplitudes they read one input per
//! line from stdin and print one output document per line.

use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use rq2::report::{classify_report, prepare_report, ClassifyReport, SampleReport};
use rq2::sampling::random_state_on_orbit;
use rq2::{cz_connect, local_connect, orbit_mesh, RealState, Tolerance};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Lib(#[from] rq2::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(rq2::Error::OrbitMismatch { .. }) => 3,
            CliError::Input(_) | CliError::Lib(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "rq2",
    version,
    about = "Geometry and synthesis for real two-qubit states"
)]
struct Cli {
    /// Numerical tolerance for orbit matching.
    #[arg(long, global = true, default_value_t = 1e-10, value_parser = parse_tolerance)]
    tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for random sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entanglement distance, entropy and orbit class of a state.
    Classify {
        /// Tolerance for the maximally entangled and product classes.
        #[arg(long, default_value_t = rq2::geometry::DEFAULT_CLASS_TOL, value_parser = parse_tolerance)]
        class_tol: f64,
        #[arg(allow_negative_numbers = true, num_args = 0..=4, value_name = "W")]
        w: Vec<f64>,
    },
    /// Circuit preparing a state from |00⟩ with at most one CZ.
    Prepare {
        #[arg(allow_negative_numbers = true, num_args = 0..=4, value_name = "W")]
        w: Vec<f64>,
    },
    /// Circuit sending a source state to a target state.
    Connect {
        /// Use local gates only; fails with exit code 3 across orbits.
        #[arg(long)]
        local_only: bool,
        #[arg(allow_negative_numbers = true, num_args = 0..=8, value_name = "W")]
        w: Vec<f64>,
    },
    /// Point cloud of the orbit at distance d, projected into the unit ball.
    Mesh {
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
        #[arg(long, default_value_t = 64)]
        na: usize,
        #[arg(long, default_value_t = 64)]
        nb: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random states on the orbit at distance d.
    Sample {
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

fn parse_tolerance(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive and finite, got {v}"))
    }
}

fn state_from(w: &[f64]) -> CliResult<RealState> {
    let w: [f64; 4] = w
        .try_into()
        .map_err(|_| CliError::Input(format!("expected 4 amplitudes, got {}", w.len())))?;
    Ok(RealState::new(w)?)
}

fn parse_line(line: &str, n: usize, lineno: usize) -> CliResult<Vec<f64>> {
    let vals = line
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>().map_err(|_| {
                CliError::Input(format!("line {lineno}: cannot parse {t:?} as a number"))
            })
        })
        .collect::<CliResult<Vec<f64>>>()?;
    if vals.len() != n {
        return Err(CliError::Input(format!(
            "line {lineno}: expected {n} numbers, got {}",
            vals.len()
        )));
    }
    Ok(vals)
}

/// Positional values if present, otherwise one record per non-blank stdin line.
fn inputs(positional: Vec<f64>, n: usize) -> CliResult<Vec<Vec<f64>>> {
    if !positional.is_empty() {
        if positional.len() != n {
            return Err(CliError::Input(format!(
                "expected {n} numbers, got {}",
                positional.len()
            )));
        }
        return Ok(vec![positional]);
    }
    let mut out = Vec::new();
    for (i, line) in io::stdin().lock().lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_line(line, n, i + 1)?);
    }
    Ok(out)
}

fn json_line<W: Write, T: Serialize>(out: &mut W, v: &T) -> CliResult<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn require_json(format: Format, cmd: &str) -> CliResult<()> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Input(format!(
            "{cmd} supports only --format json"
        ))),
    }
}

#[derive(Serialize)]
struct ClassifyRow {
    d: f64,
    entropy: f64,
    class: rq2::OrbitKind,
    sheet: &'static str,
    x1: f64,
    x2: f64,
    x3: f64,
    x4: f64,
    concurrence: f64,
}

impl From<&ClassifyReport> for ClassifyRow {
    fn from(r: &ClassifyReport) -> Self {
        let [x1, x2, x3, x4] = r.bell;
        ClassifyRow {
            d: r.d,
            entropy: r.entropy,
            class: r.class,
            sheet: r.sheet.as_str(),
            x1,
            x2,
            x3,
            x4,
            concurrence: r.concurrence,
        }
    }
}

#[derive(Serialize)]
struct SampleRow {
    w1: f64,
    w2: f64,
    w3: f64,
    w4: f64,
}

fn emit<W: Write, T: Serialize>(
    out: &mut W,
    format: Format,
    rows: impl Iterator<Item = CliResult<T>>,
) -> CliResult<()> {
    match format {
        Format::Json => {
            for row in rows {
                json_line(out, &row?)?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut result = Ok(());
            for row in rows {
                match row {
                    Ok(r) => w.serialize(&r)?,
                    Err(e) => {
                        result = Err(e);
                        break;
                    }
                }
            }
            w.flush()?;
            result
        }
    }
}

fn sample_states<R: Rng>(d: f64, count: usize, rng: &mut R) -> CliResult<SampleReport> {
    let states = (0..count)
        .map(|_| random_state_on_orbit(d, rng))
        .collect::<rq2::Result<Vec<_>>>()?;
    Ok(SampleReport { d, states })
}

fn run(cli: Cli, out: &mut impl Write) -> CliResult<()> {
    let tol = Tolerance::new(cli.tol)?;
    match cli.command {
        Command::Classify { class_tol, w } => {
            let class_tol = Tolerance::new(class_tol)?;
            let records = inputs(w, 4)?;
            let reports = records
                .into_iter()
                .map(|w| state_from(&w).map(|s| classify_report(&s, class_tol)));
            match cli.format {
                Format::Json => emit(out, cli.format, reports),
                Format::Csv => emit(
                    out,
                    cli.format,
                    reports.map(|r| r.map(|r| ClassifyRow::from(&r))),
                ),
            }
        }
        Command::Prepare { w } => {
            require_json(cli.format, "prepare")?;
            let records = inputs(w, 4)?;
            emit(
                out,
                cli.format,
                records
                    .into_iter()
                    .map(|w| state_from(&w).map(|s| prepare_report(&s))),
            )
        }
        Command::Connect { local_only, w } => {
            require_json(cli.format, "connect")?;
            let records = inputs(w, 8)?;
            let plans = records.into_iter().map(|w| {
                let a = state_from(&w[..4])?;
                let b = state_from(&w[4..])?;
                let plan = if local_only {
                    local_connect(&a, &b, tol)
                } else {
                    cz_connect(&a, &b, tol)
                };
                Ok(plan?)
            });
            emit(out, cli.format, plans)
        }
        Command::Mesh {
            d,
            na,
            nb,
            out: path,
        } => {
            let mesh = orbit_mesh(d, na, nb)?;
            let mut sink: Box<dyn Write + '_> = match path {
                Some(p) => Box::new(BufWriter::new(File::create(p)?)),
                None => Box::new(&mut *out),
            };
            match cli.format {
                Format::Csv => mesh.write_csv(&mut sink)?,
                Format::Json => json_line(&mut sink, &mesh.to_json())?,
            }
            sink.flush()?;
            Ok(())
        }
        Command::Sample { d, count } => {
            let report = match cli.seed {
                Some(seed) => sample_states(d, count, &mut ChaCha8Rng::seed_from_u64(seed))?,
                None => sample_states(d, count, &mut rand::rng())?,
            };
            match cli.format {
                Format::Json => json_line(out, &report),
                Format::Csv => emit(
                    out,
                    cli.format,
                    report.states.iter().map(|s| {
                        let [w1, w2, w3, w4] = s.amplitudes();
                        Ok(SampleRow { w1, w2, w3, w4 })
                    }),
                ),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(CliError::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rq2: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
