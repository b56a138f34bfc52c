//! `hydrogenic`: exact and numerical hydrogenic momentum expectation values.

mod commands;
mod records;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use commands::{
    AsymptArgs, CliError, CliResult, ExactScales, ExpectArgs, ExpectMethod, Function, GridKind, Regime,
    Representation, ShiftArgs, Units, VerifyArgs, WavefnArgs,
};
use records::{write_records, Format, Status};

const EXIT_IDENTITY_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NON_CONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(name = "hydrogenic", version, about = "Exact and numerical <1/P> for hydrogenic states")]
struct Cli {
    #[command(flatten)]
    output: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output encoding
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ScaleArgs {
    /// Bohr radius, as a decimal or p/q
    #[arg(long, default_value = "1")]
    bohr_radius: String,
    /// Reduced Planck constant, as a decimal or p/q
    #[arg(long, default_value = "1")]
    hbar: String,
}

#[derive(Subcommand)]
enum Command {
    /// Exact <2 pi hbar kappa / P> for every state with n <= nmax
    Table {
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        #[arg(long, value_enum, default_value = "table")]
        units: Units,
        /// Rows l, columns n
        #[arg(long)]
        grid: bool,
        /// Add a decimal column next to each grid entry
        #[arg(long)]
        float: bool,
        #[command(flatten)]
        scales: ScaleArgs,
    },
    /// Expectation of a function of the momentum in one state
    Expect {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value = "invp")]
        f: Function,
        /// Relative tolerance for quadrature routes
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Quadrature nodes; defaults to 64 + 8n
        #[arg(long)]
        nodes: Option<usize>,
        /// Defaults to exact for invp and quadrature otherwise
        #[arg(long, value_enum)]
        method: Option<ExpectMethod>,
        #[arg(long, value_enum, default_value = "table")]
        units: Units,
        #[command(flatten)]
        scales: ScaleArgs,
    },
    /// Check every identity up to nmax; exits 1 on any FAIL
    Verify {
        #[arg(long, default_value_t = 10)]
        nmax: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Offset the reference value of one entry by 1/1000 before checking
        #[arg(long, value_name = "N,L", value_parser = parse_entry)]
        perturb_entry: Option<(u32, u32)>,
    },
    /// Compare an asymptotic regime with the exact value
    Asympt {
        #[arg(long, value_enum)]
        regime: Regime,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        /// n - 1 - l for the near-circular regime
        #[arg(long)]
        delta: Option<u32>,
        /// l/(n-1) for the lambda regime, as a decimal or p/q
        #[arg(long)]
        lambda: Option<String>,
        /// Largest n sampled for the lambda regime
        #[arg(long, default_value_t = 385)]
        nmax: u32,
    },
    /// First-order energy shift from a -alpha b / P perturbation
    Shift {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        b: f64,
        #[command(flatten)]
        scales: ScaleArgs,
    },
    /// Sample a radial wavefunction on a grid
    Wavefn {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value = "momentum")]
        repr: Representation,
        #[arg(long, value_enum, default_value = "uniform")]
        grid: GridKind,
        #[arg(long, default_value_t = 0.0)]
        min: f64,
        #[arg(long, default_value_t = 5.0)]
        max: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[command(flatten)]
        scales: ScaleArgs,
    },
}

fn parse_entry(s: &str) -> Result<(u32, u32), String> {
    let (n, l) = s.split_once(',').ok_or_else(|| format!("expected N,L, got {s:?}"))?;
    let n = n.trim().parse().map_err(|_| format!("bad n in {s:?}"))?;
    let l = l.trim().parse().map_err(|_| format!("bad l in {s:?}"))?;
    Ok((n, l))
}

fn sink(output: &OutputArgs) -> CliResult<Box<dyn Write>> {
    Ok(match &output.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit<T: Serialize>(records: &[T], output: &OutputArgs) -> CliResult<()> {
    let mut w = sink(output)?;
    write_records(records, output.format, &mut w)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct GridRow {
    l: u32,
    values: Vec<Option<String>>,
}

fn emit_grid(rows: Vec<Vec<String>>, output: &OutputArgs) -> CliResult<()> {
    let mut w = sink(output)?;
    match output.format {
        Format::Csv => {
            let mut c = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut w);
            for row in &rows {
                c.write_record(row).map_err(io::Error::from)?;
            }
            c.flush()?;
        }
        Format::Json => {
            let body: Vec<GridRow> = rows
                .iter()
                .skip(1)
                .enumerate()
                .map(|(l, row)| GridRow {
                    l: l as u32,
                    values: row[1..].iter().map(|v| (!v.is_empty()).then(|| v.clone())).collect(),
                })
                .collect();
            serde_json::to_writer_pretty(&mut w, &body).map_err(io::Error::from)?;
            w.write_all(b"\n")?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> CliResult<u8> {
    let out = &cli.output;
    match cli.command {
        Command::Table {
            nmax,
            units,
            grid,
            float,
            scales,
        } => {
            let scales = ExactScales::parse(&scales.bohr_radius, &scales.hbar)?;
            let records = commands::table(nmax, units, &scales)?;
            if grid {
                emit_grid(commands::table_grid(&records, nmax, float), out)?;
            } else {
                emit(&records, out)?;
            }
        }
        Command::Expect {
            n,
            l,
            f,
            tol,
            nodes,
            method,
            units,
            scales,
        } => {
            let scales = ExactScales::parse(&scales.bohr_radius, &scales.hbar)?;
            let args = ExpectArgs {
                n,
                l,
                f,
                tol,
                nodes,
                method,
                units,
            };
            emit(&[commands::expect(&args, &scales)?], out)?;
        }
        Command::Verify {
            nmax,
            tol,
            perturb_entry,
        } => {
            let records = commands::verify(&VerifyArgs {
                nmax,
                tol,
                perturb: perturb_entry,
            })?;
            emit(&records, out)?;
            let failures: Vec<_> = records.iter().filter(|r| r.status == Some(Status::Fail)).collect();
            for r in &failures {
                let at = match r.l {
                    Some(l) => format!("n={}, l={l}", r.n),
                    None => format!("n={}", r.n),
                };
                eprintln!("FAIL {} at {at}", r.identity.as_deref().unwrap_or("?"));
            }
            if !failures.is_empty() {
                return Ok(EXIT_IDENTITY_FAILURE);
            }
        }
        Command::Asympt {
            regime,
            n,
            l,
            delta,
            lambda,
            nmax,
        } => {
            let args = AsymptArgs {
                regime,
                n,
                l,
                delta,
                lambda,
                nmax,
            };
            emit(&[commands::asympt(&args)?], out)?;
        }
        Command::Shift { n, l, alpha, b, scales } => {
            let scales = ExactScales::parse(&scales.bohr_radius, &scales.hbar)?;
            emit(&[commands::shift(&ShiftArgs { n, l, alpha, b }, &scales)?], out)?;
        }
        Command::Wavefn {
            n,
            l,
            repr,
            grid,
            min,
            max,
            points,
            scales,
        } => {
            let scales = ExactScales::parse(&scales.bohr_radius, &scales.hbar)?;
            let args = WavefnArgs {
                n,
                l,
                repr,
                grid,
                min,
                max,
                points,
            };
            emit(&commands::wavefn(&args, &scales)?, out)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) | CliError::Output(_) => EXIT_USAGE,
                CliError::Numeric(_) => EXIT_NON_CONVERGENCE,
            })
        }
    }
}
