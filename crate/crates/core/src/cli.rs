//! Command-line front end. [`run`] is the whole program; `main` only wires it
//! to the process streams and exit code.
//!
//! Exit codes: 0 success, 1 verification or card-check failure, 2 usage error.
//! Data goes to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cards::{check_card, generate_card, parse_json, render, CardFormat};
use crate::circuit::Circuit;
use crate::decompose::{decompose_to_basis, BasisSet};
use crate::depth::{growth_check, sweep, DEFAULT_SWEEP_MAX, SWEEP_MIN_QUBITS};
use crate::format::{from_json, from_text, to_json, to_text};
use crate::oracles::{build, OracleId, OracleParams};
use crate::simulator::{apply_circuit, circuit_unitary, phase_profile};
use crate::verify::{verify_state, verify_unitary, InputState, Level};

/// Environment variable naming a file that holds the default basis set,
/// e.g. `CX, RZ, SX, X`.
pub const BASIS_FILE_ENV: &str = "QORACLE_BASIS_FILE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qoracle", version, about = "Build, simulate, verify and document quantum phase oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an oracle circuit and print it.
    Build {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum, default_value_t = CircuitFormat::Text)]
        format: CircuitFormat,
        /// Lower the circuit to the basis set before printing.
        #[arg(long)]
        decompose: bool,
        #[command(flatten)]
        basis: BasisArgs,
    },
    /// Simulate an oracle (or a circuit file) and print the phase profile.
    Simulate {
        #[command(flatten)]
        oracle: OracleArgs,
        /// Circuit file in text or JSON format, used instead of --oracle.
        #[arg(long, conflicts_with = "oracle_flags")]
        circuit: Option<PathBuf>,
        /// uniform or basis:k
        #[arg(long, default_value = "uniform")]
        input: String,
        /// Print the full unitary instead of the output state.
        #[arg(long)]
        unitary: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check an oracle against its closed-form pattern.
    Verify {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, default_value = "unitary")]
        level: String,
        /// uniform or basis:k; state level only. Defaults to the documented precondition input.
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Depth of both range-oracle implementations over every interior range.
    Sweep {
        #[arg(long, default_value_t = SWEEP_MIN_QUBITS)]
        n_min: usize,
        #[arg(long, default_value_t = DEFAULT_SWEEP_MAX)]
        n_max: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        basis: BasisArgs,
    },
    /// Generate (and optionally check) a documentation card.
    Card {
        #[command(flatten)]
        oracle: OracleArgs,
        /// Load an existing JSON card instead of generating one.
        #[arg(long, conflicts_with = "oracle_flags")]
        from: Option<PathBuf>,
        #[arg(long, default_value = "markdown")]
        format: String,
        /// Attach per-n depth statistics from a sweep up to this qubit count (range oracles).
        #[arg(long)]
        summary_n_max: Option<usize>,
        /// Re-derive every claim and print the check report.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
#[group(id = "oracle_flags", multiple = true)]
struct OracleArgs {
    /// mcz, less-than, qft, add, range-a or range-b
    #[arg(long)]
    oracle: Option<String>,
    #[arg(long)]
    qubits: Option<usize>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    n1: Option<u64>,
    #[arg(long)]
    n2: Option<u64>,
    /// MCZ participants, comma separated.
    #[arg(long, value_delimiter = ',')]
    participants: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
struct BasisArgs {
    /// Comma-separated basis gates; falls back to $QORACLE_BASIS_FILE, then CX,RZ,SX,X.
    #[arg(long)]
    basis: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CircuitFormat {
    Text,
    Json,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.to_string(),
    }
}

fn io_err(e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_FAIL,
        msg: e.to_string(),
    }
}

impl OracleArgs {
    fn resolve(&self) -> Result<(OracleId, OracleParams), Failure> {
        let id = self
            .oracle
            .as_deref()
            .ok_or_else(|| usage("--oracle is required"))?;
        let id = OracleId::from_str(id).map_err(usage)?;
        let n = self.qubits.ok_or_else(|| usage("--qubits is required"))?;
        let params = OracleParams {
            n,
            m: self.m,
            a: self.a,
            n1: self.n1,
            n2: self.n2,
            participants: self.participants.clone(),
        };
        Ok((id, params))
    }

    fn build(&self) -> Result<(OracleId, OracleParams, Circuit), Failure> {
        let (id, params) = self.resolve()?;
        let circuit = build(id, &params).map_err(usage)?;
        Ok((id, params, circuit))
    }
}

impl BasisArgs {
    fn resolve(&self) -> Result<BasisSet, Failure> {
        if let Some(b) = &self.basis {
            return b.parse().map_err(usage);
        }
        match std::env::var_os(BASIS_FILE_ENV) {
            Some(path) => {
                let text = fs::read_to_string(&path)
                    .map_err(|e| usage(format!("{BASIS_FILE_ENV}={}: {e}", path.to_string_lossy())))?;
                let names: String = text
                    .lines()
                    .filter(|l| !l.trim_start().starts_with('#'))
                    .collect::<Vec<_>>()
                    .join(",");
                names.parse().map_err(usage)
            }
            None => Ok(BasisSet::default()),
        }
    }
}

fn read_circuit(path: &PathBuf) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let parsed = if text.trim_start().starts_with('{') {
        from_json(&text)
    } else {
        from_text(&text)
    };
    parsed.map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("value serializes") + "\n"
}

/// Runs the CLI with `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Build {
            oracle,
            format,
            decompose,
            basis,
        } => {
            let (_, _, mut circuit) = oracle.build()?;
            if decompose {
                circuit = decompose_to_basis(&circuit, &basis.resolve()?).map_err(usage)?;
            }
            let text = match format {
                CircuitFormat::Text => to_text(&circuit),
                CircuitFormat::Json => to_json(&circuit) + "\n",
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Simulate {
            oracle,
            circuit,
            input,
            unitary,
            json: as_json,
        } => {
            let circuit = match circuit {
                Some(path) => read_circuit(&path)?,
                None => oracle.build()?.2,
            };
            let input: InputState = input.parse().map_err(usage)?;
            let text = if unitary {
                let u = circuit_unitary(&circuit).map_err(usage)?;
                if as_json {
                    json(&u)
                } else {
                    u.to_string()
                }
            } else {
                let state = input.prepare(circuit.n_qubits()).map_err(usage)?;
                let result = apply_circuit(&circuit, &state).map_err(usage)?;
                let profile = phase_profile(&result).map_err(usage)?;
                if as_json {
                    json(&profile)
                } else {
                    profile.to_string()
                }
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            oracle,
            level,
            input,
            tol,
            json: as_json,
        } => {
            let (id, params) = oracle.resolve()?;
            let level: Level = level.parse().map_err(usage)?;
            if !(tol.is_finite() && tol > 0.0) {
                return Err(usage("--tol must be positive"));
            }
            let report = match level {
                Level::Unitary => {
                    if input.is_some() {
                        return Err(usage("--input applies to --level state only"));
                    }
                    verify_unitary(id, &params, tol)
                }
                Level::State => {
                    let input = input.map(|s| s.parse::<InputState>()).transpose().map_err(usage)?;
                    verify_state(id, &params, input, tol)
                }
            }
            .map_err(usage)?;
            let text = if as_json { json(&report) } else { report.to_string() };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(if report.passed { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Sweep {
            n_min,
            n_max,
            out: path,
            json: as_json,
            basis,
        } => {
            let basis = basis.resolve()?;
            let result = sweep(n_min, n_max, &basis).map_err(usage)?;
            let growth = growth_check(&result.records).ok();
            if let Some(path) = &path {
                fs::write(path, result.to_csv()).map_err(io_err)?;
                let _ = writeln!(err, "wrote {} records to {}", result.records.len(), path.display());
            }
            if as_json {
                #[derive(Serialize)]
                struct SweepOutput<'a> {
                    #[serde(flatten)]
                    sweep: &'a crate::depth::Sweep,
                    growth: Option<crate::depth::GrowthReport>,
                }
                let text = json(&SweepOutput {
                    sweep: &result,
                    growth,
                });
                out.write_all(text.as_bytes()).map_err(io_err)?;
            } else if path.is_none() {
                out.write_all(result.to_csv().as_bytes()).map_err(io_err)?;
            } else {
                let mut text = String::from("n,ranges,median_a,median_b,max_a,max_b,b_lower_fraction\n");
                for s in &result.summary.per_n {
                    text += &format!(
                        "{},{},{},{},{},{},{:.3}\n",
                        s.n, s.ranges, s.depth_a.median, s.depth_b.median, s.depth_a.max, s.depth_b.max, s.b_lower_fraction
                    );
                }
                out.write_all(text.as_bytes()).map_err(io_err)?;
            }
            Ok(EXIT_OK)
        }
        Command::Card {
            oracle,
            from,
            format,
            summary_n_max,
            check,
            tol,
        } => {
            let format: CardFormat = format.parse().map_err(usage)?;
            let card = match from {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    parse_json(&text).map_err(usage)?
                }
                None => {
                    let (id, params) = oracle.resolve()?;
                    let summary = match summary_n_max {
                        Some(hi) => Some(
                            sweep(SWEEP_MIN_QUBITS, hi, &BasisSet::default())
                                .map_err(usage)?
                                .summary,
                        ),
                        None => None,
                    };
                    generate_card(id, &params, summary.as_ref()).map_err(usage)?
                }
            };
            if !check {
                out.write_all(render(&card, format).as_bytes()).map_err(io_err)?;
                return Ok(EXIT_OK);
            }
            let report = check_card(&card, tol).map_err(usage)?;
            let text = match format {
                CardFormat::Json => json(&report),
                CardFormat::Markdown => {
                    let mut s = format!("# check: {}\n\n", report.card);
                    for c in &report.checks {
                        s += &format!("- [{}] {}: {}\n", if c.passed { "x" } else { " " }, c.claim, c.detail);
                    }
                    s
                }
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}
