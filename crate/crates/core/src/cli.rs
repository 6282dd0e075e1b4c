//! Command-line surface.
//!
//! Exit codes: 0 when every mathematical verdict passes, 1 when a verdict
//! fails (axiom violation, bound violation), 2 on usage or parse errors.

use crate::algebra::{Algebra, DEFAULT_DIMENSION_CAP};
use crate::analysis;
use crate::fixtures;
use crate::format::{self, FormatError};
use crate::report::*;
use crate::scalar::FieldDesc;
use crate::subspace::{self, Subspace};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "poisson23",
    version,
    about = "Exact verification and analysis of Poisson (2-3)-algebras given by structure constants"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Override the axiom-scan dimension cap (default 12)
    #[arg(long, global = true, value_name = "N")]
    max_dim: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the defining axioms and the derived identities
    Check {
        file: PathBuf,
        /// Random trials for the derived-identity checks
        #[arg(long, default_value_t = 100)]
        trials: u32,
        /// Seed for the deterministic element sampler
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Compute the center and its codimension
    Center { file: PathBuf },
    /// Run the Schur-type analysis (center, derived subspace, ideal K, bound)
    Schur { file: PathBuf },
    /// Adjoin a multiplicative identity and write the enlarged algebra
    Unitalize {
        file: PathBuf,
        /// Output algebra file
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Quotient by the ideal generated by the vectors in a generator file
    Quotient {
        file: PathBuf,
        /// Generator-list file; its Poisson ideal closure is the divisor
        #[arg(long)]
        ideal: PathBuf,
        /// Output algebra file
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Fixture corpus tools
    Fixtures {
        #[command(subcommand)]
        command: FixturesCommand,
    },
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// Write a named fixture algebra to a file
    Emit {
        /// One of the registry names (see `fixtures list`)
        name: String,
        /// Ground field: Q, or a prime p
        #[arg(long, default_value = "Q")]
        field: String,
        /// Output algebra file
        #[arg(short, long)]
        output: PathBuf,
    },
    /// List the registry names
    List,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: FormatError },
    #[error("unknown fixture {0:?}; run `fixtures list`")]
    UnknownFixture(String),
    #[error("invalid field {0:?}: expected Q or a prime number")]
    BadField(String),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Analysis(#[from] crate::analysis::AnalysisError),
    #[error("failed to write output: {0}")]
    Out(std::io::Error),
}

fn read_algebra(path: &Path) -> Result<Algebra, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    format::parse_algebra_file(&bytes).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_field(text: &str) -> Result<FieldDesc, CliError> {
    if text.eq_ignore_ascii_case("q") {
        return Ok(FieldDesc::Rationals);
    }
    let normalized = text.strip_prefix(['F', 'f']).unwrap_or(text);
    let p: u64 = normalized
        .parse()
        .map_err(|_| CliError::BadField(text.to_string()))?;
    FieldDesc::prime_field(p).map_err(|_| CliError::BadField(text.to_string()))
}

fn emit<W: Write, T: serde::Serialize>(
    out: &mut W,
    json: bool,
    report: &T,
    text: String,
) -> Result<(), CliError> {
    if json {
        let line = serde_json::to_string(report).expect("reports serialize");
        writeln!(out, "{line}").map_err(CliError::Out)?;
    } else {
        write!(out, "{text}").map_err(CliError::Out)?;
    }
    Ok(())
}

/// Runs the CLI against explicit arguments, writing reports to `out`.
/// Returns the process exit code.
pub fn cli_run<I, A, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    eprintln!("{e}");
                    2
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

/// Entry point for the binary: real stdin/stdout, process arguments.
pub fn cli_run_default() -> i32 {
    let mut stdout = std::io::stdout().lock();
    cli_run(std::env::args_os(), &mut stdout)
}

fn dispatch<W: Write>(cli: &Cli, out: &mut W) -> Result<i32, CliError> {
    let cap = cli.max_dim.unwrap_or(DEFAULT_DIMENSION_CAP);
    match &cli.command {
        Command::Check { file, trials, seed } => run_check(cli, file, *trials, *seed, cap, out),
        Command::Center { file } => run_center(cli, file, out),
        Command::Schur { file } => run_schur(cli, file, out),
        Command::Unitalize { file, output } => run_unitalize(cli, file, output, out),
        Command::Quotient {
            file,
            ideal,
            output,
        } => run_quotient(cli, file, ideal, output, out),
        Command::Fixtures { command } => match command {
            FixturesCommand::Emit {
                name,
                field,
                output,
            } => run_fixture_emit(cli, name, field, output, out),
            FixturesCommand::List => {
                for name in fixtures::fixture_names() {
                    writeln!(out, "{name}").map_err(CliError::Out)?;
                }
                Ok(0)
            }
        },
    }
}

fn run_check<W: Write>(
    cli: &Cli,
    file: &Path,
    trials: u32,
    seed: u64,
    cap: usize,
    out: &mut W,
) -> Result<i32, CliError> {
    let algebra = read_algebra(file)?;
    let axioms = algebra.check_axioms_capped(cap)?;
    let mut violations = violations_json(&axioms);
    let derived_passed = if axioms.passed() {
        let derived = algebra.verify_derived_identities(trials, seed);
        violations.extend(violations_json(&derived));
        Some(derived.passed())
    } else {
        None
    };
    let report = CheckReport {
        command: "check",
        file: file.display().to_string(),
        dim: algebra.dim(),
        field: algebra.field().to_string(),
        char_two: algebra.field().is_char_two(),
        axioms_passed: axioms.passed(),
        derived_identities_passed: derived_passed,
        trials,
        seed,
        violations,
    };
    let text = report.to_text();
    emit(out, cli.json, &report, text)?;
    let ok = report.axioms_passed && report.derived_identities_passed.unwrap_or(false);
    Ok(if ok { 0 } else { 1 })
}

fn run_center<W: Write>(cli: &Cli, file: &Path, out: &mut W) -> Result<i32, CliError> {
    let algebra = read_algebra(file)?;
    let center = analysis::center(&algebra);
    let report = CenterReport {
        command: "center",
        file: file.display().to_string(),
        dim: algebra.dim(),
        field: algebra.field().to_string(),
        codim_d: algebra.dim() - center.dim(),
        center: SubspaceJson::from_subspace(&center),
    };
    let text = report.to_text();
    emit(out, cli.json, &report, text)?;
    Ok(0)
}

fn run_schur<W: Write>(cli: &Cli, file: &Path, out: &mut W) -> Result<i32, CliError> {
    let algebra = read_algebra(file)?;
    let analysis = analysis::schur_analysis(&algebra);
    let report = SchurJson::from_report(
        "schur",
        file.display().to_string(),
        algebra.dim(),
        algebra.field().to_string(),
        &analysis,
    );
    let text = report.to_text();
    let ok = report.all_verdicts_pass();
    emit(out, cli.json, &report, text)?;
    Ok(if ok { 0 } else { 1 })
}

fn run_unitalize<W: Write>(
    cli: &Cli,
    file: &Path,
    output: &Path,
    out: &mut W,
) -> Result<i32, CliError> {
    let algebra = read_algebra(file)?;
    let unital = algebra.unitalize();
    write_file(output, &format::write_algebra_file(&unital.algebra))?;
    let embed_rank = Subspace::from_rows(
        algebra.field(),
        unital.algebra.dim(),
        unital.embed.clone(),
    )?
    .dim();
    let report = UnitalizeReport {
        command: "unitalize",
        file: file.display().to_string(),
        input_dim: algebra.dim(),
        output_dim: unital.algebra.dim(),
        identity: render_row(unital.algebra.identity().expect("unitalization has identity")),
        embed_rank,
        output: output.display().to_string(),
    };
    let text = report.to_text();
    emit(out, cli.json, &report, text)?;
    Ok(0)
}

fn run_quotient<W: Write>(
    cli: &Cli,
    file: &Path,
    ideal_path: &Path,
    output: &Path,
    out: &mut W,
) -> Result<i32, CliError> {
    let algebra = read_algebra(file)?;
    let bytes = std::fs::read(ideal_path).map_err(|source| CliError::Io {
        path: ideal_path.display().to_string(),
        source,
    })?;
    let generators =
        format::parse_generator_file(&bytes, &algebra).map_err(|source| CliError::Parse {
            path: ideal_path.display().to_string(),
            source,
        })?;
    let span = Subspace::from_rows(algebra.field(), algebra.dim(), generators)?;
    let ideal = subspace::poisson_ideal_closure(&algebra, &span)?;
    let result = analysis::quotient(&algebra, &ideal)?;
    write_file(output, &format::write_algebra_file(&result.quotient))?;
    let report = QuotientReport {
        command: "quotient",
        file: file.display().to_string(),
        ideal_file: ideal_path.display().to_string(),
        generator_span_dim: span.dim(),
        ideal_dim: ideal.dim(),
        closure_enlarged_input: ideal.dim() != span.dim(),
        quotient_dim: result.quotient.dim(),
        output: output.display().to_string(),
    };
    let text = report.to_text();
    emit(out, cli.json, &report, text)?;
    Ok(0)
}

fn run_fixture_emit<W: Write>(
    cli: &Cli,
    name: &str,
    field_text: &str,
    output: &Path,
    out: &mut W,
) -> Result<i32, CliError> {
    let field = parse_field(field_text)?;
    let algebra = fixtures::make_fixture(name, field)
        .ok_or_else(|| CliError::UnknownFixture(name.to_string()))?;
    write_file(output, &format::write_algebra_file(&algebra))?;
    let report = FixtureReport {
        command: "fixtures-emit",
        name: name.to_string(),
        field: field.to_string(),
        dim: algebra.dim(),
        output: output.display().to_string(),
    };
    let text = report.to_text();
    emit(out, cli.json, &report, text)?;
    Ok(0)
}
