use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use qcartan::classify::{classify_matrix_with, ClassifyError, Method};
use qcartan::flation::{apply_sequence_matrix, FlationWitness};
use qcartan::format::{parse_input, parse_witness, serialize, serialize_witness, to_dot, InputDocument};
use qcartan::inflations::verify_witness;
use qcartan::oracle::{differential_test, random_walk, EnumerationSpec, OracleError, WalkSpec};
use qcartan::{ClassificationResult, DynkinType, QuasiCartanMatrix};

/// Dynkin type recognition for positive definite quasi-Cartan matrices and signed bigraphs.
#[derive(Parser, Debug)]
#[command(name = "qcartan", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Dynkin type of each connected component.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Structural)]
        method: MethodArg,
    },
    /// Print the flation steps, accumulated matrix and canonical matrix.
    Witness {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Structural)]
        method: MethodArg,
    },
    /// Check a witness file against an input document.
    Verify { file: PathBuf, witness: PathBuf },
    /// Emit a random bigraph of the given type, with the witness reaching it.
    Generate {
        #[arg(long = "type")]
        dynkin: DynkinType,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the structural recognizers with the inflations method on every graph.
    Diff {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected: bool,
    },
    /// Print the bigraph in Graphviz format.
    ExportDot { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Structural,
    Inflations,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Structural => Method::Structural,
            MethodArg::Inflations => Method::Inflations,
        }
    }
}

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("NotPositiveDefinite: {0}")]
    NotPositiveDefinite(String),
    #[error("witness rejected: {0}")]
    Rejected(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub const USAGE: u8 = 3;

    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 3,
            CliError::NotPositiveDefinite(_) => 2,
            CliError::Rejected(_) => 4,
            CliError::Internal(_) | CliError::Io(_) => 1,
        }
    }
}

fn read_document(path: &Path) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_input(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn classify_file(path: &Path, method: MethodArg) -> Result<ClassificationResult, CliError> {
    let a = read_document(path)?.to_matrix();
    match classify_matrix_with(&a, method.into()) {
        Ok(r) => Ok(r),
        Err(e @ (ClassifyError::NotPositiveDefinite | ClassifyError::EntryOutOfRange { .. })) => {
            Err(CliError::NotPositiveDefinite(e.to_string()))
        }
        Err(e) => Err(CliError::Internal(e.to_string())),
    }
}

/// Runs one subcommand, writing results to `out`; returns the exit code.
pub fn run(cli: Cli, out: &mut impl Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Classify { file, method } => {
            let r = classify_file(&file, method)?;
            for t in &r.types {
                writeln!(out, "{t}")?;
            }
        }
        Command::Witness { file, method } => {
            let r = classify_file(&file, method)?;
            write!(out, "{}", serialize_witness(&r.witness, Some(&r.canonical)))?;
        }
        Command::Verify { file, witness } => {
            let a = read_document(&file)?.to_matrix();
            let text = std::fs::read_to_string(&witness)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", witness.display())))?;
            let doc = parse_witness(&text, a.size()).map_err(|e| CliError::Input(format!("{}: {e}", witness.display())))?;
            let (reached, replayed) =
                apply_sequence_matrix(&a, &doc.steps).map_err(|e| CliError::Rejected(e.to_string()))?;
            if doc.accumulated.as_ref().is_some_and(|m| m != replayed.accumulated()) {
                return Err(CliError::Rejected("accumulated matrix does not match the steps".into()));
            }
            if doc.target.as_ref().is_some_and(|c| *c != reached) {
                return Err(CliError::Rejected("steps do not reach the stated matrix".into()));
            }
            let w = FlationWitness::from_parts(doc.steps, replayed.accumulated().clone());
            verify_witness(&a, &reached, &w).map_err(|e| CliError::Rejected(e.to_string()))?;
            writeln!(out, "ok: {} steps", w.len())?;
        }
        Command::Generate { dynkin, steps, seed } => {
            let (g, w) = random_walk(WalkSpec { base: dynkin, steps, seed });
            writeln!(out, "# {dynkin}, {steps} steps, seed {seed}")?;
            write!(out, "{}", serialize(&InputDocument::Bigraph(g.clone())))?;
            writeln!(out, "witness")?;
            write!(out, "{}", serialize_witness(&w, Some(&QuasiCartanMatrix::from_bigraph(&g))))?;
        }
        Command::Diff { n, connected } => {
            let spec = if connected { EnumerationSpec::connected(n) } else { EnumerationSpec::all(n) };
            let report = differential_test(spec).map_err(|e: OracleError| CliError::Input(e.to_string()))?;
            for line in report.lines() {
                writeln!(out, "{line}")?;
            }
            eprintln!(
                "examined {} graphs: {} connected, {} positive definite, {} disagreements",
                report.examined,
                report.connected,
                report.positive_definite,
                report.disagreements.len()
            );
            if !report.is_clean() {
                return Ok(4);
            }
        }
        Command::ExportDot { file } => {
            let g = read_document(&file)?.to_bigraph();
            write!(out, "{}", to_dot(&g))?;
        }
    }
    Ok(0)
}
