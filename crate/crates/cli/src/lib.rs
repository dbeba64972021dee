//! Command-line surface over `expfam-core`.
//!
//! Every subcommand reads JSON documents from files, writes JSON to stdout,
//! and reports through the exit code: `0` success (or equivalent), `1`
//! inequivalent, `2` malformed or incompatible input.

pub mod document;
pub mod error;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use expfam_core::random::random_representation;
use expfam_core::{
    act, density, graff_dimension, graff_from_rep, log_partition, rank_with_tolerance,
    recover_witness_with, DVector, Tolerances,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

pub use document::{round_canonical, GroupDocument, Metadata, RepDocument};
pub use error::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INEQUIVALENT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "expfam",
    version,
    about = "Discrete exponential families: equivalence witnesses and canonical forms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether 1, F_1, ..., F_n are linearly independent.
    Minimal {
        file: PathBuf,
        /// Relative singular-value cutoff for the rank decision.
        #[arg(long, default_value_t = expfam_core::tolerance::DEFAULT_RANK_TOL)]
        tol: f64,
    },
    /// Decide whether two representations generate the same family; print the witness g with A = g·B.
    Equiv {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Decision threshold for the witness checks.
        #[arg(long, default_value_t = expfam_core::tolerance::DEFAULT_DECISION_TOL)]
        tol: f64,
    },
    /// Print the canonical affine subspace [C] + span{[F_1], ..., [F_n]}.
    Canon { file: PathBuf },
    /// Print the density at θ as a label → probability map.
    Eval {
        file: PathBuf,
        /// Comma-separated natural parameters.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Print the log-partition function at θ.
    Psi {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Apply a group element to a representation.
    Act { file: PathBuf, group_file: PathBuf },
    /// Generate a random minimal representation on m + 1 points.
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the dimension (n+1)(m-n) of the space of n-dimensional families on m + 1 points.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(value: &Value) -> Self {
        Self::with_code(EXIT_OK, value)
    }

    fn with_code(code: i32, value: &Value) -> Self {
        Self {
            code,
            stdout: serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n",
            stderr: String::new(),
        }
    }

    fn failure(err: &CliError) -> Self {
        Self {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_theta(text: &str) -> Result<DVector<f64>, CliError> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("bad theta component {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DVector::from_vec(values))
}

pub fn cmd_minimal(doc: &RepDocument, tol: f64) -> Result<Value, CliError> {
    let (_, functions) = doc.functions_on_space()?;
    let ones = vec![1.0; doc.sample_space.len()];
    let mut family: Vec<&[f64]> = vec![&ones];
    family.extend(functions.iter().map(|f| f.values()));
    let rank = rank_with_tolerance(&family, tol)?;
    Ok(json!({ "minimal": rank == functions.len() + 1, "rank": rank }))
}

/// Returns the exit code alongside the report.
pub fn cmd_equiv(a: &RepDocument, b: &RepDocument, tol: f64) -> Result<(i32, Value), CliError> {
    let rep_a = a.to_representation()?;
    let rep_b = b.to_representation()?;
    if rep_a.space().labels() != rep_b.space().labels() {
        return Err(CliError::Input(
            "documents use different sample spaces".into(),
        ));
    }
    if rep_a.n() != rep_b.n() {
        return Err(CliError::Input(format!(
            "documents have different dimensions ({} vs {})",
            rep_a.n(),
            rep_b.n()
        )));
    }
    let tolerances = Tolerances::default().with_decision(tol);
    let report = recover_witness_with(&rep_a, &rep_b, &tolerances)?;
    let residual = if report.residual.is_finite() {
        json!(report.residual)
    } else {
        Value::Null
    };
    match &report.witness {
        Some(g) if report.equivalent => {
            let mut out = Map::new();
            out.insert("equivalent".into(), json!(true));
            if let Value::Object(fields) = serde_json::to_value(GroupDocument::from_element(g))
                .expect("group documents serialize")
            {
                out.extend(fields);
            }
            out.insert("residual".into(), residual);
            out.insert("marginal".into(), json!(report.marginal));
            out.insert("pivot_indices".into(), json!(report.pivot_indices));
            Ok((EXIT_OK, Value::Object(out)))
        }
        _ => Ok((
            EXIT_INEQUIVALENT,
            json!({
                "equivalent": false,
                "residual": residual,
                "marginal": report.marginal,
                "pivot_indices": report.pivot_indices,
            }),
        )),
    }
}

pub fn cmd_canon(doc: &RepDocument) -> Result<Value, CliError> {
    let s = graff_from_rep(&doc.to_representation()?)?;
    let base = round_canonical(s.base().as_slice());
    let basis: Vec<Vec<f64>> = s
        .basis()
        .column_iter()
        .map(|col| round_canonical(&col.iter().copied().collect::<Vec<_>>()))
        .collect();
    Ok(json!({
        "dim": s.dim(),
        "ambient_dim": s.ambient_dim(),
        "base": base,
        "basis": basis,
    }))
}

pub fn cmd_eval(doc: &RepDocument, theta: &str) -> Result<Value, CliError> {
    let rep = doc.to_representation()?;
    let p = density(&rep, &parse_theta(theta)?)?;
    let table: Map<String, Value> = rep
        .space()
        .labels()
        .iter()
        .cloned()
        .zip(p.values().iter().map(|&q| json!(q)))
        .collect();
    Ok(Value::Object(table))
}

pub fn cmd_psi(doc: &RepDocument, theta: &str) -> Result<Value, CliError> {
    let rep = doc.to_representation()?;
    Ok(json!(log_partition(&rep, &parse_theta(theta)?)?))
}

pub fn cmd_act(doc: &RepDocument, group: &GroupDocument) -> Result<Value, CliError> {
    let rep = doc.to_representation()?;
    let image = act(&group.to_element()?, &rep)?;
    let out = RepDocument::from_representation(&image, doc.metadata.clone());
    Ok(serde_json::to_value(out).expect("representation documents serialize"))
}

pub fn cmd_random(m: usize, n: usize, seed: u64) -> Result<Value, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rep = random_representation(&mut rng, m, n)?;
    let meta = Metadata {
        name: None,
        seed: Some(seed),
    };
    let out = RepDocument::from_representation(&rep, Some(meta));
    Ok(serde_json::to_value(out).expect("representation documents serialize"))
}

pub fn cmd_dim(n: usize, m: usize) -> Result<Value, CliError> {
    Ok(json!(graff_dimension(n, m)?.value))
}

fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    let load = |p: &Path| -> Result<RepDocument, CliError> { RepDocument::from_json(&read(p)?) };
    Ok(match command {
        Command::Minimal { file, tol } => Outcome::ok(&cmd_minimal(&load(file)?, *tol)?),
        Command::Equiv {
            file_a,
            file_b,
            tol,
        } => {
            let (code, value) = cmd_equiv(&load(file_a)?, &load(file_b)?, *tol)?;
            Outcome::with_code(code, &value)
        }
        Command::Canon { file } => Outcome::ok(&cmd_canon(&load(file)?)?),
        Command::Eval { file, theta } => Outcome::ok(&cmd_eval(&load(file)?, theta)?),
        Command::Psi { file, theta } => Outcome::ok(&cmd_psi(&load(file)?, theta)?),
        Command::Act { file, group_file } => {
            let group = GroupDocument::from_json(&read(group_file)?)?;
            Outcome::ok(&cmd_act(&load(file)?, &group)?)
        }
        Command::Random { m, n, seed } => Outcome::ok(&cmd_random(*m, *n, *seed)?),
        Command::Dim { n, m } => Outcome::ok(&cmd_dim(*n, *m)?),
    })
}

pub fn run(cli: &Cli) -> Outcome {
    dispatch(&cli.command).unwrap_or_else(|e| Outcome::failure(&e))
}

/// Parses `args` (program name first) and runs the command. Usage errors exit with code 2.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}
