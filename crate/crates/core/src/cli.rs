//! Command-line front end.
//!
//! Exit codes: 0 success (or `compare` found the states inequivalent),
//! 1 error or failed covariance check, 2 usage error, 3 `compare` was
//! inconclusive.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::{compare, measure, signature, Outcome, ZeroTest, DEFAULT_ZERO_FACTOR};
use crate::error::Error;
use crate::invariant::{covariance_exponent, evaluate_all};
use crate::io::{
    exponent_string, read_state, serialize_state, write_atomic, CovarianceDoc, CovarianceKindDoc,
    InvariantDoc, MeasureDoc, ReportFile, SignatureDoc, VerdictDoc,
};
use crate::layout::InvariantKind;
use crate::slocc::{covariance_residual, random_chain_with, DetBounds, Residual, DEFAULT_FLOAT_TOLERANCE};
use crate::state::{gen_chi, gen_dicke, gen_ghz, gen_w, Backend, PureState};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "slocc", version, about = "SLOCC determinant invariants of even-n-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a named state family to a state file.
    Gen {
        /// ghz, w, dicke, or chi1..chi7
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Excitation count for dicke.
        #[arg(long)]
        l: Option<usize>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Evaluate all four invariants.
    Invariants {
        file: PathBuf,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Zero/nonzero pattern of the four invariants.
    Signature {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ZERO_FACTOR)]
        zero_factor: f64,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Compare vanishing signatures of two states.
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ZERO_FACTOR)]
        zero_factor: f64,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check the covariance law under random invertible local chains.
    CheckCovariance {
        file: PathBuf,
        /// 1, 2, 3, 4 or all
        #[arg(long, default_value = "all")]
        kind: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        /// Float backend tolerance on relative log-magnitude and phase.
        #[arg(long, default_value_t = DEFAULT_FLOAT_TOLERANCE)]
        tolerance: f64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// |P| of the unit-norm state for one invariant.
    Measure {
        file: PathBuf,
        /// 1, 2, 3 or 4
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Message(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e @ Error::CapacityExceeded { .. }) => write!(f, "CapacityExceeded: {e}"),
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Message(m) => f.write_str(m),
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => CliOutput {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn backend_for(state: &PureState, arg: Option<BackendArg>) -> Backend {
    arg.map(Backend::from).unwrap_or_else(|| state.backend())
}

fn parse_kind(s: &str) -> Result<InvariantKind, Failure> {
    s.trim()
        .parse::<usize>()
        .ok()
        .and_then(InvariantKind::from_ordinal)
        .ok_or_else(|| Failure::Message(format!("invalid kind {s:?} (expected 1, 2, 3 or 4)")))
}

fn parse_family(family: &str, n: usize, l: Option<usize>) -> Result<PureState, Failure> {
    let state = match family {
        "ghz" => gen_ghz(n)?,
        "w" => gen_w(n)?,
        "dicke" => {
            let l = l.ok_or_else(|| Failure::Message("dicke requires --l".into()))?;
            gen_dicke(l, n)?
        }
        f => match f.strip_prefix("chi").and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if (1..=7).contains(&k) => gen_chi(k, n)?,
            _ => {
                return Err(Failure::Message(format!(
                    "unknown family {family:?} (expected ghz, w, dicke, chi1..chi7)"
                )))
            }
        },
    };
    Ok(state)
}

/// Document goes to `output` (atomically) when given, else to stdout.
fn emit(doc: String, output: Option<&Path>, code: i32) -> Result<CliOutput, Failure> {
    match output {
        Some(path) => {
            write_atomic(path, &doc)
                .map_err(|e| Failure::Message(format!("cannot write {}: {e}", path.display())))?;
            Ok(CliOutput {
                code,
                ..Default::default()
            })
        }
        None => Ok(CliOutput {
            code,
            stdout: doc,
            stderr: String::new(),
        }),
    }
}

fn dispatch(command: Command) -> Result<CliOutput, Failure> {
    match command {
        Command::Gen {
            family,
            n,
            l,
            output,
        } => {
            let state = parse_family(&family, n, l)?;
            emit(serialize_state(&state), output.as_deref(), EXIT_OK)
        }

        Command::Invariants {
            file,
            backend,
            output,
        } => {
            let state = read_state(&file)?;
            let backend = backend_for(&state, backend);
            let values = evaluate_all(&state, backend)?;
            let sig = signature(&state, backend, ZeroTest::default())?;
            let mut report = ReportFile::new("invariants", backend, state.n());
            report.label = state.label().map(str::to_owned);
            report.invariants = Some(
                values
                    .iter()
                    .zip(&sig.entries)
                    .map(|(v, e)| InvariantDoc::new(v, e.is_zero))
                    .collect(),
            );
            emit(report.to_json(), output.as_deref(), EXIT_OK)
        }

        Command::Signature {
            file,
            zero_factor,
            backend,
            output,
        } => {
            let state = read_state(&file)?;
            let backend = backend_for(&state, backend);
            let sig = signature(&state, backend, zero_test(zero_factor)?)?;
            let mut report = ReportFile::new("signature", backend, state.n());
            report.label = state.label().map(str::to_owned);
            report.signature = Some(SignatureDoc::new(&sig, state.label()));
            emit(report.to_json(), output.as_deref(), EXIT_OK)
        }

        Command::Compare {
            file_a,
            file_b,
            zero_factor,
            backend,
            output,
        } => {
            let a = read_state(&file_a)?;
            let b = read_state(&file_b)?;
            let backend = backend.map(Backend::from).unwrap_or(
                if a.backend() == Backend::Exact && b.backend() == Backend::Exact {
                    Backend::Exact
                } else {
                    Backend::Float
                },
            );
            let verdict = compare(&a, &b, backend, zero_test(zero_factor)?)?;
            let mut report = ReportFile::new("compare", backend, a.n());
            report.verdict = Some(VerdictDoc::new(&verdict, a.label(), b.label()));
            let code = match verdict.outcome {
                Outcome::Inequivalent => EXIT_OK,
                Outcome::Inconclusive => EXIT_INCONCLUSIVE,
            };
            emit(report.to_json(), output.as_deref(), code)
        }

        Command::CheckCovariance {
            file,
            kind,
            trials,
            seed,
            backend,
            tolerance,
            output,
        } => {
            let state = read_state(&file)?;
            let backend = backend_for(&state, backend);
            let kinds: Vec<InvariantKind> = if kind.trim() == "all" {
                InvariantKind::ALL.to_vec()
            } else {
                vec![parse_kind(&kind)?]
            };
            let doc = run_covariance(&state, &kinds, trials, seed, backend, tolerance)?;
            let passed = doc.passed;
            let mut report = ReportFile::new("check-covariance", backend, state.n());
            report.seed = Some(seed);
            report.label = state.label().map(str::to_owned);
            report.covariance = Some(doc);
            let mut out = emit(report.to_json(), output.as_deref(), EXIT_OK)?;
            if !passed {
                out.code = EXIT_ERROR;
                out.stderr = "error: covariance check failed\n".into();
            }
            Ok(out)
        }

        Command::Measure {
            file,
            kind,
            backend,
            output,
        } => {
            let state = read_state(&file)?;
            let backend = backend_for(&state, backend);
            let kind = parse_kind(&kind)?;
            let m = measure(kind, &state, backend)?;
            let mut report = ReportFile::new("measure", backend, state.n());
            report.label = state.label().map(str::to_owned);
            report.measure = Some(MeasureDoc::from(&m));
            emit(report.to_json(), output.as_deref(), EXIT_OK)
        }
    }
}

fn zero_test(zero_factor: f64) -> Result<ZeroTest, Failure> {
    if !(zero_factor > 0.0 && zero_factor.is_finite()) {
        return Err(Failure::Message(format!(
            "--zero-factor must be a positive finite number, got {zero_factor}"
        )));
    }
    Ok(ZeroTest { zero_factor })
}

fn run_covariance(
    state: &PureState,
    kinds: &[InvariantKind],
    trials: usize,
    seed: u64,
    backend: Backend,
    tolerance: f64,
) -> Result<CovarianceDoc, Failure> {
    struct Worst {
        failures: usize,
        trial: usize,
        residual: Option<Residual>,
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: Vec<Worst> = kinds
        .iter()
        .map(|_| Worst {
            failures: 0,
            trial: 0,
            residual: None,
        })
        .collect();
    for trial in 0..trials {
        let chain = random_chain_with(&mut rng, state.n(), DetBounds::default(), backend)?;
        for (slot, &kind) in worst.iter_mut().zip(kinds) {
            let report = covariance_residual(kind, state, &chain, backend)?;
            if !report.passes(tolerance) {
                slot.failures += 1;
            }
            let replace = match &slot.residual {
                None => true,
                Some(r) => report.residual.magnitude() > r.magnitude(),
            };
            if replace {
                slot.trial = trial;
                slot.residual = Some(report.residual);
            }
        }
    }
    let exponent = exponent_string(&covariance_exponent(state.n()));
    let kinds_doc: Vec<CovarianceKindDoc> = worst
        .iter()
        .zip(kinds)
        .map(|(w, &kind)| CovarianceKindDoc {
            kind: kind.tag(),
            exponent: exponent.clone(),
            checks: trials,
            failures: w.failures,
            worst_trial: w.trial,
            worst_residual: w
                .residual
                .as_ref()
                .map(Into::into)
                .unwrap_or_else(|| zero_residual(backend)),
        })
        .collect();
    Ok(CovarianceDoc {
        trials,
        tolerance: (backend == Backend::Float).then_some(tolerance),
        passed: worst.iter().all(|w| w.failures == 0),
        kinds: kinds_doc,
    })
}

fn zero_residual(backend: Backend) -> crate::io::ResidualDoc {
    use crate::scalar::{ExactScalar, Field};
    match backend {
        Backend::Exact => (&Residual::Exact(ExactScalar::zero())).into(),
        Backend::Float => (&Residual::Float {
            log_magnitude: 0.0,
            phase: 0.0,
        })
            .into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_flag_is_usage_error() {
        let out = run(["slocc", "gen", "--bogus"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("Usage"));
    }

    #[test]
    fn invalid_family_is_error() {
        let out = run(["slocc", "gen", "--family", "chi9", "--n", "4"]);
        assert_eq!(out.code, EXIT_ERROR);
        let out = run(["slocc", "gen", "--family", "ghz", "--n", "5"]);
        assert_eq!(out.code, EXIT_ERROR);
        assert!(out.stderr.contains("even"));
    }

    #[test]
    fn capacity_message() {
        let out = run(["slocc", "gen", "--family", "ghz", "--n", "22"]);
        assert_eq!(out.code, EXIT_ERROR);
        assert!(out.stderr.contains("CapacityExceeded"), "{}", out.stderr);
    }

    #[test]
    fn gen_to_stdout() {
        let out = run(["slocc", "gen", "--family", "chi1", "--n", "4"]);
        assert_eq!(out.code, EXIT_OK);
        let s = crate::io::parse_state(out.stdout.as_bytes()).unwrap();
        assert_eq!(s.amplitudes(), gen_chi(1, 4).unwrap().amplitudes());
    }
}
