//! Shell interface: scenario ingestion, command dispatch, report emission.
//!
//! A scenario is a strict JSON file naming a birational configuration and
//! the bundles to act on. Every command prints a deterministic report for
//! a fixed scenario, seed, and crate version; wall-clock timing goes to
//! stderr so stdout stays byte-identical across runs. Numeric results are
//! exact `p/q` strings; structural counts and indices are plain integers.
//!
//! Exit codes: 0 success, 2 validation failure, 3 verdict failure (a check
//! ran and found a violation), 4 internal limit (a search box was too
//! small).

mod commands;
pub mod sample;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::fm::FmError;
use crate::ratlat::vecs::{int_frac_str, rat_frac_str};
use crate::ratlat::{Int, LatticeError, Rat};
use crate::stacky::{build_config, BirationalCase, BirationalConfig, StackyError};
use crate::tilting::TiltingError;

/// Command-line entry: `toric-dk <command> [scenario.json] [flags]`.
#[derive(Debug, Parser)]
#[command(
    name = "toric-dk",
    version,
    about = "Exact verification workbench for toric birational correspondences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Classify the crepancy statistic and list the pullback difference.
    Check(ScenarioArgs),
    /// Apply the configuration's functor to each listed bundle.
    Fm(ScenarioArgs),
    /// Compare graded Hom spaces of consecutive bundle pairs.
    Homcmp(ScenarioArgs),
    /// Scan divisorial sheaves for higher cohomology witnesses.
    Cohom(ScenarioArgs),
    /// Enumerate the line bundle classes inside the range window.
    Range(ScenarioArgs),
    /// Build the tilting quiver with orthogonality evidence.
    Tilting(ScenarioArgs),
    /// Run a built-in fixture: z8-quotient, weighted-blowup,
    /// plane-blowup, or flop.
    Examples {
        /// Fixture name.
        name: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run the seeded randomized verification batches.
    Suite {
        #[command(flatten)]
        flags: Flags,
    },
}

/// A scenario file plus the shared flags.
#[derive(Debug, Clone, clap::Args)]
pub struct ScenarioArgs {
    /// Path to the scenario JSON file.
    pub scenario: PathBuf,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Flags {
    /// Scan radius override for box-bounded searches.
    #[arg(long = "box", value_name = "N")]
    pub box_size: Option<i64>,
    /// Worker threads for suite batches (default 1); the report is
    /// identical for every worker count.
    #[arg(long, value_name = "K")]
    pub workers: Option<usize>,
    /// Output encoding; `csv` applies to homcmp, `dot` to tilting.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Seed override for randomized batches.
    #[arg(long, value_name = "S")]
    pub seed: Option<u64>,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { box_size: None, workers: None, format: OutputFormat::Json, seed: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Dot,
}

/// Strict JSON scenario: unknown fields are rejected so configuration
/// typos surface as parse errors instead of silently defaulting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// Case selector: 1 reweight, 2 contraction, 3 flip,
    /// 4 inverse contraction.
    pub case: u8,
    pub n: usize,
    #[serde(alias = "n′")]
    pub n_prime: usize,
    #[serde(alias = "n″")]
    pub n_dprime: usize,
    #[serde(default)]
    pub a: Vec<i64>,
    pub r: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<i64>>,
    #[serde(default)]
    pub bundles: Vec<Vec<i64>>,
    #[serde(rename = "box", default = "default_box")]
    pub box_size: i64,
    #[serde(default)]
    pub seed: u64,
}

fn default_box() -> i64 {
    16
}

impl Scenario {
    pub fn load(path: &std::path::Path) -> Result<Scenario, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Validation {
            code: "IoError",
            message: format!("{}: {e}", path.display()),
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Validation {
            code: "ParseError",
            message: format!("{}: {e}", path.display()),
        })
    }

    /// Validates the scenario into a configuration.
    pub fn to_config(&self) -> Result<BirationalConfig, CliError> {
        let case = match self.case {
            1 => BirationalCase::Reweight,
            2 => BirationalCase::Contraction,
            3 => BirationalCase::Flip,
            4 => BirationalCase::InverseContraction,
            other => {
                return Err(CliError::Validation {
                    code: "ValidationError",
                    message: format!("case must be 1, 2, 3, or 4, not {other}"),
                })
            }
        };
        let config = build_config(
            case,
            self.n,
            self.n_prime,
            self.n_dprime,
            ints(&self.a),
            ints(&self.r),
            self.s.as_ref().map(|v| ints(v)),
        )?;
        Ok(config)
    }

    /// The scenario's bundles as integer vectors.
    pub fn bundle_vectors(&self) -> Vec<Vec<Int>> {
        self.bundles.iter().map(|b| ints(b)).collect()
    }
}

pub(crate) fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// One named check inside a report; `ok = false` turns the process exit
/// code into 3.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictLine {
    pub check: String,
    pub verdict: String,
    pub ok: bool,
}

/// Machine-readable command output: the command echo, its exact results,
/// the verdict lines, and any witnesses backing a failed verdict.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub verdicts: Vec<VerdictLine>,
    pub witnesses: Vec<Value>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.verdicts.iter().any(|v| !v.ok)
    }

    pub fn render(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Result of executing one command: the text for stdout and whether a
/// verdict failed.
#[derive(Debug, Clone)]
pub struct CliOutcome {
    pub stdout: String,
    pub failed: bool,
}

/// Errors grouped by the exit code they map to.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Bad input: scenario, flags, or module preconditions. Exit 2.
    #[error("{message}")]
    Validation { code: &'static str, message: String },
    /// A computation ran and its claim failed. Exit 3.
    #[error("{message}")]
    Verdict { code: &'static str, message: String },
    /// A bounded search hit its internal limit. Exit 4.
    #[error("{message}")]
    Limit { code: &'static str, message: String },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Validation { code, .. }
            | CliError::Verdict { code, .. }
            | CliError::Limit { code, .. } => code,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 2,
            CliError::Verdict { .. } => 3,
            CliError::Limit { .. } => 4,
        }
    }
}

impl From<StackyError> for CliError {
    fn from(e: StackyError) -> Self {
        let code = match &e {
            StackyError::LengthMismatch { .. } => "LengthMismatch",
            StackyError::RayNotPrimitive { .. } => "RayNotPrimitive",
            StackyError::MultNotPositive { .. } => "MultNotPositive",
            StackyError::RayIndexOutOfBounds { .. } => "RayIndexOutOfBounds",
            StackyError::ConeNotSimplicial { .. } => "ConeNotSimplicial",
            StackyError::ConeNotFullDimensional { .. } => "ConeNotFullDimensional",
            StackyError::ConesNotMeetingInFace { .. } => "ConesNotMeetingInFace",
            StackyError::InvalidSigns { .. } => "InvalidSigns",
            StackyError::NotPrimitive => "NotPrimitive",
            StackyError::BadRange { .. } => "BadRange",
            StackyError::WeightBoundExceeded { .. } => "WeightBoundExceeded",
            StackyError::SupportError { .. } => "SupportError",
            StackyError::CaseMismatch { .. } => "CaseMismatch",
            StackyError::NotInCone => "NotInCone",
            StackyError::BadInput { .. } => "BadInput",
        };
        CliError::Validation { code, message: e.to_string() }
    }
}

impl From<FmError> for CliError {
    fn from(e: FmError) -> Self {
        let code = match &e {
            FmError::ConfigMismatch { .. } => "ConfigMismatch",
            FmError::LengthMismatch { .. } => "LengthMismatch",
            FmError::OutOfRange { .. } => "OutOfRange",
            FmError::BadStratum { .. } => "BadStratum",
        };
        CliError::Validation { code, message: e.to_string() }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        if let LatticeError::BoxTooSmall { .. } = &e {
            return CliError::Limit { code: "BoxTooSmall", message: e.to_string() };
        }
        let code = match &e {
            LatticeError::NotFullRank => "NotFullRank",
            LatticeError::RankMismatch(..) => "RankMismatch",
            LatticeError::NotContained => "NotContained",
            LatticeError::LengthMismatch(..) => "LengthMismatch",
            LatticeError::BadRay => "BadRay",
            LatticeError::NotPointed => "NotPointed",
            LatticeError::NotFullDimensional => "NotFullDimensional",
            LatticeError::NotSimplicial => "NotSimplicial",
            LatticeError::IncompatibleLattices => "IncompatibleLattices",
            LatticeError::NotPrincipal { .. } => "NotPrincipal",
            LatticeError::Unbounded => "Unbounded",
            LatticeError::BoxTooSmall { .. } => unreachable!("handled above"),
        };
        CliError::Validation { code, message: e.to_string() }
    }
}

impl From<TiltingError> for CliError {
    fn from(e: TiltingError) -> Self {
        match e {
            TiltingError::EmptyTilting => CliError::Verdict {
                code: "EmptyTilting",
                message: e.to_string(),
            },
            TiltingError::ConfigMismatch { .. } => CliError::Validation {
                code: "ConfigMismatch",
                message: e.to_string(),
            },
            TiltingError::Lattice(inner) => inner.into(),
            TiltingError::Fm(inner) => inner.into(),
        }
    }
}

/// Runs one parsed command to its stdout text and verdict status.
pub fn execute(command: &Command) -> Result<CliOutcome, CliError> {
    let output = match command {
        Command::Check(args) => commands::cmd_check(args)?,
        Command::Fm(args) => commands::cmd_fm(args)?,
        Command::Homcmp(args) => commands::cmd_homcmp(args)?,
        Command::Cohom(args) => commands::cmd_cohom(args)?,
        Command::Range(args) => commands::cmd_range(args)?,
        Command::Tilting(args) => commands::cmd_tilting(args)?,
        Command::Examples { name, flags } => commands::cmd_examples(name, flags)?,
        Command::Suite { flags } => sample::cmd_suite(flags)?,
    };
    Ok(output)
}

/// Full process entry: parse arguments, run, print, and map the outcome
/// to an exit code.
pub fn run_cli() -> i32 {
    let cli = Cli::parse();
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            eprintln!("timing: {} ms", start.elapsed().as_millis());
            if outcome.failed {
                3
            } else {
                0
            }
        }
        Err(err) => {
            eprintln!("error[{}]: {err}", err.code());
            eprintln!("timing: {} ms", start.elapsed().as_millis());
            err.exit_code()
        }
    }
}

/// Effective scan radius: the flag wins over the scenario field.
pub(crate) fn effective_box(scenario: &Scenario, flags: &Flags) -> Result<Int, CliError> {
    let raw = flags.box_size.unwrap_or(scenario.box_size);
    if raw < 1 {
        return Err(CliError::Validation {
            code: "ValidationError",
            message: format!("box must be at least 1, not {raw}"),
        });
    }
    Ok(Int::from(raw))
}

pub(crate) fn rat_value(x: &Rat) -> Value {
    Value::String(rat_frac_str(x))
}

pub(crate) fn int_value(x: &Int) -> Value {
    Value::String(int_frac_str(x))
}

pub(crate) fn ivec_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

pub(crate) fn rvec_value(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_value).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_round_trips_through_json() {
        let s = Scenario {
            case: 3,
            n: 3,
            n_prime: 2,
            n_dprime: 2,
            a: vec![1, 1, -1],
            r: vec![1, 1, 1, 1],
            s: None,
            bundles: vec![vec![0, 0, 0, 0], vec![1, 0, 0, 0]],
            box_size: 16,
            seed: 0,
        };
        let text = serde_json::to_string(&s).unwrap();
        let back: Scenario = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn unknown_scenario_fields_are_rejected() {
        let text = r#"{"case":3,"n":3,"n_prime":2,"n_dprime":2,"a":[1,1,-1],
                       "r":[1,1,1,1],"boxx":9}"#;
        assert!(serde_json::from_str::<Scenario>(text).is_err());
    }

    #[test]
    fn prime_aliases_parse() {
        let text = r#"{"case":3,"n":3,"n′":2,"n″":2,"a":[1,1,-1],"r":[1,1,1,1]}"#;
        let s: Scenario = serde_json::from_str(text).unwrap();
        assert_eq!(s.n_prime, 2);
        assert_eq!(s.n_dprime, 2);
        assert_eq!(s.box_size, 16);
        let config = s.to_config().unwrap();
        assert_eq!(config.n(), 3);
    }

    #[test]
    fn error_classes_map_to_documented_exit_codes() {
        let v: CliError = FmError::OutOfRange {
            statistic: Rat::from_integer(Int::from(2)),
            bound: Rat::from_integer(Int::from(2)),
        }
        .into();
        assert_eq!(v.exit_code(), 2);
        assert_eq!(v.code(), "OutOfRange");
        let l: CliError = LatticeError::BoxTooSmall { box_size: Int::from(4) }.into();
        assert_eq!(l.exit_code(), 4);
        assert_eq!(l.code(), "BoxTooSmall");
        let t: CliError = TiltingError::EmptyTilting.into();
        assert_eq!(t.exit_code(), 3);
    }
}
