//! Command-line front end.
//!
//! Problem instances are single JSON documents:
//!
//! ```json
//! {
//!   "space": {"points": ["a", "b"]},
//!   "capacity": {"kind": "possibility", "densities": {"a": 1.0, "b": 0.5}},
//!   "function": {"a": 0.3, "b": 0.9},
//!   "integral": {"kind": "go", "overlap": {"name": "min"}, "gpg": {"name": "max"}}
//! }
//! ```
//!
//! Exit codes: 0 success or pass, 1 validation or configuration error,
//! 2 counterexample or property violation found, 3 I/O or malformed document.
//! Numbers in every output are rounded to 12 significant digits so that
//! identical inputs give byte-identical output.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::grouping::{
    check_gpg_discrete, check_gpg_functional, DiscreteGpg, GpgFunctional, DEFAULT_KERNEL_RESOLUTION,
};
use crate::integrals::{IntegralConfig, IntegralKind};
use crate::overlap_ops::{check_t_norm, check_t_overlap, BinaryOperator, DEFAULT_AXIOM_GRID};
use crate::space_measure::{
    Capacity, CapacitySpec, Distortion, FiniteSpace, FuzzyFunction, LambdaSpec,
};
use crate::verify::{
    check_comonotone_maxitivity, check_star_homogeneity, check_star_homogeneity_with,
    run_theorem1_suite, run_usc_suite, search_problem1, PropertyReport, DEFAULT_SIZES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable overriding the kernel grid resolution.
pub const GRID_ENV: &str = "GOINT_DEFAULT_GRID";
pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_FUNCTIONAL_TRIALS: usize = 500;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Validation(#[from] Error),
    #[error("{0}")]
    Config(String),
    #[error("cannot read `{path}`: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed instance `{path}`: {source}")]
    Malformed {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Config(_) => EXIT_VALIDATION,
            CliError::Read { .. } | CliError::Malformed { .. } | CliError::Write(_) => EXIT_IO,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn config_error(message: impl Into<String>) -> CliError {
    CliError::Config(message.into())
}

// ---------------------------------------------------------------------------
// arguments
// ---------------------------------------------------------------------------

#[derive(Debug, Parser)]
#[command(name = "goint", version, about = "GO-integrals on finite spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Problem instance (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Kernel grid resolution, or the axiom grid for `axioms`.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Theorem1,
    Comonotone,
    Homogeneity,
    Problem1,
    Usc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the instance's integral.
    Integrate,
    /// Evaluate several integrals on the instance's capacity and function.
    Compare,
    /// Check operator axioms on a grid.
    #[command(group(ArgGroup::new("operator").required(true).args(["t_overlap", "t_norm", "gpg", "gpg_functional"])))]
    Axioms {
        #[arg(long)]
        t_overlap: Option<String>,
        #[arg(long)]
        t_norm: Option<String>,
        /// Discrete n-ary grouping function (max_n, prob_sum, mean_n).
        #[arg(long)]
        gpg: Option<String>,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// Profile functional (max, distorted:p=2, kernel:beta=1, ...).
        #[arg(long)]
        gpg_functional: Option<String>,
    },
    /// Run property suites on random instances.
    Properties {
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
    /// Evaluate the integral over a parameter range.
    Sweep,
}

// ---------------------------------------------------------------------------
// instance documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInstance {
    pub space: SpaceDoc,
    #[serde(default)]
    pub capacity: Option<CapacityDoc>,
    #[serde(default)]
    pub function: Option<BTreeMap<String, f64>>,
    #[serde(default)]
    pub integral: Option<IntegralDoc>,
    #[serde(default)]
    pub compare: Option<Vec<IntegralDoc>>,
    #[serde(default)]
    pub sweep: Option<SweepDoc>,
    #[serde(default)]
    pub verification: Option<VerificationDoc>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CapacityDoc {
    Table {
        entries: Vec<TableEntry>,
    },
    Possibility {
        densities: BTreeMap<String, f64>,
    },
    Additive {
        weights: BTreeMap<String, f64>,
    },
    SugenoLambda {
        densities: BTreeMap<String, f64>,
        #[serde(default)]
        lambda: Option<Value>,
    },
    Distorted {
        weights: BTreeMap<String, f64>,
        distortion: DistortionDoc,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub subset: Vec<String>,
    pub value: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistortionDoc {
    Power { p: f64 },
    PiecewiseLinear { knots: Vec<(f64, f64)> },
}

/// An operator by name with numeric parameters, e.g. `{"name": "power_product", "p": 2}`.
#[derive(Debug, Clone, Deserialize)]
pub struct OperatorDoc {
    pub name: String,
    #[serde(flatten)]
    pub params: BTreeMap<String, f64>,
}

impl OperatorDoc {
    fn descriptor(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("{}:{}", self.name, params.join(","))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IntegralDoc {
    Sugeno,
    Choquet,
    TNormed {
        t_norm: OperatorDoc,
    },
    Go {
        overlap: OperatorDoc,
        gpg: OperatorDoc,
    },
}

impl IntegralDoc {
    pub fn to_kind(&self) -> CliResult<IntegralKind> {
        Ok(match self {
            IntegralDoc::Sugeno => IntegralKind::Sugeno,
            IntegralDoc::Choquet => IntegralKind::Choquet,
            IntegralDoc::TNormed { t_norm } => IntegralKind::TNormed {
                t_norm: t_norm.descriptor().parse()?,
            },
            IntegralDoc::Go { overlap, gpg } => IntegralKind::Go {
                overlap: overlap.descriptor().parse()?,
                gpg: gpg.descriptor().parse()?,
            },
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDoc {
    /// `overlap.<key>`, `gpg.<key>`, `t_norm.<key>` or `function.<label>`.
    pub parameter: String,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationDoc {
    #[serde(default)]
    pub suites: Vec<Suite>,
    #[serde(default)]
    pub trials: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Operator for ∗-homogeneity checks outside the t-normed case.
    #[serde(default)]
    pub star: Option<OperatorDoc>,
}

impl ProblemInstance {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::Malformed {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn space(&self) -> CliResult<FiniteSpace> {
        Ok(FiniteSpace::new(&self.space.points)?)
    }

    pub fn capacity(&self, space: &FiniteSpace) -> CliResult<Capacity> {
        let doc = self
            .capacity
            .as_ref()
            .ok_or_else(|| config_error("instance has no `capacity`"))?;
        let spec = match doc {
            CapacityDoc::Table { entries } => CapacitySpec::Table(
                entries
                    .iter()
                    .map(|e| Ok((space.subset_of_labels(&e.subset)?, e.value)))
                    .collect::<CliResult<_>>()?,
            ),
            CapacityDoc::Possibility { densities } => {
                CapacitySpec::Possibility(per_point(space, densities, "capacity densities")?)
            }
            CapacityDoc::Additive { weights } => {
                CapacitySpec::Additive(per_point(space, weights, "capacity weights")?)
            }
            CapacityDoc::SugenoLambda { densities, lambda } => CapacitySpec::SugenoLambda {
                densities: per_point(space, densities, "capacity densities")?,
                lambda: match lambda {
                    None => LambdaSpec::Auto,
                    Some(Value::String(s)) if s == "auto" => LambdaSpec::Auto,
                    Some(Value::Number(n)) => LambdaSpec::Value(n.as_f64().unwrap_or(f64::NAN)),
                    Some(other) => {
                        return Err(config_error(format!(
                            "lambda must be \"auto\" or a number, got {other}"
                        )))
                    }
                },
            },
            CapacityDoc::Distorted {
                weights,
                distortion,
            } => CapacitySpec::Distorted {
                weights: per_point(space, weights, "capacity weights")?,
                distortion: match distortion {
                    DistortionDoc::Power { p } => Distortion::power(*p)?,
                    DistortionDoc::PiecewiseLinear { knots } => Distortion::PiecewiseLinear {
                        knots: knots.clone(),
                    },
                },
            },
        };
        Ok(Capacity::build(space, spec)?)
    }

    pub fn function(&self, space: &FiniteSpace) -> CliResult<FuzzyFunction> {
        let values = self
            .function
            .as_ref()
            .ok_or_else(|| config_error("instance has no `function`"))?;
        Ok(FuzzyFunction::new(
            space,
            per_point(space, values, "function")?,
        )?)
    }

    fn integral_doc(&self) -> CliResult<&IntegralDoc> {
        self.integral
            .as_ref()
            .ok_or_else(|| config_error("instance has no `integral`"))
    }

    fn verification(&self) -> VerificationDoc {
        self.verification.clone().unwrap_or_default()
    }
}

/// Orders a label-keyed map by the space's points; every point must be present.
fn per_point(space: &FiniteSpace, map: &BTreeMap<String, f64>, what: &str) -> CliResult<Vec<f64>> {
    for label in map.keys() {
        space.index_of(label)?;
    }
    space
        .labels()
        .iter()
        .map(|label| {
            map.get(label)
                .copied()
                .ok_or_else(|| config_error(format!("{what}: no value for point `{label}`")))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// output
// ---------------------------------------------------------------------------

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_numbers(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(rounded) = n
                .as_f64()
                .map(round_sig)
                .and_then(serde_json::Number::from_f64)
            {
                *n = rounded;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

/// Serializes to pretty JSON with rounded numbers and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut doc = serde_json::to_value(value).expect("report types serialize");
    round_numbers(&mut doc);
    let mut text = serde_json::to_string_pretty(&doc).expect("values serialize");
    text.push('\n');
    text
}

fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for row in rows {
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn number(x: f64) -> String {
    round_sig(x).to_string()
}

struct Output {
    body: String,
    code: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Self {
            body,
            code: EXIT_OK,
        }
    }
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

fn kernel_resolution(cli: &Cli) -> CliResult<usize> {
    let resolution = match cli.grid {
        Some(n) => n,
        None => match std::env::var(GRID_ENV) {
            Ok(text) => text.trim().parse().map_err(|_| {
                config_error(format!(
                    "{GRID_ENV} must be a positive integer, got `{text}`"
                ))
            })?,
            Err(_) => DEFAULT_KERNEL_RESOLUTION,
        },
    };
    if resolution == 0 {
        return Err(config_error("grid resolution must be positive"));
    }
    Ok(resolution)
}

fn load_instance(cli: &Cli) -> CliResult<ProblemInstance> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| config_error("this command needs --input"))?;
    ProblemInstance::load(path)
}

fn configured(doc: &IntegralDoc, resolution: usize) -> CliResult<IntegralConfig> {
    Ok(IntegralConfig::new(doc.to_kind()?)?.with_kernel_resolution(resolution))
}

fn integrate(cli: &Cli) -> CliResult<Output> {
    let instance = load_instance(cli)?;
    let space = instance.space()?;
    let capacity = instance.capacity(&space)?;
    let f = instance.function(&space)?;
    let config = configured(instance.integral_doc()?, kernel_resolution(cli)?)?;
    let evaluation = config.evaluate(&capacity, &f)?;
    Ok(Output::ok(match cli.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&evaluation),
        Format::Csv => to_csv(
            &["value", "kind", "grid_resolution"],
            &[vec![
                number(evaluation.value),
                evaluation.kind.to_string(),
                evaluation
                    .grid_resolution
                    .map(|n| n.to_string())
                    .unwrap_or_default(),
            ]],
        ),
    }))
}

#[derive(Serialize)]
struct CompareRow {
    integral: &'static str,
    operators: String,
    value: f64,
}

fn compare(cli: &Cli) -> CliResult<Output> {
    let instance = load_instance(cli)?;
    let space = instance.space()?;
    let capacity = instance.capacity(&space)?;
    let f = instance.function(&space)?;
    let resolution = kernel_resolution(cli)?;
    let requested = match &instance.compare {
        Some(list) => list.clone(),
        None => {
            let mut list = vec![IntegralDoc::Sugeno, IntegralDoc::Choquet];
            if let Some(doc @ (IntegralDoc::TNormed { .. } | IntegralDoc::Go { .. })) =
                &instance.integral
            {
                list.push(doc.clone());
            }
            list
        }
    };
    let rows = requested
        .iter()
        .map(|doc| {
            let config = configured(doc, resolution)?;
            Ok(CompareRow {
                integral: config.kind().name(),
                operators: config.kind().operators(),
                value: config.evaluate(&capacity, &f)?.value,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Output::ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&rows),
        Format::Csv => to_csv(
            &["integral", "operators", "value"],
            &rows
                .iter()
                .map(|r| vec![r.integral.to_string(), r.operators.clone(), number(r.value)])
                .collect::<Vec<_>>(),
        ),
    }))
}

fn json_only(cli: &Cli, command: &str) -> CliResult<()> {
    match cli.format {
        Some(Format::Csv) => Err(config_error(format!("`{command}` emits JSON reports only"))),
        _ => Ok(()),
    }
}

fn axioms(
    cli: &Cli,
    t_overlap: &Option<String>,
    t_norm: &Option<String>,
    gpg: &Option<String>,
    arity: usize,
    gpg_functional: &Option<String>,
) -> CliResult<Output> {
    json_only(cli, "axioms")?;
    let grid = cli.grid.unwrap_or(DEFAULT_AXIOM_GRID);
    let report = if let Some(desc) = t_overlap {
        check_t_overlap(&desc.parse()?, grid)?
    } else if let Some(desc) = t_norm {
        check_t_norm(&desc.parse()?, grid)?
    } else if let Some(desc) = gpg {
        check_gpg_discrete(&desc.parse::<DiscreteGpg>()?, arity, grid)?
    } else if let Some(desc) = gpg_functional {
        check_gpg_functional(
            &desc.parse::<GpgFunctional>()?,
            cli.trials.unwrap_or(DEFAULT_FUNCTIONAL_TRIALS),
            cli.seed.unwrap_or(0),
        )
    } else {
        return Err(config_error("no operator given"));
    };
    Ok(Output {
        code: if report.pass { EXIT_OK } else { EXIT_VIOLATION },
        body: to_json(&report),
    })
}

fn run_suite(
    suite: Suite,
    instance: Option<&ProblemInstance>,
    trials: usize,
    seed: u64,
    resolution: usize,
) -> CliResult<PropertyReport> {
    let need_instance = || instance.ok_or_else(|| config_error("this suite needs --input"));
    let verification = instance
        .map(ProblemInstance::verification)
        .unwrap_or_default();
    let star = verification
        .star
        .as_ref()
        .map(|doc| doc.descriptor().parse::<BinaryOperator>())
        .transpose()?;
    match suite {
        Suite::Theorem1 => {
            let config = configured(need_instance()?.integral_doc()?, resolution)?;
            Ok(run_theorem1_suite(&config, &DEFAULT_SIZES, trials, seed)?)
        }
        Suite::Comonotone => {
            let config = configured(need_instance()?.integral_doc()?, resolution)?;
            Ok(check_comonotone_maxitivity(&config, trials, seed)?)
        }
        Suite::Homogeneity => {
            let config = configured(need_instance()?.integral_doc()?, resolution)?;
            Ok(match star {
                Some(star) => check_star_homogeneity_with(&config, &star, trials, seed)?,
                None => check_star_homogeneity(&config, trials, seed)?,
            })
        }
        Suite::Problem1 => match need_instance()?.integral_doc()?.to_kind()? {
            IntegralKind::Go { overlap, gpg } => {
                let star = star.unwrap_or(if overlap.is_certified_t_norm() {
                    overlap
                } else {
                    BinaryOperator::Min
                });
                Ok(search_problem1(&overlap, &gpg, &star, trials, seed)?)
            }
            other => Err(config_error(format!(
                "problem1 explores GO-integrals, not `{}`",
                other.name()
            ))),
        },
        Suite::Usc => {
            let overlaps = match instance
                .and_then(|i| i.integral.as_ref())
                .map(IntegralDoc::to_kind)
            {
                Some(Ok(IntegralKind::Go { overlap, .. })) => vec![overlap],
                Some(Err(e)) => return Err(e),
                _ => BinaryOperator::builtin_t_overlaps(),
            };
            Ok(run_usc_suite(&overlaps, trials, seed)?)
        }
    }
}

fn properties(cli: &Cli, suite: Option<Suite>) -> CliResult<Output> {
    json_only(cli, "properties")?;
    let instance = match &cli.input {
        Some(path) => Some(ProblemInstance::load(path)?),
        None => None,
    };
    let verification = instance
        .as_ref()
        .map(ProblemInstance::verification)
        .unwrap_or_default();
    let suites = match suite {
        Some(s) => vec![s],
        None if !verification.suites.is_empty() => verification.suites.clone(),
        None => {
            return Err(config_error(
                "no suite given (use --suite or verification.suites)",
            ))
        }
    };
    let trials = cli.trials.or(verification.trials).unwrap_or(DEFAULT_TRIALS);
    let seed = cli.seed.or(verification.seed).unwrap_or(0);
    let resolution = kernel_resolution(cli)?;
    let reports = suites
        .iter()
        .map(|&s| run_suite(s, instance.as_ref(), trials, seed, resolution))
        .collect::<CliResult<Vec<_>>>()?;
    let violated = reports.iter().any(|r| r.outcome.is_none() && !r.passed());
    let body = match reports.as_slice() {
        [single] => to_json(single),
        many => to_json(&many),
    };
    Ok(Output {
        body,
        code: if violated { EXIT_VIOLATION } else { EXIT_OK },
    })
}

/// The swept parameter values: evenly spaced over the range, ascending.
pub fn sweep_points(from: f64, to: f64, steps: usize) -> Vec<f64> {
    let (lo, hi) = if from <= to { (from, to) } else { (to, from) };
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
            .collect(),
    }
}

fn apply_sweep(
    instance: &ProblemInstance,
    parameter: &str,
    value: f64,
) -> CliResult<(IntegralDoc, Option<BTreeMap<String, f64>>)> {
    let mut doc = instance.integral_doc()?.clone();
    let mut function = instance.function.clone();
    let (target, key) = parameter.split_once('.').ok_or_else(|| {
        config_error(format!(
            "sweep parameter `{parameter}` must look like `overlap.p`"
        ))
    })?;
    let op = match (target, &mut doc) {
        ("function", _) => {
            let values = function
                .as_mut()
                .ok_or_else(|| config_error("instance has no `function`"))?;
            match values.get_mut(key) {
                Some(v) => *v = value,
                None => return Err(Error::UnknownLabel(key.to_string()).into()),
            }
            return Ok((doc, function));
        }
        ("overlap", IntegralDoc::Go { overlap, .. }) => overlap,
        ("gpg", IntegralDoc::Go { gpg, .. }) => gpg,
        ("t_norm", IntegralDoc::TNormed { t_norm }) => t_norm,
        _ => {
            return Err(config_error(format!(
                "sweep parameter `{parameter}` does not apply to this integral"
            )))
        }
    };
    op.params.insert(key.to_string(), value);
    Ok((doc, function))
}

#[derive(Serialize)]
struct SweepRow {
    param: f64,
    value: f64,
}

fn sweep(cli: &Cli) -> CliResult<Output> {
    let instance = load_instance(cli)?;
    let spec = instance
        .sweep
        .clone()
        .ok_or_else(|| config_error("instance has no `sweep`"))?;
    if spec.steps == 0 {
        return Err(config_error("sweep needs at least one step"));
    }
    let space = instance.space()?;
    let capacity = instance.capacity(&space)?;
    let resolution = kernel_resolution(cli)?;
    let rows = sweep_points(spec.from, spec.to, spec.steps)
        .into_par_iter()
        .map(|param| {
            let (doc, function) = apply_sweep(&instance, &spec.parameter, param)?;
            let point = ProblemInstance {
                function,
                ..instance.clone()
            };
            let f = point.function(&space)?;
            let value = configured(&doc, resolution)?.evaluate(&capacity, &f)?.value;
            Ok(SweepRow { param, value })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Output::ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&rows),
        Format::Csv => to_csv(
            &["param", "value"],
            &rows
                .iter()
                .map(|r| vec![number(r.param), number(r.value)])
                .collect::<Vec<_>>(),
        ),
    }))
}

fn dispatch(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Integrate => integrate(cli),
        Command::Compare => compare(cli),
        Command::Axioms {
            t_overlap,
            t_norm,
            gpg,
            arity,
            gpg_functional,
        } => axioms(cli, t_overlap, t_norm, gpg, *arity, gpg_functional),
        Command::Properties { suite } => properties(cli, *suite),
        Command::Sweep => sweep(cli),
    }
}

fn emit(cli: &Cli, body: &str) -> CliResult<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
        }
    };
    let result = dispatch(&cli).and_then(|out| {
        emit(&cli, &out.body)?;
        Ok(out.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(0.2025), 0.2025);
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(0.0), 0.0);
    }

    #[test]
    fn sweep_points_are_sorted_and_symmetric() {
        let up = sweep_points(0.5, 3.0, 26);
        assert_eq!(up.len(), 26);
        assert_eq!(up[15], 2.0);
        assert_eq!(sweep_points(3.0, 0.5, 26), up);
        assert_eq!(sweep_points(0.7, 0.9, 1), vec![0.7]);
    }

    #[test]
    fn operator_descriptors() {
        let doc: OperatorDoc =
            serde_json::from_str(r#"{"name": "power_product", "p": 2}"#).unwrap();
        assert_eq!(doc.descriptor(), "power_product:p=2");
        assert_eq!(
            doc.descriptor().parse::<BinaryOperator>().unwrap(),
            BinaryOperator::power_product(2.0).unwrap()
        );
    }
}
