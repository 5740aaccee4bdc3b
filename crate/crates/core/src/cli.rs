//! Command-line front end. Every command returns a JSON object; `main`
//! wraps it in the `{version, command, elapsed_ms}` envelope.

use std::fs;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::filter::{
    is_additive, theta_extend_with, Chooser, FilterError, MaxChooser, MinChooser, PFilter,
};
use crate::gallery::{
    build_x_with, smallest_class_zero_sets, verify_no_sum_triple, verify_shift_witness,
    EvenPartition, GalleryError,
};
use crate::nat::{
    fal_level_with_workers, fs_set, galvin_extract, weak_extract, FSGenerator, FsxOracle, NatError,
    PrincipalOracle, UltrafilterOracle, WindowSet, MAX_HORIZON,
};
use crate::ramsey::{fal_partition_regularity_probe, folkman_number, RamseyError, DEFAULT_BUDGET};
use crate::semigroup::{CayleyFile, FiniteSemigroup, SemigroupError};

#[derive(Debug, Parser)]
#[command(
    name = "workbench",
    version,
    about = "Additive filters, finite sums and Folkman searches"
)]
pub struct Cli {
    /// Pin `elapsed_ms` to 0 so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub reproducible: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Idempotents, extensions and additivity on a Cayley table.
    Semigroup {
        #[command(subcommand)]
        action: SemigroupAction,
    },
    /// Extract finite-sums witnesses from a set in the FS_X filter.
    Hindman {
        #[command(subcommand)]
        action: HindmanAction,
    },
    /// Least N with a monochromatic FS(S), |S| = n, in every r-coloring of [1, N].
    Folkman(FolkmanArgs),
    /// The additive, non-idempotent filter construction.
    Example33 {
        #[command(subcommand)]
        action: Example33Action,
    },
    /// Find k elements whose subset sums all lie in a set.
    Fal(FalArgs),
    /// Sample partitions of a set and look for a FAL piece in each.
    Probe(ProbeArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TableArgs {
    /// Cayley table JSON: {"n": .., "table": [[..], ..]}.
    #[arg(long)]
    pub table: Option<String>,
    /// Filter JSON: {"semigroup": <table path>, "support": [..]}; the table
    /// path is resolved against the filter file's directory.
    #[arg(long)]
    pub filter: Option<String>,
}

/// On-disk filter format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterFile {
    pub semigroup: String,
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChooserKind {
    Min,
    Max,
}

#[derive(Debug, Subcommand)]
pub enum SemigroupAction {
    Idempotents(TableArgs),
    Extend {
        #[command(flatten)]
        table: TableArgs,
        /// Support of the starting filter; defaults to the whole semigroup.
        #[arg(long, value_delimiter = ',')]
        support: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = ChooserKind::Min)]
        chooser: ChooserKind,
    },
    CheckAdditive {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, value_delimiter = ',')]
        support: Option<Vec<usize>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Galvin,
    Weak,
}

#[derive(Debug, Subcommand)]
pub enum HindmanAction {
    Extract {
        /// Generators of X, strictly increasing.
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Window size; defaults to the sum of the generators.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        horizon: Option<u64>,
        /// Target set (inline JSON or @file); defaults to FS(gens).
        #[arg(long)]
        set: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Galvin)]
        method: Method,
        /// Use the principal ultrafilter at this point instead of FS_X.
        #[arg(long)]
        principal: Option<u64>,
    },
}

#[derive(Debug, Args)]
pub struct FolkmanArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: u64,
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
    pub max: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartitionKind {
    TwoAdicWithZero,
    PositiveTwoAdic,
}

impl From<PartitionKind> for EvenPartition {
    fn from(p: PartitionKind) -> Self {
        match p {
            PartitionKind::TwoAdicWithZero => EvenPartition::TwoAdicWithZero,
            PartitionKind::PositiveTwoAdic => EvenPartition::PositiveTwoAdic,
        }
    }
}

#[derive(Debug, Args)]
pub struct Example33Args {
    #[arg(long, default_value_t = 1 << 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub horizon: u64,
    #[arg(long, value_enum, default_value_t = PartitionKind::TwoAdicWithZero)]
    pub partition: PartitionKind,
}

#[derive(Debug, Subcommand)]
pub enum Example33Action {
    Build(Example33Args),
    Verify {
        #[command(flatten)]
        common: Example33Args,
        /// How many of the smallest class-0 sets to test as shifts.
        #[arg(long, default_value_t = 3)]
        shifts: usize,
    },
}

#[derive(Debug, Args)]
pub struct FalArgs {
    /// Window set, inline JSON or @file.
    #[arg(long)]
    pub set: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    /// Window set, inline JSON or @file; defaults to the full window [1, 20].
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, default_value_t = 16)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<FilterError> for CliError {
    fn from(e: FilterError) -> Self {
        match e {
            FilterError::Semigroup(s) => s.into(),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<NatError> for CliError {
    fn from(e: NatError) -> Self {
        match e {
            NatError::ZeroHorizon
            | NatError::HorizonTooLarge { .. }
            | NatError::MemberOutOfWindow { .. }
            | NatError::NotIncreasing { .. }
            | NatError::NonPositive
            | NatError::ZeroK
            | NatError::NonDisjointBlocks { .. }
            | NatError::TooManyBlocks { .. } => CliError::Usage(e.to_string()),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<GalleryError> for CliError {
    fn from(e: GalleryError) -> Self {
        match e {
            GalleryError::Nat(n) => n.into(),
            GalleryError::HorizonTooSmall { .. } => CliError::Usage(e.to_string()),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<RamseyError> for CliError {
    fn from(e: RamseyError) -> Self {
        match e {
            RamseyError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            RamseyError::Nat(n) => n.into(),
            RamseyError::InvalidParameters(_) => CliError::Usage(e.to_string()),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl Command {
    /// Space-separated command path, as reported in the envelope.
    pub fn name(&self) -> &'static str {
        match self {
            Command::Semigroup { action } => match action {
                SemigroupAction::Idempotents(_) => "semigroup idempotents",
                SemigroupAction::Extend { .. } => "semigroup extend",
                SemigroupAction::CheckAdditive { .. } => "semigroup check-additive",
            },
            Command::Hindman { .. } => "hindman extract",
            Command::Folkman(_) => "folkman",
            Command::Example33 { action } => match action {
                Example33Action::Build(_) => "example33 build",
                Example33Action::Verify { .. } => "example33 verify",
            },
            Command::Fal(_) => "fal",
            Command::Probe(_) => "probe",
        }
    }
}

/// Runs the command and returns the enveloped output.
pub fn run(cli: &Cli) -> Result<Value, CliError> {
    let started = Instant::now();
    let body = execute(&cli.command)?;
    let elapsed_ms = if cli.reproducible {
        0
    } else {
        started.elapsed().as_millis() as u64
    };
    let mut out = Map::new();
    out.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    out.insert("command".into(), json!(cli.command.name()));
    out.insert("elapsed_ms".into(), json!(elapsed_ms));
    match body {
        Value::Object(fields) => out.extend(fields),
        other => {
            out.insert("result".into(), other);
        }
    }
    Ok(Value::Object(out))
}

/// Renders the output in the requested format.
pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => value.to_string(),
        Format::Text => match value {
            Value::Object(fields) => fields
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}: {s}"),
                    v => format!("{k}: {v}"),
                })
                .collect::<Vec<_>>()
                .join("\n"),
            v => v.to_string(),
        },
    }
}

pub fn execute(command: &Command) -> Result<Value, CliError> {
    match command {
        Command::Semigroup { action } => cmd_semigroup(action),
        Command::Hindman { action } => cmd_hindman(action),
        Command::Folkman(args) => cmd_folkman(args),
        Command::Example33 { action } => cmd_example33(action),
        Command::Fal(args) => cmd_fal(args),
        Command::Probe(args) => cmd_probe(args),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize to JSON")
}

fn load_table(path: &str) -> Result<Arc<FiniteSemigroup>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    let file: CayleyFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse {path}: {e}")))?;
    log::info!("loaded semigroup of order {} from {path}", file.n);
    Ok(Arc::new(FiniteSemigroup::from_cayley_file(file)?))
}

/// Inline JSON, or `@path` for a file.
fn load_window(source: &str) -> Result<WindowSet, CliError> {
    let text = match source.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?,
        None => source.to_string(),
    };
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse window set: {e}")))
}

/// The ground semigroup plus the support carried by a filter file, if any.
fn load_source(args: &TableArgs) -> Result<(Arc<FiniteSemigroup>, Option<Vec<usize>>), CliError> {
    match (&args.table, &args.filter) {
        (Some(table), _) => Ok((load_table(table)?, None)),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            let file: FilterFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("cannot parse {path}: {e}")))?;
            let table = Path::new(path)
                .parent()
                .unwrap_or_else(|| Path::new(""))
                .join(&file.semigroup);
            let s = load_table(&table.to_string_lossy())?;
            Ok((s, Some(file.support)))
        }
        (None, None) => Err(CliError::Usage(
            "one of --table or --filter is required".into(),
        )),
    }
}

fn support_filter(s: &Arc<FiniteSemigroup>, support: &[usize]) -> Result<PFilter, CliError> {
    Ok(PFilter::from_elements(
        Arc::clone(s),
        support.iter().copied(),
    )?)
}

fn cmd_semigroup(action: &SemigroupAction) -> Result<Value, CliError> {
    match action {
        SemigroupAction::Idempotents(t) => {
            let (s, _) = load_source(t)?;
            Ok(json!({ "idempotents": s.idempotents().to_vec() }))
        }
        SemigroupAction::Extend {
            table,
            support,
            chooser,
        } => {
            let (s, carried) = load_source(table)?;
            let f = match support.as_ref().or(carried.as_ref()) {
                Some(sup) => support_filter(&s, sup)?,
                None => PFilter::top(Arc::clone(&s)),
            };
            let chooser: &dyn Chooser = match chooser {
                ChooserKind::Min => &MinChooser,
                ChooserKind::Max => &MaxChooser,
            };
            let out = theta_extend_with(&f, chooser)?;
            Ok(json!({
                "support": f.support().to_vec(),
                "idempotent": out.idempotent,
                "rounds": out.rounds,
                "final_support": out.filter.support().to_vec(),
                "trace": to_value(&out.trace),
            }))
        }
        SemigroupAction::CheckAdditive { table, support } => {
            let (s, carried) = load_source(table)?;
            let sup = support
                .as_ref()
                .or(carried.as_ref())
                .ok_or_else(|| CliError::Usage("--support is required with --table".into()))?;
            let f = support_filter(&s, sup)?;
            Ok(json!({ "support": f.support().to_vec(), "additive": is_additive(&f) }))
        }
    }
}

fn cmd_hindman(action: &HindmanAction) -> Result<Value, CliError> {
    let HindmanAction::Extract {
        gens,
        k,
        horizon,
        set,
        method,
        principal,
    } = action;
    let x = FSGenerator::new(gens.clone())?;
    let horizon = horizon.unwrap_or_else(|| x.total().min(MAX_HORIZON));
    let a = match set {
        Some(source) => load_window(source)?,
        None => fs_set(&x, horizon)?,
    };
    let k = *k as usize;
    let fsx = FsxOracle::new(x);
    let principal = principal
        .map(|m| {
            PrincipalOracle::new(m)
                .ok_or_else(|| CliError::Usage("--principal must be positive".into()))
        })
        .transpose()?;
    let v: &dyn UltrafilterOracle = match &principal {
        Some(p) => p,
        None => &fsx,
    };
    let extraction = match method {
        Method::Galvin => galvin_extract(&a, v, k)?,
        Method::Weak => {
            let powers: Vec<&dyn UltrafilterOracle> = vec![v; k.saturating_sub(2)];
            weak_extract(&a, v, &powers, k)?
        }
    };
    let mut out = to_value(&extraction);
    if let Value::Object(m) = &mut out {
        m.insert(
            "method".into(),
            json!(match method {
                Method::Galvin => "galvin",
                Method::Weak => "weak",
            }),
        );
        m.insert("horizon".into(), json!(a.horizon()));
    }
    Ok(out)
}

fn cmd_folkman(args: &FolkmanArgs) -> Result<Value, CliError> {
    let result = folkman_number(
        args.n as usize,
        args.r as usize,
        args.max as usize,
        args.budget,
        args.workers,
    )?;
    Ok(match result {
        Some(f) => {
            log::info!("least N for n = {}, r = {} is {}", args.n, args.r, f.big_n);
            to_value(&f)
        }
        None => json!({ "N": null, "max": args.max }),
    })
}

fn cmd_example33(action: &Example33Action) -> Result<Value, CliError> {
    match action {
        Example33Action::Build(args) => {
            let b = build_x_with(args.horizon, args.partition.into())?;
            let mut out = to_value(&b);
            if let Value::Object(m) = &mut out {
                m.insert("size".into(), json!(b.window.len()));
            }
            Ok(out)
        }
        Example33Action::Verify { common, shifts } => {
            let partition: EvenPartition = common.partition.into();
            let b = build_x_with(common.horizon, partition)?;
            let triples = verify_no_sum_triple(&b.window);
            let mut witnesses = Vec::new();
            for f0 in smallest_class_zero_sets(*shifts, partition) {
                match verify_shift_witness(&f0, common.horizon, partition) {
                    Ok(w) => witnesses.push(to_value(&w)),
                    Err(e @ GalleryError::VacuousWindow { .. }) => witnesses.push(json!({
                        "f0": f0,
                        "error": e.to_string(),
                    })),
                    Err(e) => return Err(e.into()),
                }
            }
            let level2 = fal_level_with_workers(&b.window, 2, 1)?;
            let mut out = to_value(&triples);
            if let Value::Object(m) = &mut out {
                m.insert("horizon".into(), json!(common.horizon));
                m.insert("size".into(), json!(b.window.len()));
                m.insert("shift_witnesses".into(), Value::Array(witnesses));
                m.insert("fal_level_2".into(), to_value(&level2));
            }
            Ok(out)
        }
    }
}

fn cmd_fal(args: &FalArgs) -> Result<Value, CliError> {
    let a = load_window(&args.set)?;
    let w = fal_level_with_workers(&a, args.k as usize, args.workers)?;
    Ok(json!({ "k": args.k, "horizon": a.horizon(), "witness": to_value(&w) }))
}

fn cmd_probe(args: &ProbeArgs) -> Result<Value, CliError> {
    let a = match &args.set {
        Some(source) => load_window(source)?,
        None => WindowSet::full(20)?,
    };
    let report = fal_partition_regularity_probe(
        &a,
        args.r as usize,
        args.k as usize,
        args.trials,
        args.seed,
    )?;
    Ok(to_value(&report))
}
