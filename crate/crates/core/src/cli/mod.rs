//! Command-line front end: `check`, `homology` and `list`.
//!
//! Exit codes: 0 when every identity holds, 1 on an identity violation,
//! 2 on malformed input.

mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::cooperad::{verify_comultiplication, verify_cooperad_axioms, Report};
use crate::derived::{verify_chain_identities, ChainIdentity, ChainOperators};
use crate::exactlinalg::FieldSpec;
use crate::homology::{analyze, HomologyAnalysis, HomologyError};
use crate::instances::{self, builtin, verify_hat_duality, InstanceError, RawPresentation, Validated, BUILTIN_NAMES};

pub use output::{HomologyOutput, RunOutput, SuiteOutput};

/// Environment variable holding the worker count.
pub const THREADS_ENV: &str = "COOPERAD_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "cooperad-lab", version, about = "Exact checks of comultiplicative cooperads and their homology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verifier suites on one instance.
    Check(CheckArgs),
    /// Homology dimensions and transferred structure constants.
    Homology(HomologyArgs),
    /// Built-in instances and available suites.
    List(ListArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Name of a built-in presentation.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Path to a JSON presentation.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// `Q` or a prime field such as `F2`; defaults to the instance's own field.
    #[arg(long)]
    pub field: Option<String>,
    /// Truncation arity N.
    #[arg(long = "max-degree", short = 'N', default_value_t = 3)]
    pub max_degree: u32,
    /// Emit JSON on stdout.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Witnesses printed per suite.
    #[arg(long, short = 'k', default_value_t = 3)]
    pub witnesses: usize,
    /// Stop after the first failing suite.
    #[arg(long)]
    pub fail_fast: bool,
}

#[derive(Args, Debug, Clone)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Include the structure constants of ∪ and {-} on homology.
    #[arg(long)]
    pub structure: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ListArgs {
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Cooperad,
    Chain,
    Homology,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

pub const SUITES: [(&str, &str); 3] = [
    ("cooperad", "counitality, coassociativity, comultiplication; hat duality for Frobenius instances"),
    ("chain", "simplicial identities, d∘d = 0, cup and cobracket identities, coLeibniz"),
    ("homology", "retraction, transfer of ∪ and {-}, Gerstenhaber axioms on homology"),
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Where the presentation comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Builtin(String),
    File(PathBuf),
}

/// A fully resolved run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub source: Source,
    pub field: Option<FieldSpec>,
    pub truncation: u32,
    pub suite: Suite,
    pub json: bool,
    pub witnesses: usize,
    pub fail_fast: bool,
}

fn parse_field(text: &str) -> Result<FieldSpec, CliError> {
    if matches!(text.trim(), "Z" | "ZZ" | "integers") {
        return Err(CliError::Input("integer coefficients are not supported; homology needs a field".into()));
    }
    text.parse().map_err(|e| CliError::Input(format!("{e}")))
}

impl RunConfig {
    fn from_instance(a: &InstanceArgs) -> Result<Self, CliError> {
        let source = match (&a.source.builtin, &a.source.input) {
            (Some(name), None) => Source::Builtin(name.clone()),
            (None, Some(path)) => Source::File(path.clone()),
            _ => return Err(CliError::Input("exactly one of --builtin and --input is required".into())),
        };
        if a.max_degree < 2 {
            return Err(CliError::Input(format!(
                "--max-degree {} is too small: the comultiplication lives in arity 2",
                a.max_degree
            )));
        }
        Ok(RunConfig {
            source,
            field: a.field.as_deref().map(parse_field).transpose()?,
            truncation: a.max_degree,
            suite: Suite::All,
            json: a.json,
            witnesses: 3,
            fail_fast: false,
        })
    }

    pub fn from_check(a: &CheckArgs) -> Result<Self, CliError> {
        Ok(RunConfig { suite: a.suite, witnesses: a.witnesses, fail_fast: a.fail_fast, ..Self::from_instance(&a.instance)? })
    }
}

/// Reads and interprets the presentation. A presentation that parses but
/// fails validation comes back as `Err(report)`.
pub fn load(source: &Source, field: Option<FieldSpec>) -> Result<(String, FieldSpec, Result<Validated, Report>), CliError> {
    let (name, raw, default_field) = match source {
        Source::Builtin(name) => {
            let b = builtin(name)?;
            (b.name.to_string(), b.raw, b.default_field)
        }
        Source::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let raw = RawPresentation::from_json(&text)?;
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let name = raw.name.clone().unwrap_or(stem);
            (name, raw, FieldSpec::Rationals)
        }
    };
    let field = field.unwrap_or(default_field);
    let presentation = raw.over(field)?;
    match instances::validate(presentation) {
        Ok((v, _)) => Ok((name, field, Ok(v))),
        Err(InstanceError::Invalid(report)) => Ok((name, field, Err(report))),
        Err(e) => Err(e.into()),
    }
}

fn cooperad_suite(v: &Validated, n: u32) -> Result<Report, CliError> {
    let (c, t) = instances::build(v, n)?;
    let mut report = Report::new("cooperad");
    report.extend(verify_cooperad_axioms(&c));
    report.extend(verify_comultiplication(&c, &t));
    if let Validated::Frobenius(p, _) = v {
        let reach = 2.min(n - 1);
        report.extend(verify_hat_duality(p, &c, reach, reach));
    }
    Ok(report)
}

fn chain_suite(v: &Validated, n: u32) -> Result<Report, CliError> {
    let (c, t) = instances::build(v, n)?;
    let ops = ChainOperators::build(&c, &t).map_err(InstanceError::from)?;
    Ok(verify_chain_identities(&c, &t, &ops, &ChainIdentity::ALL))
}

/// The homology pipeline at truncation `n`, built one arity higher so that
/// `H(0..=n)` is exact.
pub fn homology_run(v: &Validated, n: u32) -> Result<Result<HomologyAnalysis, HomologyError>, CliError> {
    let (c, t) = instances::build(v, n + 1)?;
    Ok(analyze(&c, &t))
}

/// Runs `check` and returns the assembled output; the exit code follows
/// from [`RunOutput::passed`].
pub fn check(config: &RunConfig) -> Result<RunOutput, CliError> {
    let (name, field, validated) = load(&config.source, config.field)?;
    let mut run = RunOutput::new(&name, field, config.truncation);
    let v = match validated {
        Ok(v) => v,
        Err(report) => {
            run.push(SuiteOutput::from_report("instance", &report, config.witnesses));
            return Ok(run);
        }
    };
    let n = config.truncation;
    type Step = fn(&Validated, u32) -> Result<Report, CliError>;
    let steps: [(Suite, Step); 2] = [(Suite::Cooperad, cooperad_suite), (Suite::Chain, chain_suite)];
    for (suite, step) in steps {
        if !config.suite.includes(suite) {
            continue;
        }
        let report = step(&v, n)?;
        run.push(SuiteOutput::from_report(&report.suite, &report, config.witnesses));
        if config.fail_fast && !run.passed() {
            return Ok(run);
        }
    }
    if config.suite.includes(Suite::Homology) {
        let suite = match homology_run(&v, n)? {
            Ok(a) => SuiteOutput::from_report("homology", &a.report, config.witnesses).with_dims(a.dims()),
            Err(e) => SuiteOutput::from_error("homology", &e),
        };
        run.push(suite);
    }
    Ok(run)
}

fn write_json(out: &mut dyn Write, value: &impl serde::Serialize) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(std::io::Error::other)?;
    writeln!(out)
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let config = RunConfig::from_check(a)?;
    let run = check(&config)?;
    let io = if config.json { write_json(out, &run) } else { write!(out, "{run}") };
    io.map_err(|e| CliError::Input(format!("write failed: {e}")))?;
    Ok(if run.passed() { 0 } else { 1 })
}

fn cmd_homology(a: &HomologyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let config = RunConfig::from_instance(&a.instance)?;
    let (name, field, validated) = load(&config.source, config.field)?;
    let v = match validated {
        Ok(v) => v,
        Err(report) => {
            let mut run = RunOutput::new(&name, field, config.truncation);
            run.push(SuiteOutput::from_report("instance", &report, usize::MAX));
            let _ = if config.json { write_json(out, &run) } else { write!(out, "{run}") };
            return Ok(1);
        }
    };
    let analysis = match homology_run(&v, config.truncation)? {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(out, "homology failed: {e}");
            return Ok(1);
        }
    };
    let h = HomologyOutput::new(&name, field, &analysis, a.structure);
    let io = if config.json { write_json(out, &h) } else { write!(out, "{h}") };
    io.map_err(|e| CliError::Input(format!("write failed: {e}")))?;
    Ok(if h.passed { 0 } else { 1 })
}

fn cmd_list(a: &ListArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let rows: Vec<output::ListEntry> = BUILTIN_NAMES
        .iter()
        .map(|n| {
            let b = builtin(n).expect("listed builtins exist");
            output::ListEntry { name: b.name, kind: b.raw.kind, field: b.default_field.to_string(), description: b.description }
        })
        .collect();
    let io = if a.json {
        write_json(out, &rows)
    } else {
        output::write_list(out, &rows, &SUITES)
    };
    io.map_err(|e| CliError::Input(format!("write failed: {e}")))?;
    Ok(0)
}

/// Sizes the global worker pool from [`THREADS_ENV`], once per process.
fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Input(format!("{THREADS_ENV}={value} is not a positive integer")))?;
    // A pool that already exists (e.g. a second call in one process) is kept.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Parses `args` and runs the selected command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Check(a) => cmd_check(a, out),
        Command::Homology(a) => cmd_homology(a, out),
        Command::List(a) => cmd_list(a, out),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
