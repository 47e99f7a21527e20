//! Command-line front end. Exit codes: 0 success, 2 validation error,
//! 3 property violation (for scripting), 4 internal error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use nward::classify::classify;
use nward::compactness::{
    extract_s_quasi_cauchy_subsequence, greedy_alpha_net, test_compact_image, AnchorPolicy,
    NetStatus,
};
use nward::config::SuiteConfig;
use nward::continuity::{
    estimate_uniform_modulus, function_from_table, test_s_ward, test_sequential_continuity,
    test_ward, FunctionSpec,
};
use nward::nnorm::nnorm;
use nward::report::to_json_string;
use nward::sequence::{sequence_from_table, SequenceSpec};
use nward::space::{Exponent, NVector, SpaceConfig, VectorTuple};
use nward::suite::run_suite;
use nward::witness::WitnessSet;

#[derive(Parser)]
#[command(
    name = "nward",
    version,
    about = "Numerical toolkit for n-normed spaces: norms, difference profiles, \
             continuity probes, covering nets, and a ten-section suite"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the n-norm of a vector tuple.
    Norm(NormArgs),
    /// Classify a sequence's difference profiles at a finite horizon.
    Classify(ClassifyArgs),
    /// Probe a function for difference-preservation and continuity.
    FuncTest(FuncTestArgs),
    /// Covering nets and subsequence extraction.
    Compact(CompactArgs),
    /// Run the full ten-section suite.
    Suite(SuiteArgs),
}

#[derive(clap::Args)]
struct NormArgs {
    /// Norm order n.
    #[arg(long)]
    n: usize,
    /// Exponent: a number >= 1 or "inf".
    #[arg(long, default_value = "2")]
    p: String,
    /// Vector as comma-separated coordinates; repeat exactly n times.
    #[arg(long = "vec", required = true)]
    vectors: Vec<String>,
}

#[derive(clap::Args)]
struct SpaceArgs {
    /// Ambient dimension d.
    #[arg(long, default_value_t = 2)]
    dimension: usize,
    /// Norm order n.
    #[arg(long, default_value_t = 2)]
    order: usize,
    /// Exponent: a number >= 1 or "inf".
    #[arg(long, default_value = "2")]
    p: String,
    /// Witness policy: standard-basis or leading-basis.
    #[arg(long, default_value = "standard-basis")]
    witness: String,
}

#[derive(clap::Args)]
struct ClassifyArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Catalog sequence name.
    #[arg(long, conflicts_with = "seq_file")]
    seq: Option<String>,
    /// Sequence parameter as key=value (TOML-typed); repeatable.
    #[arg(long = "param")]
    params: Vec<String>,
    /// TOML file holding one sequence table.
    #[arg(long)]
    seq_file: Option<PathBuf>,
    /// Shifts to test, comma separated.
    #[arg(long, default_value = "1", value_delimiter = ',')]
    s: Vec<usize>,
    /// Analysis horizon.
    #[arg(long = "H", default_value_t = 10_000)]
    horizon: usize,
    /// Verdict tolerance.
    #[arg(long, default_value_t = 0.1)]
    tau: f64,
    /// Candidate limit point for the convergence property.
    #[arg(long)]
    zeta: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct FuncTestArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Catalog function family name.
    #[arg(long, conflicts_with = "func_file")]
    func: Option<String>,
    /// Function parameter as key=value (TOML-typed); repeatable.
    #[arg(long = "func-param")]
    func_params: Vec<String>,
    /// TOML file holding one function table.
    #[arg(long)]
    func_file: Option<PathBuf>,
    /// Property to probe: s-ward, ward, sequential, or uniform-modulus.
    #[arg(long)]
    property: String,
    /// Corpus sequence names; defaults to the shipped catalog.
    #[arg(long = "seq")]
    seqs: Vec<String>,
    /// Shift for the s-ward property.
    #[arg(long, default_value_t = 2)]
    s: usize,
    /// Analysis horizon.
    #[arg(long = "H", default_value_t = 10_000)]
    horizon: usize,
    /// Verdict tolerance.
    #[arg(long, default_value_t = 0.1)]
    tau: f64,
    /// Probe point for the sequential property.
    #[arg(long)]
    zeta: Option<String>,
    /// Half-width of the modulus sampling box.
    #[arg(long, default_value_t = 2.0)]
    halfwidth: f64,
    /// Lattice resolution per axis for modulus sampling.
    #[arg(long, default_value_t = 8)]
    grid: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct CompactArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// What to run: net, extract, or image.
    #[arg(long, default_value = "extract")]
    mode: String,
    /// Catalog sequence name.
    #[arg(long, conflicts_with = "seq_file")]
    seq: Option<String>,
    /// Sequence parameter as key=value (TOML-typed); repeatable.
    #[arg(long = "param")]
    params: Vec<String>,
    /// TOML file holding one sequence table.
    #[arg(long)]
    seq_file: Option<PathBuf>,
    /// Point horizon.
    #[arg(long = "H", default_value_t = 2048)]
    horizon: usize,
    /// Shift for extraction modes.
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Covering radius for net mode.
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    /// Ball budget for net mode.
    #[arg(long, default_value_t = 64)]
    cap: usize,
    /// Anchor policy for net mode: center-plus-basis or fixed-basis.
    #[arg(long, default_value = "center-plus-basis")]
    policy: String,
    /// Function for image mode (catalog family name).
    #[arg(long)]
    func: Option<String>,
    /// Function parameter as key=value (TOML-typed); repeatable.
    #[arg(long = "func-param")]
    func_params: Vec<String>,
    /// TOML file holding one function table (image mode).
    #[arg(long)]
    func_file: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SuiteArgs {
    /// Suite config file; defaults to the shipped configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the JSON report here (overrides the config's output path).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the config horizon.
    #[arg(long = "H")]
    horizon: Option<usize>,
    /// Override the config tolerance.
    #[arg(long)]
    tau: Option<f64>,
    /// Override the config seed.
    #[arg(long)]
    seed: Option<u64>,
}

enum Failure {
    Validation(String),
    Internal(String),
}

impl From<nward::Error> for Failure {
    fn from(e: nward::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

const EXIT_VIOLATION: u8 = 3;

fn main() -> ExitCode {
    if let Err(msg) = init_threads() {
        eprintln!("nward: {msg}");
        return ExitCode::from(2);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Norm(args) => cmd_norm(args),
        Command::Classify(args) => cmd_classify(args),
        Command::FuncTest(args) => cmd_func_test(args),
        Command::Compact(args) => cmd_compact(args),
        Command::Suite(args) => cmd_suite(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Validation(msg)) => {
            eprintln!("nward: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("nward: {msg}");
            ExitCode::from(4)
        }
    }
}

fn init_threads() -> Result<(), String> {
    let Some(raw) = std::env::var_os("NWARD_THREADS") else {
        return Ok(());
    };
    let text = raw.to_string_lossy();
    let count: usize = text
        .trim()
        .parse()
        .map_err(|_| format!("NWARD_THREADS must be a nonnegative integer, got {text:?}"))?;
    if count == 0 {
        return Ok(());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(count)
        .build_global()
        .map_err(|e| format!("thread pool: {e}"))
}

// --- shared plumbing ---

fn parse_exponent(text: &str) -> Result<Exponent, Failure> {
    Exponent::from_str(text).map_err(|e| Failure::Validation(e.to_string()))
}

fn parse_vector(text: &str) -> Result<NVector, Failure> {
    let coords: Result<Vec<f64>, _> = text.split(',').map(|c| c.trim().parse::<f64>()).collect();
    let coords = coords.map_err(|e| Failure::Validation(format!("bad coordinate in {text:?}: {e}")))?;
    Ok(NVector::new(coords)?)
}

/// Parses `key=value` with TOML value typing, so `ratio=0.5`,
/// `axis=1`, and `base={name="sqrt-ramp"}` all work; values that fail
/// to parse as TOML are kept as plain strings.
fn parse_kv(text: &str) -> Result<(String, toml::Value), Failure> {
    let (key, value) = text
        .split_once('=')
        .ok_or_else(|| Failure::Validation(format!("parameter {text:?} is not key=value")))?;
    let key = key.trim().to_string();
    if key.is_empty() {
        return Err(Failure::Validation(format!("parameter {text:?} has an empty key")));
    }
    let parsed: Option<toml::Value> = toml::from_str::<toml::Table>(&format!("v = {value}"))
        .ok()
        .and_then(|mut t| t.remove("v"));
    Ok((key, parsed.unwrap_or_else(|| toml::Value::from(value.trim()))))
}

fn params_table(pairs: &[String]) -> Result<toml::Table, Failure> {
    let mut table = toml::Table::new();
    for pair in pairs {
        let (k, v) = parse_kv(pair)?;
        table.insert(k, v);
    }
    Ok(table)
}

fn space_from(args: &SpaceArgs) -> Result<(SpaceConfig, WitnessSet), Failure> {
    let cfg = SpaceConfig::new(args.dimension, args.order, parse_exponent(&args.p)?)?;
    let witnesses = match args.witness.as_str() {
        "standard-basis" => WitnessSet::standard_basis(&cfg)?,
        "leading-basis" => WitnessSet::leading_basis(&cfg)?,
        other => {
            return Err(Failure::Validation(format!(
                "unknown witness policy {other:?} (known: standard-basis, leading-basis)"
            )))
        }
    };
    Ok((cfg, witnesses))
}

fn read_table(path: &PathBuf) -> Result<toml::Table, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn resolve_sequence(
    seq: Option<&String>,
    params: &[String],
    seq_file: Option<&PathBuf>,
    dimension: usize,
    horizon: usize,
) -> Result<SequenceSpec, Failure> {
    let table = match (seq, seq_file) {
        (Some(name), None) => {
            let mut t = params_table(params)?;
            t.insert("name".into(), toml::Value::from(name.as_str()));
            t
        }
        (None, Some(path)) => read_table(path)?,
        (None, None) => {
            return Err(Failure::Validation("pass --seq NAME or --seq-file PATH".into()))
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    Ok(sequence_from_table(&table, dimension, horizon)?)
}

fn resolve_function(
    func: Option<&String>,
    params: &[String],
    func_file: Option<&PathBuf>,
    dimension: usize,
) -> Result<FunctionSpec, Failure> {
    let table = match (func, func_file) {
        (Some(name), None) => {
            let mut t = params_table(params)?;
            t.insert("family".into(), toml::Value::from(name.as_str()));
            t
        }
        (None, Some(path)) => read_table(path)?,
        (None, None) => {
            return Err(Failure::Validation("pass --func NAME or --func-file PATH".into()))
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    Ok(function_from_table(&table, dimension)?)
}

fn default_corpus(dimension: usize, horizon: usize) -> Result<Vec<SequenceSpec>, Failure> {
    SuiteConfig::default()
        .sequences
        .iter()
        .map(|t| sequence_from_table(t, dimension, horizon).map_err(Failure::from))
        .collect()
}

fn emit<T: serde::Serialize>(value: &T, out: Option<&PathBuf>) -> Result<(), Failure> {
    let json = to_json_string(value).map_err(|e| Failure::Internal(e.to_string()))?;
    match out {
        Some(path) => std::fs::write(path, format!("{json}\n"))
            .map_err(|e| Failure::Internal(format!("{}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

// --- subcommands ---

fn cmd_norm(args: NormArgs) -> CmdResult {
    let vectors: Result<Vec<NVector>, Failure> = args.vectors.iter().map(|v| parse_vector(v)).collect();
    let vectors = vectors?;
    let dimension = vectors.first().map(NVector::dim).unwrap_or(0);
    let cfg = SpaceConfig::new(dimension, args.n, parse_exponent(&args.p)?)?;
    let tuple = VectorTuple::new(vectors)?;
    let value = nnorm(&tuple, &cfg)?;
    println!("{value:.12}");
    Ok(0)
}

fn cmd_classify(args: ClassifyArgs) -> CmdResult {
    let (cfg, witnesses) = space_from(&args.space)?;
    let seq = resolve_sequence(
        args.seq.as_ref(),
        &args.params,
        args.seq_file.as_ref(),
        cfg.dimension,
        args.horizon,
    )?;
    let zeta = args.zeta.as_deref().map(parse_vector).transpose()?;
    let report = classify(
        &seq,
        &cfg,
        &witnesses,
        &args.s,
        args.horizon,
        args.tau,
        zeta.as_ref(),
    )?;
    let violated = report.any_violated();
    emit(&report, args.out.as_ref())?;
    Ok(if violated { EXIT_VIOLATION } else { 0 })
}

fn cmd_func_test(args: FuncTestArgs) -> CmdResult {
    let (cfg, witnesses) = space_from(&args.space)?;
    let f = resolve_function(
        args.func.as_ref(),
        &args.func_params,
        args.func_file.as_ref(),
        cfg.dimension,
    )?;
    let corpus: Vec<SequenceSpec> = if args.seqs.is_empty() {
        default_corpus(cfg.dimension, args.horizon)?
    } else {
        args.seqs
            .iter()
            .map(|name| {
                resolve_sequence(Some(name), &[], None, cfg.dimension, args.horizon)
            })
            .collect::<Result<_, _>>()?
    };
    let refs: Vec<&SequenceSpec> = corpus.iter().collect();
    match args.property.as_str() {
        "s-ward" => {
            let report = test_s_ward(&f, &refs, args.s, &cfg, &witnesses, args.horizon, args.tau)?;
            let violated = report.verdict.is_violated();
            emit(&report, args.out.as_ref())?;
            Ok(if violated { EXIT_VIOLATION } else { 0 })
        }
        "ward" => {
            let report = test_ward(&f, &refs, &cfg, &witnesses, args.horizon, args.tau)?;
            let violated = report.verdict.is_violated();
            emit(&report, args.out.as_ref())?;
            Ok(if violated { EXIT_VIOLATION } else { 0 })
        }
        "sequential" => {
            let zeta = match args.zeta.as_deref() {
                Some(text) => parse_vector(text)?,
                None => NVector::zeros(cfg.dimension),
            };
            let report =
                test_sequential_continuity(&f, &zeta, &cfg, &witnesses, args.horizon, args.tau)?;
            let violated = report.verdict.is_violated();
            emit(&report, args.out.as_ref())?;
            Ok(if violated { EXIT_VIOLATION } else { 0 })
        }
        "uniform-modulus" => {
            let lo = NVector::new(vec![-args.halfwidth; cfg.dimension])?;
            let hi = NVector::new(vec![args.halfwidth; cfg.dimension])?;
            let table = estimate_uniform_modulus(&f, &lo, &hi, args.grid, &cfg, &witnesses)?;
            let certified = table.is_monotone(1e-12) && table.delta_for(args.tau).is_some();
            emit(&table, args.out.as_ref())?;
            Ok(if certified { 0 } else { EXIT_VIOLATION })
        }
        other => Err(Failure::Validation(format!(
            "unknown property {other:?} (known: s-ward, ward, sequential, uniform-modulus)"
        ))),
    }
}

fn cmd_compact(args: CompactArgs) -> CmdResult {
    let (cfg, witnesses) = space_from(&args.space)?;
    let seq = resolve_sequence(
        args.seq.as_ref(),
        &args.params,
        args.seq_file.as_ref(),
        cfg.dimension,
        args.horizon,
    )?;
    match args.mode.as_str() {
        "net" => {
            let policy = match args.policy.as_str() {
                "center-plus-basis" => AnchorPolicy::CenterPlusBasis,
                "fixed-basis" => AnchorPolicy::FixedBasis,
                other => {
                    return Err(Failure::Validation(format!(
                        "unknown anchor policy {other:?} (known: center-plus-basis, fixed-basis)"
                    )))
                }
            };
            let points = seq.prefix(args.horizon)?;
            let net = greedy_alpha_net(&points, args.alpha, args.cap, policy, &cfg)?;
            let packed = net.status == NetStatus::PackingExceeded;
            emit(&net, args.out.as_ref())?;
            Ok(if packed { EXIT_VIOLATION } else { 0 })
        }
        "extract" => {
            let outcome =
                extract_s_quasi_cauchy_subsequence(&seq, args.s, &cfg, &witnesses, args.horizon)?;
            let failed = !outcome.succeeded();
            emit(&outcome, args.out.as_ref())?;
            Ok(if failed { EXIT_VIOLATION } else { 0 })
        }
        "image" => {
            let f = resolve_function(
                args.func.as_ref(),
                &args.func_params,
                args.func_file.as_ref(),
                cfg.dimension,
            )?;
            let report = test_compact_image(&f, &seq, args.s, &cfg, &witnesses, args.horizon)?;
            let failed = !report.passed;
            emit(&report, args.out.as_ref())?;
            Ok(if failed { EXIT_VIOLATION } else { 0 })
        }
        other => Err(Failure::Validation(format!(
            "unknown mode {other:?} (known: net, extract, image)"
        ))),
    }
}

fn cmd_suite(args: SuiteArgs) -> CmdResult {
    let config = match args.config.as_ref() {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
            SuiteConfig::from_toml_str(&text)?
        }
        None => SuiteConfig::default(),
    };
    let config = config.with_overrides(args.horizon, args.tau, args.seed)?;
    let report = run_suite(&config).map_err(|e| Failure::Internal(e.to_string()))?;
    for section in &report.sections {
        eprintln!(
            "{}: {} pass, {} expected-violation, {} unexpected-violation, {} skipped",
            section.id,
            section.pass,
            section.expected_violations,
            section.unexpected_violations,
            section.skipped
        );
    }
    let out = args
        .out
        .clone()
        .or_else(|| config.output.as_ref().map(PathBuf::from));
    emit(&report, out.as_ref())?;
    Ok(if report.has_unexpected_violations() {
        EXIT_VIOLATION
    } else {
        0
    })
}
