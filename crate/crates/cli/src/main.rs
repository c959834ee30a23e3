//! `lcz`: exact convolution algebras and characterization suites from the
//! command line.
//!
//! Exit codes: 0 on success (or a consistent suite), 1 on input errors,
//! 2 when a suite's conditions disagree.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lcz_core::arithfun::{self, ArithKind, Builtin};
use lcz_core::bintype::{self, BinomialKind};
use lcz_core::characterize::{self, Embedding};
use lcz_core::oracle::{self, OracleQuery};
use lcz_core::{
    ArithFun, BinomialArithFun, BinomialType, Family, Rational, SuiteOptions, TrialConfig,
    TruncatedSeries, Variant,
};

#[derive(Parser)]
#[command(
    name = "lcz",
    version,
    about = "Exact Lambek-Carlitz characterization checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every condition of a characterization and report whether they agree.
    Suite(SuiteArgs),
    /// Run a single condition.
    Check {
        #[arg(long)]
        condition: u8,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Convolve two tabulated functions.
    Conv(ConvArgs),
    /// Write the closed-form series of a binomial type.
    Generate(GenerateArgs),
    /// Brute-force counts next to their closed forms.
    Oracle(OracleArgs),
    /// Test a function against a functional equation.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SuiteArgs {
    /// Series JSON file (series suites, with --type).
    #[arg(long, conflicts_with = "function")]
    series: Option<PathBuf>,
    /// Arithmetical function: JSON file or `builtin:NAME` (Dirichlet suites).
    #[arg(long)]
    function: Option<String>,
    /// `factorial`, `ones`, `q:<rational>` or a binomial-type JSON file.
    #[arg(long = "type", default_value = "factorial")]
    binomial_type: String,
    #[arg(long, default_value = "multiplicative")]
    variant: String,
    /// Working order; defaults to the series' order.
    #[arg(long)]
    order: Option<usize>,
    /// Bound for `builtin:` functions.
    #[arg(long, default_value_t = 200)]
    bound: u64,
    #[arg(long, default_value_t = characterize::DEFAULT_TRIALS)]
    trials: u32,
    #[arg(long, env = "LCZ_SEED", default_value_t = lcz_core::sampling::DEFAULT_SEED)]
    seed: u64,
    /// `classical` or `binomial`; the factorial type defaults to classical.
    #[arg(long)]
    embedding: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvKind {
    Dirichlet,
    Unitary,
    Binomial,
}

#[derive(Args)]
struct ConvArgs {
    #[arg(long, value_enum)]
    kind: ConvKind,
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
    /// Binomial type for `--kind binomial`.
    #[arg(long = "type", default_value = "factorial")]
    binomial_type: String,
    #[arg(long, default_value_t = 200)]
    bound: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long = "type", default_value = "factorial")]
    binomial_type: String,
    #[arg(long, default_value = "multiplicative")]
    variant: String,
    #[arg(long, allow_hyphen_values = true)]
    a1: String,
    #[arg(long, default_value_t = 16)]
    order: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Chains,
    Flags,
    Subspaces,
    Galois,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(value_enum)]
    kind: OracleKind,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    k: u32,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ClassifyArgs {
    /// JSON file or `builtin:NAME`; binomial kinds read a function on 0..=N.
    #[arg(long)]
    f: String,
    /// completely_multiplicative, multiplicative, completely_additive, additive,
    /// binomial_multiplicative or binomial_additive.
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 200)]
    bound: u64,
    #[command(flatten)]
    output: OutputArgs,
}

/// What a command produced: JSON for machines, text for people.
struct Output {
    json: serde_json::Value,
    text: String,
    exit: u8,
}

impl Output {
    fn new<T: Serialize>(value: &T, text: String) -> anyhow::Result<Self> {
        Ok(Output {
            json: serde_json::to_value(value)?,
            text,
            exit: 0,
        })
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display()))
}

fn load_function(source: &str, bound: u64) -> anyhow::Result<ArithFun> {
    match source.strip_prefix("builtin:") {
        Some(name) => Ok(arithfun::builtin(name.parse::<Builtin>()?, bound)?),
        None => read_json(Path::new(source)),
    }
}

fn load_type(spec: &str, order: usize) -> anyhow::Result<BinomialType> {
    let path = Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        return read_json(path);
    }
    let family: Family = spec.parse()?;
    Ok(BinomialType::make(family, order.max(1))?)
}

fn suite_inputs(args: &SuiteArgs) -> anyhow::Result<(TruncatedSeries, BinomialType, SuiteOptions)> {
    let Some(path) = &args.series else {
        bail!("either --series or --function is required");
    };
    let series: TruncatedSeries = read_json(path)?;
    let order = args.order.unwrap_or(series.order());
    let b = load_type(&args.binomial_type, order)?;
    let embedding = args
        .embedding
        .as_deref()
        .map(str::parse::<Embedding>)
        .transpose()?;
    let options = SuiteOptions {
        trials: TrialConfig {
            trials: args.trials,
            seed: args.seed,
        },
        order: Some(order),
        embedding,
    };
    Ok((series, b, options))
}

fn cmd_suite(args: &SuiteArgs) -> anyhow::Result<Output> {
    let variant: Variant = args.variant.parse()?;
    let trials = TrialConfig {
        trials: args.trials,
        seed: args.seed,
    };
    let (verdict, header) = if let Some(source) = &args.function {
        let f = load_function(source, args.bound)?;
        let header = format!("{source}, {variant}, bound {}", f.bound());
        (characterize::check_dirichlet(&f, variant, trials)?, header)
    } else {
        let (series, b, options) = suite_inputs(args)?;
        let header = format!(
            "{}, {variant}, order {}",
            b.name(),
            options.order.unwrap_or(series.order())
        );
        (
            characterize::run_suite(&series, &b, variant, &options)?,
            header,
        )
    };
    let mut out = Output::new(&verdict, render::suite(&verdict, &header))?;
    if !verdict.consistent {
        out.exit = 2;
    }
    Ok(out)
}

fn cmd_check(condition: u8, args: &SuiteArgs) -> anyhow::Result<Output> {
    let variant: Variant = args.variant.parse()?;
    if args.function.is_some() {
        let f = load_function(args.function.as_deref().unwrap(), args.bound)?;
        let trials = TrialConfig {
            trials: args.trials,
            seed: args.seed,
        };
        let verdict = characterize::check_dirichlet(&f, variant, trials)?;
        let report = verdict
            .condition(condition)
            .with_context(|| format!("Dirichlet suites have conditions 1..=4, not {condition}"))?;
        return Output::new(report, render::report_table(std::slice::from_ref(report)));
    }
    let (series, b, options) = suite_inputs(args)?;
    let report = characterize::check_condition(&series, &b, variant, condition, &options)?;
    Output::new(&report, render::report_table(std::slice::from_ref(&report)))
}

fn cmd_conv(args: &ConvArgs) -> anyhow::Result<Output> {
    match args.kind {
        ConvKind::Dirichlet | ConvKind::Unitary => {
            let f = load_function(&args.f, args.bound)?;
            let g = load_function(&args.g, args.bound)?;
            let h = match args.kind {
                ConvKind::Dirichlet => arithfun::dirichlet_conv(&f, &g)?,
                _ => arithfun::unitary_conv(&f, &g)?,
            };
            let rows = (1..=h.bound()).zip(h.values()).collect::<Vec<_>>();
            Output::new(&h, render::table(&rows))
        }
        ConvKind::Binomial => {
            let f: BinomialArithFun = read_json(Path::new(&args.f))?;
            let g: BinomialArithFun = read_json(Path::new(&args.g))?;
            let b = load_type(&args.binomial_type, f.bound())?;
            let h = bintype::m_convolution(&b, &f, &g)?;
            let rows = (0u64..).zip(h.values()).collect::<Vec<_>>();
            Output::new(&h, render::table(&rows))
        }
    }
}

fn cmd_generate(args: &GenerateArgs) -> anyhow::Result<Output> {
    let variant: Variant = args.variant.parse()?;
    let a1: Rational = args.a1.parse()?;
    let b = load_type(&args.binomial_type, args.order)?;
    let series = characterize::closed_form_series(&b, variant, &a1, args.order)?;
    let rows = (0u64..).zip(series.coeffs()).collect::<Vec<_>>();
    Output::new(&series, render::table(&rows))
}

fn cmd_oracle(args: &OracleArgs) -> anyhow::Result<Output> {
    let query = match args.kind {
        OracleKind::Chains => OracleQuery::Chains { n: args.n },
        OracleKind::Flags => OracleQuery::Flags {
            n: args.n,
            q: args.q,
        },
        OracleKind::Subspaces => OracleQuery::Subspaces {
            n: args.n,
            k: args.k,
            q: args.q,
        },
        OracleKind::Galois => OracleQuery::Galois {
            n: args.n,
            q: args.q,
        },
    };
    let result = oracle::run_oracle(query)?;
    let mut out = Output::new(&result, render::oracle(&result))?;
    if !result.agrees {
        out.exit = 2;
    }
    Ok(out)
}

#[derive(Serialize)]
struct ClassifyOutput {
    kind: String,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<(u64, u64)>,
    vacuous: bool,
}

fn cmd_classify(args: &ClassifyArgs) -> anyhow::Result<Output> {
    let verdict = if let Ok(kind) = args.kind.parse::<BinomialKind>() {
        let f: BinomialArithFun = read_json(Path::new(&args.f))?;
        bintype::binomial_classify(&f, kind)
    } else {
        let kind: ArithKind = args.kind.parse()?;
        arithfun::classify(&load_function(&args.f, args.bound)?, kind)
    };
    let result = ClassifyOutput {
        kind: args.kind.clone(),
        holds: verdict.holds,
        witness: verdict.witness,
        vacuous: verdict.vacuous,
    };
    let text = match verdict.witness {
        None if verdict.vacuous => format!("{}: holds (vacuously, f = 0)\n", args.kind),
        None => format!("{}: holds\n", args.kind),
        Some((m, n)) => format!("{}: fails at (m, n) = ({m}, {n})\n", args.kind),
    };
    Output::new(&result, text)
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let (output, opts, default_format) = match &cli.command {
        Command::Suite(a) => (cmd_suite(a)?, &a.output, Format::Text),
        Command::Check { condition, suite } => {
            (cmd_check(*condition, suite)?, &suite.output, Format::Text)
        }
        Command::Conv(a) => (cmd_conv(a)?, &a.output, Format::Json),
        Command::Generate(a) => (cmd_generate(a)?, &a.output, Format::Json),
        Command::Oracle(a) => (cmd_oracle(a)?, &a.output, Format::Text),
        Command::Classify(a) => (cmd_classify(a)?, &a.output, Format::Text),
    };
    let body = match opts.format.unwrap_or(default_format) {
        Format::Json => serde_json::to_string_pretty(&output.json)? + "\n",
        Format::Text => output.text,
    };
    match &opts.out {
        Some(path) => {
            fs::write(path, body).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{body}"),
    }
    Ok(output.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
