use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fdsc_core::{ExportFormat, Mode, Variant};
use serde_json::{json, Value};

mod commands;

/// Divide-and-swap cube tools: graph generation, star fault families, an
/// exact structure-connectivity oracle and structural checks.
#[derive(Parser, Debug)]
#[command(name = "fdsc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the graph as an edge list or DOT.
    Gen(GenArgs),
    /// Build an explicit fault family around a vertex.
    Cut(CutArgs),
    /// Exact structure / substructure connectivity by exhaustive search.
    Oracle(OracleArgs),
    /// Run the structural property suite.
    Lemmas(LemmasArgs),
    /// Validate and apply a fault family read from JSON.
    Verify(VerifyArgs),
    /// Removal sweeps: mixed vertex/edge removal and super connectivity.
    Probe(ProbeArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Dimension exponent; the labels have n = 2^d bits.
    #[arg(long)]
    d: u32,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Fdsc,
    Dsc,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Fdsc => Variant::Fdsc,
            VariantArg::Dsc => Variant::Dsc,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Edges,
    Dot,
}

impl From<FormatArg> for ExportFormat {
    fn from(f: FormatArg) -> ExportFormat {
        match f {
            FormatArg::Edges => ExportFormat::Edges,
            FormatArg::Dot => ExportFormat::Dot,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Structure,
    Substructure,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Structure => Mode::Structure,
            ModeArg::Substructure => Mode::Substructure,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Pattern {
    K1,
    K11,
    K1m,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProbeCheck {
    A1a2,
    Super,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = VariantArg::Fdsc)]
    variant: VariantArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Edges)]
    format: FormatArg,
}

#[derive(Args, Debug)]
struct CutArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    pattern: Pattern,
    /// Star size for `k1m`.
    #[arg(long)]
    m: Option<u32>,
    /// Module address B1 for `k1m` (n/2 bits; default all zeros).
    #[arg(long)]
    module: Option<String>,
    /// Target vertex (default all zeros; for `k1m` it must be complement(B1)·B1).
    #[arg(long)]
    u: Option<String>,
    /// Also build the graph and apply the family.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    m: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Structure)]
    mode: ModeArg,
    /// Largest family size searched.
    #[arg(long)]
    budget: usize,
    /// Recorded in the report; the search itself is deterministic.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    /// Refuse searches that would visit more subsets than this.
    #[arg(long, default_value_t = 2_000_000_000)]
    max_subsets: u64,
    /// Disable the vertex-connectivity pruning floor.
    #[arg(long)]
    no_pruning: bool,
    #[arg(long, value_enum, default_value_t = VariantArg::Fdsc)]
    variant: VariantArg,
}

#[derive(Args, Debug)]
struct LemmasArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Family JSON: {"mode", "m", "elements": [{"center", "leaves"}]}.
    #[arg(long)]
    family: PathBuf,
}

#[derive(Args, Debug)]
struct ProbeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    check: ProbeCheck,
    /// Sample this many removals instead of enumerating all of them.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
}

/// Error carrying the process exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: 2,
            error: error.into(),
        }
    }
}

impl From<fdsc_core::Error> for Failure {
    fn from(e: fdsc_core::Error) -> Self {
        let code = match e {
            fdsc_core::Error::ResourceCap(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            error: e.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e)
    }
}

/// Report plus the exit status it implies (0 pass, 1 violation).
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

fn envelope(command: &str, config: Value, mut report: Value) -> Value {
    if let Value::Object(map) = &mut report {
        map.insert("command".into(), json!(command));
        map.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        map.insert("config".into(), config);
    }
    report
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", text.trim_end()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let (name, out, result) = match cli.command {
        Command::Gen(args) => {
            let text = commands::gen(args.common.d, args.variant.into(), args.format.into())?;
            write_output(args.common.out.as_ref(), &text)?;
            return Ok(0);
        }
        Command::Cut(args) => ("cut", args.common.out.clone(), commands::cut(&args)?),
        Command::Oracle(args) => ("oracle", args.common.out.clone(), commands::oracle(&args)?),
        Command::Lemmas(args) => (
            "lemmas",
            args.common.out.clone(),
            commands::lemmas(args.common.d)?,
        ),
        Command::Verify(args) => ("verify", args.common.out.clone(), commands::verify(&args)?),
        Command::Probe(args) => ("probe", args.common.out.clone(), commands::probe(&args)?),
    };
    let (config, report) = result;
    let report = envelope(name, config, report.report_with_status());
    let text = serde_json::to_string_pretty(&report).expect("json encoding");
    write_output(out.as_ref(), &text)?;
    Ok(if report["passed"].as_bool() == Some(true) {
        0
    } else {
        1
    })
}

impl Outcome {
    fn report_with_status(self) -> Value {
        let mut report = self.report;
        if let Value::Object(map) = &mut report {
            map.insert("passed".into(), json!(self.passed));
        }
        report
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
