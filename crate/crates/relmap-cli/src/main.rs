//! Batch scenario runner: parses one TOML configuration per run, executes
//! the requested checks deterministically from the seed and emits CSV or
//! JSON result tables.
//!
//! Exit status: 0 when every check passes its tolerance, 1 on check
//! failures, 2 on configuration errors, 3 on I/O errors.

mod config;
mod report;
mod scenarios;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{ConfigError, ScenarioConfig};
use relmap::constraints::CaseTag;
use report::{emit_report, ReportFormat};
use scenarios::ScenarioOutcome;

#[derive(Parser)]
#[command(
    name = "relmap",
    about = "Poincaré-invariant dynamical map verifier",
    version
)]
struct Cli {
    /// Path to the scenario configuration (TOML).
    #[arg(long, global = true, default_value = "relmap.toml")]
    config: PathBuf,
    /// Overrides the seed from the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory; also settable via RELMAP_OUT.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
#[allow(clippy::upper_case_acronyms)] // Roman numerals of the case table
enum CaseArg {
    I,
    II,
    III,
    IV,
}

impl From<CaseArg> for CaseTag {
    fn from(value: CaseArg) -> Self {
        match value {
            CaseArg::I => CaseTag::I,
            CaseArg::II => CaseTag::II,
            CaseArg::III => CaseTag::III,
            CaseArg::IV => CaseTag::IV,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Two-path Poincaré covariance check of the channel.
    VerifyCovariance,
    /// Little-group constraint solver and case classification.
    SolveKraus {
        #[arg(long, value_enum)]
        case: CaseArg,
    },
    /// Characteristic-function samples and moment cross-checks.
    CharFn,
    /// Four-momentum and Lorentz conservation identities.
    Conservation,
    /// Structure constants, Jacobi identity and foliation bracket families.
    CheckAlgebra,
    /// Kraus completeness and Choi-matrix positivity of the channel.
    Choi,
    /// Kraus extraction from total unitaries with an environment.
    DilationDemo,
}

impl Command {
    fn scenario_name(&self) -> &'static str {
        match self {
            Command::VerifyCovariance => "verify-covariance",
            Command::SolveKraus { .. } => "solve-kraus",
            Command::CharFn => "char-fn",
            Command::Conservation => "conservation",
            Command::CheckAlgebra => "check-algebra",
            Command::Choi => "choi",
            Command::DilationDemo => "dilation-demo",
        }
    }
}

fn run(cli: &Cli) -> Result<(ScenarioOutcome, String), ConfigError> {
    let mut cfg = ScenarioConfig::load(&cli.config)?;
    let name = cli.command.scenario_name();
    cfg.check_scenario(name)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    let stem = cfg
        .output
        .as_ref()
        .and_then(|o| o.stem.clone())
        .unwrap_or_else(|| name.to_string());

    let outcome = match &cli.command {
        Command::VerifyCovariance => scenarios::verify_covariance(&cfg),
        Command::SolveKraus { case } => scenarios::solve_kraus(&cfg, (*case).into()),
        Command::CharFn => scenarios::char_fn(&cfg),
        Command::Conservation => scenarios::conservation(&cfg),
        Command::CheckAlgebra => scenarios::check_algebra(&cfg),
        Command::Choi => scenarios::choi_scenario(&cfg),
        Command::DilationDemo => scenarios::dilation_demo(&cfg),
    };
    // scenario construction reuses the config validators, so surface those
    // failures under the config exit code
    let outcome = outcome.map_err(|e| ConfigError::Value(e.to_string()))?;
    Ok((outcome, stem))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, stem) = match run(&cli) {
        Ok(v) => v,
        Err(ConfigError::Io(e)) => {
            eprintln!("relmap: i/o error: {e}");
            return ExitCode::from(3);
        }
        Err(e) => {
            eprintln!("relmap: configuration error: {e}");
            return ExitCode::from(2);
        }
    };

    let out_dir = cli
        .out
        .clone()
        .or_else(|| std::env::var_os("RELMAP_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    let format = match cli.format {
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Json => ReportFormat::Json,
    };

    let report_path = match emit_report(&outcome.table, &out_dir, &stem, format) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("relmap: i/o error: {e}");
            return ExitCode::from(3);
        }
    };
    for (name, body) in &outcome.artifacts {
        let path = out_dir.join(format!("{stem}-{name}.json"));
        if let Err(e) = std::fs::write(&path, body) {
            eprintln!("relmap: i/o error: {e}");
            return ExitCode::from(3);
        }
    }

    println!("{}", outcome.summary);
    println!("report: {}", report_path.display());
    if outcome.pass {
        println!("status: PASS");
        ExitCode::SUCCESS
    } else {
        println!("status: FAIL");
        ExitCode::from(1)
    }
}
