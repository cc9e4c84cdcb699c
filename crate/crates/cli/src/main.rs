use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fdca_cli::config::{parse_zone_list, ConfigOverrides, ExperimentConfig, ReportFormat};
use fdca_cli::describe::{build_described, description_text, parse_description};
use fdca_cli::error::{CliError, Result};
use fdca_cli::experiment::{run_experiment, summarize};
use fdca_cli::formats::pattern_text;
use fdca_cli::parallel::verify_recognition_parallel;
use fdca_cli::report::{emit_report, write_atomic};
use fdca_core::grid::DEFAULT_ENUMERATION_CAP;
use fdca_core::patterns::{build_recognizer_pair, hamming_ball, is_unique_instance, AngularPattern};

#[derive(Parser)]
#[command(
    name = "fdca",
    version,
    about = "Layered-automaton recognition experiments over bounded binary grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the ladder experiment and write a CSV/JSON report.
    Run(RunArgs),
    /// Emit the default corner pattern in grid text format.
    Pattern(PatternArgs),
    /// Parse an automaton description, validate it, and re-emit it canonically.
    Describe(DescribeArgs),
    /// Exhaustively check that an automaton recognizes its intended class.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated zone sides, e.g. 4,5,6
    #[arg(long)]
    zones: Option<String>,
    /// Pattern side (odd, >= 3)
    #[arg(long)]
    pattern_side: Option<u32>,
    /// Complexity measure: dnf_terms, dnf_literals, or min_dnf_cnf
    #[arg(long)]
    measure: Option<String>,
    /// Enumeration cap on zone cells (side^2)
    #[arg(long)]
    cap: Option<u32>,
    /// Monte Carlo samples for zones past the cap
    #[arg(long)]
    mc_samples: Option<u64>,
    /// Monte Carlo seed
    #[arg(long)]
    seed: Option<u64>,
    /// Boundary fill state (0 or 1)
    #[arg(long)]
    fill: Option<u8>,
    /// Report path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format: csv or json
    #[arg(long)]
    format: Option<String>,
    /// Flat key=value config file (flags override it)
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct PatternArgs {
    /// Pattern side (odd, >= 3)
    #[arg(long)]
    side: u32,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DescribeArgs {
    /// Automaton description file (TOML)
    #[arg(long)]
    file: PathBuf,
    /// Output path for the canonical form (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Automaton description file; its class is derived from the
    /// description itself
    #[arg(long, conflicts_with_all = ["zone", "pattern_side"])]
    file: Option<PathBuf>,
    /// Zone side for a freshly built recognizer pair
    #[arg(long, requires = "pattern_side")]
    zone: Option<u32>,
    /// Pattern side for the built pair
    #[arg(long, requires = "zone")]
    pattern_side: Option<u32>,
    /// Enumeration cap on zone cells
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u32,
}

fn overrides_from_flags(args: &RunArgs) -> Result<ConfigOverrides> {
    Ok(ConfigOverrides {
        zone_sides: args.zones.as_deref().map(parse_zone_list).transpose()?,
        pattern_side: args.pattern_side,
        measure: args.measure.clone(),
        enumeration_cap: args.cap,
        mc_samples: args.mc_samples,
        mc_seed: args.seed,
        boundary_fill: args
            .fill
            .map(|v| match v {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(CliError::config(format!("--fill must be 0 or 1, got {other}"))),
            })
            .transpose()?,
        output_path: args.out.clone(),
        format: args.format.as_deref().map(ReportFormat::parse).transpose()?,
    })
}

fn cmd_run(args: RunArgs) -> Result<ExitCode> {
    let mut config = ExperimentConfig::default();
    if let Some(path) = &args.config {
        config.apply(&fdca_cli::config::load_config_file(path)?);
    }
    config.apply(&overrides_from_flags(&args)?);
    config.validate()?;

    let report = run_experiment(&config)?;
    let text = emit_report(&report, config.format)?;
    write_atomic(&config.output_path, &text)?;

    print!("{}", summarize(&report));
    println!("report written to {} ({})", config.output_path.display(), config.format.as_str());
    Ok(ExitCode::SUCCESS)
}

fn cmd_pattern(args: PatternArgs) -> Result<ExitCode> {
    let pattern = AngularPattern::corner(args.side)?;
    let text = pattern_text(&pattern);
    match args.out {
        Some(path) => write_atomic(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_describe(args: DescribeArgs) -> Result<ExitCode> {
    let raw = std::fs::read_to_string(&args.file)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.file.display())))?;
    let desc = parse_description(&raw)?;
    let base = args.file.parent().unwrap_or_else(|| std::path::Path::new("."));
    build_described(&desc, base)?; // validate before re-emitting
    let text = description_text(&desc)?;
    match args.out {
        Some(path) => write_atomic(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    if let Some(path) = &args.file {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let desc = parse_description(&raw)?;
        let base = path.parent().unwrap_or_else(|| std::path::Path::new("."));
        let built = build_described(&desc, base)?;
        let class = built.class_predicate().ok_or_else(|| {
            CliError::config("description does not pin down a class to verify against")
        })?;
        let report = verify_recognition_parallel(&built.automaton, class, args.cap)?;
        return finish_verify("described automaton", &[report]);
    }

    let (zone, side) = match (args.zone, args.pattern_side) {
        (Some(zone), Some(side)) => (zone, side),
        _ => {
            return Err(CliError::config(
                "verify needs either --file or both --zone and --pattern-side",
            ))
        }
    };
    let pattern = AngularPattern::corner(side)?;
    let ball = hamming_ball(&pattern);
    let mask = fdca_core::automaton::SuppressionMask::new(zone, ball.radius())?;
    let (one_layer, two_layer) = build_recognizer_pair(zone, &pattern)?;
    let class =
        |c: &fdca_core::grid::Configuration| is_unique_instance(c, &ball, &mask).unwrap();
    let two = verify_recognition_parallel(&two_layer, class, args.cap)?;
    let one = verify_recognition_parallel(&one_layer, class, args.cap)?;
    finish_verify("recognizer pair", &[two, one])
}

fn finish_verify(
    what: &str,
    reports: &[fdca_core::automaton::RecognitionReport],
) -> Result<ExitCode> {
    let mut ok = true;
    for report in reports {
        if report.agrees {
            println!("{what}: agrees over {} configurations", report.checked);
        } else {
            ok = false;
            let packed = report
                .counterexample
                .as_ref()
                .and_then(|c| c.to_packed())
                .unwrap_or_default();
            println!("{what}: DISAGREES, first counterexample packed value {packed:#x}");
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Pattern(args) => cmd_pattern(args),
        Command::Describe(args) => cmd_describe(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
