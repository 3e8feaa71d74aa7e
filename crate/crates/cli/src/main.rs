use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tangent_finsler_cli::{
    load_file, load_text, presets, render_text, run_analysis, AnalysisOptions, CliError, Instance, ToleranceOverrides,
};

/// Validation, classification and flag curvature of lifted (α,β)-metrics
/// on tangent Lie groups.
#[derive(Parser)]
#[command(name = "tangent-finsler", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an instance.
    Validate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        tol: TolFlags,
    },
    /// Classify F, F^c, F^v and evaluate flag curvatures.
    Analyze {
        #[command(flatten)]
        source: Source,
        /// Random planes per case tag (replaces planes listed in the file).
        #[arg(long)]
        planes: Option<usize>,
        /// Seed for plane sampling (default: the file's `seed`, else 0).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        tol: TolFlags,
    },
    /// Shipped instances.
    Presets {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Subcommand)]
enum PresetAction {
    /// Names and one-line descriptions.
    List,
    /// Print the instance file of a preset.
    Show { name: String },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Instance file (JSON).
    file: Option<PathBuf>,
    /// Use a shipped preset instead of a file.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Args)]
struct TolFlags {
    #[arg(long, env = "TANGENT_FINSLER_TOL_ALG", value_parser = positive)]
    tol_alg: Option<f64>,
    #[arg(long, env = "TANGENT_FINSLER_TOL_PD", value_parser = positive)]
    tol_pd: Option<f64>,
    #[arg(long, env = "TANGENT_FINSLER_TOL_RANK", value_parser = positive)]
    tol_rank: Option<f64>,
    #[arg(long, env = "TANGENT_FINSLER_TOL_PLANE", value_parser = positive)]
    tol_plane: Option<f64>,
    /// Threshold for the Berwald and Douglas criteria.
    #[arg(long, env = "TANGENT_FINSLER_TOL_CLASS", value_parser = positive)]
    tol_class: Option<f64>,
}

impl TolFlags {
    fn overrides(&self) -> ToleranceOverrides {
        ToleranceOverrides {
            alg: self.tol_alg,
            pd: self.tol_pd,
            rank: self.tol_rank,
            plane: self.tol_plane,
            class: self.tol_class,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(v) => Err(format!("must be a positive number, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

fn load(source: &Source, tol: &TolFlags) -> Result<Instance, CliError> {
    match (&source.file, &source.preset) {
        (_, Some(name)) => load_text(presets::source(name)?, &tol.overrides()),
        (Some(path), None) => load_file(path, &tol.overrides()),
        (None, None) => unreachable!("clap requires one source"),
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Validate { source, tol } => {
            let inst = load(&source, &tol)?;
            let s = &inst.summary;
            let _ = writeln!(
                out,
                "ok: {} (dim {}, phi {}, |X| = {}, validity minimum {})",
                inst.file.name,
                inst.file.dim,
                inst.structure.phi().kind().as_str(),
                s.drift_norm,
                s.validity_min
            );
            Ok(0)
        }
        Command::Analyze {
            source,
            planes,
            seed,
            format,
            tol,
        } => {
            let inst = load(&source, &tol)?;
            let report = run_analysis(&inst, &AnalysisOptions { planes, seed });
            let text = match format {
                Format::Text => render_text(&report),
                Format::Json => report.to_json(),
            };
            let _ = out.write_all(text.as_bytes());
            for i in &report.inconsistencies {
                eprintln!("internal inconsistency: {i}");
            }
            Ok(report.exit_code())
        }
        Command::Presets { action } => {
            match action {
                PresetAction::List => {
                    for name in presets::names() {
                        let description = presets::load(name)?.description.unwrap_or_default();
                        let _ = writeln!(out, "{name:<24}{description}");
                    }
                }
                PresetAction::Show { name } => {
                    let _ = out.write_all(presets::source(&name)?.as_bytes());
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
