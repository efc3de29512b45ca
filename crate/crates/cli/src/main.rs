use clap::{Parser, Subcommand, ValueEnum};
use nilcascade_cli as cli;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nilcascade",
    version,
    about = "Cascade decompositions of nilradicals of minimal parabolics: exact reports, machine verification, and Heisenberg quadrature checks"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Print the cascade, layers, dimension counts, and operator symbol of a form
    Cascade {
        /// Form name (catalog entry, split-<LABEL>, or a path to an .rrform file)
        #[arg(long, conflicts_with_all = ["type", "rank"])]
        form: Option<String>,
        /// Restricted type letter (A, B, C, D) or full label (G2, F4, E6..E8); taken as split
        #[arg(long = "type")]
        r#type: Option<String>,
        /// Rank, required when --type is a bare letter
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Run the named machine checks on a form
    Verify {
        #[arg(long, conflicts_with_all = ["type", "rank"])]
        form: Option<String>,
        #[arg(long = "type")]
        r#type: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        /// "all" or a comma-separated list of check names
        #[arg(long, default_value = "all")]
        checks: String,
        /// Seed for the randomized trials inside the checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Floating-point identities on the Heisenberg groups
    Numeric {
        /// Heisenberg dimension (1 or 2)
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// orthogonality | character | inversion | all
        #[arg(long, default_value = "all")]
        test: String,
        /// Central parameter for the character comparison and the
        /// orthogonality battery; must be nonzero
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// List the built-in form catalog
    Forms {
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
}

/// `--form NAME` wins; otherwise `--type`/`--rank` name a split form.
fn resolve_form(
    form: Option<String>,
    r#type: Option<String>,
    rank: Option<usize>,
) -> Result<String, String> {
    if let Some(name) = form {
        return Ok(name);
    }
    let Some(t) = r#type else {
        return Err("pass --form NAME or --type TYPE [--rank N]".to_string());
    };
    let label = if t.chars().any(|c| c.is_ascii_digit()) {
        if rank.is_some() {
            return Err(format!("--type {} already carries its rank", t));
        }
        t
    } else {
        let Some(n) = rank else {
            return Err(format!("--type {} needs --rank N", t));
        };
        format!("{}{}", t, n)
    };
    Ok(format!("split-{}", label))
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match args.command {
        Command::Cascade { form, r#type, rank, format } => {
            let name = match resolve_form(form, r#type, rank) {
                Ok(n) => n,
                Err(e) => return usage_error(&e),
            };
            match cli::build_cascade_report(&name) {
                Ok(report) => {
                    match format {
                        OutputFormat::Json => print!("{}", cli::to_json(&report)),
                        OutputFormat::Md => print!("{}", cli::markdown_cascade(&report)),
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Verify { form, r#type, rank, checks, seed, format } => {
            let name = match resolve_form(form, r#type, rank) {
                Ok(n) => n,
                Err(e) => return usage_error(&e),
            };
            match cli::build_verify_report(&name, &checks, seed) {
                Ok(report) => {
                    match format {
                        OutputFormat::Json => print!("{}", cli::to_json(&report)),
                        OutputFormat::Md => print!("{}", cli::markdown_verify(&report)),
                    }
                    ExitCode::from(cli::exit_for(report.all_passed))
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Numeric { d, test, lambda, format } => {
            match cli::build_numeric_report(d, &test, lambda) {
                Ok(report) => {
                    match format {
                        OutputFormat::Json => print!("{}", cli::to_json(&report)),
                        OutputFormat::Md => print!("{}", cli::markdown_numeric(&report)),
                    }
                    ExitCode::from(cli::exit_for(report.all_passed))
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Forms { format } => match cli::build_forms_report() {
            Ok(report) => {
                match format {
                    OutputFormat::Json => print!("{}", cli::to_json(&report)),
                    OutputFormat::Md => print!("{}", cli::markdown_forms(&report)),
                }
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(&e.to_string()),
        },
    }
}
