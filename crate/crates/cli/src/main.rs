use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stringy_cli::{cmd_check, cmd_compare, cmd_compute, cmd_defect, Format, EXIT_INPUT};

/// Stringy E-functions and stringy Hodge numbers from resolution data.
#[derive(Parser)]
#[command(name = "stringy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// E_st, its expansion and the identity checks.
    Compute {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Expand up to total degree p + q <= N (default 2 dim).
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Nonnegativity verdicts; exit status 1 on a negative value.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Local defect per singular point, from the `fibers` block.
    Defect {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exact comparison of two stringy E-functions.
    Compare {
        left: PathBuf,
        right: PathBuf,
        /// How far to search for the first differing coefficient (default 4 dim).
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Compute {
            files,
            max_degree,
            format,
        } => cmd_compute(&files, max_degree, format),
        Command::Check {
            files,
            max_degree,
            format,
        } => cmd_check(&files, max_degree, format),
        Command::Defect { files, format } => cmd_defect(&files, format),
        Command::Compare {
            left,
            right,
            max_degree,
            format,
        } => cmd_compare(&left, &right, max_degree, format),
    };
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
