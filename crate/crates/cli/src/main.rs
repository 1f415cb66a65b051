use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use h1loc_cli::{Format, Options};

#[derive(Parser)]
#[command(
    name = "h1loc",
    version,
    about = "First (local) cohomology of finite matrix groups over Z/p^nZ"
)]
struct Cli {
    /// Largest group order any enumeration may reach.
    #[arg(long, global = true, default_value_t = 4096)]
    cap: usize,
    /// Worker threads for the per-element verification checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the norm-torus cocycle mod p^2 for the prime p.
    VerifyCounterexample {
        #[arg(short = 'p')]
        p: i64,
    },
    /// H^1 of a group file's group acting on (Z/p^nZ)^r.
    H1 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        basis: bool,
    },
    /// H^1_loc of a group file's group.
    H1loc {
        #[arg(long)]
        input: PathBuf,
        /// Also print the basis cocycle tables in element order.
        #[arg(long)]
        basis: bool,
    },
    /// p-Sylow subgroup and the reductions mod p^j.
    Sylow {
        #[arg(long)]
        input: PathBuf,
    },
    /// Whether reduction mod p is injective on a finite integer matrix group.
    CheckInjectivity {
        #[arg(long)]
        input: PathBuf,
        #[arg(short = 'p')]
        p: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        cap: cli.cap,
        jobs: cli.jobs.max(1),
        format: match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        },
    };
    let outcome = match &cli.command {
        Command::VerifyCounterexample { p } => h1loc_cli::verify_counterexample(*p, &opts),
        Command::H1 { input, basis } => h1loc_cli::h1(input, &opts, *basis),
        Command::H1loc { input, basis } => h1loc_cli::h1loc(input, &opts, *basis),
        Command::Sylow { input } => h1loc_cli::sylow(input, &opts),
        Command::CheckInjectivity { input, p } => h1loc_cli::check_injectivity(input, *p, &opts),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
