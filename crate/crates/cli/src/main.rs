use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Output};

#[derive(Parser, Debug)]
#[command(
    name = "x0chow",
    version,
    about = "Eisenstein part of the arithmetic Chow group of X0(N)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Significant decimal digits requested for numeric values.
    #[arg(long, global = true, default_value_t = 10)]
    precision: u32,

    /// Absolute tolerance for numerical checks.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Convention {
    /// <DINF, G(p)> = LOG(p)
    Fiber,
    /// <DINF, G(p)> = 0
    Orthogonal,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Index, elliptic points, cusps and genus of Gamma0(N).
    Invariants { n: u64 },
    /// Intersection matrix on [F, DINF, G(p)...].
    Gram {
        n: u64,
        #[arg(long, value_enum, default_value_t = Convention::Fiber)]
        convention: Convention,
    },
    /// Self-intersection of the Eisenstein canonical class.
    OmegaEis { n: u64 },
    /// Hecke operator T_l or Atkin-Lehner involution w_d.
    Hecke {
        n: u64,
        #[arg(long, conflicts_with = "d", required_unless_present = "d")]
        l: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
    },
    /// Heegner points of discriminant -3 or -4, or the canonical divisor.
    Heegner {
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        disc: Option<i64>,
    },
    /// Heights of the Heegner components for ingested eigenforms.
    OmegaF {
        #[arg(long)]
        eigenform: PathBuf,
        /// Only the record with this label.
        #[arg(long)]
        label: Option<String>,
        #[arg(long, default_value_t = x0chow::lseries::DEFAULT_QUAD_ORDER)]
        quad_order: usize,
    },
    /// Certified numerical checks on the unit disc.
    VerifyAnalysis {
        #[arg(long, default_value_t = x0chow::disc::DEFAULT_RADIAL)]
        radial: usize,
        #[arg(long, default_value_t = x0chow::disc::DEFAULT_ANGULAR)]
        angular: usize,
    },
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let precision = cli.precision;
    match &cli.command {
        Command::Invariants { n } => commands::invariants(*n),
        Command::Gram { n, convention } => commands::gram(
            *n,
            match convention {
                Convention::Fiber => x0chow::eis::GramConvention::FiberDerived,
                Convention::Orthogonal => x0chow::eis::GramConvention::Orthogonal,
            },
        ),
        Command::OmegaEis { n } => commands::omega_eis(*n, precision),
        Command::Hecke { n, l, d } => match (l, d) {
            (Some(l), _) => commands::hecke_t(*n, *l),
            (None, Some(d)) => commands::hecke_w(*n, *d),
            (None, None) => unreachable!("clap enforces --l or --d"),
        },
        Command::Heegner { n, disc } => commands::heegner(*n, *disc),
        Command::OmegaF {
            eigenform,
            label,
            quad_order,
        } => commands::omega_f(
            eigenform,
            label.as_deref(),
            *quad_order,
            precision,
            cli.tolerance,
        ),
        Command::VerifyAnalysis { radial, angular } => {
            commands::verify_analysis(*radial, *angular, cli.tolerance.unwrap_or(1e-6))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", out.json),
                Format::Table => print!("{}", out.table),
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(1)
        }
    }
}
