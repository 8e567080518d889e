use std::io::Write;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};
use hinge_cli::selfcheck::{self, Status};
use hinge_cli::{
    cmd_canonical, cmd_count, cmd_equivalent, cmd_invariants, cmd_standard, parse_csv, parse_rows,
    resolve_budget, CliError, ExitCode, Format, Output, ProblemFile, BUDGET_ENV,
};

#[derive(Parser)]
#[command(
    name = "hinge",
    version,
    about = "Invariants of double cosets T_-(beta) \\ GL(n, p) / T_+(alpha)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the bi-hinge, dimension matrix and canonical representative.
    Invariants {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Decide whether two problems lie in the same double coset (exit 0 / 1).
    Equivalent {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Print the 0-1 representative of the parabolic double coset.
    Canonical {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Print the standard matrix and bi-hinge of a dimension table.
    Standard {
        /// Rows separated by ';', entries by ',', e.g. "1,0;0,1".
        #[arg(long)]
        dims: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(short = 'q')]
        modulus: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Count the double cosets; with --brute, also by exhaustive search.
    Count {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(short = 'q')]
        modulus: u64,
        #[arg(long)]
        brute: bool,
        /// Enumeration limit; overrides HINGE_BUDGET.
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Run the built-in property suites.
    Selfcheck {
        /// Comma-separated moduli.
        #[arg(short = 'q', default_value = "2,3")]
        moduli: String,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long)]
        budget: Option<u128>,
        /// Random samples per randomized check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn budget(flag: Option<u128>) -> Result<hinge_core::oracle::EnumerationBudget, CliError> {
    resolve_budget(flag, std::env::var(BUDGET_ENV).ok().as_deref())
}

fn selfcheck(
    moduli: &str,
    max_n: usize,
    budget_flag: Option<u128>,
    samples: usize,
    seed: Option<u64>,
) -> Result<Output, CliError> {
    let defaults = selfcheck::Config::default();
    let config = selfcheck::Config {
        moduli: parse_csv("q", moduli)?
            .into_iter()
            .map(|q| q as u64)
            .collect(),
        max_n,
        budget: budget(budget_flag)?,
        samples,
        seed: seed.unwrap_or(defaults.seed),
    };
    let mut failed = false;
    selfcheck::run(&config, |line| {
        failed |= line.status == Status::Fail;
        println!("{line}");
        let _ = std::io::stdout().flush();
    })
    .map_err(|e| CliError::new(ExitCode::Parse, format!("q: {e}")))?;
    Ok(Output {
        stdout: String::new(),
        code: if failed {
            ExitCode::Negative
        } else {
            ExitCode::Success
        },
    })
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Invariants { file, format } => {
            cmd_invariants(&ProblemFile::load(&file)?, format.into())
        }
        Command::Equivalent { a, b, format } => cmd_equivalent(
            &ProblemFile::load(&a)?,
            &ProblemFile::load(&b)?,
            format.into(),
        ),
        Command::Canonical { file, format } => {
            cmd_canonical(&ProblemFile::load(&file)?, format.into())
        }
        Command::Standard {
            dims,
            alpha,
            beta,
            modulus,
            format,
        } => cmd_standard(
            &parse_rows("dims", &dims)?,
            &parse_csv("alpha", &alpha)?,
            &parse_csv("beta", &beta)?,
            modulus,
            format.into(),
        ),
        Command::Count {
            alpha,
            beta,
            modulus,
            brute,
            budget: flag,
            format,
        } => cmd_count(
            &parse_csv("alpha", &alpha)?,
            &parse_csv("beta", &beta)?,
            modulus,
            brute,
            &budget(flag)?,
            format.into(),
        ),
        Command::Selfcheck {
            moduli,
            max_n,
            budget,
            samples,
            seed,
        } => selfcheck(&moduli, max_n, budget, samples, seed),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            process::exit(if e.use_stderr() {
                ExitCode::Parse as i32
            } else {
                0
            });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            process::exit(out.code as i32);
        }
        Err(e) => {
            eprintln!("error: {e}");
            process::exit(e.code as i32);
        }
    }
}
