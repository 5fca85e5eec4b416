use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use redoff::bench::cmd_bench;
use redoff::commands::{cmd_minimize, cmd_primes, cmd_verify, MinimizeOptions, PrimesOptions};
use redoff::CliResult;
use redoff_core::function::DEFAULT_MAX_EXPAND;

#[derive(Parser)]
#[command(
    name = "redoff",
    version,
    about = "Two-level logic minimizer built on difference indicators"
)]
struct Cli {
    /// Input count above which the OFF-set is not derived from ON and DC.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_EXPAND)]
    max_expand: usize,
    /// Reserved; every command is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize a PLA or minterm-list file and print the cover as PLA.
    Minimize {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Minimize all outputs together with shared, tagged cubes.
        #[arg(long)]
        multi: bool,
        /// Drop cubes made redundant by later ones.
        #[arg(long)]
        irredundant: bool,
    },
    /// List every prime implicant containing one minterm.
    Primes {
        input: PathBuf,
        #[arg(long)]
        minterm: String,
        /// Output to use, counted from the rightmost column.
        #[arg(long, default_value_t = 0)]
        output: usize,
        /// Print the indicator set and product construction first.
        #[arg(long)]
        trace: bool,
    },
    /// Check a cover against a function.
    Verify { input: PathBuf, cover: PathBuf },
    /// Minimize every .pla file in a directory and emit CSV.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        multi: bool,
    },
}

fn run(cli: Cli) -> CliResult<i32> {
    let (mut out, mut err) = (io::stdout().lock(), io::stderr());
    if let Some(seed) = cli.seed {
        log::debug!("--seed {seed} ignored");
    }
    match cli.command {
        Command::Minimize {
            input,
            out: out_path,
            multi,
            irredundant,
        } => {
            let opts = MinimizeOptions {
                multi,
                max_expand: cli.max_expand,
                irredundant,
            };
            cmd_minimize(&input, out_path.as_deref(), &opts, &mut out, &mut err)
        }
        Command::Primes {
            input,
            minterm,
            output,
            trace,
        } => {
            let opts = PrimesOptions {
                minterm: &minterm,
                output,
                trace,
                max_expand: cli.max_expand,
            };
            cmd_primes(&input, &opts, &mut out, &mut err)
        }
        Command::Verify { input, cover } => cmd_verify(&input, &cover, cli.max_expand, &mut out),
        Command::Bench {
            dir,
            csv,
            jobs,
            multi,
        } => {
            let opts = MinimizeOptions {
                multi,
                max_expand: cli.max_expand,
                ..MinimizeOptions::default()
            };
            cmd_bench(&dir, csv.as_deref(), jobs, &opts, &mut out, &mut err)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("redoff: {e}");
            e.code
        }
    };
    ExitCode::from(code as u8)
}
