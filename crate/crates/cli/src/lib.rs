//! Command-line front end for the `matroid-secretary` library.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration or
//! instance, 3 counterexample found, 4 runtime assertion failure.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use config::{Cli, Command, Flags, RunConfig};
pub use error::{CliError, CliResult};

/// Resolves the configuration and runs the subcommand on a pool of
/// `--jobs` threads.
pub fn run(cli: Cli) -> CliResult<()> {
    let env_seed = std::env::var(config::SEED_ENV).ok();
    let cfg = config::resolve(cli.command.name(), cli.command.flags(), env_seed.as_deref())?;
    eprintln!("config: {}", cfg.to_json());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::Verify(_) => commands::verify(&cfg).map(drop),
        Command::Simulate(_) => commands::simulate(&cfg).map(drop),
        Command::Lemmas(_) => commands::lemmas(&cfg).map(drop),
        Command::Cover(_) => commands::cover(&cfg).map(drop),
        Command::Bench(_) => commands::bench(&cfg).map(drop),
    })
}
