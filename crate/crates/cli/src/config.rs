//! Flags, config files and their resolution into a [`RunConfig`].
//!
//! Precedence: command-line flag, then the `--config` file, then the
//! `MATSEC_SEED` environment variable (seed only), then the built-in default.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use matroid_secretary::harness::InstanceSpec;
use matroid_secretary::secretary::{Algorithm, Constants};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SEED_ENV: &str = "MATSEC_SEED";
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_SAMPLES: usize = 120;
pub const DEFAULT_FOLDS: [usize; 2] = [2, 3];

#[derive(Debug, Parser)]
#[command(name = "matsec", version, about = "Secretary algorithms under k-fold matroid unions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cross-check the oracles against brute force (built-in suite, or one spec with n <= 8).
    Verify(Flags),
    /// Run paired Monte Carlo trials over a grid of k.
    Simulate(Flags),
    /// Estimate (or enumerate exactly) the sample/threshold statistics over a (k, p, r) grid.
    Lemmas(Flags),
    /// Covering number of a set with its certificate and witnesses.
    Cover(Flags),
    /// Time each algorithm.
    Bench(Flags),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Verify(_) => "verify",
            Self::Simulate(_) => "simulate",
            Self::Lemmas(_) => "lemmas",
            Self::Cover(_) => "cover",
            Self::Bench(_) => "bench",
        }
    }

    pub fn flags(&self) -> &Flags {
        match self {
            Self::Verify(f) | Self::Simulate(f) | Self::Lemmas(f) | Self::Cover(f) | Self::Bench(f) => f,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// JSON config file; flags override its fields.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Instance spec: a JSON file, or inline JSON starting with `{`.
    #[arg(long)]
    pub spec: Option<String>,
    /// Comma-separated algorithms: phased, dynkin, threshold, greedy, accept-all.
    #[arg(long, value_delimiter = ',')]
    pub algos: Vec<String>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Master seed [env: MATSEC_SEED] [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated folds k (folds to check for `verify`).
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    /// `proof` or `experimental:<C>`.
    #[arg(long)]
    pub constants: Option<String>,
    /// Use the number of parallel classes instead of n inside ε.
    #[arg(long)]
    pub nsim_mode: bool,
    /// Check per-phase covering bounds and write the phase trace of trial 0.
    #[arg(long)]
    pub trace: bool,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = all cores); results do not depend on it.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Sampling fraction of the threshold rule.
    #[arg(long)]
    pub threshold_eps: Option<f64>,
    /// Comma-separated subsample rates p (`lemmas`).
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    /// Comma-separated folds r (`lemmas`); default is the smallest admissible r.
    #[arg(long, value_delimiter = ',')]
    pub r: Vec<usize>,
    /// Exact enumeration instead of Monte Carlo (`lemmas`, n <= 14).
    #[arg(long)]
    pub exact: bool,
    /// Sampled subsets for the n <= 12 part of the built-in suite (`verify`).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Comma-separated elements (`cover`); default is the whole ground set.
    #[arg(long, value_delimiter = ',')]
    pub set: Vec<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SpecSource {
    Inline(InstanceSpec),
    Path(PathBuf),
}

/// Contents of a `--config` file; every field is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub spec: Option<SpecSource>,
    pub algos: Option<Vec<String>>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub k: Option<Vec<usize>>,
    pub constants: Option<String>,
    pub nsim_mode: Option<bool>,
    pub trace: Option<bool>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub threshold_eps: Option<f64>,
    pub p: Option<Vec<f64>>,
    pub r: Option<Vec<usize>>,
    pub exact: Option<bool>,
    pub samples: Option<usize>,
    pub set: Option<Vec<usize>>,
}

/// Fully resolved configuration. Serialised into every output file; the
/// output directory and thread count are left out since they do not affect
/// results.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<InstanceSpec>,
    pub algos: Vec<Algorithm>,
    pub trials: usize,
    pub seed: u64,
    pub k: Vec<usize>,
    pub constants: String,
    pub nsim_mode: bool,
    pub trace: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_eps: Option<f64>,
    pub p: Vec<f64>,
    pub r: Vec<usize>,
    pub exact: bool,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<usize>>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub jobs: usize,
}

impl RunConfig {
    pub fn constants(&self) -> Constants {
        Constants::parse(&self.constants).expect("validated during resolution")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serialises")
    }

    pub fn require_spec(&self) -> CliResult<&InstanceSpec> {
        self.spec
            .as_ref()
            .ok_or_else(|| CliError::Config(format!("`{}` needs --spec", self.command)))
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn parse_spec(text: &str, origin: &str) -> CliResult<InstanceSpec> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("spec {origin}: {e}")))
}

fn load_spec(arg: &str) -> CliResult<InstanceSpec> {
    if arg.trim_start().starts_with('{') {
        parse_spec(arg, "(inline)")
    } else {
        parse_spec(&read(Path::new(arg))?, arg)
    }
}

pub fn load_config_file(path: &Path) -> CliResult<ConfigFile> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn nonempty<T>(flag: Vec<T>, file: Option<Vec<T>>) -> Vec<T> {
    if flag.is_empty() {
        file.unwrap_or_default()
    } else {
        flag
    }
}

/// Merges flags, the config file and the environment. `env_seed` is the
/// value of `MATSEC_SEED`, if set.
pub fn resolve(command: &str, flags: &Flags, env_seed: Option<&str>) -> CliResult<RunConfig> {
    let file = match &flags.config {
        Some(p) => load_config_file(p)?,
        None => ConfigFile::default(),
    };
    let spec = match (&flags.spec, file.spec) {
        (Some(arg), _) => Some(load_spec(arg)?),
        (None, Some(SpecSource::Inline(s))) => Some(s),
        (None, Some(SpecSource::Path(p))) => Some(parse_spec(&read(&p)?, &p.display().to_string())?),
        (None, None) => None,
    };
    let env_seed = env_seed
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Config(format!("{SEED_ENV} must be an unsigned integer, got `{s}`")))
        })
        .transpose()?;
    let seed = flags.seed.or(file.seed).or(env_seed).unwrap_or(0);

    let names = nonempty(flags.algos.clone(), file.algos);
    let algos = if names.is_empty() {
        let uniform = matches!(
            spec.as_ref().map(|s| &s.matroid),
            Some(matroid_secretary::harness::MatroidSpec::Uniform { .. })
        );
        let mut a = vec![Algorithm::Phased, Algorithm::Dynkin];
        if uniform {
            a.push(Algorithm::Threshold);
        }
        a.push(Algorithm::Greedy);
        a
    } else {
        names
            .iter()
            .map(|n| Algorithm::parse(n.trim()))
            .collect::<Result<_, _>>()?
    };

    let constants = flags
        .constants
        .clone()
        .or(file.constants)
        .unwrap_or_else(|| "proof".into());
    let constants = Constants::parse(&constants)?.to_string();

    let mut k = nonempty(flags.k.clone(), file.k);
    if k.is_empty() {
        if command == "verify" {
            k = DEFAULT_FOLDS.to_vec();
        } else if let Some(sk) = spec.as_ref().and_then(|s| s.k) {
            k = vec![sk];
        }
    }
    if k.contains(&0) {
        return Err(CliError::Config("k must be at least 1".into()));
    }

    let trials = flags.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS);
    if trials == 0 {
        return Err(CliError::Config("trials must be at least 1".into()));
    }
    let threshold_eps = flags.threshold_eps.or(file.threshold_eps);
    if let Some(e) = threshold_eps {
        if !(0.0..1.0).contains(&e) {
            return Err(CliError::Config(format!("threshold-eps must lie in [0, 1), got {e}")));
        }
    }
    let mut p = nonempty(flags.p.clone(), file.p);
    if p.is_empty() {
        p = vec![0.5];
    }
    let set = if flags.set.is_empty() { file.set } else { Some(flags.set.clone()) };

    Ok(RunConfig {
        command: command.to_string(),
        spec,
        algos,
        trials,
        seed,
        k,
        constants,
        nsim_mode: flags.nsim_mode || file.nsim_mode.unwrap_or(false),
        trace: flags.trace || file.trace.unwrap_or(false),
        threshold_eps,
        p,
        r: nonempty(flags.r.clone(), file.r),
        exact: flags.exact || file.exact.unwrap_or(false),
        samples: flags.samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES),
        set,
        out: flags.out.clone().or(file.out),
        jobs: flags.jobs.or(file.jobs).unwrap_or(0),
    })
}
