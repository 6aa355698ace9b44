//! Experiment runner: each subcommand resolves an INI configuration, runs one experiment and
//! writes a JSON record plus CSV tables.

pub mod config;
pub mod experiments;
pub mod record;

use std::path::PathBuf;

use thiserror::Error;

use config::Config;
use record::ResultRecord;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("output error: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] hyperscat_core::Error),
}

/// Convert a core error raised while interpreting configuration values.
pub(crate) fn config_err(e: hyperscat_core::Error) -> CliError {
    CliError::Config(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Experiment {
    Greencheck,
    Symbolcheck,
    Modes,
    Sweep,
    Identity,
    Index,
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Experiment::Greencheck,
        Experiment::Symbolcheck,
        Experiment::Modes,
        Experiment::Sweep,
        Experiment::Identity,
        Experiment::Index,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Greencheck => "greencheck",
            Experiment::Symbolcheck => "symbolcheck",
            Experiment::Modes => "modes",
            Experiment::Sweep => "sweep",
            Experiment::Identity => "identity",
            Experiment::Index => "index",
        }
    }

    pub fn schema(self) -> config::Schema {
        match self {
            Experiment::Greencheck => experiments::green::SCHEMA,
            Experiment::Symbolcheck => experiments::symbol::SCHEMA,
            Experiment::Modes => experiments::modes::SCHEMA,
            Experiment::Sweep => experiments::sweep::SCHEMA,
            Experiment::Identity => experiments::identity::SCHEMA,
            Experiment::Index => experiments::index::SCHEMA,
        }
    }

    fn run(self, cfg: &Config, rec: &mut ResultRecord, log: &mut Vec<String>) -> Result<(), CliError> {
        match self {
            Experiment::Greencheck => experiments::green::run(cfg, rec),
            Experiment::Symbolcheck => experiments::symbol::run(cfg, rec),
            Experiment::Modes => experiments::modes::run(cfg, rec),
            Experiment::Sweep => experiments::sweep::run(cfg, rec),
            Experiment::Identity => experiments::identity::run(cfg, rec),
            Experiment::Index => experiments::index::run(cfg, rec, log),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub config: Option<PathBuf>,
    pub out: PathBuf,
    pub sets: Vec<String>,
}

/// What a run produced: the record (absent on configuration errors), report lines and exit code.
#[derive(Debug)]
pub struct Outcome {
    pub record: Option<ResultRecord>,
    pub lines: Vec<String>,
    pub exit_code: i32,
}

/// Resolves the configuration, runs the experiment and writes its outputs.
///
/// Exit codes: 0 all checks pass, 1 a check failed or a pole was hit, 2 configuration or
/// usage error, 3 numerical non-convergence.
pub fn execute(exp: Experiment, opts: &RunOptions) -> Outcome {
    let cfg = match Config::resolve(exp.name(), exp.schema(), opts.config.as_deref(), &opts.sets) {
        Ok(c) => c,
        Err(e) => return Outcome { record: None, lines: vec![e.to_string()], exit_code: 2 },
    };
    let mut rec = ResultRecord::new(exp.name(), cfg.values());
    let mut lines = Vec::new();
    match exp.run(&cfg, &mut rec, &mut lines) {
        Ok(()) => {}
        Err(CliError::Core(e)) => {
            lines.push(format!("error: {e}"));
            rec.error = Some(e);
        }
        Err(e) => return Outcome { record: None, lines: vec![e.to_string()], exit_code: 2 },
    }
    lines.extend(rec.checks.iter().map(|c| c.summary()));
    if let Err(e) = rec.write(&opts.out) {
        lines.push(e.to_string());
        return Outcome { record: Some(rec), lines, exit_code: 2 };
    }
    let code = rec.exit_code();
    lines.push(format!("{}: {}", exp.name(), if code == 0 { "pass" } else { "FAIL" }));
    Outcome { record: Some(rec), lines, exit_code: code }
}
