use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use hyperscat_cli::{execute, Experiment, RunOptions};

/// Scattering-theory experiments on hyperbolic and asymptotically hyperbolic spaces.
#[derive(Parser)]
#[command(name = "hyperscat", version)]
struct Args {
    #[arg(value_enum)]
    experiment: Experiment,
    /// INI configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for the JSON record and CSV tables.
    #[arg(long, default_value = "hyperscat-out")]
    out: PathBuf,
    /// Override a configuration key (`section.key=value`); repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Print nothing but errors.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Ok(v) = std::env::var("HYPERSCAT_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("HYPERSCAT_THREADS must be a positive integer, got {v:?}");
                return ExitCode::from(2);
            }
        }
    }
    let start = Instant::now();
    let opts = RunOptions { config: args.config, out: args.out, sets: args.sets };
    let outcome = execute(args.experiment, &opts);
    for line in &outcome.lines {
        if outcome.record.is_none() || line.starts_with("error") {
            eprintln!("{line}");
        } else if !args.quiet {
            println!("{line}");
        }
    }
    if !args.quiet {
        println!("wall time: {:.3} s", start.elapsed().as_secs_f64());
    }
    ExitCode::from(outcome.exit_code as u8)
}
