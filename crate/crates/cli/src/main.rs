use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use setconj::polyhedra::set_constraint_cap;
use setconj::props;
use setconj_cli::harness::{self, exit_code, Options};
use setconj_cli::instance::{Instance, TASK_KINDS};

#[derive(Parser)]
#[command(name = "setconj", version, about = "Exact set-valued conjugate duality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of an instance file and write a report.
    Run {
        file: PathBuf,
        /// Only run tasks of this kind (repeatable).
        #[arg(long = "task", value_parser = clap::builder::PossibleValuesParser::new(TASK_KINDS))]
        tasks: Vec<String>,
        /// Overrides the seed stored in the instance.
        #[arg(long)]
        seed: Option<u64>,
        /// Report destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include per-task wall-clock times (makes reports nondeterministic).
        #[arg(long)]
        timings: bool,
        /// Cap on intermediate constraint and piece counts.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Run the invariant suite on generated instances.
    Props {
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        iters: usize,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            file,
            tasks,
            seed,
            out,
            timings,
            cap,
        } => {
            if let Some(cap) = cap {
                set_constraint_cap(cap);
            }
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let report = Instance::parse(&text).and_then(|inst| harness::run(&inst, &Options { tasks, seed, timings }));
            let report = match report {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(exit_code(&e) as u8);
                }
            };
            let json = report.to_json();
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, json) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{json}"),
            }
            match report.first_failure() {
                None => ExitCode::SUCCESS,
                Some(t) => {
                    let w = t.witness.as_deref().unwrap_or("no witness recorded");
                    eprintln!("task {} ({} on {}) failed: {w}", t.index, t.task, t.target);
                    ExitCode::from(1)
                }
            }
        }
        Command::Props { seed, iters } => {
            let outcomes = props::all(seed, iters);
            let mut ok = true;
            for o in &outcomes {
                println!("{} {}", if o.passed() { "PASS" } else { "FAIL" }, o.summary());
                for f in o.failures.iter().take(5) {
                    println!("    {f}");
                }
                ok &= o.passed();
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
