use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use wspectra_cli::acceptance::{report, run_criterion, run_suite};
use wspectra_cli::config::{Level, RunConfig};
use wspectra_cli::{output_dir, run, EXIT_INVALID, EXIT_OK, EXIT_QUALITY};

#[derive(Parser)]
#[command(name = "wspectra", version, about = "Spectra of quantized phase-plane symbols and Schrödinger eigenvalue counts")]
struct Cli {
    /// Worker threads (falls back to WSPECTRA_THREADS).
    #[arg(long, global = true, env = "WSPECTRA_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by an INI config.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the acceptance suite and print one line per criterion.
    Suite {
        #[arg(long, default_value = "fast")]
        level: Level,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only these criteria (repeatable).
        #[arg(long)]
        only: Vec<u32>,
        /// Also write report.txt and report.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = wspectra::init_threads(cli.threads) {
        eprintln!("error: {e}");
        return code(EXIT_INVALID);
    }
    match cli.command {
        Command::Run { config, out, seed } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", config.display());
                    return code(EXIT_INVALID);
                }
            };
            let mut cfg = match RunConfig::parse(&text) {
                Ok(c) => c,
                Err(e) => {
                    for m in &e.0 {
                        eprintln!("error: {m}");
                    }
                    return code(EXIT_INVALID);
                }
            };
            if let Some(s) = seed {
                cfg.run.seed = s;
            }
            let dir = output_dir(&cfg, out.as_deref());
            match run(&cfg, &dir) {
                Ok(summary) => {
                    for f in &summary.flags {
                        eprintln!("warning: {f}");
                    }
                    eprintln!("wrote {}", summary.out_dir.join("manifest.json").display());
                    code(summary.exit_code)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    code(e.exit_code())
                }
            }
        }
        Command::Suite { level, seed, only, out } => {
            let start = Instant::now();
            let outcomes = if only.is_empty() {
                run_suite(level, seed, |o| println!("{}", o.line()))
            } else {
                only.iter().filter_map(|&id| run_criterion(id, seed)).inspect(|o| println!("{}", o.line())).collect()
            };
            let text = report(level, seed, &outcomes);
            println!("{}", text.lines().last().unwrap_or_default());
            eprintln!("suite finished in {:.1} s", start.elapsed().as_secs_f64());
            if let Some(dir) = out {
                let written = std::fs::create_dir_all(&dir)
                    .and_then(|_| std::fs::write(dir.join("report.txt"), &text))
                    .and_then(|_| std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(&outcomes).unwrap_or_default()));
                if let Err(e) = written {
                    eprintln!("error: {e}");
                    return code(EXIT_QUALITY);
                }
            }
            code(if outcomes.iter().all(|o| o.pass) { EXIT_OK } else { EXIT_QUALITY })
        }
    }
}
