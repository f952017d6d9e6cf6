use clap::{Parser, Subcommand};
use phasetype::cli::{self, RunConfig};
use std::path::{Path, PathBuf};
use std::process;

/// Newton-polyhedron invariants, adapted coordinates and singularity
/// classification of bivariate phases, with a numerical decay verifier.
///
/// Exit codes: 0 success, 2 phase recognized but out of the classified
/// range, 1 any other failure.
#[derive(Parser)]
#[command(name = "phasetype", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a phase and report its exact invariants as JSON
    Classify {
        /// Polynomial expression, or a file containing one
        input: String,
        /// Write the JSON report here instead of stdout
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        /// Render the Newton diagram here
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
        /// Fixed jet order for the series computations
        #[arg(long, value_name = "N")]
        jet_order: Option<u32>,
        /// Configuration file (flat key = value lines)
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
    /// Fit oscillatory-decay exponents over a corpus of phases
    Decay {
        /// Corpus file, or `bundled` for the built-in corpus
        corpus: String,
        /// Configuration file (flat key = value lines)
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
    /// Locate a rational point in the root-jet region decomposition
    Regions {
        /// Polynomial expression, or a file containing one
        expr: String,
        /// Point `x1,x2` with rational coordinates
        #[arg(long, value_name = "X1,X2")]
        point: String,
        /// Exterior-region constant (default 1/10)
        #[arg(long, value_name = "RATIONAL")]
        eps: Option<String>,
        /// Horn-region constant (default 10)
        #[arg(long, value_name = "RATIONAL")]
        cap: Option<String>,
        /// Configuration file (flat key = value lines)
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            process::exit(code);
        }
    };
    process::exit(run(cli.command));
}

fn run(command: Command) -> i32 {
    match command {
        Command::Classify { input, json, svg, jet_order, config } => {
            let mut cfg = RunConfig::default();
            if let Err(e) = apply_config(&mut cfg, config.as_deref()) {
                eprintln!("{e}");
                return 1;
            }
            if jet_order.is_some() {
                cfg.jet_order = jet_order;
            }
            let expr = match resolve_input(&input) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{e}");
                    return 1;
                }
            };
            let run = cli::classify_command(&expr, &cfg);
            if let Err(e) = emit(&run.json, json.as_deref()) {
                eprintln!("{e}");
                return 1;
            }
            if let (Some(path), Some(diagram)) = (svg.as_deref(), run.svg.as_deref()) {
                if let Err(e) = std::fs::write(path, diagram) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return 1;
                }
            }
            run.exit_code
        }
        Command::Decay { corpus, config } => {
            let mut cfg = RunConfig::default();
            if let Err(e) = apply_config(&mut cfg, config.as_deref()) {
                eprintln!("{e}");
                return 1;
            }
            let text = if corpus == "bundled" {
                cli::BUNDLED.to_string()
            } else {
                match std::fs::read_to_string(&corpus) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("cannot read {corpus}: {e}");
                        return 1;
                    }
                }
            };
            let entries = match cli::parse_corpus(&text) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("{e}");
                    return 1;
                }
            };
            let run = cli::run_decay_suite(&entries, &cfg);
            eprint!("{}", run.table);
            print!("{}", run.json);
            if run.passed {
                0
            } else {
                1
            }
        }
        Command::Regions { expr, point, eps, cap, config } => {
            let mut cfg = RunConfig::default();
            if let Err(e) = apply_config(&mut cfg, config.as_deref()) {
                eprintln!("{e}");
                return 1;
            }
            for (flag, slot) in [(eps, &mut cfg.region_epsilon), (cap, &mut cfg.region_cap)] {
                if let Some(text) = flag {
                    match cli::parse_rational(&text) {
                        Ok(r) => *slot = r,
                        Err(e) => {
                            eprintln!("{e}");
                            return 1;
                        }
                    }
                }
            }
            let expr = match resolve_input(&expr) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{e}");
                    return 1;
                }
            };
            let (json, code) = cli::regions_command(&expr, &point, &cfg);
            print!("{json}");
            code
        }
    }
}

fn apply_config(cfg: &mut RunConfig, path: Option<&Path>) -> Result<(), cli::ConfigError> {
    match path {
        Some(p) => cfg.apply_path(p),
        None => Ok(()),
    }
}

/// An input argument is either an inline expression or a file holding one;
/// files may spread the expression over several lines and carry `#`
/// comments.
fn resolve_input(input: &str) -> Result<String, String> {
    let path = Path::new(input);
    if !path.is_file() {
        return Ok(input.to_string());
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join(" "))
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
