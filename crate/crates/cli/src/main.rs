use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use annmod::commands::{cmd_check, cmd_classify_text, cmd_run, cmd_search, cmd_suite, error_exit_code, Outcome};
use annmod::dsl::parse_module;
use annmod::polymod::DEFAULT_DEGREE_BOUND;
use annmod::propcheck::{registry, search_variants, InstanceBudget, RunOptions};
use clap::{Args, Parser, Subcommand};

/// Finite rings and modules: classification and property checks for
/// annihilator multiplication modules.
#[derive(Parser)]
#[command(name = "annmod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct Budget {
    #[arg(long, default_value_t = InstanceBudget::default().random_seed)]
    seed: u64,
    #[arg(long, default_value_t = InstanceBudget::default().max_ring_order)]
    max_ring_order: usize,
    #[arg(long, default_value_t = InstanceBudget::default().max_module_order)]
    max_module_order: usize,
    /// Random instances drawn on top of the golden ones.
    #[arg(long, default_value_t = InstanceBudget::default().max_instances)]
    max_instances: usize,
}

impl Budget {
    fn budget(&self) -> InstanceBudget {
        InstanceBudget {
            max_ring_order: self.max_ring_order,
            max_module_order: self.max_module_order,
            max_instances: self.max_instances,
            random_seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Execute a DSL program from FILE, or stdin when absent or `-`.
    Run {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Classify one ring or module expression.
    Classify {
        expr: String,
        #[command(flatten)]
        out: Output,
    },
    /// Run every property on a single module.
    Check {
        expr: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run the property suite over a generated corpus.
    Suite {
        #[command(flatten)]
        budget: Budget,
        /// Run a single property.
        #[arg(long, value_name = "PROP-ID")]
        only: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Search the corpus for violations of a converse or weakened statement.
    Search {
        variant: String,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
    /// List property and search-variant identifiers.
    List,
}

fn read_program(file: Option<&PathBuf>) -> std::io::Result<String> {
    match file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn summarize(outcome: &Outcome) {
    let results = &outcome.report.results;
    if let Some(props) = results["properties"].as_array() {
        for p in props {
            println!(
                "{:7} tried {:4} hypothesis {:4} failures {:3} gate {}",
                p["property_id"].as_str().unwrap_or("?"),
                p["instances_tried"],
                p["hypothesis_met"],
                p["failures"].as_array().map_or(0, Vec::len),
                if p["gate_passed"] == true { "ok" } else { "tripped" },
            );
        }
    }
    println!("status: {:?}", outcome.status);
}

fn emit(outcome: &Outcome, out: &Output) -> std::io::Result<()> {
    let json = outcome.report.to_json();
    match &out.json {
        Some(path) => {
            std::fs::write(path, json + "\n")?;
            summarize(outcome);
        }
        None => writeln!(std::io::stdout().lock(), "{json}")?,
    }
    Ok(())
}

// A closed pipe (`annmod ... | head`) is not an error worth reporting.
fn ignore_broken_pipe(e: std::io::Error) -> std::io::Result<()> {
    match e.kind() {
        std::io::ErrorKind::BrokenPipe => Ok(()),
        _ => Err(e),
    }
}

fn list() -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "properties:")?;
    for p in registry() {
        writeln!(out, "  {:7} {}", p.id, p.statement)?;
    }
    writeln!(out, "search variants:")?;
    for v in search_variants() {
        writeln!(out, "  {:16} {}", v.id, v.statement)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = |degree_bound| RunOptions { degree_bound };
    let result = match &cli.command {
        Command::List => {
            // a closed pipe is not an error worth reporting
            let _ = list();
            return ExitCode::SUCCESS;
        }
        Command::Run {
            file,
            degree_bound,
            out,
        } => match read_program(file.as_ref()) {
            Ok(text) => cmd_run(&text, opts(*degree_bound)).map(|o| (o, out)),
            Err(e) => {
                eprintln!("error: cannot read program: {e}");
                return ExitCode::from(2);
            }
        },
        Command::Classify { expr, out } => cmd_classify_text(expr).map(|o| (o, out)),
        Command::Check {
            expr,
            degree_bound,
            out,
        } => parse_module(expr)
            .and_then(|m| cmd_check(&m, opts(*degree_bound)))
            .map(|o| (o, out)),
        Command::Suite {
            budget,
            only,
            degree_bound,
            out,
        } => cmd_suite(&budget.budget(), only.as_deref(), opts(*degree_bound)).map(|o| (o, out)),
        Command::Search { variant, budget, out } => cmd_search(variant, &budget.budget()).map(|o| (o, out)),
    };
    match result {
        Ok((outcome, out)) => {
            if let Err(e) = emit(&outcome, out).or_else(ignore_broken_pipe) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
