use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hopf_cli::descriptor::{Descriptor, GroupRef, SubgroupRef};
use hopf_cli::report::Report;
use hopf_cli::scenario::{load_scenario, run_scenario, single_task, Scenario, Task};
use hopf_cli::suites::{run_suite, Suite, DEFAULT_SEED};
use hopf_cli::CliError;

/// Hopf-type formulas, simplicial resolutions and their verification
/// batteries on finite groups.
#[derive(Parser)]
#[command(name = "hopf", version)]
struct Cli {
    /// Output as aligned text tables or as JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include wall-clock times in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Structured,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file, or a bundled scenario by name.
    Run { scenario: String },
    /// Run a verification suite over the built-in instances.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Seed for the sampled checks.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// (R ∩ [K,K]) / [K,R] with R the normal closure of the given words.
    H2 {
        /// A catalog name (Q8, S4, D4, Z6, Z2xZ2, FN(2,3,5), …) or a JSON descriptor.
        group: String,
        #[arg(required = true)]
        relators: Vec<String>,
    },
    /// (∩R_i ∩ Γ_k) / D_k for the ad with one part per argument; each part
    /// is the normal closure of a comma-separated word list.
    Hopf {
        group: String,
        #[arg(required = true)]
        parts: Vec<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// The three-relator quotient in the class-3 free nilpotent group of exponent m.
    Counterexample {
        #[arg(long, default_value_t = 5)]
        m: u64,
    },
    /// Integral homology from the bar complex.
    Oracle {
        #[command(subcommand)]
        degree: Oracle,
    },
}

#[derive(Subcommand)]
enum Oracle {
    H1 { group: String },
    H2 { group: String },
}

fn group_arg(text: &str) -> Result<GroupRef, CliError> {
    if text.trim_start().starts_with('{') {
        let d: Descriptor = serde_json::from_str(text)
            .map_err(|e| CliError::parse(format!("group argument, column {}", e.column()), e.to_string()))?;
        Ok(GroupRef::Inline(Box::new(d)))
    } else {
        Ok(GroupRef::Name(text.to_string()))
    }
}

fn words(list: &str) -> SubgroupRef {
    SubgroupRef::Words(list.split(',').map(|w| w.trim().to_string()).collect())
}

fn scenario_for(command: &Command) -> Result<Option<Scenario>, CliError> {
    Ok(Some(match command {
        Command::Run { scenario } => load_scenario(scenario)?,
        Command::Verify { .. } => return Ok(None),
        Command::H2 { group, relators } => single_task(
            "h2",
            Task::HopfH2 { group: group_arg(group)?, normal: SubgroupRef::Words(relators.clone()) },
        ),
        Command::Hopf { group, parts, k } => single_task(
            "hopf",
            Task::HopfFormula { group: group_arg(group)?, parts: parts.iter().map(|p| words(p)).collect(), k: *k },
        ),
        Command::Counterexample { m } => single_task("counterexample", Task::Counterexample { m: *m }),
        Command::Oracle { degree: Oracle::H1 { group } } => single_task("oracle h1", Task::BarH1 { group: group_arg(group)? }),
        Command::Oracle { degree: Oracle::H2 { group } } => single_task("oracle h2", Task::BarH2 { group: group_arg(group)? }),
    }))
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    match scenario_for(&cli.command)? {
        Some(scenario) => {
            if let Some(cap) = scenario.limits.order_cap {
                if std::env::var_os("HOPF_ORDER_CAP").is_none() {
                    // No group has been built yet, so the cap is still unread.
                    std::env::set_var("HOPF_ORDER_CAP", cap.to_string());
                }
            }
            run_scenario(&scenario, cli.timings)
        }
        None => {
            let Command::Verify { suite, seed } = cli.command else { unreachable!("only verify has no scenario") };
            Ok(Report::new(format!("verify {}", suite.name()), run_suite(suite, seed, cli.timings)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Structured => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            // A closed pipe (`hopf ... | head`) is not an error worth a panic.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.status.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
