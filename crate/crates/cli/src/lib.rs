//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand, and returns the process exit code: 0 on success, 1 on
//! domain errors, 2 on usage errors. Errors print a single
//! `error:<category>: message` line on the error stream.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

mod format;
mod inference;
mod lab;
mod logic;

pub use format::num;

#[derive(Debug, Parser)]
#[command(name = "entropic", version, about = "Deductive, inductive and entropic inference over finite spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the truth table of a formula over its letters.
    Tt { formula: String },
    /// Check a catalogue identity by name, or an equivalence `f == g`.
    Check {
        /// Identity name, `f == g`, or `f ≡ g`.
        target: Option<String>,
        /// List the catalogue instead.
        #[arg(long)]
        list: bool,
        /// Letters available to instances of the metavariables.
        #[arg(long, default_value_t = 3)]
        atoms: usize,
        /// Nesting depth of instances.
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Order formulas by implication and print the Hasse diagram.
    Hasse {
        #[arg(required = true)]
        formulas: Vec<String>,
        /// Add false and true as bounds.
        #[arg(long)]
        bounds: bool,
        /// Context every formula is conditioned on.
        #[arg(long)]
        context: Option<String>,
        /// Scenario whose variables the formulas use.
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Write DOT to this file, or `-` for standard output.
        #[arg(long)]
        dot: Option<String>,
    },
    /// Probability of a formula, optionally `given` another.
    Prob {
        scenario: PathBuf,
        formula: String,
        /// `given <formula>`
        #[arg(num_args = 0..)]
        rest: Vec<String>,
    },
    /// Maximum relative entropy update of a scenario's prior.
    Update {
        scenario: PathBuf,
        /// Print the Lagrange multipliers.
        #[arg(long)]
        report_lambdas: bool,
    },
    /// Condition a scenario's prior on observed values.
    Bayes {
        scenario: PathBuf,
        /// `variable=value[,variable=value…]`
        #[arg(long, required = true)]
        observe: String,
    },
    /// Entropies and correlations of a scenario's prior over a split.
    Correlations {
        scenario: PathBuf,
        /// Blocks separated by `|`, variables by `,`.
        #[arg(long)]
        split: String,
        /// Report bits instead of nats.
        #[arg(long)]
        bits: bool,
    },
    /// Numerical checks of the functional equations.
    Verify {
        #[command(subcommand)]
        check: lab::Verify,
    },
    /// Worked demonstrations.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
}

#[derive(Debug, Subcommand)]
enum Demo {
    /// Two-slit sum over paths versus the naive single-slit substitution.
    DoubleSlit {
        p_alpha: f64,
        p_beta: f64,
        p_x_given_alpha: f64,
        p_x_given_beta: f64,
    },
}

/// Output units for information quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Units {
    Nats,
    Bits,
}

/// Failure of a command.
#[derive(Debug)]
pub(crate) enum Failure {
    Domain(entropic::Error),
    Io(String),
    Usage(String),
}

impl From<entropic::Error> for Failure {
    fn from(e: entropic::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

pub(crate) type Outcome = std::result::Result<(), Failure>;

/// Runs one command line; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let text = e.render().to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            let _ = writeln!(err, "error:usage: {first}");
            let _ = write!(err, "{}", text.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
            return 2;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error:{}: {e}", e.category());
            1
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "error:io: {m}");
            1
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error:usage: {m}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Tt { formula } => logic::truth_table(&formula, out),
        Command::Check {
            target,
            list,
            atoms,
            depth,
        } => logic::check(target.as_deref(), list, atoms, depth, out),
        Command::Hasse {
            formulas,
            bounds,
            context,
            scenario,
            dot,
        } => logic::hasse(
            &formulas,
            bounds,
            context.as_deref(),
            scenario.as_deref(),
            dot.as_deref(),
            out,
            err,
        ),
        Command::Prob {
            scenario,
            formula,
            rest,
        } => inference::prob(&scenario, &formula, &rest, out, err),
        Command::Update {
            scenario,
            report_lambdas,
        } => inference::update(&scenario, report_lambdas, out, err),
        Command::Bayes { scenario, observe } => inference::bayes(&scenario, &observe, out, err),
        Command::Correlations {
            scenario,
            split,
            bits,
        } => {
            let units = if bits { Units::Bits } else { Units::Nats };
            inference::correlations(&scenario, &split, units, out, err)
        }
        Command::Verify { check } => lab::verify(check, out),
        Command::Demo {
            demo:
                Demo::DoubleSlit {
                    p_alpha,
                    p_beta,
                    p_x_given_alpha,
                    p_x_given_beta,
                },
        } => lab::double_slit(p_alpha, p_beta, p_x_given_alpha, p_x_given_beta, out),
    }
}
