use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qcpo_cli::report::{self, Report, Value};
use qcpo_cli::{eval, json, parser};
use qcpo_core::qcpo::{chain_limit_finite, lift_object};
use qcpo_core::qorder::check_order_axioms;
use qcpo_core::states::{pushforward, qft_function};

#[derive(Parser)]
#[command(name = "qcpo", version, about = "Quantum sets, relations and cpos")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Override the numerical tolerance.
    #[arg(long, global = true, value_name = "EPS")]
    epsilon: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script and print its report.
    Run { script: PathBuf },
    /// Check the order axioms of an endo-relation.
    CheckPoset { relation: PathBuf },
    /// Check whether a relation is a function (and if so surjective/injective).
    CheckFunction { relation: PathBuf },
    /// Push a state forward along a function.
    Push { state: PathBuf, function: PathBuf },
    /// Print the order of the lift of a poset.
    Lift { poset: PathBuf },
    /// Print the quantum Fourier transform on lists of length below `n`.
    Qft { n: usize },
    /// Compute the limit of a finite stabilizing chain.
    Limit { chain: PathBuf },
}

/// Failures outside a script: bad files, schema errors, invariant violations.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    std::fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<serde_json::Value, Fatal> {
    json::parse(&read(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(eps) = cli.epsilon {
        if !(eps.is_finite() && eps > 0.0) {
            eprintln!("error: --epsilon must be a positive number");
            return ExitCode::from(2);
        }
        qcpo_core::tolerance::set_epsilon(eps);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, value: Value) {
    if cli.json {
        let v = match &value {
            Value::Set(s) => json::set_to_json(s),
            Value::Rel(r) => json::relation_to_json(r),
            Value::State(m) => json::state_to_json(m),
        };
        println!("{}", json::to_string(&v));
    } else {
        print!("{}", report::render(&value));
    }
}

fn run(cli: &Cli) -> Result<u8, Fatal> {
    match &cli.command {
        Command::Run { script } => {
            let source = read(script)?;
            let report = match parser::parse(&source) {
                Ok(ast) => eval::evaluate(&ast),
                Err(d) => Report {
                    entries: Vec::new(),
                    error: Some(d),
                },
            };
            if cli.json {
                println!("{}", json::to_string(&report.to_json()));
            } else {
                print!("{}", report.to_text());
            }
            Ok(report.exit_code() as u8)
        }
        Command::CheckPoset { relation } => {
            let r = json::relation_from_json(&load(relation)?, "")?;
            if !r.is_endo() {
                return Err(Fatal("an order must be an endo-relation".into()));
            }
            let ax = check_order_axioms(r.dom(), &r)?;
            if cli.json {
                let v = serde_json::json!({
                    "reflexive": ax.reflexive,
                    "transitive": ax.transitive,
                    "antisymmetric": ax.antisymmetric,
                });
                println!("{}", json::to_string(&v));
            } else {
                println!("reflexive {}", ax.reflexive);
                println!("transitive {}", ax.transitive);
                println!("antisymmetric {}", ax.antisymmetric);
            }
            Ok(if ax.all() { 0 } else { 1 })
        }
        Command::CheckFunction { relation } => {
            let r = json::relation_from_json(&load(relation)?, "")?;
            let function = r.is_function()?;
            let (surjective, injective) = if function {
                (Some(r.is_surjective()?), Some(r.is_injective()?))
            } else {
                (None, None)
            };
            if cli.json {
                let v = serde_json::json!({
                    "function": function,
                    "surjective": surjective,
                    "injective": injective,
                });
                println!("{}", json::to_string(&v));
            } else {
                println!("function {function}");
                if let (Some(s), Some(i)) = (surjective, injective) {
                    println!("surjective {s}");
                    println!("injective {i}");
                }
            }
            Ok(if function { 0 } else { 1 })
        }
        Command::Push { state, function } => {
            let m = json::state_from_json(&load(state)?, "")?;
            let f = json::function_from_json(&load(function)?, "")?;
            emit(cli, Value::State(pushforward(&m, &f)?));
            Ok(0)
        }
        Command::Lift { poset } => {
            let p = json::poset_from_json(&load(poset)?, "")?;
            emit(cli, Value::Rel(lift_object(&p).base().order().clone()));
            Ok(0)
        }
        Command::Qft { n } => {
            emit(cli, Value::Rel(qft_function(*n).into_relation()));
            Ok(0)
        }
        Command::Limit { chain } => {
            let c = json::chain_from_json(&load(chain)?, "")?;
            emit(cli, Value::Rel(chain_limit_finite(&c)?.into_relation()));
            Ok(0)
        }
    }
}
