use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use abcover::Limits;
use abcover_cli::commands::EXIT_INVALID;
use abcover_cli::{parse_input, registry, run_command, Command, Flags, Outcome};
use clap::{Args, Parser, Subcommand};

/// Local classification of finite abelian covers from branch data.
#[derive(Parser)]
#[command(name = "abcover", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Largest group, kernel or monomial list that may be enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().enumeration)]
    max_enumeration: u64,
}

#[derive(Args)]
struct Input {
    /// Cover document (JSON); standard input when omitted or `-`.
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the document and print the canonical data.
    Validate(Input),
    /// Full local classification.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Emit the JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Basis of the fiber ring over the point.
    Fiber {
        #[command(flatten)]
        input: Input,
        /// Also print the multiplication table.
        #[arg(long)]
        table: bool,
        /// Largest |G| for which the ring is built.
        #[arg(long, default_value_t = Limits::default().fiber_order)]
        max_order: u64,
    },
    /// Socle of the fiber ring.
    Socle(Input),
    /// Hilbert numerator and series of the invariant ring.
    Hilbert {
        #[command(flatten)]
        input: Input,
        /// Last degree of the printed series.
        #[arg(long, default_value_t = Limits::default().max_degree)]
        max_degree: u32,
    },
    /// Split off the etale part of the cover.
    Factor(Input),
    /// Built-in examples.
    Example {
        #[command(subcommand)]
        action: ExampleAction,
    },
}

#[derive(Subcommand)]
enum ExampleAction {
    /// List examples and their parameters.
    List,
    /// Print the document for an example.
    Show(ExampleArgs),
    /// Classify an example and check the expected verdicts.
    Run(ExampleArgs),
}

#[derive(Args)]
struct ExampleArgs {
    name: String,
    /// Parameters as `--name value` pairs.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    params: Vec<String>,
}

fn parse_params(raw: &[String]) -> Result<Vec<(String, i64)>, String> {
    if raw.len() % 2 != 0 {
        return Err("parameters come in `--name value` pairs".to_string());
    }
    raw.chunks(2)
        .map(|pair| {
            let name = pair[0]
                .strip_prefix("--")
                .ok_or_else(|| format!("expected `--name`, found '{}'", pair[0]))?;
            let value = pair[1]
                .parse::<i64>()
                .map_err(|_| format!("parameter '{name}' needs an integer, found '{}'", pair[1]))?;
            Ok((name.to_string(), value))
        })
        .collect()
}

fn read_input(input: &Input) -> Result<String, String> {
    match &input.file {
        Some(path) if path.as_os_str() != "-" => {
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            Ok(text)
        }
    }
}

fn with_document(input: &Input, command: Command, flags: Flags) -> Outcome {
    let text = match read_input(input) {
        Ok(t) => t,
        Err(e) => return invalid(e),
    };
    match parse_input(&text) {
        Ok(doc) => run_command(command, &doc, &flags),
        Err(e) => invalid(e.to_string()),
    }
}

fn invalid(message: String) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
        code: EXIT_INVALID,
    }
}

fn example(action: &ExampleAction, limits: &Limits) -> Outcome {
    match action {
        ExampleAction::List => Outcome {
            stdout: registry::list_text(),
            ..Outcome::default()
        },
        ExampleAction::Show(args) | ExampleAction::Run(args) => {
            let params = match parse_params(&args.params) {
                Ok(p) => p,
                Err(e) => return invalid(e),
            };
            if matches!(action, ExampleAction::Show(_)) {
                registry::show(&args.name, &params)
            } else {
                registry::run(&args.name, &params, limits)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut flags = Flags::default();
    flags.limits.enumeration = cli.max_enumeration;
    let outcome = match &cli.command {
        Cmd::Validate(input) => with_document(input, Command::Validate, flags),
        Cmd::Classify { input, json } => {
            flags.json = *json;
            with_document(input, Command::Classify, flags)
        }
        Cmd::Fiber {
            input,
            table,
            max_order,
        } => {
            flags.table = *table;
            flags.limits.fiber_order = *max_order;
            with_document(input, Command::Fiber, flags)
        }
        Cmd::Socle(input) => with_document(input, Command::Socle, flags),
        Cmd::Hilbert { input, max_degree } => {
            flags.limits.max_degree = *max_degree;
            with_document(input, Command::Hilbert, flags)
        }
        Cmd::Factor(input) => with_document(input, Command::Factor, flags),
        Cmd::Example { action } => example(action, &flags.limits),
    };
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
