use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use weiljets_cli::{execute, parse_session, render, session::parse_session_value, CliError, Format, Options, Report};

#[derive(Parser)]
#[command(name = "weiljets", version, about = "Exact computations with Weil algebras, jets and A-points")]
struct Cli {
    #[command(subcommand)]
    command: Mode,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Stop at the first failing binding or command.
    #[arg(long)]
    fail_fast: bool,
    /// Cross-check derived jets and Cartan systems against independent constructions.
    #[arg(long)]
    verify_oracles: bool,
    /// Print per-command wall-clock time to stderr.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Mode {
    /// Run a JSON session file.
    Run {
        session: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Invariants of a single algebra.
    Algebra {
        #[arg(long, conflicts_with = "classical")]
        vars: Option<usize>,
        #[arg(long = "relation")]
        relations: Vec<String>,
        #[arg(long)]
        bound: Option<u32>,
        /// `m,l` for the classical algebra of width m and order l.
        #[arg(long, value_delimiter = ',')]
        classical: Vec<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Operations on a single jet given by generators.
    Jet {
        #[arg(long)]
        vars: usize,
        #[arg(long = "generator")]
        generators: Vec<String>,
        #[arg(long)]
        order_hint: u32,
        /// Base point, comma separated (`p/q` allowed).
        #[arg(long, value_delimiter = ',')]
        point: Vec<String>,
        /// Operations to run, in order.
        #[arg(long = "op", default_values_t = vec!["jet".to_string()])]
        ops: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a polynomial at an A-point of a classical algebra.
    Apoint {
        /// `m,l` for the classical algebra of width m and order l.
        #[arg(long, value_delimiter = ',', required = true)]
        classical: Vec<u32>,
        /// One coordinate image per variable, comma separated over the algebra basis.
        #[arg(long = "image")]
        images: Vec<String>,
        #[arg(long = "eval")]
        evaluate: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn rationals(text: &str) -> Value {
    Value::Array(text.split(',').map(|s| json!(s.trim())).collect())
}

fn shortcut_session(mode: &Mode) -> Value {
    match mode {
        Mode::Run { .. } => unreachable!("files are read separately"),
        Mode::Algebra { vars, relations, bound, classical, .. } => {
            let mut a = json!({"algebra": "A"});
            if classical.is_empty() {
                a["vars"] = json!(vars.unwrap_or(1));
                a["relations"] = json!(relations);
                if let Some(b) = bound {
                    a["bound"] = json!(b);
                }
            } else {
                a["classical"] = json!(classical);
            }
            json!({"bind": [a], "run": [{"op": "info", "of": "A"}, {"op": "derivations", "of": "A"}]})
        }
        Mode::Jet { vars, generators, order_hint, point, ops, .. } => {
            let mut j = json!({"jet": "p", "vars": vars, "generators": generators, "order_hint": order_hint});
            if !point.is_empty() {
                j["point"] = json!(point);
            }
            let run: Vec<Value> = ops.iter().map(|op| json!({"op": op, "of": "p"})).collect();
            json!({"bind": [j], "run": run})
        }
        Mode::Apoint { classical, images, evaluate, .. } => {
            let imgs: Vec<Value> = images.iter().map(|s| rationals(s)).collect();
            let mut run = vec![json!({"op": "regularity", "of": "u"})];
            run.extend(evaluate.iter().map(|f| json!({"op": "evaluate", "at": "u", "f": f})));
            json!({"bind": [{"algebra": "A", "classical": classical}, {"point": "u", "algebra": "A", "images": imgs}], "run": run})
        }
    }
}

fn common(mode: &Mode) -> &Common {
    match mode {
        Mode::Run { common, .. }
        | Mode::Algebra { common, .. }
        | Mode::Jet { common, .. }
        | Mode::Apoint { common, .. } => common,
    }
}

fn load(mode: &Mode) -> Result<weiljets_cli::Session, CliError> {
    match mode {
        Mode::Run { session, .. } => {
            let text = std::fs::read_to_string(session)
                .map_err(|source| CliError::Io { path: session.display().to_string(), source })?;
            parse_session(&text)
        }
        other => parse_session_value(&shortcut_session(other)),
    }
}

fn report_timing(report: &Report) {
    for (entry, t) in report.entries.iter().zip(&report.timings) {
        eprintln!("[{}] {} {}: {:.3} ms", entry.index, entry.op, entry.subject, t.as_secs_f64() * 1e3);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = common(&cli.command);
    let session = match load(&cli.command) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let options = Options { fail_fast: c.fail_fast, verify_oracles: c.verify_oracles };
    let report = execute(&session, options);
    let format = match c.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    print!("{}", render(&report, format));
    if c.timing {
        report_timing(&report);
    }
    ExitCode::from(report.exit_code() as u8)
}
