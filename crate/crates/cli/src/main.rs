//! `buchi`: exact experiments around Büchi's problem for function fields.
//!
//! Every subcommand prints one JSON report on stdout. Exit status is 0 on
//! success, 1 on usage or input errors, 2 when a mathematical verification
//! fails; in the last case the report carries the witness.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "buchi", version, about = "Büchi's problem for function fields: exact checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zero profile of a rational function in x and whether it is k-powerful.
    Powerful {
        expr: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Classify a form given as JSON {"n": .., "coeffs": [..]}.
    Classify { form: String },
    /// Evaluate a form at integer λ in A..B (inclusive) and count powerful values.
    Census {
        form: String,
        #[arg(long, value_name = "A..B", allow_hyphen_values = true)]
        lambda_range: String,
        #[arg(long, default_value_t = 2)]
        mu: u32,
        #[arg(long, default_value_t = 0)]
        g: u64,
        /// Also evaluate at [1:0].
        #[arg(long)]
        include_infinity: bool,
    },
    /// Exact rational n-powerful locus of a form in the Other class.
    Locus {
        form: String,
        #[arg(long)]
        n: u32,
    },
    /// Check or fit a sequence stored as a JSON array of strings.
    Sequence {
        action: SequenceAction,
        file: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Search square sequences with second differences 2 over seed ranges.
    SearchInt {
        #[arg(long, value_name = "A..B", allow_hyphen_values = true)]
        x1: String,
        #[arg(long, value_name = "A..B", allow_hyphen_values = true)]
        x2: String,
        #[arg(long, default_value_t = 4)]
        min_len: usize,
        #[arg(long, default_value_t = buchi_core::buchi::DEFAULT_MAX_LEN)]
        max_len: usize,
        /// Report only sequences that are not of the form (i+ν)^2.
        #[arg(long)]
        nontrivial_only: bool,
    },
    /// Explicit constants; N and G accept a single value or a range A..B.
    Bound {
        #[arg(long)]
        n: String,
        #[arg(long, default_value = "0")]
        g: String,
    },
    /// Characteristic-p witness (t+x^q)(t+x) and its verification.
    CharpExample {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Number of probes outside F_q.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Points b where s0 + c*t0 has only multiple zeros.
    LemmaLinear {
        #[arg(long)]
        c: String,
    },
    /// Zeuthen identity for the correspondence parametrized by (u, v).
    Zeuthen {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Randomized theorem harness.
    Harness {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "A..B", default_value = "-50..49", allow_hyphen_values = true)]
        lambda_range: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SequenceAction {
    Verify,
    ToForm,
}

/// Failure modes of a subcommand.
pub enum Failure {
    Usage(String),
    /// Verification failed; the value is the witness.
    Verification(Value),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub struct Outcome {
    pub inputs: Value,
    pub outputs: Value,
    pub seed: Option<u64>,
    /// Set when the computation finished but a check failed.
    pub failed: bool,
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Powerful { .. } => "powerful",
        Command::Classify { .. } => "classify",
        Command::Census { .. } => "census",
        Command::Locus { .. } => "locus",
        Command::Sequence { .. } => "sequence",
        Command::SearchInt { .. } => "search-int",
        Command::Bound { .. } => "bound",
        Command::CharpExample { .. } => "charp-example",
        Command::LemmaLinear { .. } => "lemma-linear",
        Command::Zeuthen { .. } => "zeuthen",
        Command::Harness { .. } => "harness",
    }
}

fn dispatch(c: &Command) -> Result<Outcome, Failure> {
    use commands::*;
    match c {
        Command::Powerful { expr, k } => powerful(expr, *k),
        Command::Classify { form } => classify(form),
        Command::Census {
            form,
            lambda_range,
            mu,
            g,
            include_infinity,
        } => census(form, lambda_range, *mu, *g, *include_infinity),
        Command::Locus { form, n } => locus(form, *n),
        Command::Sequence { action, file, n } => {
            sequence(matches!(action, SequenceAction::ToForm), file, *n)
        }
        Command::SearchInt {
            x1,
            x2,
            min_len,
            max_len,
            nontrivial_only,
        } => search_int(x1, x2, *min_len, *max_len, *nontrivial_only),
        Command::Bound { n, g } => bound(n, g),
        Command::CharpExample { p, e, samples } => charp_example(*p, *e, *samples),
        Command::LemmaLinear { c } => lemma_linear(c),
        Command::Zeuthen { u, v } => zeuthen(u, v),
        Command::Harness {
            n,
            trials,
            seed,
            lambda_range,
        } => harness(*n, *trials, *seed, lambda_range),
    }
}

fn report(sub: &str, inputs: Value, outputs: Value, seed: Option<u64>, ms: u128) -> String {
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "subcommand": sub,
        "inputs": inputs,
        "outputs": outputs,
        "timing_ms": ms as u64,
        "seed": seed,
    });
    serde_json::to_string_pretty(&v).expect("serializable")
}

/// Writes the report; a closed stdout is not an error worth a panic.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let sub = name(&cli.command);
    let start = Instant::now();
    match dispatch(&cli.command) {
        Ok(o) => {
            emit(&report(sub, o.inputs, o.outputs, o.seed, start.elapsed().as_millis()));
            ExitCode::from(if o.failed { 2 } else { 0 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {sub}: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(witness)) => {
            emit(&report(
                sub,
                Value::Null,
                json!({ "verification_failed": witness }),
                None,
                start.elapsed().as_millis(),
            ));
            eprintln!("error: {sub}: verification failed");
            ExitCode::from(2)
        }
    }
}
