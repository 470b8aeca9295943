//! Batch command-line front end: single-binary, subcommand style, JSON in
//! and out. `run` dispatches one operation; `selftest` executes the module
//! invariant suites.
//!
//! Exit codes: 0 success, 1 selftest failure, 2 schema error, 3 domain
//! error, 4 numerical failure.

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

mod ops;

#[derive(Parser)]
#[command(name = "symcone", version, about = "Jordan-algebra symmetric cone toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one operation from a JSON request
    /// {"module": ..., "op": ..., "params": {...}, "seed": ...}.
    Run {
        /// Input file (defaults to stdin).
        #[arg(long = "in")]
        input: Option<String>,
        /// Output file (defaults to stdout).
        #[arg(long = "out")]
        output: Option<String>,
        /// Seed for sampled checks (overrides the request's seed).
        #[arg(long)]
        seed: Option<u64>,
        /// Tolerance override for threshold-style operations.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run the invariant suites and print one line per check.
    Selftest {
        /// Suite: algebra | cone | boundary | indices | semigroup | all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { input, output, seed, tol } => run_cmd(input, output, seed, tol),
        Command::Selftest { suite, seed } => selftest_cmd(&suite, seed),
    }
}

fn run_cmd(input: Option<String>, output: Option<String>, seed: Option<u64>, tol: Option<f64>) -> ExitCode {
    let text = match input {
        Some(path) => match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => return emit_error(&output, 2, format!("cannot read {path}: {e}")),
        },
        None => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                return emit_error(&output, 2, format!("cannot read stdin: {e}"));
            }
            buf
        }
    };
    let request: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return emit_error(&output, 2, format!("invalid JSON: {e}")),
    };
    let module = request.get("module").and_then(Value::as_str).unwrap_or("");
    let op = request.get("op").and_then(Value::as_str).unwrap_or("");
    let params = request.get("params").cloned().unwrap_or(Value::Null);
    let seed = seed.or_else(|| request.get("seed").and_then(Value::as_u64)).unwrap_or(0);
    let ctx = ops::Ctx { seed, tol };
    match ops::dispatch(module, op, &params, &ctx) {
        Ok(result) => {
            emit(&output, &json!({"ok": true, "result": result}));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = match e.category() {
                symcone::ErrorCategory::Schema => 2,
                symcone::ErrorCategory::Domain => 3,
                symcone::ErrorCategory::Numerical => 4,
            };
            emit(
                &output,
                &json!({"ok": false, "error": {"category": category_name(&e), "message": e.to_string()}}),
            );
            ExitCode::from(code)
        }
    }
}

fn category_name(e: &symcone::Error) -> &'static str {
    match e.category() {
        symcone::ErrorCategory::Schema => "schema",
        symcone::ErrorCategory::Domain => "domain",
        symcone::ErrorCategory::Numerical => "numerical",
    }
}

fn emit(output: &Option<String>, v: &Value) {
    let text = serde_json::to_string(v).expect("serializable");
    match output {
        Some(path) => std::fs::write(path, text + "\n").expect("write output"),
        None => println!("{text}"),
    }
}

fn emit_error(output: &Option<String>, code: u8, message: String) -> ExitCode {
    emit(output, &json!({"ok": false, "error": {"category": "schema", "message": message}}));
    ExitCode::from(code)
}

fn selftest_cmd(suite: &str, seed: u64) -> ExitCode {
    let Some(suite) = symcone::selftest::Suite::from_name(suite) else {
        eprintln!("unknown suite '{suite}' (expected algebra|cone|boundary|indices|semigroup|all)");
        return ExitCode::from(2);
    };
    let t0 = std::time::Instant::now();
    let reports = symcone::selftest::run(suite, seed);
    let mut total = 0usize;
    let mut failed = 0usize;
    for rep in &reports {
        for c in &rep.checks {
            total += 1;
            if !c.pass {
                failed += 1;
            }
            println!(
                "[{}] {:<40} {} worst={:.3e} ({})",
                rep.suite,
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.worst,
                c.detail
            );
        }
        println!("[{}] suite finished in {:.2}s", rep.suite, rep.elapsed_s);
    }
    println!(
        "selftest {}: {} checks, {} failures, {:.2}s",
        if failed == 0 { "pass" } else { "FAIL" },
        total,
        failed,
        t0.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
