mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "hermeq", version, about = "Hermite forms, invariant orders and equivalence of integer polynomials")]
struct Cli {
    /// Also write a run manifest (command, inputs, output, timing) to this file.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

/// A polynomial as `{"coeffs": [...]}` in ascending order, inline or as `@file`.
#[derive(Args, Debug, Clone)]
struct PolyArg {
    #[arg(long)]
    poly: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hermite's decomposable form [f].
    Form(PolyArg),
    /// Discriminant of f.
    Disc(PolyArg),
    /// The lattice I_f(k) (k = 0 gives the invariant order R_f).
    Order {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Norm form of I_f(k) over R_f.
    Normform {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        k: usize,
    },
    /// Z-equivalence of two polynomials: g(X) = +-f(+-X + a).
    CheckZ {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        other: String,
    },
    /// GL2(Z) witness for a generator beta of Z[alpha], given by (b_2, ..., b_n).
    CheckGl2 {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        beta: String,
        /// Second generator; tests whether its minimal polynomial is GL2-related to that of beta.
        #[arg(long)]
        target: Option<String>,
    },
    /// Hermite equivalence certified by the root expression beta = expr(alpha).
    CheckHermite {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        other: String,
        #[arg(long)]
        expr: String,
    },
    /// GL2(Z) classes of a table of generators, compared with the printed classes.
    Partition {
        /// Table fixture file, or `builtin:1`, `builtin:2`, `builtin:3`.
        #[arg(long)]
        table: String,
        /// Evaluate pairs on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Hermite equivalent reducible pair X f(X), X f*(X) with its witness.
    ReduciblePair(PolyArg),
    /// Families of Hermite equivalent, GL2-inequivalent polynomials.
    Family {
        #[command(subcommand)]
        action: FamilyCmd,
    },
    /// Pairs of ternary quadratic forms attached to quartics.
    Quartic {
        #[command(subcommand)]
        action: QuarticCmd,
    },
    /// Height, degree and class-splitting bounds.
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        disc: String,
        #[arg(long)]
        monic: bool,
    },
    /// Runs every reproducibility check and reports pass/fail per criterion.
    ReproduceAll {
        /// Directory with table1.json, table2.json, table3.json replacing the built-in fixtures.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyCmd {
    /// The polynomials a, b, h, k and their identities.
    Kit {
        #[arg(long)]
        n: usize,
    },
    /// Smallest admissible parameters (p, c, t).
    FindParams {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        monic: bool,
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
    },
    /// Generates and certifies one pair.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        t: u64,
        /// Defaults to the smallest admissible prime for n.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum QuarticCmd {
    /// Doubled Gram matrices (A0, B_f).
    Iota(PolyArg),
    /// Checks the stored transformation between the two example quartics.
    VerifyExample,
    /// Bounded search for a generator of I_f(1) over R_f.
    PrincipalEvidence {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, default_value_t = hermeq_core::reproduce::PRINCIPALITY_BOUND)]
        bound: u64,
    },
}

/// Result of a command: JSON for stdout and whether the answer is affirmative.
pub struct Outcome {
    pub output: Value,
    pub affirmative: bool,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let result = commands::run(&cli.command);
    let elapsed = start.elapsed();
    let (code, output) = match result {
        Ok(o) => {
            let text = serde_json::to_string_pretty(&o.output).expect("serializable");
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            (if o.affirmative { 0 } else { 1 }, Some(o.output))
        }
        Err(e) => {
            eprintln!("error: {e}");
            (2, None)
        }
    };
    if let Some(path) = &cli.manifest {
        let manifest = json!({
            "command": argv.iter().skip(1).find(|a| !a.starts_with('-')),
            "inputs": argv.get(1..).unwrap_or_default(),
            "outputs": output,
            "exit_code": code,
            "timings": { "seconds": elapsed.as_secs_f64() },
            "library_version": env!("CARGO_PKG_VERSION"),
            "seed": Value::Null,
        });
        if let Err(e) = std::fs::write(path, serde_json::to_string_pretty(&manifest).expect("serializable")) {
            eprintln!("error: writing manifest {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
