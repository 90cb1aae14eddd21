//! Command line front end.
//!
//! Exit status: 0 on success, 1 when the family sweep misses a root, 2 on
//! usage, parse or domain errors, 3 when the iteration budget runs out
//! (partial results are still printed).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ivroot::polyfam::run_family;
use ivroot::report::SolveReport;
use ivroot::solver::{solve, SolveError, SolverConfig};
use ivroot::{parse, Interval};

#[derive(Parser)]
#[command(
    name = "ivroot",
    version,
    about = "Verified enclosures of all real roots of f(x) = 0"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enclose every root of an expression in [lo, hi].
    ///
    /// Expressions use the variable x, decimal numbers, + - * /, unary minus,
    /// parentheses and integer powers: "(x-1)*(x-2)^3 - 1e-3*x".
    Solve(SolveArgs),
    /// Solve every member of the polynomial stress family and report misses.
    Family(FamilyArgs),
}

#[derive(Args)]
struct Tolerances {
    /// Boxes narrower than this are reported.
    #[arg(long, default_value_t = 1e-6)]
    tau_x: f64,
    /// Function values this close to zero count as zero.
    #[arg(long, default_value_t = 1e-6)]
    tau_w: f64,
    /// Cluster step; defaults to the square root of tau-x.
    #[arg(long)]
    tau_c: Option<f64>,
    /// Work items processed before giving up.
    #[arg(long = "max-iter", default_value_t = 1_000_000)]
    max_iter: u64,
}

impl Tolerances {
    fn config(&self) -> SolverConfig {
        let cfg = SolverConfig::new(self.tau_x, self.tau_w).with_max_iterations(self.max_iter);
        match self.tau_c {
            Some(c) => cfg.with_tau_c(c),
            None => cfg,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    expr: String,
    #[arg(long, allow_negative_numbers = true)]
    lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    hi: f64,
    #[command(flatten)]
    tol: Tolerances,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long, default_value_t = 6)]
    max_degree: u32,
    #[command(flatten)]
    tol: Tolerances,
    /// Write one CSV row per member here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; one per core by default.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Family(args) => run_family_cmd(args),
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("ivroot: {msg}");
    ExitCode::from(2)
}

fn run_solve(args: SolveArgs) -> ExitCode {
    let f = match parse(&args.expr) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("ivroot: {e}");
            eprintln!("  {}", args.expr);
            eprintln!("  {}^", " ".repeat(e.position));
            return ExitCode::from(2);
        }
    };
    let x = match Interval::try_new(args.lo, args.hi) {
        Ok(x) => x,
        Err(e) => return usage_error(e),
    };
    let cfg = args.tol.config();
    let (solution, code) = match solve(&f, x, &cfg) {
        Ok(s) => (s, 0),
        Err(SolveError::IterationBudgetExceeded { partial }) => {
            eprintln!(
                "ivroot: iteration budget of {} exhausted, results are partial",
                cfg.max_iterations
            );
            (*partial, 3)
        }
        Err(e) => return usage_error(e),
    };
    let report = SolveReport::new(&solution, &cfg);
    let text = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    // a closed pipe is not an error worth reporting
    let _ = io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(code)
}

fn run_family_cmd(args: FamilyArgs) -> ExitCode {
    if args.m == 0 || args.max_degree == 0 {
        return usage_error("--m and --max-degree must be positive");
    }
    let cfg = args.tol.config();
    if let Err(e) = cfg.validate() {
        return usage_error(e);
    }
    let report = run_family(args.m, args.max_degree, &cfg, args.jobs);
    if let Some(path) = &args.out {
        let written = File::create(path).and_then(|f| report.write_csv(BufWriter::new(f)));
        if let Err(e) = written {
            eprintln!("ivroot: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match args.format {
        Format::Text => {
            let _ = write!(
                io::stdout().lock(),
                "members          {}\nskipped inexact  {}\nmissed roots     {}\n\
                 stray candidates {}\nout of budget    {}\nelapsed          {} ms\n",
                report.specs,
                report.skipped_overflow,
                report.missed_roots,
                report.stray_candidates,
                report.incomplete,
                report.elapsed_ms
            );
        }
        Format::Json => {
            let json = serde_json::to_string_pretty(&report).expect("report serialises");
            let _ = writeln!(io::stdout().lock(), "{json}");
        }
    }
    if !report.is_sound() {
        ExitCode::from(1)
    } else if report.incomplete > 0 {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
