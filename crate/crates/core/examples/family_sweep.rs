//! Solve every member of the polynomial stress family and report coverage.
//!
//! ```text
//! cargo run --release --example family_sweep -- [m] [max_degree] [tau_x]
//! ```

use ivroot::polyfam::run_family;
use ivroot::solver::SolverConfig;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let m: u32 = args.first().map_or(2, |s| s.parse().expect("m"));
    let d_max: u32 = args.get(1).map_or(6, |s| s.parse().expect("max degree"));
    let tau_x: f64 = args.get(2).map_or(1e-6, |s| s.parse().expect("tau_x"));

    let cfg = SolverConfig::new(tau_x, 1e-6).with_tau_c(tau_x.sqrt().max(1e-3));
    let report = run_family(m, d_max, &cfg, None);

    println!(
        "m = {m}, degree <= {d_max}, tau_x = {tau_x:e}, tau_c = {:e}",
        cfg.tau_c
    );
    println!(
        "members solved   {}",
        report.specs - report.skipped_overflow
    );
    println!("skipped (inexact){}", report.skipped_overflow);
    println!("missed roots     {}", report.missed_roots);
    println!("stray candidates {}", report.stray_candidates);
    println!("out of budget    {}", report.incomplete);
    for (k, n) in &report.worst_crowding {
        println!("multiplicity {k:2}: at most {n} candidates near one root");
    }
    println!("wall time        {} ms", report.elapsed_ms);

    let worst = report.rows.iter().max_by_key(|r| r.candidate_count);
    if let Some(r) = worst {
        println!("most candidates: {} with {}", r.spec_id, r.candidate_count);
    }
    let slowest = report.rows.iter().max_by_key(|r| r.elapsed_us);
    if let Some(r) = slowest {
        println!("slowest: {} in {} us", r.spec_id, r.elapsed_us);
    }
}
