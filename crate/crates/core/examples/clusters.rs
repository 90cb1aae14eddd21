//! Multiple roots come back as a few clusters, not as thousands of tiny
//! boxes.
//!
//! ```text
//! cargo run --example clusters
//! ```

use ivroot::solver::{solve, SolverConfig};
use ivroot::{parse, Expr, Interval};

fn main() {
    let horner = Expr::horner(&[64.0, -192.0, 240.0, -160.0, 60.0, -12.0, 1.0]);
    let cases = [
        ("x^2", parse("x^2").unwrap(), Interval::new(-10.0, 10.0)),
        (
            "(x-1)^3*(x-2)",
            parse("(x-1)^3*(x-2)").unwrap(),
            Interval::new(-10.0, 10.0),
        ),
        ("(x-2)^6 expanded", horner, Interval::new(0.0, 4.0)),
        (
            "x^2 - 1e-14",
            parse("x^2 - 1e-14").unwrap(),
            Interval::new(-1.0, 1.0),
        ),
    ];
    let cfg = SolverConfig::new(1e-6, 1e-6);
    for (name, f, x) in cases {
        let sol = solve(&f, x, &cfg).expect("solvable");
        println!("{name} on {x}: {} candidates", sol.roots.len());
        for r in &sol.roots {
            println!(
                "  {}  width {:.2e}  {}",
                r.interval,
                r.interval.width(),
                r.status.as_str()
            );
        }
        println!("  tau_w grew to {:.2e}", sol.stats.final_tau_w);
    }
}
