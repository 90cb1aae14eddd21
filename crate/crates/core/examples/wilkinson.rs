//! The quintic (x-1)(x-2)(x-3)(x-4)(x-5) on [1, 5], in product form and in
//! expanded Horner form.
//!
//! ```text
//! cargo run --example wilkinson
//! ```

use ivroot::solver::{solve, SolverConfig};
use ivroot::{parse, Expr, Interval};

fn show(name: &str, f: &Expr) {
    let cfg = SolverConfig::new(1e-6, 1e-6).with_tau_c(1e-3);
    let sol = solve(f, Interval::new(1.0, 5.0), &cfg).expect("solvable");
    println!("{name}: {} candidates", sol.roots.len());
    for r in &sol.roots {
        println!(
            "  [{:.12}, {:.12}]  width {:.1e}  {}",
            r.interval.lo(),
            r.interval.hi(),
            r.interval.width(),
            r.status.as_str()
        );
    }
    let s = &sol.stats;
    println!(
        "  {} evaluations, {} contractions, {} bisections, {} handoffs\n",
        s.evaluations, s.contractions, s.bisections, s.handoffs
    );
}

fn main() {
    let product = parse("(x-1)*(x-2)*(x-3)*(x-4)*(x-5)").unwrap();
    let horner = Expr::horner(&[-120.0, 274.0, -225.0, 85.0, -15.0, 1.0]);
    show("product form", &product);
    show("Horner form", &horner);
}
