//! The floating point modified Newton iteration on convex and concave
//! increasing functions. Once close to the root, Newton steps alternate
//! between its two sides.
//!
//! ```text
//! cargo run --example point_newton
//! ```

use ivroot::point_newton::{exact_newton_traced, StepKind};
use ivroot::Interval;

fn run(name: &str, f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64, x: Interval) {
    let trace = exact_newton_traced(x, &f, &df, 1e-14, 1e-300);
    println!("{name} on {x}");
    for it in &trace.iterates {
        let kind = match it.kind {
            StepKind::Newton => "newton",
            StepKind::Bisection => "bisect",
        };
        println!("  {kind}  t = {:<22}  f(t) = {:+.3e}", it.t, it.w);
    }
    match trace.result {
        Some(r) => println!("  root in {r}\n"),
        None => println!("  no sign change\n"),
    }
}

fn main() {
    run(
        "x^2 - 2",
        |t| t * t - 2.0,
        |t| 2.0 * t,
        Interval::new(0.0, 4.0),
    );
    run(
        "2 - (x - 4)^2",
        |t| 2.0 - (t - 4.0) * (t - 4.0),
        |t| -2.0 * (t - 4.0),
        Interval::new(0.0, 4.0),
    );
    run(
        "x + x^3/6 - 1",
        |t| t + t * t * t / 6.0 - 1.0,
        |t| 1.0 + t * t / 2.0,
        Interval::new(0.0, 2.0),
    );
}
