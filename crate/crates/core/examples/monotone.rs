//! The monotone solver needs only point enclosures of f and floating point
//! values of f'.
//!
//! ```text
//! cargo run --example monotone
//! ```

use ivroot::monotone::{solve_monotone, MonotoneConfig, Orientation};
use ivroot::{parse, Interval, Problem};

fn main() {
    let cases = [
        (
            "x^3 + x - 1",
            Interval::new(0.0, 1.0),
            1.0,
            Orientation::Increasing,
        ),
        (
            "x^5 + 3*x + 1",
            Interval::new(-1.0, 1.0),
            3.0,
            Orientation::Increasing,
        ),
        (
            "1 - x - x^3",
            Interval::new(-2.0, 2.0),
            1.0,
            Orientation::Decreasing,
        ),
        (
            "x + 10",
            Interval::new(0.0, 1.0),
            1.0,
            Orientation::Increasing,
        ),
    ];
    for (text, x, kappa, orientation) in cases {
        let p = Problem::new(parse(text).unwrap());
        let mut cfg = MonotoneConfig {
            kappa,
            tau_x: 1e-12,
            tau_w: 1e-300,
        };
        let found = solve_monotone(x, &p, orientation, &mut cfg);
        let c = p.counts();
        match found {
            Some(r) => println!("{text:<16} root in {}  ({})", r.interval, r.status.as_str()),
            None => println!("{text:<16} no root in {x}"),
        }
        println!(
            "{:16} {} point values, {} derivative samples, {} box evaluations",
            "",
            c.point_evals,
            c.derivative_point_evals,
            c.on_boxes()
        );
    }
}
