//! One interval Newton contraction at a time.
//!
//! ```text
//! cargo run --example contraction
//! ```

use ivroot::contract::contract;
use ivroot::Interval;

fn show(x: Interval, t: f64, w: Interval, d: Interval) {
    let out = contract(x, t, w, d);
    println!("x = {x}, t = {t}, f(t) in {w}, slope in {d}");
    if out.parts.is_empty() {
        println!("  no root in x");
    }
    for p in &out.parts {
        let sign =
            |s: Option<ivroot::Sign>| s.map_or("old".to_string(), |s| format!("{:+}", s.as_i8()));
        println!(
            "  keep {}  signs {} {}",
            p.x,
            sign(p.lo_sign),
            sign(p.hi_sign)
        );
    }
    println!("  gap certified: {}\n", out.gap_certified);
}

fn main() {
    // the slope straddles zero: the middle of the box is cut out
    show(
        Interval::new(0.0, 4.0),
        2.0,
        Interval::point(-1.0),
        Interval::new(-1.0, 1.0),
    );
    // increasing function: only the right of t can hold a root
    show(
        Interval::new(0.0, 4.0),
        1.0,
        Interval::new(-0.5, -0.25),
        Interval::new(1.0, 2.0),
    );
    // decreasing function, root to the left of t
    show(
        Interval::new(-3.0, 3.0),
        0.5,
        Interval::point(-2.0),
        Interval::new(-4.0, -1.0),
    );
    // the Newton step leaves the box: x is root-free
    show(
        Interval::new(0.0, 1.0),
        0.5,
        Interval::point(-10.0),
        Interval::new(1.0, 2.0),
    );
}
