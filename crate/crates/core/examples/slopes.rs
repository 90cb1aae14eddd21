//! Natural extension, slope enclosure and centered form on shrinking boxes.
//! The centered form overestimates quadratically less as the box shrinks.
//!
//! ```text
//! cargo run --example slopes
//! ```

use ivroot::{parse, Interval};

fn main() {
    let f = parse("x^3 - 2*x^2 + x - 1").unwrap();
    let c = 1.5;
    println!("f = x^3 - 2x^2 + x - 1 about c = {c}");
    println!(
        "{:>8}  {:>12}  {:>12}  {:>12}",
        "radius", "natural", "centered", "slope width"
    );
    for k in 0..8 {
        let r = 0.5f64.powi(k);
        let x = Interval::new(c - r, c + r);
        let sp = f.eval_slope(c, x);
        let centered = f.centered_form(c, x);
        println!(
            "{r:8.5}  {:12.5e}  {:12.5e}  {:12.5e}",
            sp.range.width(),
            centered.width(),
            sp.slope.width()
        );
    }
    let df = f.derivative();
    let x = Interval::new(1.0, 2.0);
    println!(
        "\nover {x}: f' in {}, slope about {c} in {}",
        df.eval_interval(x),
        f.eval_slope(c, x).slope
    );
}
