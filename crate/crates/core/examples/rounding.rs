//! Outward rounding: every interval operation keeps the exact result inside.
//!
//! ```text
//! cargo run --example rounding
//! cargo run --example rounding --features hw-rounding
//! ```

use ivroot::float::{next_down, next_up, ulp};
use ivroot::report::hex_float;
use ivroot::round::{Active, Residual, Rounding, UpwardMode};
use ivroot::{parse, Interval};

fn main() {
    let (a, b) = (0.1, 0.2);
    println!("0.1 + 0.2 rounded to nearest  {}", hex_float(a + b));
    println!(
        "residual backend      down {}  up {}",
        hex_float(Residual::add_down(a, b)),
        hex_float(Residual::add_up(a, b))
    );
    println!(
        "rounding mode backend down {}  up {}",
        hex_float(UpwardMode::add_down(a, b)),
        hex_float(UpwardMode::add_up(a, b))
    );
    println!(
        "active backend        down {}  up {}",
        hex_float(Active::add_down(a, b)),
        hex_float(Active::add_up(a, b))
    );

    // exact operations are not widened
    println!(
        "\n1 + 2 up = {}, 1/3 in [{}, {}]",
        Active::add_up(1.0, 2.0),
        Active::div_down(1.0, 3.0),
        Active::div_up(1.0, 3.0)
    );

    let t = 1.0;
    println!(
        "\nneighbours of 1: {} and {}, ulp {:e}",
        next_down(t),
        next_up(t),
        ulp(t)
    );

    // a decimal literal that is not a binary64 number becomes a tight interval
    let tenth = parse("0.1").unwrap().eval_point(0.0);
    println!("0.1 as an interval: {tenth}, width {:e}", tenth.width());
    let x = Interval::new(-1.0, 2.0);
    println!("[-1, 2]^2 = {}, [-1, 2]*[-1, 2] = {}", x.sqr(), x * x);
}
