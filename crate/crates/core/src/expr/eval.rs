use super::Expr;
use crate::interval::Interval;

/// Result of slope evaluation about a center `c` over a box `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopePair {
    /// Encloses `f(c)`.
    pub value_at_center: Interval,
    /// Encloses `(f(t) - f(c)) / (t - c)` for every `t` in the box
    /// (and `f'(c)` at `t = c`).
    pub slope: Interval,
    /// Natural extension of `f` over the box, produced along the way.
    pub range: Interval,
}

impl Expr {
    /// Natural interval extension: encloses `f(t)` for every `t` in `x`.
    pub fn eval_interval(&self, x: Interval) -> Interval {
        match self {
            Expr::Const(c) => c.enclosure,
            Expr::Var => x,
            Expr::Neg(a) => -a.eval_interval(x),
            Expr::Add(a, b) => a.eval_interval(x) + b.eval_interval(x),
            Expr::Sub(a, b) => a.eval_interval(x) - b.eval_interval(x),
            Expr::Mul(a, b) => a.eval_interval(x) * b.eval_interval(x),
            Expr::Div(a, b) => a.eval_interval(x) / b.eval_interval(x),
            Expr::Pow(a, n) => a.eval_interval(x).powi(*n),
        }
    }

    /// Enclosure of `f(t)`.
    pub fn eval_point(&self, t: f64) -> Interval {
        self.eval_interval(Interval::point(t))
    }

    /// Plain binary64 evaluation, no guarantee attached.
    pub fn eval_f64(&self, t: f64) -> f64 {
        match self {
            Expr::Const(c) => c.nearest,
            Expr::Var => t,
            Expr::Neg(a) => -a.eval_f64(t),
            Expr::Add(a, b) => a.eval_f64(t) + b.eval_f64(t),
            Expr::Sub(a, b) => a.eval_f64(t) - b.eval_f64(t),
            Expr::Mul(a, b) => a.eval_f64(t) * b.eval_f64(t),
            Expr::Div(a, b) => a.eval_f64(t) / b.eval_f64(t),
            Expr::Pow(a, n) => a.eval_f64(t).powi(*n as i32),
        }
    }

    /// Slope enclosure of `f` about `c` over `x` by recursive slope arithmetic.
    ///
    /// Panics if `c` is not in `x`.
    pub fn eval_slope(&self, c: f64, x: Interval) -> SlopePair {
        assert!(x.contains(c), "slope center {c} outside {x:?}");
        let s = self.slope_rec(c, x);
        SlopePair {
            value_at_center: s.at_c,
            slope: s.slope,
            range: s.on_x,
        }
    }

    /// `(f(c) + s·(x - c)) ∩ f(x)`, the centered form intersected with the
    /// natural extension.
    pub fn centered_form(&self, c: f64, x: Interval) -> Interval {
        let s = self.eval_slope(c, x);
        let centered = s.value_at_center + s.slope * (x - c);
        centered.intersect(&s.range)
    }

    fn slope_rec(&self, c: f64, x: Interval) -> Triple {
        match self {
            Expr::Const(k) => Triple {
                on_x: k.enclosure,
                at_c: k.enclosure,
                slope: Interval::ZERO,
            },
            Expr::Var => Triple {
                on_x: x,
                at_c: Interval::point(c),
                slope: Interval::point(1.0),
            },
            Expr::Neg(a) => {
                let a = a.slope_rec(c, x);
                Triple {
                    on_x: -a.on_x,
                    at_c: -a.at_c,
                    slope: -a.slope,
                }
            }
            Expr::Add(a, b) => {
                let (a, b) = (a.slope_rec(c, x), b.slope_rec(c, x));
                Triple {
                    on_x: a.on_x + b.on_x,
                    at_c: a.at_c + b.at_c,
                    slope: a.slope + b.slope,
                }
            }
            Expr::Sub(a, b) => {
                let (a, b) = (a.slope_rec(c, x), b.slope_rec(c, x));
                Triple {
                    on_x: a.on_x - b.on_x,
                    at_c: a.at_c - b.at_c,
                    slope: a.slope - b.slope,
                }
            }
            Expr::Mul(a, b) => {
                let (a, b) = (a.slope_rec(c, x), b.slope_rec(c, x));
                Triple {
                    on_x: a.on_x * b.on_x,
                    at_c: a.at_c * b.at_c,
                    slope: a.on_x * b.slope + a.slope * b.at_c,
                }
            }
            Expr::Div(a, b) => {
                let (a, b) = (a.slope_rec(c, x), b.slope_rec(c, x));
                let at_c = a.at_c / b.at_c;
                Triple {
                    on_x: a.on_x / b.on_x,
                    at_c,
                    slope: (a.slope - at_c * b.slope) / b.on_x,
                }
            }
            Expr::Pow(a, n) => {
                let a = a.slope_rec(c, x);
                if *n == 0 {
                    return Triple {
                        on_x: Interval::point(1.0),
                        at_c: Interval::point(1.0),
                        slope: Interval::ZERO,
                    };
                }
                // a^(k+1) = a^k * a, slope by the product rule
                let mut slope = a.slope;
                for k in 1..*n {
                    slope = a.on_x.powi(k) * a.slope + slope * a.at_c;
                }
                Triple {
                    on_x: a.on_x.powi(*n),
                    at_c: a.at_c.powi(*n),
                    slope,
                }
            }
        }
    }
}

struct Triple {
    on_x: Interval,
    at_c: Interval,
    slope: Interval,
}
