//! A function together with its derivative and evaluation counters.

use std::cell::Cell;

use serde::Serialize;

use crate::expr::{Expr, SlopePair};
use crate::interval::Interval;

/// Number of evaluations of each kind performed through a [`Problem`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EvalCounts {
    /// Extensions of `f` over boxes of positive width.
    pub box_evals: u64,
    /// Enclosures of `f` at single points.
    pub point_evals: u64,
    /// Slope enclosures over boxes.
    pub slope_evals: u64,
    /// Extensions of `f'` over boxes.
    pub derivative_box_evals: u64,
    /// Floating point values of `f'`.
    pub derivative_point_evals: u64,
}

impl EvalCounts {
    pub fn total(&self) -> u64 {
        self.box_evals
            + self.point_evals
            + self.slope_evals
            + self.derivative_box_evals
            + self.derivative_point_evals
    }

    /// Evaluations that work on boxes rather than points.
    pub fn on_boxes(&self) -> u64 {
        self.box_evals + self.slope_evals + self.derivative_box_evals
    }
}

/// `f` and `f'` as expressions, with every evaluation counted.
///
/// The counters use interior mutability so a `&Problem` can be shared by
/// the routines of one solve; a `Problem` is not meant to be shared across
/// threads.
#[derive(Debug, Clone)]
pub struct Problem {
    f: Expr,
    df: Expr,
    box_evals: Cell<u64>,
    point_evals: Cell<u64>,
    slope_evals: Cell<u64>,
    derivative_box_evals: Cell<u64>,
    derivative_point_evals: Cell<u64>,
}

fn bump(c: &Cell<u64>) {
    c.set(c.get() + 1);
}

impl Problem {
    pub fn new(f: Expr) -> Problem {
        let df = f.derivative();
        Problem::with_derivative(f, df)
    }

    /// Use `df` as the derivative of `f`. The caller is responsible for it
    /// really being the derivative.
    pub fn with_derivative(f: Expr, df: Expr) -> Problem {
        Problem {
            f,
            df,
            box_evals: Cell::new(0),
            point_evals: Cell::new(0),
            slope_evals: Cell::new(0),
            derivative_box_evals: Cell::new(0),
            derivative_point_evals: Cell::new(0),
        }
    }

    pub fn f(&self) -> &Expr {
        &self.f
    }

    pub fn df(&self) -> &Expr {
        &self.df
    }

    /// Natural extension of `f` over `x`.
    pub fn range(&self, x: Interval) -> Interval {
        if x.is_point() {
            bump(&self.point_evals);
        } else {
            bump(&self.box_evals);
        }
        self.f.eval_interval(x)
    }

    /// Enclosure of `f(t)`.
    pub fn value(&self, t: f64) -> Interval {
        bump(&self.point_evals);
        self.f.eval_point(t)
    }

    /// Slope enclosure about `c` over `x`; the natural extension comes along.
    pub fn slope(&self, c: f64, x: Interval) -> SlopePair {
        bump(&self.slope_evals);
        self.f.eval_slope(c, x)
    }

    /// Natural extension of `f'` over `x`.
    pub fn derivative_range(&self, x: Interval) -> Interval {
        bump(&self.derivative_box_evals);
        self.df.eval_interval(x)
    }

    /// Floating point value of `f'(t)`, no guarantee attached.
    pub fn derivative_at(&self, t: f64) -> f64 {
        bump(&self.derivative_point_evals);
        self.df.eval_f64(t)
    }

    pub fn counts(&self) -> EvalCounts {
        EvalCounts {
            box_evals: self.box_evals.get(),
            point_evals: self.point_evals.get(),
            slope_evals: self.slope_evals.get(),
            derivative_box_evals: self.derivative_box_evals.get(),
            derivative_point_evals: self.derivative_point_evals.get(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    #[test]
    fn counts_by_kind() {
        let p = Problem::new(parse("x^2 - 2").unwrap());
        p.value(1.0);
        p.range(Interval::point(3.0));
        p.range(Interval::new(0.0, 1.0));
        p.slope(0.5, Interval::new(0.0, 1.0));
        p.derivative_range(Interval::new(0.0, 1.0));
        assert_eq!(p.derivative_at(3.0), 6.0);
        let c = p.counts();
        assert_eq!(c.point_evals, 2);
        assert_eq!(c.on_boxes(), 3);
        assert_eq!(c.total(), 6);
    }
}
