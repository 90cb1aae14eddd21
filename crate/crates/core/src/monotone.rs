//! Verified Newton iteration for functions whose derivative is bounded away
//! from zero.
//!
//! When `f' >= kappa > 0` on a box, `f` has at most one root there and the
//! iteration only ever needs enclosures of `f` at points and floating point
//! values of `f'`. The control flow is the one of
//! [`crate::point_newton::exact_newton_traced`] with interval values: a
//! point whose enclosure contains zero starts a zero expansion instead of a
//! comparison, and `tau_w` is raised to 16 times the widest point enclosure
//! seen so far.
//!
//! Decreasing functions are handled by solving for `-f`.

use crate::candidate::RootCandidate;
use crate::expand::{expand_zero, Expansion};
use crate::interval::{Interval, Sign};
use crate::point_newton::{side_step, SecantState};
use crate::problem::Problem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotoneConfig {
    /// Certified lower bound of `f'` (of `-f'` when decreasing) on the box.
    pub kappa: f64,
    pub tau_x: f64,
    /// Raised in place by the solver.
    pub tau_w: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Increasing,
    Decreasing,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Increasing => 1.0,
            Orientation::Decreasing => -1.0,
        }
    }
}

/// Evaluation steps before a run gives up and returns what it has.
const MAX_STEPS: usize = 100_000;

/// Root of an increasing `f` on `x`, or `None` when `x` certainly has none.
///
/// Panics if `kappa` or a tolerance is not positive.
pub fn solve_increasing(x: Interval, f: &Problem, cfg: MonotoneConfig) -> Option<RootCandidate> {
    let mut cfg = cfg;
    solve_monotone(x, f, Orientation::Increasing, &mut cfg)
}

/// Root of `f` on `x` for either orientation. `cfg.tau_w` is updated with
/// the inflated tolerance.
pub fn solve_monotone(
    x: Interval,
    f: &Problem,
    orientation: Orientation,
    cfg: &mut MonotoneConfig,
) -> Option<RootCandidate> {
    assert!(cfg.kappa > 0.0, "kappa must be positive, got {}", cfg.kappa);
    assert!(
        cfg.tau_x > 0.0 && cfg.tau_w > 0.0,
        "tolerances must be positive"
    );
    assert!(
        !x.is_empty() && x.is_bounded(),
        "monotone solver needs a bounded box"
    );
    let s = orientation.sign();
    let mut g = Increasing {
        f,
        s,
        kappa: cfg.kappa,
        tau_x: cfg.tau_x,
        tau_w: cfg.tau_w,
    };
    let found = g.run(x);
    cfg.tau_w = g.tau_w;
    let found = found?;
    Some(if s < 0.0 { found.negated() } else { found })
}

/// Zero expansion for a monotone function, stepping by `tau_x / 4` so a
/// cluster one step wide on each side stays well within `tau_x`.
pub fn expand_zero_monotone(
    z: f64,
    x: Interval,
    f: &Problem,
    cfg: &mut MonotoneConfig,
) -> Expansion {
    expand_zero(
        z,
        x,
        cfg.tau_x / 4.0,
        &mut cfg.tau_w,
        (Sign::Zero, Sign::Zero),
        |t| f.value(t),
    )
}

/// `s * f` seen as an increasing function.
struct Increasing<'a> {
    f: &'a Problem,
    s: f64,
    kappa: f64,
    tau_x: f64,
    tau_w: f64,
}

enum Outcome {
    Done(Interval),
    /// Expand the zero at `z` inside the current bracket, whose endpoint
    /// signs are known when they were established by the iteration.
    Expand {
        z: f64,
        bracket: Interval,
        edges: (Sign, Sign),
    },
}

impl Increasing<'_> {
    fn value(&mut self, t: f64) -> Interval {
        let w = self.f.value(t);
        let w = if self.s < 0.0 { -w } else { w };
        self.tau_w = self.tau_w.max(16.0 * w.width());
        w
    }

    fn slope_at(&self, t: f64) -> f64 {
        self.kappa.max(self.s * self.f.derivative_at(t))
    }

    fn run(&mut self, mut x: Interval) -> Option<RootCandidate> {
        loop {
            let w_minus = self.value(x.lo());
            let w_plus = self.value(x.hi());
            if w_minus.lo() > 0.0 || w_plus.hi() < 0.0 {
                return None;
            }
            let edges = (w_minus.sign(), w_plus.sign());
            let outcome = if w_minus.hi() >= 0.0 {
                Outcome::Expand {
                    z: x.lo(),
                    bracket: x,
                    edges,
                }
            } else if w_plus.lo() <= 0.0 {
                Outcome::Expand {
                    z: x.hi(),
                    bracket: x,
                    edges,
                }
            } else {
                self.iterate(x, w_minus, w_plus)
            };
            let e = match outcome {
                Outcome::Done(r) => {
                    return Some(RootCandidate::new(r, Sign::Neg, Sign::Pos, false))
                }
                Outcome::Expand { z, bracket, edges } => self.expand(z, bracket, edges),
            };
            if e.lo_sign == Sign::Pos {
                // g > 0 from the cluster on, any root is further left
                x = e.left?;
            } else if e.hi_sign == Sign::Neg {
                x = e.right?;
            } else {
                return Some(RootCandidate::new(e.cluster, e.lo_sign, e.hi_sign, true));
            }
        }
    }

    fn expand(&mut self, z: f64, x: Interval, edges: (Sign, Sign)) -> Expansion {
        let mut tau_w = self.tau_w;
        let step = self.tau_x / 4.0;
        let e = expand_zero(z, x, step, &mut tau_w, edges, |t| self.value(t));
        self.tau_w = self.tau_w.max(tau_w);
        e
    }

    /// The Newton/bisection loop on a box whose endpoint values are strictly
    /// negative and strictly positive.
    fn iterate(&mut self, x: Interval, mut w_minus: Interval, mut w_plus: Interval) -> Outcome {
        let (mut lo, mut hi) = (x.lo(), x.hi());
        let mut d_lo = f64::NAN;
        let mut d_hi = f64::NAN;
        let mut secant = SecantState::default();

        for _ in 0..MAX_STEPS {
            if hi - lo < self.tau_x || w_plus.hi() - w_minus.lo() < self.tau_w {
                return Outcome::Done(Interval::new(lo, hi));
            }

            let mut bisect = true;
            if -w_minus.lo() <= w_plus.hi() {
                if d_lo.is_nan() {
                    let d_k = self.slope_at(lo);
                    secant.observe(lo, d_k);
                    d_lo = d_k;
                    if let Some(t) = side_step(lo, w_minus.lo(), d_k, secant.h, hi - lo) {
                        let w = self.value(t);
                        if w.lo() > 0.0 {
                            (hi, w_plus, d_hi) = (t, w, f64::NAN);
                            bisect = false;
                        } else if w.hi() < 0.0 {
                            (lo, w_minus, d_lo) = (t, w, f64::NAN);
                        } else {
                            return expand_at(t, lo, hi);
                        }
                    }
                }
            } else if d_hi.is_nan() {
                let d_k = self.slope_at(hi);
                secant.observe(hi, d_k);
                d_hi = d_k;
                if let Some(back) = side_step(-hi, -w_plus.hi(), d_k, -secant.h, hi - lo) {
                    let t = -back;
                    let w = self.value(t);
                    if w.hi() < 0.0 {
                        (lo, w_minus, d_lo) = (t, w, f64::NAN);
                        bisect = false;
                    } else if w.lo() > 0.0 {
                        (hi, w_plus, d_hi) = (t, w, f64::NAN);
                    } else {
                        return expand_at(t, lo, hi);
                    }
                }
            }
            if !bisect {
                continue;
            }

            let t = lo / 2.0 + hi / 2.0;
            if !(lo < t && t < hi) {
                break;
            }
            let w = self.value(t);
            if w.lo() > 0.0 {
                (hi, w_plus, d_hi) = (t, w, f64::NAN);
            } else if w.hi() < 0.0 {
                (lo, w_minus, d_lo) = (t, w, f64::NAN);
            } else {
                return expand_at(t, lo, hi);
            }
        }
        Outcome::Done(Interval::new(lo, hi))
    }
}

fn expand_at(z: f64, lo: f64, hi: f64) -> Outcome {
    Outcome::Expand {
        z,
        bracket: Interval::new(lo, hi),
        edges: (Sign::Neg, Sign::Pos),
    }
}
