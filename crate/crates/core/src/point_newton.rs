//! Floating point Newton iteration for an increasing function with a sign
//! change, biased so that consecutive residuals alternate in sign.
//!
//! The Newton step from `t` with value `w < 0` and slope `d > 0` is
//! `s = -w/d`. When the function is concave near `t` the plain step lands
//! short of the root, on the same side as `t`, and the bracket only shrinks
//! from one end. Using a curvature estimate `h` the step is stretched to
//! `s - h s²/d`, which overshoots the root by a second order amount instead.
//! Steps that would leave the current bracket or jump more than half of it
//! are replaced by bisection.
//!
//! The same state machine drives the verified [`crate::monotone`] solver, so
//! the curvature bookkeeping lives here in [`SecantState`].

use crate::float::next_up;
use crate::interval::Interval;

/// Curvature estimate from the two most recent distinct derivative samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecantState {
    /// Last derivative value, NaN before the first sample.
    pub d: f64,
    /// Where `d` was sampled, NaN before the first sample.
    pub t_d: f64,
    /// Second derivative estimate, 0 until two distinct samples exist.
    pub h: f64,
}

impl Default for SecantState {
    fn default() -> Self {
        SecantState {
            d: f64::NAN,
            t_d: f64::NAN,
            h: 0.0,
        }
    }
}

impl SecantState {
    /// Record the derivative `d_k` taken at `t_k`, refreshing `h` from the
    /// previous sample when it was taken elsewhere.
    pub fn observe(&mut self, t_k: f64, d_k: f64) {
        if !self.d.is_nan() && self.t_d != t_k {
            let h = (self.d - d_k) / (self.t_d - t_k);
            if h.is_finite() {
                self.h = h;
            }
        }
        self.d = d_k;
        self.t_d = t_k;
    }
}

/// The modified Newton point `t + s` for `w < 0`, `d > 0`.
///
/// `s = -w/d`, and when `h < 0` it becomes `s - h s²/d`. For `h >= 0` this is
/// the classic Newton step.
pub fn modified_step(t: f64, w: f64, d: f64, h: f64) -> f64 {
    t + step_length(w, d, h)
}

pub(crate) fn step_length(w: f64, d: f64, h: f64) -> f64 {
    let mut s = -w / d;
    if h < 0.0 {
        s -= h * s * s / d;
    }
    s
}

/// How a point of the iteration was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Newton,
    Bisection,
}

/// One evaluated point of an [`exact_newton_traced`] run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Iterate {
    pub t: f64,
    pub w: f64,
    pub kind: StepKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    /// `None` when the input had no sign change.
    pub result: Option<Interval>,
    pub iterates: Vec<Iterate>,
}

/// Hard cap on evaluations; a correct run needs far fewer.
const MAX_STEPS: usize = 10_000;

/// Short interval around the root of an increasing `f` on `x`.
///
/// `f` and `df` are evaluated in plain floating point. Returns `None` when
/// `f(lo) > 0` or `f(hi) < 0`, otherwise an interval whose endpoint values
/// have opposite (or vanishing) signs and whose width is below `tau_x` or
/// whose endpoint values differ by less than `tau_w`.
pub fn exact_newton<F, G>(x: Interval, f: F, df: G, tau_x: f64, tau_w: f64) -> Option<Interval>
where
    F: FnMut(f64) -> f64,
    G: FnMut(f64) -> f64,
{
    exact_newton_traced(x, f, df, tau_x, tau_w).result
}

/// [`exact_newton`] for an expression, using its symbolic derivative.
pub fn exact_newton_expr(x: Interval, f: &crate::Expr, tau_x: f64, tau_w: f64) -> Option<Interval> {
    let df = f.derivative();
    exact_newton(x, |t| f.eval_f64(t), |t| df.eval_f64(t), tau_x, tau_w)
}

/// [`exact_newton`] that also returns every evaluated point in order.
pub fn exact_newton_traced<F, G>(x: Interval, mut f: F, mut df: G, tau_x: f64, tau_w: f64) -> Trace
where
    F: FnMut(f64) -> f64,
    G: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = (x.lo(), x.hi());
    let (mut w_lo, mut w_hi) = (f(lo), f(hi));
    let mut iterates = Vec::new();
    if w_lo > 0.0 || w_hi < 0.0 {
        return Trace {
            result: None,
            iterates,
        };
    }
    // derivative already used at the current lower/upper endpoint
    let mut d_lo = f64::NAN;
    let mut d_hi = f64::NAN;
    let mut secant = SecantState::default();

    while iterates.len() < MAX_STEPS {
        if hi - lo < tau_x || w_hi - w_lo < tau_w {
            break;
        }
        // an exact zero ends the search
        if w_lo == 0.0 {
            hi = lo;
            break;
        }
        if w_hi == 0.0 {
            lo = hi;
            break;
        }

        let mut bisect = true;
        if -w_lo <= w_hi {
            if d_lo.is_nan() {
                let t_k = lo;
                let d_k = df(t_k);
                secant.observe(t_k, d_k);
                d_lo = d_k;
                if let Some(t_next) = side_step(t_k, w_lo, d_k, secant.h, hi - lo) {
                    let w = f(t_next);
                    iterates.push(Iterate {
                        t: t_next,
                        w,
                        kind: StepKind::Newton,
                    });
                    if w >= 0.0 {
                        (hi, w_hi, d_hi) = (t_next, w, f64::NAN);
                        bisect = false;
                    } else {
                        (lo, w_lo, d_lo) = (t_next, w, f64::NAN);
                    }
                }
            }
        } else if d_hi.is_nan() {
            // mirror image t -> -t, f -> -f of the branch above
            let t_k = hi;
            let d_k = df(t_k);
            secant.observe(t_k, d_k);
            d_hi = d_k;
            if let Some(back) = side_step(-t_k, -w_hi, d_k, -secant.h, hi - lo) {
                let t_next = -back;
                let w = f(t_next);
                iterates.push(Iterate {
                    t: t_next,
                    w,
                    kind: StepKind::Newton,
                });
                if w <= 0.0 {
                    (lo, w_lo, d_lo) = (t_next, w, f64::NAN);
                    bisect = false;
                } else {
                    (hi, w_hi, d_hi) = (t_next, w, f64::NAN);
                }
            }
        }
        if !bisect {
            continue;
        }

        let t_next = lo / 2.0 + hi / 2.0;
        if !(lo < t_next && t_next < hi) {
            break;
        }
        let w = f(t_next);
        iterates.push(Iterate {
            t: t_next,
            w,
            kind: StepKind::Bisection,
        });
        if w > 0.0 {
            (hi, w_hi, d_hi) = (t_next, w, f64::NAN);
        } else {
            (lo, w_lo, d_lo) = (t_next, w, f64::NAN);
        }
    }
    Trace {
        result: Some(Interval::new(lo, hi)),
        iterates,
    }
}

/// Modified Newton point from the lower end `t` of a bracket of width
/// `width`, or `None` when bisection should be used instead.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // a NaN derivative also falls back to bisection
pub(crate) fn side_step(t: f64, w: f64, d: f64, h: f64, width: f64) -> Option<f64> {
    if !(d > 0.0) {
        return None;
    }
    let s = step_length(w, d, h);
    if !s.is_finite() || 2.0 * s > width {
        return None;
    }
    let t_next = t + s;
    if t_next != t || w == 0.0 {
        return Some(t_next);
    }
    // the root is less than an ulp away: probe the neighbour, unless that is
    // already the other end of the bracket
    let up = next_up(t);
    (up < t + width).then_some(up)
}
