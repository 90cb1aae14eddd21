//! One interval Newton contraction with certified endpoint signs.
//!
//! Given a box `x`, an expansion point `t ∈ x`, an enclosure `w ∋ f(t)` with
//! `0 ∉ w` and an enclosure `d` of the slopes of `f` about `t` over `x`, the
//! roots of `f` in `x` lie in at most two sub-intervals. Every endpoint created
//! here is computed with upward rounding only, in an evaluation order that
//! moves it away from the roots, and is pushed one more ulp outward when the
//! computation happened to be exact. The sign of `f` at each new endpoint is
//! therefore known without evaluating `f` there.

use crate::float::{next_down, next_up};
use crate::interval::{Interval, Sign};
use crate::round::{add_is_exact, div_is_exact, Active, Rounding};

/// One sub-interval returned by [`contract`].
///
/// `lo_sign`/`hi_sign` are `Some` for endpoints created by the contraction
/// (carrying the certified sign of `f` there) and `None` for endpoints that
/// are endpoints of the input box, whose sign the caller already knows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Part {
    pub x: Interval,
    pub lo_sign: Option<Sign>,
    pub hi_sign: Option<Sign>,
}

impl Part {
    fn old(x: Interval) -> Part {
        Part {
            x,
            lo_sign: None,
            hi_sign: None,
        }
    }

    fn mirrored(self) -> Part {
        Part {
            x: -self.x,
            lo_sign: self.hi_sign,
            hi_sign: self.lo_sign,
        }
    }

    fn negated(self) -> Part {
        Part {
            x: self.x,
            lo_sign: self.lo_sign.map(|s| -s),
            hi_sign: self.hi_sign.map(|s| -s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractOutcome {
    /// Zero, one or two parts, left to right.
    pub parts: Vec<Part>,
    /// A neighbourhood of `t` was proven root-free and removed.
    pub gap_certified: bool,
}

/// Flip `w` so that its upper bound is negative.
///
/// Returns `true` in the first component when `f` has to be replaced by `-f`;
/// the caller negates signs derived in the flipped frame. Panics if `0 ∈ w`.
pub fn normalize_sign(w: Interval) -> (bool, Interval) {
    assert!(
        !w.is_empty() && !w.contains_zero(),
        "normalize_sign needs 0 ∉ w, got {w:?}"
    );
    if w.hi() < 0.0 {
        (false, w)
    } else {
        (true, -w)
    }
}

/// One interval Newton step `x ∩ (t - w/d)` with certified new endpoints.
///
/// Panics if `t ∉ x`, if `0 ∈ w` or if `d` is empty.
pub fn contract(x: Interval, t: f64, w: Interval, d: Interval) -> ContractOutcome {
    assert!(x.contains(t), "expansion point {t} outside {x:?}");
    assert!(!d.is_empty(), "empty slope enclosure");
    let (flip, w) = normalize_sign(w);
    let d = if flip { -d } else { d };

    let mut out = if d.lo() == 0.0 && d.hi() == 0.0 {
        ContractOutcome {
            parts: vec![Part::old(x)],
            gap_certified: false,
        }
    } else if d.contains_zero() {
        straddling(x, t, w, d)
    } else if d.lo() > 0.0 {
        ContractOutcome {
            parts: increasing(x, t, w, d).into_iter().collect(),
            gap_certified: false,
        }
    } else {
        // t -> -t turns a negative slope into a positive one
        let part = increasing(-x, -t, w, -d).map(Part::mirrored);
        ContractOutcome {
            parts: part.into_iter().collect(),
            gap_certified: false,
        }
    };
    if flip {
        for p in &mut out.parts {
            *p = p.negated();
        }
    }
    out
}

/// Upper bound of `t - w_hi/d_lo` for `d_lo < 0`, plus whether it was exact.
///
/// `q = w_hi / (-d_lo)` then `r1 = t + q`, both rounded upward.
fn left_crossing(t: f64, w_hi: f64, d_lo: f64) -> f64 {
    if d_lo == f64::NEG_INFINITY {
        return t;
    }
    // the exact quotient is negative, so 0 is always a valid upper bound
    let q = Active::div_up(w_hi, -d_lo).min(0.0);
    let r = Active::add_up(t, q);
    let exact = q != 0.0 && div_is_exact(w_hi, -d_lo) && add_is_exact(t, q);
    if exact {
        next_up(r)
    } else {
        r
    }
}

/// Lower bound of `t - w_hi/d_hi` for `d_hi > 0`.
///
/// `q = w_hi / d_hi`, `u = q - t`, `r2 = -u`, all rounded upward.
fn right_crossing(t: f64, w_hi: f64, d_hi: f64) -> f64 {
    if d_hi == f64::INFINITY {
        return t;
    }
    let q = Active::div_up(w_hi, d_hi).min(0.0);
    let u = Active::sub_up(q, t);
    let r = -u;
    let exact = q != 0.0 && div_is_exact(w_hi, d_hi) && add_is_exact(q, -t);
    if exact {
        next_down(r)
    } else {
        r
    }
}

/// `0 ∈ d`, `w_hi < 0`: roots can only lie left of `r1` or right of `r2`.
fn straddling(x: Interval, t: f64, w: Interval, d: Interval) -> ContractOutcome {
    let r1 = if d.lo() < 0.0 {
        left_crossing(t, w.hi(), d.lo())
    } else {
        f64::NEG_INFINITY
    };
    let r2 = if d.hi() > 0.0 {
        right_crossing(t, w.hi(), d.hi())
    } else {
        f64::INFINITY
    };
    assert!(
        r1 <= t && t <= r2,
        "crossing order violated: {r1} <= {t} <= {r2}"
    );

    if r1 == r2 {
        // both lines vertical at float resolution: nothing learned
        return ContractOutcome {
            parts: vec![Part::old(x)],
            gap_certified: false,
        };
    }

    let mut parts = Vec::with_capacity(2);
    if r1 >= x.lo() {
        parts.push(Part {
            x: Interval::new(x.lo(), r1),
            lo_sign: None,
            hi_sign: Some(Sign::Neg),
        });
    }
    if r2 <= x.hi() {
        parts.push(Part {
            x: Interval::new(r2, x.hi()),
            lo_sign: Some(Sign::Neg),
            hi_sign: None,
        });
    }
    ContractOutcome {
        parts,
        gap_certified: true,
    }
}

/// `d_lo > 0`, `w_hi < 0`: f is below zero left of `t`; on the right the
/// roots lie between the crossings of the upper and lower lines.
fn increasing(x: Interval, t: f64, w: Interval, d: Interval) -> Option<Part> {
    let r2 = right_crossing(t, w.hi(), d.hi());
    debug_assert!(r2 >= t);
    if r2 > x.hi() {
        return None;
    }
    // t - w_lo/d_lo rounded upward, as t + w_lo/(-d_lo)
    let r3 = if w.lo() == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        let q = Active::div_up(w.lo(), -d.lo()).max(0.0);
        let r = Active::add_up(t, q);
        if q != 0.0 && div_is_exact(w.lo(), -d.lo()) && add_is_exact(t, q) {
            next_up(r)
        } else {
            r
        }
    };
    let (hi, hi_sign) = if r3 < x.hi() {
        (r3, Some(Sign::Pos))
    } else {
        (x.hi(), None)
    };
    Some(Part {
        x: Interval::new(r2, hi),
        lo_sign: Some(Sign::Neg),
        hi_sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b)
    }

    #[test]
    fn straddling_slope_splits_in_two() {
        let out = contract(iv(0.0, 4.0), 2.0, iv(-1.0, -1.0), iv(-1.0, 1.0));
        assert!(out.gap_certified);
        assert_eq!(out.parts.len(), 2);
        // both crossings are exact and get nudged toward t
        assert_eq!(out.parts[0].x, iv(0.0, next_up(1.0)));
        assert_eq!(out.parts[1].x, iv(next_down(3.0), 4.0));
        assert_eq!(out.parts[0].hi_sign, Some(Sign::Neg));
        assert_eq!(out.parts[0].lo_sign, None);
        assert_eq!(out.parts[1].lo_sign, Some(Sign::Neg));
        assert_eq!(out.parts[1].hi_sign, None);
    }

    #[test]
    fn positive_slope_keeps_one_part() {
        let out = contract(iv(0.0, 4.0), 2.0, iv(-1.0, -1.0), iv(1.0, 2.0));
        assert!(!out.gap_certified);
        assert_eq!(out.parts.len(), 1);
        let p = out.parts[0];
        assert_eq!(p.x, iv(next_down(2.5), next_up(3.0)));
        assert_eq!(p.lo_sign, Some(Sign::Neg));
        assert_eq!(p.hi_sign, Some(Sign::Pos));
    }

    #[test]
    fn crossings_outside_box_leave_nothing() {
        let out = contract(iv(0.0, 1.0), 0.5, iv(-1.0, -1.0), iv(-0.5, 0.5));
        assert!(out.parts.is_empty());
    }

    #[test]
    fn exact_crossing_is_nudged() {
        // t - w/d_lo = 0 - (-1)/(-2) = -0.5 exactly
        let out = contract(iv(-1.0, 1.0), 0.0, iv(-1.0, -1.0), iv(-2.0, 8.0));
        assert_eq!(out.parts[0].x.hi(), next_up(-0.5));
        // right crossing 0 + 1/8 = 0.125 exactly
        assert_eq!(out.parts[1].x.lo(), next_down(0.125));
    }

    #[test]
    fn inexact_crossing_is_not_nudged() {
        let out = contract(iv(-1.0, 1.0), 0.0, iv(-1.0, -1.0), iv(-3.0, 3.0));
        let r1 = out.parts[0].x.hi();
        assert_eq!(r1, Active::div_up(-1.0, 3.0));
        assert!(r1 > -1.0 / 3.0 || next_up(-1.0 / 3.0) == r1 || r1 == -1.0 / 3.0);
    }

    #[test]
    fn positive_value_is_flipped_back() {
        let out = contract(iv(0.0, 4.0), 2.0, iv(1.0, 1.0), iv(-1.0, 1.0));
        assert_eq!(out.parts.len(), 2);
        assert_eq!(out.parts[0].hi_sign, Some(Sign::Pos));
        assert_eq!(out.parts[1].lo_sign, Some(Sign::Pos));
    }

    #[test]
    fn negative_slope_mirrors() {
        // f(t) = -1 at t = 2 with slope in [-2, -1]: root in [2 - 1, 2 - 0.5]
        let out = contract(iv(0.0, 4.0), 2.0, iv(-1.0, -1.0), iv(-2.0, -1.0));
        assert_eq!(out.parts.len(), 1);
        let p = out.parts[0];
        assert_eq!(p.x, iv(next_down(1.0), next_up(1.5)));
        assert_eq!(p.lo_sign, Some(Sign::Pos));
        assert_eq!(p.hi_sign, Some(Sign::Neg));
    }

    #[test]
    fn zero_slope_gives_no_information() {
        let x = iv(0.0, 4.0);
        let out = contract(x, 2.0, iv(-1.0, -1.0), Interval::ZERO);
        assert_eq!(out.parts, vec![Part::old(x)]);
        assert!(!out.gap_certified);
    }

    #[test]
    fn unbounded_slope_gives_no_information() {
        let x = iv(0.0, 4.0);
        let out = contract(x, 2.0, iv(-1.0, -1.0), Interval::ENTIRE);
        assert_eq!(out.parts, vec![Part::old(x)]);
    }

    #[test]
    fn half_line_slope_keeps_left_side_to_t() {
        let out = contract(
            iv(0.0, 4.0),
            2.0,
            iv(-1.0, -1.0),
            iv(f64::NEG_INFINITY, 1.0),
        );
        assert_eq!(out.parts[0].x, iv(0.0, 2.0));
        assert_eq!(out.parts[1].x, iv(next_down(3.0), 4.0));
    }

    #[test]
    fn normalize() {
        assert_eq!(normalize_sign(iv(-2.0, -1.0)), (false, iv(-2.0, -1.0)));
        assert_eq!(normalize_sign(iv(1.0, 2.0)), (true, iv(-2.0, -1.0)));
    }

    #[test]
    #[should_panic]
    fn zero_in_value_is_a_contract_violation() {
        contract(iv(0.0, 1.0), 0.5, iv(-1.0, 1.0), iv(1.0, 2.0));
    }

    #[test]
    #[should_panic]
    fn point_outside_box_is_a_contract_violation() {
        contract(iv(0.0, 1.0), 2.0, iv(-1.0, -1.0), iv(1.0, 2.0));
    }
}
