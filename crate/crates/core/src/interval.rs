//! Closed binary64 intervals with outward rounding.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::round::{Active, Rounding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval is empty")]
    Empty,
    #[error("interval is unbounded")]
    Unbounded,
    #[error("invalid interval bounds [{lo}, {hi}]")]
    InvalidBounds { lo: String, hi: String },
}

/// Certified sign of a real quantity; `Zero` means the sign is not known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }

    pub fn is_known(self) -> bool {
        self != Sign::Zero
    }

    /// `true` when both signs are known and differ.
    pub fn opposite(self, other: Sign) -> bool {
        matches!(
            (self, other),
            (Sign::Neg, Sign::Pos) | (Sign::Pos, Sign::Neg)
        )
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> Result<Self, String> {
        match v {
            -1 => Ok(Sign::Neg),
            0 => Ok(Sign::Zero),
            1 => Ok(Sign::Pos),
            _ => Err(format!("sign must be -1, 0 or 1, got {v}")),
        }
    }
}

/// A closed interval `[lo, hi]` of binary64 values, possibly empty or unbounded.
///
/// The empty interval is stored as `lo = +inf, hi = -inf`; no other value has
/// `lo > hi`, and no bound is ever NaN.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const EMPTY: Interval = Interval {
        lo: f64::INFINITY,
        hi: f64::NEG_INFINITY,
    };
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    /// Panics on NaN bounds, `lo > hi`, `lo = +inf` or `hi = -inf`.
    pub fn new(lo: f64, hi: f64) -> Interval {
        match Self::try_new(lo, hi) {
            Ok(x) => x,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn try_new(lo: f64, hi: f64) -> Result<Interval, IntervalError> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(IntervalError::InvalidBounds {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        // normalise -0.0 so that equal sets compare equal bitwise too
        Ok(Interval {
            lo: if lo == 0.0 { 0.0 } else { lo },
            hi: if hi == 0.0 { 0.0 } else { hi },
        })
    }

    pub fn point(t: f64) -> Interval {
        Interval::new(t, t)
    }

    /// Builds `[lo, hi]` from bounds that came out of directed rounding.
    /// An inverted pair collapses to the empty interval.
    fn from_rounded(lo: f64, hi: f64) -> Interval {
        debug_assert!(!lo.is_nan() && !hi.is_nan(), "NaN bound from [{lo}, {hi}]");
        if lo.is_nan() || hi.is_nan() {
            return Interval::ENTIRE;
        }
        if lo > hi {
            return Interval::EMPTY;
        }
        Interval::new(lo, hi)
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn is_bounded(&self) -> bool {
        !self.is_empty() && self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn interior_contains(&self, t: f64) -> bool {
        self.lo < t && t < self.hi
    }

    /// `self ⊆ other`. The empty set is a subset of everything.
    pub fn subset_of(&self, other: &Interval) -> bool {
        self.is_empty() || (other.lo <= self.lo && self.hi <= other.hi)
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo > hi {
            Interval::EMPTY
        } else {
            Interval::new(lo, hi)
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// `hi - lo` rounded upward; zero for the empty interval.
    pub fn width(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            Active::sub_up(self.hi, self.lo)
        }
    }

    /// A representable point of the interval close to `(lo + hi) / 2`.
    pub fn midpoint(&self) -> Result<f64, IntervalError> {
        if self.is_empty() {
            return Err(IntervalError::Empty);
        }
        if !self.is_bounded() {
            return Err(IntervalError::Unbounded);
        }
        let m = if self.lo == -self.hi {
            0.0
        } else {
            let m = (self.lo + self.hi) / 2.0;
            if m.is_finite() {
                m
            } else {
                self.lo / 2.0 + self.hi / 2.0
            }
        };
        Ok(m.clamp(self.lo, self.hi))
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value in the interval.
    pub fn mig(&self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    /// `Pos` if every element is positive, `Neg` if every element is negative.
    pub fn sign(&self) -> Sign {
        if self.is_empty() {
            Sign::Zero
        } else if self.lo > 0.0 {
            Sign::Pos
        } else if self.hi < 0.0 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn sqr(self) -> Interval {
        self.powi(2)
    }

    /// `self^n` for a non-negative integer exponent, computed on the
    /// magnitudes so that even powers never go negative.
    pub fn powi(self, n: u32) -> Interval {
        if self.is_empty() {
            return self;
        }
        if n == 0 {
            return Interval::point(1.0);
        }
        if n == 1 {
            return self;
        }
        let even = n.is_multiple_of(2);
        if self.lo >= 0.0 {
            Interval::from_rounded(pow_down(self.lo, n), pow_up(self.hi, n))
        } else if self.hi <= 0.0 {
            let lo = pow_down(-self.hi, n);
            let hi = pow_up(-self.lo, n);
            if even {
                Interval::from_rounded(lo, hi)
            } else {
                Interval::from_rounded(-hi, -lo)
            }
        } else if even {
            Interval::from_rounded(0.0, pow_up(-self.lo, n).max(pow_up(self.hi, n)))
        } else {
            Interval::from_rounded(-pow_up(-self.lo, n), pow_up(self.hi, n))
        }
    }
}

// Powers of a non-negative base by repeated directed multiplication.
fn pow_up(base: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc = mul_up(acc, base);
    }
    acc
}

fn pow_down(base: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc = mul_down(acc, base);
    }
    acc
}

// 0 * inf is 0 in interval products.
#[inline]
fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        Active::mul_up(a, b)
    }
}

#[inline]
fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        Active::mul_down(a, b)
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval::EMPTY
    }
}

impl From<f64> for Interval {
    fn from(t: f64) -> Interval {
        Interval::point(t)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[empty]")
        } else {
            write!(f, "[{:?}, {:?}]", self.lo, self.hi)
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[empty]")
        } else {
            // shortest round-trip forms, with an exponent for tiny and huge bounds
            write!(f, "[{:?}, {:?}]", self.lo, self.hi)
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        if self.is_empty() {
            self
        } else {
            Interval::new(-self.hi, -self.lo)
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        Interval::from_rounded(
            Active::add_down(self.lo, rhs.lo),
            Active::add_up(self.hi, rhs.hi),
        )
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        Interval::from_rounded(
            Active::sub_down(self.lo, rhs.hi),
            Active::sub_up(self.hi, rhs.lo),
        )
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        let (a, b) = (self, rhs);
        let pairs = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)];
        let lo = pairs
            .iter()
            .map(|&(x, y)| mul_down(x, y))
            .fold(f64::INFINITY, f64::min);
        let hi = pairs
            .iter()
            .map(|&(x, y)| mul_up(x, y))
            .fold(f64::NEG_INFINITY, f64::max);
        Interval::from_rounded(lo, hi)
    }
}

impl Div for Interval {
    type Output = Interval;
    /// A divisor containing zero gives the whole line.
    fn div(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        if rhs.contains_zero() {
            return Interval::ENTIRE;
        }
        let (a, b) = (self, rhs);
        let pairs = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)];
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in &pairs {
            // inf / inf never occurs: the divisor excludes zero so only one
            // of its bounds may be infinite, and then the quotient tends to 0.
            let (d, u) = if x.is_infinite() && y.is_infinite() {
                (0.0, 0.0)
            } else {
                (Active::div_down(x, y), Active::div_up(x, y))
            };
            lo = lo.min(d);
            hi = hi.max(u);
        }
        Interval::from_rounded(lo, hi)
    }
}

impl Add<f64> for Interval {
    type Output = Interval;
    fn add(self, rhs: f64) -> Interval {
        self + Interval::point(rhs)
    }
}

impl Sub<f64> for Interval {
    type Output = Interval;
    fn sub(self, rhs: f64) -> Interval {
        self - Interval::point(rhs)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    fn mul(self, rhs: f64) -> Interval {
        self * Interval::point(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::next_up;

    #[test]
    fn exact_endpoint_arithmetic() {
        let a = Interval::new(1.0, 2.0);
        let b = Interval::new(3.0, 4.0);
        assert_eq!(a + b, Interval::new(4.0, 6.0));
        assert_eq!(a - b, Interval::new(-3.0, -1.0));
        assert_eq!(Interval::new(-1.0, 2.0) * b, Interval::new(-4.0, 8.0));
        assert_eq!(
            Interval::new(1.0, 2.0) / Interval::new(2.0, 4.0),
            Interval::new(0.25, 1.0)
        );
        assert_eq!(-a, Interval::new(-2.0, -1.0));
    }

    #[test]
    fn inexact_sum_is_widened() {
        let s = Interval::point(0.1) + Interval::point(0.2);
        assert!(s.lo() < s.hi());
        assert_eq!(s.hi(), next_up(s.lo()));
        assert!(s.contains(0.1 + 0.2));
    }

    #[test]
    fn division_by_zero_straddler_is_entire() {
        let q = Interval::new(1.0, 2.0) / Interval::new(-1.0, 1.0);
        assert_eq!(q, Interval::ENTIRE);
        let q = Interval::new(1.0, 2.0) / Interval::new(0.0, 1.0);
        assert_eq!(q, Interval::ENTIRE);
    }

    #[test]
    fn empty_propagates() {
        let e = Interval::EMPTY;
        let a = Interval::new(0.0, 1.0);
        assert!((e + a).is_empty());
        assert!((a * e).is_empty());
        assert!((e / a).is_empty());
        assert!((-e).is_empty());
        assert!(e.powi(3).is_empty());
        assert_ne!(e, Interval::ZERO);
        assert_ne!(e, Interval::ENTIRE);
    }

    #[test]
    fn set_operations() {
        let a = Interval::new(0.0, 2.0);
        let b = Interval::new(1.0, 3.0);
        assert_eq!(a.intersect(&b), Interval::new(1.0, 2.0));
        assert!(a.intersect(&Interval::new(2.5, 3.0)).is_empty());
        assert!(Interval::new(0.0, 1.0)
            .intersect(&Interval::new(2.0, 3.0))
            .is_empty());
        assert_eq!(a.hull(&b), Interval::new(0.0, 3.0));
        assert_eq!(a.hull(&Interval::EMPTY), a);
        assert_eq!(a.width(), 2.0);
        assert!(a.contains_zero());
        assert!(!b.contains_zero());
        assert!(Interval::new(1.0, 2.0).subset_of(&a));
        assert!(Interval::EMPTY.subset_of(&a));
    }

    #[test]
    fn midpoint_contracts() {
        assert_eq!(Interval::new(1.0, 3.0).midpoint(), Ok(2.0));
        assert_eq!(Interval::new(-f64::MAX, f64::MAX).midpoint(), Ok(0.0));
        assert_eq!(
            Interval::new(f64::MAX / 2.0, f64::MAX).midpoint().unwrap(),
            0.75 * f64::MAX
        );
        assert_eq!(Interval::EMPTY.midpoint(), Err(IntervalError::Empty));
        assert_eq!(
            Interval::new(0.0, f64::INFINITY).midpoint(),
            Err(IntervalError::Unbounded)
        );
        let adj = Interval::new(1.0, next_up(1.0));
        let m = adj.midpoint().unwrap();
        assert!(m == 1.0 || m == next_up(1.0));
        assert!(adj.contains(m));
    }

    #[test]
    fn powers() {
        let x = Interval::new(-2.0, 3.0);
        assert_eq!(x.powi(0), Interval::point(1.0));
        assert_eq!(x.powi(2), Interval::new(0.0, 9.0));
        assert_eq!(x.powi(3), Interval::new(-8.0, 27.0));
        assert_eq!(Interval::new(-3.0, -2.0).powi(2), Interval::new(4.0, 9.0));
        assert_eq!(
            Interval::new(-3.0, -2.0).powi(3),
            Interval::new(-27.0, -8.0)
        );
        let t = Interval::point(0.1).powi(3);
        assert!(t.lo() < t.hi());
    }

    #[test]
    fn invalid_bounds_rejected() {
        assert!(Interval::try_new(2.0, 1.0).is_err());
        assert!(Interval::try_new(f64::NAN, 1.0).is_err());
        assert!(Interval::try_new(f64::INFINITY, f64::INFINITY).is_err());
        assert!(Interval::try_new(f64::NEG_INFINITY, 0.0).is_ok());
    }

    #[test]
    fn signs() {
        assert_eq!(Interval::new(1.0, 2.0).sign(), Sign::Pos);
        assert_eq!(Interval::new(-2.0, -1.0).sign(), Sign::Neg);
        assert_eq!(Interval::new(-2.0, 0.0).sign(), Sign::Zero);
        assert!(Sign::Neg.opposite(Sign::Pos));
        assert!(!Sign::Zero.opposite(Sign::Pos));
        assert_eq!(-Sign::Neg, Sign::Pos);
    }
}
