//! Directed rounding of binary64 operations.
//!
//! Two backends implement [`Rounding`]:
//!
//! * [`Residual`] computes in the default round-to-nearest mode and uses an
//!   error-free residual (two-sum or fused multiply-add) to decide whether the
//!   nearest result must be moved one ulp in the requested direction. It needs
//!   no floating point environment and is the default.
//! * [`UpwardMode`] switches the thread's rounding mode to upward for the
//!   duration of one operation and derives downward results through negation,
//!   `down(a op b) = -up((-a) op' b)`.
//!
//! The backend used by [`crate::Interval`] is [`Active`], selected by the
//! `hw-rounding` cargo feature.

use crate::float::{next_down, next_up};

/// Magnitude below which residuals may be lost to underflow. Results this
/// small are moved one ulp unconditionally.
const TINY: f64 = 1.0e-290;

pub trait Rounding {
    fn add_up(a: f64, b: f64) -> f64;
    fn add_down(a: f64, b: f64) -> f64;
    fn sub_up(a: f64, b: f64) -> f64 {
        Self::add_up(a, -b)
    }
    fn sub_down(a: f64, b: f64) -> f64 {
        Self::add_down(a, -b)
    }
    fn mul_up(a: f64, b: f64) -> f64;
    fn mul_down(a: f64, b: f64) -> f64;
    fn div_up(a: f64, b: f64) -> f64;
    fn div_down(a: f64, b: f64) -> f64;
}

#[cfg(not(feature = "hw-rounding"))]
pub type Active = Residual;
#[cfg(feature = "hw-rounding")]
pub type Active = UpwardMode;

/// Error-free transformation `a + b = s + e`.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Whether `a + b` is exactly representable.
#[inline]
pub fn add_is_exact(a: f64, b: f64) -> bool {
    let (s, e) = two_sum(a, b);
    s.is_finite() && e == 0.0
}

/// Whether `a * b` is exactly representable.
#[inline]
pub fn mul_is_exact(a: f64, b: f64) -> bool {
    let p = a * b;
    if !p.is_finite() {
        return false;
    }
    if p == 0.0 {
        return a == 0.0 || b == 0.0;
    }
    p.abs() >= TINY && a.mul_add(b, -p) == 0.0
}

/// Whether `a / b` is exactly representable.
#[inline]
pub fn div_is_exact(a: f64, b: f64) -> bool {
    let q = a / b;
    if !q.is_finite() || b == 0.0 {
        return false;
    }
    if q == 0.0 {
        return a == 0.0;
    }
    q.abs() >= TINY && (-q).mul_add(b, a) == 0.0
}

/// Portable backend: round to nearest, then correct with an exact residual.
#[derive(Debug, Clone, Copy)]
pub struct Residual;

impl Residual {
    #[inline]
    fn overflow(s: f64, up: bool) -> f64 {
        // finite operands whose nearest result overflowed
        match (s > 0.0, up) {
            (true, true) => f64::INFINITY,
            (true, false) => f64::MAX,
            (false, true) => -f64::MAX,
            (false, false) => f64::NEG_INFINITY,
        }
    }
}

impl Rounding for Residual {
    #[inline]
    fn add_up(a: f64, b: f64) -> f64 {
        let (s, e) = two_sum(a, b);
        if s.is_infinite() && a.is_finite() && b.is_finite() {
            return Self::overflow(s, true);
        }
        if !s.is_finite() {
            return s;
        }
        if e > 0.0 {
            next_up(s)
        } else {
            s
        }
    }

    #[inline]
    fn add_down(a: f64, b: f64) -> f64 {
        let (s, e) = two_sum(a, b);
        if s.is_infinite() && a.is_finite() && b.is_finite() {
            return Self::overflow(s, false);
        }
        if !s.is_finite() {
            return s;
        }
        if e < 0.0 {
            next_down(s)
        } else {
            s
        }
    }

    #[inline]
    fn mul_up(a: f64, b: f64) -> f64 {
        let p = a * b;
        if !p.is_finite() {
            if a.is_finite() && b.is_finite() {
                return Self::overflow(p, true);
            }
            return p;
        }
        if a == 0.0 || b == 0.0 {
            return p;
        }
        if p.abs() < TINY {
            return next_up(p);
        }
        if a.mul_add(b, -p) > 0.0 {
            next_up(p)
        } else {
            p
        }
    }

    #[inline]
    fn mul_down(a: f64, b: f64) -> f64 {
        let p = a * b;
        if !p.is_finite() {
            if a.is_finite() && b.is_finite() {
                return Self::overflow(p, false);
            }
            return p;
        }
        if a == 0.0 || b == 0.0 {
            return p;
        }
        if p.abs() < TINY {
            return next_down(p);
        }
        if a.mul_add(b, -p) < 0.0 {
            next_down(p)
        } else {
            p
        }
    }

    #[inline]
    fn div_up(a: f64, b: f64) -> f64 {
        let q = a / b;
        if !q.is_finite() {
            if a.is_finite() && b.is_finite() && b != 0.0 {
                return Self::overflow(q, true);
            }
            return q;
        }
        if a == 0.0 || b.is_infinite() {
            return if b.is_infinite() && a != 0.0 && q == 0.0 {
                next_up(q)
            } else {
                q
            };
        }
        if q.abs() < TINY {
            return next_up(q);
        }
        // a - q*b has the sign of (a/b - q) * b
        let r = (-q).mul_add(b, a);
        let ahead = if b > 0.0 { r > 0.0 } else { r < 0.0 };
        if ahead {
            next_up(q)
        } else {
            q
        }
    }

    #[inline]
    fn div_down(a: f64, b: f64) -> f64 {
        let q = a / b;
        if !q.is_finite() {
            if a.is_finite() && b.is_finite() && b != 0.0 {
                return Self::overflow(q, false);
            }
            return q;
        }
        if a == 0.0 || b.is_infinite() {
            return if b.is_infinite() && a != 0.0 && q == 0.0 {
                next_down(q)
            } else {
                q
            };
        }
        if q.abs() < TINY {
            return next_down(q);
        }
        let r = (-q).mul_add(b, a);
        let behind = if b > 0.0 { r < 0.0 } else { r > 0.0 };
        if behind {
            next_down(q)
        } else {
            q
        }
    }
}

/// Hardware backend: every operation runs with the rounding mode set upward.
///
/// The mode is set and restored around each single operation, so no mode
/// change is ever visible outside the call.
#[derive(Debug, Clone, Copy)]
pub struct UpwardMode;

#[cfg(all(
    target_os = "linux",
    any(target_arch = "x86_64", target_arch = "aarch64")
))]
mod fenv {
    use std::os::raw::c_int;

    #[cfg(target_arch = "x86_64")]
    pub const FE_UPWARD: c_int = 0x800;
    #[cfg(target_arch = "aarch64")]
    pub const FE_UPWARD: c_int = 0x40_0000;

    #[link(name = "m")]
    extern "C" {
        fn fegetround() -> c_int;
        fn fesetround(mode: c_int) -> c_int;
    }

    pub struct UpwardGuard {
        saved: c_int,
    }

    impl UpwardGuard {
        #[inline]
        pub fn new() -> Self {
            // SAFETY: fegetround/fesetround only touch this thread's FP control word.
            let saved = unsafe { fegetround() };
            let rc = unsafe { fesetround(FE_UPWARD) };
            assert_eq!(rc, 0, "fesetround(FE_UPWARD) failed");
            UpwardGuard { saved }
        }
    }

    impl Drop for UpwardGuard {
        #[inline]
        fn drop(&mut self) {
            // SAFETY: restores the mode saved in `new` on the same thread.
            unsafe {
                fesetround(self.saved);
            }
        }
    }
}

#[cfg(all(
    target_os = "linux",
    any(target_arch = "x86_64", target_arch = "aarch64")
))]
impl UpwardMode {
    #[inline(never)]
    fn up(op: fn(f64, f64) -> f64, a: f64, b: f64) -> f64 {
        use std::hint::black_box;
        let guard = fenv::UpwardGuard::new();
        let r = black_box(op(black_box(a), black_box(b)));
        drop(guard);
        r
    }
}

#[cfg(all(
    target_os = "linux",
    any(target_arch = "x86_64", target_arch = "aarch64")
))]
impl Rounding for UpwardMode {
    fn add_up(a: f64, b: f64) -> f64 {
        Self::up(|x, y| x + y, a, b)
    }
    fn add_down(a: f64, b: f64) -> f64 {
        -Self::up(|x, y| x + y, -a, -b)
    }
    fn mul_up(a: f64, b: f64) -> f64 {
        if a == 0.0 || b == 0.0 {
            return a * b;
        }
        Self::up(|x, y| x * y, a, b)
    }
    fn mul_down(a: f64, b: f64) -> f64 {
        if a == 0.0 || b == 0.0 {
            return a * b;
        }
        -Self::up(|x, y| x * y, -a, b)
    }
    fn div_up(a: f64, b: f64) -> f64 {
        Self::up(|x, y| x / y, a, b)
    }
    fn div_down(a: f64, b: f64) -> f64 {
        -Self::up(|x, y| x / y, -a, b)
    }
}

#[cfg(not(all(
    target_os = "linux",
    any(target_arch = "x86_64", target_arch = "aarch64")
)))]
impl Rounding for UpwardMode {
    // No portable access to the FP environment here; fall back to residuals.
    fn add_up(a: f64, b: f64) -> f64 {
        Residual::add_up(a, b)
    }
    fn add_down(a: f64, b: f64) -> f64 {
        Residual::add_down(a, b)
    }
    fn mul_up(a: f64, b: f64) -> f64 {
        Residual::mul_up(a, b)
    }
    fn mul_down(a: f64, b: f64) -> f64 {
        Residual::mul_down(a, b)
    }
    fn div_up(a: f64, b: f64) -> f64 {
        Residual::div_up(a, b)
    }
    fn div_down(a: f64, b: f64) -> f64 {
        Residual::div_down(a, b)
    }
}
