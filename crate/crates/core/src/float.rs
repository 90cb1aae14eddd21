//! Neighbouring binary64 values.

/// Smallest representable value greater than `t`.
///
/// `next_up(f64::MAX)` is `+inf`; NaN is returned unchanged.
#[inline]
pub fn next_up(t: f64) -> f64 {
    t.next_up()
}

/// Largest representable value less than `t`.
#[inline]
pub fn next_down(t: f64) -> f64 {
    t.next_down()
}

/// Distance from `t` to the next value away from zero.
pub fn ulp(t: f64) -> f64 {
    let a = t.abs();
    next_up(a) - a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbours_of_one_and_zero() {
        assert_eq!(next_up(1.0), 1.0 + f64::EPSILON);
        assert_eq!(next_down(0.0), -f64::from_bits(1));
        assert_eq!(next_up(-0.0), f64::from_bits(1));
        assert_eq!(next_down(1.0), 1.0 - f64::EPSILON / 2.0);
        assert_eq!(ulp(1.0), f64::EPSILON);
    }

    #[test]
    fn saturates_at_the_ends() {
        assert_eq!(next_up(f64::MAX), f64::INFINITY);
        assert_eq!(next_down(-f64::MAX), f64::NEG_INFINITY);
    }
}
