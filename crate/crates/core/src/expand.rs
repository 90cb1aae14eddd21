//! Zero expansion: grow a cluster around a point where `f` cannot be told
//! apart from zero until `f` is clearly nonzero on both sides.
//!
//! Starting from `z`, probes are taken every `step` to the right and to the
//! left. A probe stops the march when its enclosure lies at distance at least
//! `tau_w` from zero, where `tau_w` is first raised to 16 times the width of
//! the probe's enclosure. Marching also stops at the ends of the box.
//!
//! Two details differ from the textbook version. The stopping probe becomes
//! the end of the cluster, so the cluster ends carry certified signs and the
//! remainders pushed back for examination start at points where the sign of
//! `f` is known. And a march that would step past the end of the box probes
//! the end itself instead of stopping short of it, so no sliver thinner than
//! `step` is left behind unexamined.

use crate::float::{next_down, next_up};
use crate::interval::{Interval, Sign};

/// The three pieces produced by [`expand_zero`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expansion {
    /// `[x.lo, cluster.lo]`, absent when the cluster reaches `x.lo`.
    pub left: Option<Interval>,
    pub cluster: Interval,
    /// `[cluster.hi, x.hi]`, absent when the cluster reaches `x.hi`.
    pub right: Option<Interval>,
    /// Sign of `f` at `cluster.lo`, `Zero` if unknown.
    pub lo_sign: Sign,
    /// Sign of `f` at `cluster.hi`, `Zero` if unknown.
    pub hi_sign: Sign,
    /// Number of point evaluations spent.
    pub probes: u64,
}

/// Expand the zero `z ∈ x` of `f` in steps of `step`.
///
/// `value(t)` must enclose `f(t)`. `edge_signs` are the signs of `f` at
/// `x.lo` and `x.hi` when already known, used if the march reaches an end
/// without certifying the sign there. `tau_w` is raised in place.
pub fn expand_zero<F>(
    z: f64,
    x: Interval,
    step: f64,
    tau_w: &mut f64,
    edge_signs: (Sign, Sign),
    mut value: F,
) -> Expansion
where
    F: FnMut(f64) -> Interval,
{
    assert!(x.contains(z), "expansion point {z} outside {x:?}");
    assert!(step > 0.0, "step must be positive");
    let mut probes = 0;

    let mut march = |from: f64, end: f64, dir: f64, edge: Sign| -> (f64, Sign) {
        let mut c = from;
        loop {
            if c == end {
                return (c, edge);
            }
            let mut p = c + dir * step;
            if p == c {
                p = if dir > 0.0 { next_up(c) } else { next_down(c) };
            }
            if (dir > 0.0 && p > end) || (dir < 0.0 && p < end) {
                p = end;
            }
            let w = value(p);
            probes += 1;
            *tau_w = tau_w.max(16.0 * w.width());
            c = p;
            if w.lo() >= *tau_w || w.hi() <= -*tau_w {
                return (c, w.sign());
            }
            if c == end {
                let s = w.sign();
                return (c, if s.is_known() { s } else { edge });
            }
        }
    };

    let (hi, hi_sign) = march(z, x.hi(), 1.0, edge_signs.1);
    let (lo, lo_sign) = march(z, x.lo(), -1.0, edge_signs.0);

    Expansion {
        left: (lo > x.lo()).then(|| Interval::new(x.lo(), lo)),
        cluster: Interval::new(lo, hi),
        right: (hi < x.hi()).then(|| Interval::new(hi, x.hi())),
        lo_sign,
        hi_sign,
        probes,
    }
}
