//! Branch-and-bound search for all roots of `f` in a box.
//!
//! Work items live on a stack. Each one carries the box, what is known about
//! the signs of `f` at its ends and of `f'` on it, the point where it will be
//! split, and a little history used to choose that point well:
//!
//! 1. pop an item, stop when the stack is empty;
//! 2. drop it if the range enclosure of `f` over the box (natural extension
//!    intersected with the centered form) excludes zero;
//! 3. report it if it is narrower than `tau_x`;
//! 4. enclose the slope of `f` about `t`; if that excludes zero, enclose `f'`
//!    as well and, if `f'` excludes zero too, hand the box to the
//!    [`crate::monotone`] solver; otherwise use the intersection of both;
//! 5. if `f(t)` is within `tau_w` of zero, expand the zero at `t` in steps of
//!    `tau_c` and push the two remainders;
//! 6. contract the box with one interval Newton step about `t`;
//! 7. a single part gets a new split point, preferably the corrected Newton
//!    point computed from the current and the previous derivative value;
//! 8. two parts of a box narrower than `tau_c` are reported together as a
//!    cluster, otherwise both are pushed.
//!
//! Every discarded region is certified root-free, so the reported
//! candidates cover every root of `f` in the box.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::candidate::RootCandidate;
use crate::contract::contract;
use crate::expand::expand_zero;
use crate::expr::Expr;
use crate::float::next_up;
use crate::interval::{Interval, Sign};
use crate::monotone::{solve_monotone, MonotoneConfig, Orientation};
use crate::point_newton::step_length;
use crate::problem::{EvalCounts, Problem};

/// How the driver picks the split point of a box with a single part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitPolicy {
    /// Corrected Newton point when it falls inside the part, else midpoint.
    #[default]
    Newton,
    /// Always the midpoint.
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Boxes narrower than this are reported as they are.
    pub tau_x: f64,
    /// Values of `f` within this distance of zero count as zero. Raised
    /// during the run to 16 times the widest point enclosure seen.
    pub tau_w: f64,
    /// Step of the zero expansion, and width below which a box that splits
    /// in two is reported as a cluster.
    pub tau_c: f64,
    /// Number of work items processed before giving up.
    pub max_iterations: u64,
    pub split: SplitPolicy,
}

impl SolverConfig {
    /// Tolerances `tau_x`, `tau_w` and the cluster tolerance `sqrt(tau_x)`.
    pub fn new(tau_x: f64, tau_w: f64) -> SolverConfig {
        SolverConfig {
            tau_x,
            tau_w,
            tau_c: tau_x.sqrt(),
            ..SolverConfig::default()
        }
    }

    pub fn with_tau_c(self, tau_c: f64) -> SolverConfig {
        SolverConfig { tau_c, ..self }
    }

    pub fn with_max_iterations(self, max_iterations: u64) -> SolverConfig {
        SolverConfig {
            max_iterations,
            ..self
        }
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        for (name, v) in [
            ("tau_x", self.tau_x),
            ("tau_w", self.tau_w),
            ("tau_c", self.tau_c),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SolveError::InvalidConfig(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tau_x: 1e-6,
            tau_w: 1e-6,
            tau_c: 1e-3,
            max_iterations: 1_000_000,
            split: SplitPolicy::Newton,
        }
    }
}

/// One box awaiting examination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkItem {
    pub x: Interval,
    /// Sign of `f` at `x.lo`.
    pub sigma_i: Sign,
    /// Sign of `f` at `x.hi`.
    pub sigma_s: Sign,
    /// Sign of `f'` on `x`.
    pub sigma_d: Sign,
    /// Split point.
    pub t: f64,
    /// A point near `x` where `f'` was sampled, NaN if none.
    pub t_tilde: f64,
    /// `f'(t_tilde)` in floating point, NaN if none.
    pub d_tilde: f64,
    /// Expected sign of `f(t)`, `Zero` for no expectation.
    pub sigma_t: Sign,
}

impl WorkItem {
    /// A fresh item split at the midpoint, with no history.
    pub fn new(x: Interval, sigma_i: Sign, sigma_s: Sign) -> WorkItem {
        WorkItem {
            x,
            sigma_i,
            sigma_s,
            sigma_d: Sign::Zero,
            t: midpoint(x),
            t_tilde: f64::NAN,
            d_tilde: f64::NAN,
            sigma_t: Sign::Zero,
        }
    }
}

fn midpoint(x: Interval) -> f64 {
    x.midpoint().expect("work items are bounded and non-empty")
}

/// Split point and history for a part produced by a contraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointChoice {
    pub t: f64,
    pub sigma_t: Sign,
    pub t_tilde: f64,
    pub d_tilde: f64,
}

/// Choose the split point of `part`, a piece of `parent.x` kept by the
/// contraction about `parent.t`.
///
/// `w` encloses `f(parent.t)` and `d` is `f'(parent.t)` in floating point
/// (NaN when not computed). When the parent's expectation about the sign of
/// `f(parent.t)` held and derivative history exists, the corrected Newton
/// point from `parent.t` is used if it lies strictly inside `part`; it is
/// expected to land on the other side of the root, so the new expected sign
/// is the opposite of the sign of `w`. Otherwise the midpoint is used with no
/// expectation.
pub fn choose_point(
    part: Interval,
    parent: &WorkItem,
    w: Interval,
    d: f64,
    policy: SplitPolicy,
) -> PointChoice {
    let fallback = PointChoice {
        t: midpoint(part),
        sigma_t: Sign::Zero,
        t_tilde: parent.t,
        d_tilde: d,
    };
    let mismatch = parent.sigma_t.is_known() && parent.sigma_t != w.sign();
    if mismatch || policy == SplitPolicy::Midpoint || !w.sign().is_known() {
        return fallback;
    }
    let Some(t) = corrected_point(parent.t, w, d, parent.t_tilde, parent.d_tilde) else {
        return fallback;
    };
    if part.interior_contains(t) {
        PointChoice {
            t,
            sigma_t: -w.sign(),
            ..fallback
        }
    } else {
        fallback
    }
}

/// Modified Newton point from `t` with `f(t) ∈ w`, `f'(t) ≈ d`, using the
/// derivative `d_prev` at `t_prev` for the curvature estimate.
fn corrected_point(t: f64, w: Interval, d: f64, t_prev: f64, d_prev: f64) -> Option<f64> {
    if !d.is_finite() || d == 0.0 || !t_prev.is_finite() || !d_prev.is_finite() {
        return None;
    }
    let h = if t_prev != t {
        (d_prev - d) / (t_prev - t)
    } else {
        0.0
    };
    let h = if h.is_finite() { h } else { 0.0 };
    // normalise to f(t) < 0 < f'(t): flip f by sigma, mirror t by the sign of d
    let wm = w.midpoint().ok()?;
    let sigma = if w.hi() < 0.0 { 1.0 } else { -1.0 };
    let dir = (sigma * d).signum();
    let s = step_length(sigma * wm, d.abs(), sigma * h);
    let t_next = t + dir * s;
    t_next.is_finite().then_some(t_next)
}

/// Counters and timings of one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SolveStats {
    /// Total evaluations of `f` and `f'` of any kind.
    pub evaluations: u64,
    pub counts: EvalCounts,
    pub contractions: u64,
    pub bisections: u64,
    pub handoffs: u64,
    pub expansions: u64,
    /// Work items popped from the stack.
    pub iterations: u64,
    /// Box evaluations performed by the monotone solver after handoffs.
    pub handoff_box_evals: u64,
    /// `tau_w` after inflation.
    pub final_tau_w: f64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Candidates sorted by lower bound, with disjoint interiors.
    pub roots: Vec<RootCandidate>,
    pub stats: SolveStats,
    /// `false` when the iteration budget ran out; unexplored boxes are then
    /// included in `roots` as possible candidates.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("search domain {0} must be bounded and non-empty")]
    InvalidDomain(Interval),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("iteration budget exhausted with {} candidates", partial.roots.len())]
    IterationBudgetExceeded { partial: Box<Solution> },
}

/// All roots of `f` in `x0`.
pub fn solve(f: &Expr, x0: Interval, cfg: &SolverConfig) -> Result<Solution, SolveError> {
    solve_problem(&Problem::new(f.clone()), x0, cfg)
}

/// [`solve`] for a prepared [`Problem`], whose counters keep accumulating.
pub fn solve_problem(
    p: &Problem,
    x0: Interval,
    cfg: &SolverConfig,
) -> Result<Solution, SolveError> {
    cfg.validate()?;
    if x0.is_empty() || !x0.is_bounded() {
        return Err(SolveError::InvalidDomain(x0));
    }
    let mut driver = Driver {
        p,
        cfg: *cfg,
        tau_w: cfg.tau_w,
        stack: Vec::new(),
        roots: Vec::new(),
        stats: SolveStats::default(),
    };
    let start = Instant::now();
    let before = p.counts();
    let complete = driver.run(x0);
    let counts = diff(p.counts(), before);

    let mut stats = driver.stats;
    stats.counts = counts;
    stats.evaluations = counts.total();
    stats.final_tau_w = driver.tau_w;
    stats.elapsed = start.elapsed();
    let mut roots = driver.roots;
    roots.sort_by(|a, b| a.interval.lo().total_cmp(&b.interval.lo()));
    let roots = coalesce(roots, cfg.tau_c);
    let solution = Solution {
        roots,
        stats,
        complete,
    };
    if complete {
        Ok(solution)
    } else {
        Err(SolveError::IterationBudgetExceeded {
            partial: Box::new(solution),
        })
    }
}

/// Merge neighbouring candidates when at least one of them is not certified
/// and the gap between them is at most `tau_c` or at most the width of the
/// wider one.
///
/// Near a multiple root the range enclosures stay wide, and the driver tends
/// to emit a run of small clusters separated by thin certified gaps. They
/// are reported as one cluster spanning the run; a run whose outer signs
/// differ becomes certified.
fn coalesce(mut sorted: Vec<RootCandidate>, tau_c: f64) -> Vec<RootCandidate> {
    // a merged candidate is wider and may now reach its left neighbour
    loop {
        let before = sorted.len();
        sorted = coalesce_pass(sorted, tau_c);
        if sorted.len() == before {
            return sorted;
        }
    }
}

fn coalesce_pass(sorted: Vec<RootCandidate>, tau_c: f64) -> Vec<RootCandidate> {
    let mut out: Vec<RootCandidate> = Vec::with_capacity(sorted.len());
    for c in sorted {
        if let Some(prev) = out.last_mut() {
            let gap = c.interval.lo() - prev.interval.hi();
            let close = gap <= tau_c.max(prev.interval.width()).max(c.interval.width());
            if close && !(prev.is_certified() && c.is_certified()) {
                *prev = RootCandidate::new(
                    prev.interval.hull(&c.interval),
                    prev.lo_sign,
                    c.hi_sign,
                    true,
                );
                continue;
            }
        }
        out.push(c);
    }
    out
}

fn diff(a: EvalCounts, b: EvalCounts) -> EvalCounts {
    EvalCounts {
        box_evals: a.box_evals - b.box_evals,
        point_evals: a.point_evals - b.point_evals,
        slope_evals: a.slope_evals - b.slope_evals,
        derivative_box_evals: a.derivative_box_evals - b.derivative_box_evals,
        derivative_point_evals: a.derivative_point_evals - b.derivative_point_evals,
    }
}

struct Driver<'a> {
    p: &'a Problem,
    cfg: SolverConfig,
    tau_w: f64,
    stack: Vec<WorkItem>,
    roots: Vec<RootCandidate>,
    stats: SolveStats,
}

impl Driver<'_> {
    fn value(&mut self, t: f64) -> Interval {
        let w = self.p.value(t);
        self.inflate(w);
        w
    }

    fn inflate(&mut self, w: Interval) {
        self.tau_w = self.tau_w.max(16.0 * w.width());
    }

    fn run(&mut self, x0: Interval) -> bool {
        let lo = self.value(x0.lo()).sign();
        let hi = self.value(x0.hi()).sign();
        self.stack.push(WorkItem::new(x0, lo, hi));

        while let Some(item) = self.stack.pop() {
            if self.stats.iterations >= self.cfg.max_iterations {
                self.stack.push(item);
                for rest in std::mem::take(&mut self.stack) {
                    self.emit(rest.x, rest.sigma_i, rest.sigma_s, false);
                }
                return false;
            }
            self.stats.iterations += 1;
            self.step(item);
        }
        true
    }

    fn emit(&mut self, x: Interval, lo: Sign, hi: Sign, cluster: bool) {
        self.roots.push(RootCandidate::new(x, lo, hi, cluster));
    }

    fn step(&mut self, item: WorkItem) {
        let x = item.x;

        // range test; a box known to be root-free is dropped even when narrow
        let sp = self.p.slope(item.t, x);
        self.inflate(sp.value_at_center);
        let centered = sp.value_at_center + sp.slope * (x - item.t);
        let range = sp.range.intersect(&centered);
        if !range.contains_zero() {
            return;
        }

        if x.width() < self.cfg.tau_x || next_up(x.lo()) >= x.hi() {
            self.emit(x, item.sigma_i, item.sigma_s, false);
            return;
        }

        let mut slope = sp.slope;
        if !slope.contains_zero() || item.sigma_d.is_known() {
            let d = self.p.derivative_range(x);
            if !d.contains_zero() {
                self.handoff(x, d);
                return;
            }
            let both = slope.intersect(&d);
            if !both.is_empty() {
                slope = both;
            }
        }

        let w = sp.value_at_center;
        let tau_w = self.tau_w;
        if w.lo() <= tau_w && w.hi() >= -tau_w {
            self.expand(&item);
            return;
        }

        self.stats.contractions += 1;
        let out = contract(x, item.t, w, slope);
        let parts: Vec<(Interval, Sign, Sign)> = out
            .parts
            .iter()
            .map(|p| {
                (
                    p.x,
                    p.lo_sign.unwrap_or(item.sigma_i),
                    p.hi_sign.unwrap_or(item.sigma_s),
                )
            })
            .collect();

        match parts.as_slice() {
            [] => {}
            [(part, _, _)] if *part == x => {
                // nothing learned: split at t, where the sign of f is known
                self.stats.bisections += 1;
                let s = w.sign();
                let left = WorkItem::new(Interval::new(x.lo(), item.t), item.sigma_i, s);
                let right = WorkItem::new(Interval::new(item.t, x.hi()), s, item.sigma_s);
                self.stack.push(right);
                self.stack.push(left);
            }
            [(part, lo, hi)] => {
                let d = self.p.derivative_at(item.t);
                let child = self.child(*part, *lo, *hi, &item, w, d);
                self.stack.push(child);
            }
            [(a, a_lo, a_hi), (b, b_lo, b_hi)] => {
                if x.width() < self.cfg.tau_c {
                    self.emit(x, item.sigma_i, item.sigma_s, true);
                    return;
                }
                let d = self.p.derivative_at(item.t);
                let left = self.child(*a, *a_lo, *a_hi, &item, w, d);
                let right = self.child(*b, *b_lo, *b_hi, &item, w, d);
                // the part nearer to t is processed first
                if item.t - a.hi() <= b.lo() - item.t {
                    self.stack.push(right);
                    self.stack.push(left);
                } else {
                    self.stack.push(left);
                    self.stack.push(right);
                }
            }
            _ => unreachable!("a contraction yields at most two parts"),
        }
    }

    fn child(
        &mut self,
        part: Interval,
        lo: Sign,
        hi: Sign,
        parent: &WorkItem,
        w: Interval,
        d: f64,
    ) -> WorkItem {
        let c = choose_point(part, parent, w, d, self.cfg.split);
        if !c.sigma_t.is_known() {
            self.stats.bisections += 1;
        }
        WorkItem {
            x: part,
            sigma_i: lo,
            sigma_s: hi,
            sigma_d: parent.sigma_d,
            t: c.t,
            t_tilde: c.t_tilde,
            d_tilde: c.d_tilde,
            sigma_t: c.sigma_t,
        }
    }

    /// `f'` has constant sign `d` on `x`.
    fn handoff(&mut self, x: Interval, d: Interval) -> Option<RootCandidate> {
        self.stats.handoffs += 1;
        let (orientation, kappa) = if d.lo() > 0.0 {
            (Orientation::Increasing, d.lo())
        } else {
            (Orientation::Decreasing, -d.hi())
        };
        let mut mc = MonotoneConfig {
            kappa,
            tau_x: self.cfg.tau_x,
            tau_w: self.tau_w,
        };
        let before = self.p.counts().on_boxes();
        let found = solve_monotone(x, self.p, orientation, &mut mc);
        self.stats.handoff_box_evals += self.p.counts().on_boxes() - before;
        self.tau_w = self.tau_w.max(mc.tau_w);
        if let Some(c) = found {
            self.roots.push(c);
        }
        found
    }

    /// `f(t)` is too close to zero: grow a cluster around `t`.
    fn expand(&mut self, item: &WorkItem) {
        self.stats.expansions += 1;
        let mut tau_w = self.tau_w;
        let p = self.p;
        let e = expand_zero(
            item.t,
            item.x,
            self.cfg.tau_c,
            &mut tau_w,
            (item.sigma_i, item.sigma_s),
            |t| p.value(t),
        );
        self.tau_w = self.tau_w.max(tau_w);

        // a cluster on which f is monotone holds at most one root and can be
        // narrowed down to tau_x
        let mut settled = false;
        if e.cluster.width() > self.cfg.tau_x {
            let d = self.p.derivative_range(e.cluster);
            if !d.contains_zero() {
                self.handoff(e.cluster, d);
                settled = true;
            }
        }
        if !settled {
            self.emit(e.cluster, e.lo_sign, e.hi_sign, true);
        }

        let left = e.left.map(|l| WorkItem::new(l, item.sigma_i, e.lo_sign));
        let right = e.right.map(|r| WorkItem::new(r, e.hi_sign, item.sigma_s));
        self.stack.extend(right);
        self.stack.extend(left);
    }
}
