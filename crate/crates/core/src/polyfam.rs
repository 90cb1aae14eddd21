//! The polynomial stress family
//!
//! ```text
//! p(x) = ± ∏_{i=-m..m} (x - i)^{e_i},   e_i >= 0,   Σ e_i = d,
//! ```
//!
//! searched on `[-m - δlo, m + δhi]` with `δlo, δhi ∈ {0, 1}`. Every member
//! has known integer roots with known multiplicities, roots on the border of
//! the search interval when a `δ` is zero, and often roots of high
//! multiplicity. There are `8·C(2m + d, d)` members of degree `d`.
//!
//! Expanded coefficients are computed exactly with integers as
//! `p(x) = ± (-1)^E q₁(-x) x^{e₀} q₂(x)` where `q₁`, `q₂` are products of
//! `(x - i)^{e}` over `i = 1..m`, looked up in a shared table, and `E` is the
//! total multiplicity of the negative roots. The solver is run on the Horner
//! form of the expansion, which evaluates far less accurately than the
//! product form.

use std::collections::HashMap;
use std::fmt;
use std::io::{self, Write};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::candidate::RootCandidate;
use crate::expr::Expr;
use crate::interval::Interval;
use crate::problem::Problem;
use crate::solver::{solve_problem, SolveError, SolverConfig};

/// Largest integer such that it and all smaller ones are exact in binary64.
const EXACT_LIMIT: i128 = 1 << 53;

/// One member of the family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FamilySpec {
    pub m: u32,
    /// `e[i + m]` is the multiplicity of the root `i`, for `i = -m..=m`.
    pub e: Vec<u32>,
    /// `+1` or `-1`.
    pub sign: i8,
    pub delta_lo: u8,
    pub delta_hi: u8,
}

impl FamilySpec {
    pub fn degree(&self) -> u32 {
        self.e.iter().sum()
    }

    pub fn exponent(&self, i: i64) -> u32 {
        self.e[(i + self.m as i64) as usize]
    }

    /// The search interval `[-m - δlo, m + δhi]`.
    pub fn interval(&self) -> Interval {
        let m = self.m as f64;
        Interval::new(-m - self.delta_lo as f64, m + self.delta_hi as f64)
    }

    /// `(root, multiplicity)` for every root, in increasing order.
    pub fn roots(&self) -> Vec<(i64, u32)> {
        let m = self.m as i64;
        (-m..=m)
            .filter(|&i| self.exponent(i) > 0)
            .map(|i| (i, self.exponent(i)))
            .collect()
    }

    /// The polynomial as a product of linear factors.
    pub fn factored(&self) -> Expr {
        Expr::from_roots(
            self.roots().into_iter().map(|(r, k)| (r as f64, k)),
            self.sign < 0,
        )
    }
}

impl fmt::Display for FamilySpec {
    /// `m2:+:01:0.1.0.2.0` is `+(x+1)(x-1)^2` searched on `[-2, 3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.e.iter().map(u32::to_string).collect();
        let s = if self.sign < 0 { '-' } else { '+' };
        write!(
            f,
            "m{}:{s}:{}{}:{}",
            self.m,
            self.delta_lo,
            self.delta_hi,
            e.join(".")
        )
    }
}

/// `C(n, k)` exactly.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Number of members of degree `d`: `8·C(2m + d, d)`.
pub fn family_size(m: u32, d: u32) -> u128 {
    8 * binomial(2 * m as u64 + d as u64, d as u64)
}

/// Number of exponent vectors with `slots` entries summing to `d`, counted
/// by dynamic programming rather than by formula.
pub fn count_compositions(slots: usize, d: u32) -> u128 {
    let d = d as usize;
    // ways[s] = number of vectors over the slots seen so far summing to s
    let mut ways = vec![0u128; d + 1];
    ways[0] = 1;
    for _ in 0..slots {
        for s in 1..=d {
            ways[s] += ways[s - 1];
        }
    }
    ways[d]
}

/// All exponent vectors of length `slots` summing to `d`, in lexicographic
/// order.
pub fn compositions(slots: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, slots: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == slots {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            go(prefix, slots, left - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if slots > 0 {
        go(&mut Vec::with_capacity(slots), slots, d, &mut out);
    }
    out
}

/// Every member of degree `1..=d_max`.
pub fn enumerate(m: u32, d_max: u32) -> impl Iterator<Item = FamilySpec> {
    assert!(m >= 1, "m must be positive");
    let slots = 2 * m as usize + 1;
    (1..=d_max).flat_map(move |d| {
        compositions(slots, d).into_iter().flat_map(move |e| {
            [1i8, -1].into_iter().flat_map(move |sign| {
                let e = e.clone();
                [(0u8, 0u8), (0, 1), (1, 0), (1, 1)]
                    .into_iter()
                    .map(move |(delta_lo, delta_hi)| FamilySpec {
                        m,
                        e: e.clone(),
                        sign,
                        delta_lo,
                        delta_hi,
                    })
            })
        })
    })
}

/// Integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactPoly {
    pub coeffs: Vec<i128>,
    /// Some coefficient is not exactly representable in binary64.
    pub overflow: bool,
}

impl ExactPoly {
    pub fn one() -> ExactPoly {
        ExactPoly {
            coeffs: vec![1],
            overflow: false,
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Multiply by `(x - r)`.
    pub fn times_linear(&self, r: i128) -> ExactPoly {
        let mut out = vec![0i128; self.coeffs.len() + 1];
        let mut overflow = self.overflow;
        for (k, &c) in self.coeffs.iter().enumerate() {
            match (
                out[k + 1].checked_add(c),
                c.checked_mul(r).and_then(|cr| out[k].checked_sub(cr)),
            ) {
                (Some(a), Some(b)) => {
                    out[k + 1] = a;
                    out[k] = b;
                }
                _ => {
                    return ExactPoly {
                        coeffs: out,
                        overflow: true,
                    }
                }
            }
        }
        overflow |= out.iter().any(|c| c.abs() > EXACT_LIMIT);
        ExactPoly {
            coeffs: out,
            overflow,
        }
    }

    pub fn mul(&self, other: &ExactPoly) -> ExactPoly {
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        let mut overflow = self.overflow || other.overflow;
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                match a.checked_mul(b).and_then(|ab| out[i + j].checked_add(ab)) {
                    Some(v) => out[i + j] = v,
                    None => {
                        return ExactPoly {
                            coeffs: out,
                            overflow: true,
                        }
                    }
                }
            }
        }
        overflow |= out.iter().any(|c| c.abs() > EXACT_LIMIT);
        ExactPoly {
            coeffs: out,
            overflow,
        }
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> ExactPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
            .collect();
        ExactPoly {
            coeffs,
            overflow: self.overflow,
        }
    }

    pub fn scale(&self, s: i128) -> ExactPoly {
        ExactPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            overflow: self.overflow,
        }
    }

    pub fn derivative(&self) -> ExactPoly {
        if self.coeffs.len() == 1 {
            return ExactPoly {
                coeffs: vec![0],
                overflow: self.overflow,
            };
        }
        let coeffs: Vec<i128> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as i128)
            .collect();
        let overflow = self.overflow || coeffs.iter().any(|c| c.abs() > EXACT_LIMIT);
        ExactPoly { coeffs, overflow }
    }

    /// Exact value at an integer, `None` on overflow.
    pub fn eval(&self, x: i128) -> Option<i128> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }

    /// Horner form with the coefficients rounded to binary64.
    pub fn horner(&self) -> Expr {
        let c: Vec<f64> = self.coeffs.iter().map(|&c| c as f64).collect();
        Expr::horner(&c)
    }
}

/// The products `q(x) = ∏_{i=1..m} (x - i)^{e_i}` of degree `1..=d_max`,
/// keyed by exponent vector.
#[derive(Debug, Clone)]
pub struct QTable {
    m: u32,
    d_max: u32,
    table: HashMap<Vec<u32>, ExactPoly>,
}

impl QTable {
    /// Builds each product from a table entry of one degree less, so the
    /// whole table costs one linear multiplication per entry.
    pub fn build(m: u32, d_max: u32) -> QTable {
        let mut table: HashMap<Vec<u32>, ExactPoly> = HashMap::new();
        let zero = vec![0u32; m as usize];
        for d in 1..=d_max {
            for e in compositions(m as usize, d) {
                // strip one factor (x - k) for the last root k present
                let k = e.iter().rposition(|&v| v > 0).expect("degree is positive");
                let mut prev = e.clone();
                prev[k] -= 1;
                let base = if prev == zero {
                    ExactPoly::one()
                } else {
                    table[&prev].clone()
                };
                let q = base.times_linear(k as i128 + 1);
                table.insert(e, q);
            }
        }
        QTable { m, d_max, table }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn max_degree(&self) -> u32 {
        self.d_max
    }

    /// `q` for the exponent vector `e` (length `m`); the constant 1 for the
    /// zero vector.
    pub fn get(&self, e: &[u32]) -> ExactPoly {
        if e.iter().all(|&v| v == 0) {
            return ExactPoly::one();
        }
        self.table.get(e).cloned().unwrap_or_else(|| {
            let mut q = ExactPoly::one();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    q = q.times_linear(i as i128 + 1);
                }
            }
            q
        })
    }
}

/// Exact expansion of `spec` from the factors in `table`.
pub fn expand(spec: &FamilySpec, table: &QTable) -> ExactPoly {
    let m = spec.m as usize;
    let neg: Vec<u32> = (1..=m).map(|i| spec.e[m - i]).collect();
    let pos: Vec<u32> = (1..=m).map(|i| spec.e[m + i]).collect();
    let e0 = spec.e[m];

    let q1 = table.get(&neg).reflect();
    let q2 = table.get(&pos);
    let mut p = q1.mul(&q2);
    if e0 > 0 {
        let mut coeffs = vec![0i128; e0 as usize];
        coeffs.extend_from_slice(&p.coeffs);
        p.coeffs = coeffs;
    }
    // ∏ (x + i)^{e_{-i}} = (-1)^E q₁(-x)
    let e_neg: u32 = neg.iter().sum();
    let s = if (e_neg % 2 == 1) != (spec.sign < 0) {
        -1
    } else {
        1
    };
    p.scale(s)
}

/// Factored and expanded forms of `spec`.
pub fn build(spec: &FamilySpec, table: &QTable) -> (Expr, ExactPoly) {
    (spec.factored(), expand(spec, table))
}

/// Outcome of solving one member.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRow {
    pub spec_id: String,
    pub d: u32,
    /// Roots inside the search interval not covered by any candidate.
    pub missed_roots: usize,
    /// Candidates farther than `tau_c` from every root.
    pub stray_candidates: usize,
    pub candidate_count: usize,
    /// Largest number of candidates near a single root, per multiplicity.
    pub crowding: Vec<(u32, usize)>,
    pub complete: bool,
    pub elapsed_us: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub m: u32,
    pub max_degree: u32,
    pub config: SolverConfig,
    pub specs: usize,
    pub skipped_overflow: usize,
    pub missed_roots: usize,
    pub stray_candidates: usize,
    pub incomplete: usize,
    /// Worst number of candidates near one root, per multiplicity.
    pub worst_crowding: Vec<(u32, usize)>,
    pub elapsed_ms: u128,
    pub rows: Vec<FamilyRow>,
}

impl FamilyReport {
    pub fn is_sound(&self) -> bool {
        self.missed_roots == 0
    }

    /// Rows as CSV with columns `spec_id,d,missed_roots,candidate_count,elapsed_us`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "spec_id,d,missed_roots,candidate_count,elapsed_us")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.spec_id, r.d, r.missed_roots, r.candidate_count, r.elapsed_us
            )?;
        }
        Ok(())
    }
}

/// Solve the Horner form of `spec` and score the candidates against the
/// known roots. `None` when the expansion is not exact in binary64.
pub fn run_spec(spec: &FamilySpec, table: &QTable, cfg: &SolverConfig) -> Option<FamilyRow> {
    let p = expand(spec, table);
    let dp = p.derivative();
    if p.overflow || dp.overflow {
        return None;
    }
    let problem = Problem::with_derivative(p.horner(), dp.horner());
    let x = spec.interval();
    let start = Instant::now();
    let (roots, complete) = match solve_problem(&problem, x, cfg) {
        Ok(s) => (s.roots, true),
        Err(SolveError::IterationBudgetExceeded { partial }) => (partial.roots, false),
        Err(e) => panic!("family member {spec} rejected: {e}"),
    };
    let elapsed = start.elapsed();
    Some(score(spec, &roots, cfg.tau_c, complete, elapsed))
}

fn score(
    spec: &FamilySpec,
    roots: &[RootCandidate],
    tau_c: f64,
    complete: bool,
    elapsed: Duration,
) -> FamilyRow {
    let x = spec.interval();
    let known: Vec<(f64, u32)> = spec
        .roots()
        .into_iter()
        .map(|(r, k)| (r as f64, k))
        .filter(|(r, _)| x.contains(*r))
        .collect();
    let missed = known
        .iter()
        .filter(|(r, _)| !roots.iter().any(|c| c.interval.contains(*r)))
        .count();
    let distance = |c: &RootCandidate, r: f64| {
        if c.interval.contains(r) {
            0.0
        } else {
            (c.interval.lo() - r).abs().min((c.interval.hi() - r).abs())
        }
    };
    let stray = roots
        .iter()
        .filter(|c| known.iter().all(|&(r, _)| distance(c, r) > tau_c))
        .count();
    let mut crowding: Vec<(u32, usize)> = Vec::new();
    for &(r, k) in &known {
        let near = roots.iter().filter(|c| distance(c, r) <= tau_c).count();
        match crowding.iter_mut().find(|(m, _)| *m == k) {
            Some(slot) => slot.1 = slot.1.max(near),
            None => crowding.push((k, near)),
        }
    }
    crowding.sort_unstable();
    FamilyRow {
        spec_id: spec.to_string(),
        d: spec.degree(),
        missed_roots: missed,
        stray_candidates: stray,
        candidate_count: roots.len(),
        crowding,
        complete,
        elapsed_us: elapsed.as_micros(),
    }
}

/// Solve every member of degree `1..=d_max` in parallel.
///
/// `jobs` sets the number of worker threads, `None` for one per core.
pub fn run_family(m: u32, d_max: u32, cfg: &SolverConfig, jobs: Option<usize>) -> FamilyReport {
    let start = Instant::now();
    let table = QTable::build(m, d_max);
    let specs: Vec<FamilySpec> = enumerate(m, d_max).collect();
    let work = || -> Vec<Option<FamilyRow>> {
        specs.par_iter().map(|s| run_spec(s, &table, cfg)).collect()
    };
    let results = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    };

    let skipped = results.iter().filter(|r| r.is_none()).count();
    let rows: Vec<FamilyRow> = results.into_iter().flatten().collect();
    let mut worst: Vec<(u32, usize)> = Vec::new();
    for (k, n) in rows.iter().flat_map(|r| r.crowding.iter().copied()) {
        match worst.iter_mut().find(|(m, _)| *m == k) {
            Some(slot) => slot.1 = slot.1.max(n),
            None => worst.push((k, n)),
        }
    }
    worst.sort_unstable();
    FamilyReport {
        m,
        max_degree: d_max,
        config: *cfg,
        specs: specs.len(),
        skipped_overflow: skipped,
        missed_roots: rows.iter().map(|r| r.missed_roots).sum(),
        stray_candidates: rows.iter().map(|r| r.stray_candidates).sum(),
        incomplete: rows.iter().filter(|r| !r.complete).count(),
        worst_crowding: worst,
        elapsed_ms: start.elapsed().as_millis(),
        rows,
    }
}
