//! Serialisable records for the results of a solve.
//!
//! Bounds are written twice: as the shortest decimal that parses back to the
//! same binary64 value, and as a hexadecimal float that shows the bits.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::candidate::{RootCandidate, Status};
use crate::interval::Interval;
use crate::solver::{Solution, SolverConfig};

/// One candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// `[lo, hi]` as shortest round-trip decimals.
    pub interval: [String; 2],
    /// `[lo, hi]` as hexadecimal floats.
    pub hex: [String; 2],
    pub sign_lo: i8,
    pub sign_hi: i8,
    pub status: Status,
}

impl OutputRecord {
    pub fn new(c: &RootCandidate) -> OutputRecord {
        let (lo, hi) = (c.interval.lo(), c.interval.hi());
        OutputRecord {
            interval: [decimal(lo), decimal(hi)],
            hex: [hex_float(lo), hex_float(hi)],
            sign_lo: c.lo_sign.as_i8(),
            sign_hi: c.hi_sign.as_i8(),
            status: c.status,
        }
    }

    /// The interval read back from the decimal bounds.
    pub fn bounds(&self) -> Option<Interval> {
        let lo: f64 = self.interval[0].parse().ok()?;
        let hi: f64 = self.interval[1].parse().ok()?;
        Interval::try_new(lo, hi).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub evaluations: u64,
    pub contractions: u64,
    pub bisections: u64,
    pub handoffs: u64,
    pub expansions: u64,
    pub iterations: u64,
    pub final_tau_w: f64,
    pub complete: bool,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub tau_x: f64,
    pub tau_w: f64,
    pub tau_c: f64,
    pub max_iterations: u64,
}

/// Everything printed by `ivroot solve --format json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub roots: Vec<OutputRecord>,
    pub stats: StatsRecord,
    pub config: ConfigRecord,
}

impl SolveReport {
    pub fn new(solution: &Solution, cfg: &SolverConfig) -> SolveReport {
        let s = &solution.stats;
        SolveReport {
            roots: solution.roots.iter().map(OutputRecord::new).collect(),
            stats: StatsRecord {
                evaluations: s.evaluations,
                contractions: s.contractions,
                bisections: s.bisections,
                handoffs: s.handoffs,
                expansions: s.expansions,
                iterations: s.iterations,
                final_tau_w: s.final_tau_w,
                complete: solution.complete,
                elapsed_ms: s.elapsed.as_secs_f64() * 1e3,
            },
            config: ConfigRecord {
                tau_x: cfg.tau_x,
                tau_w: cfg.tau_w,
                tau_c: cfg.tau_c,
                max_iterations: cfg.max_iterations,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// One line per candidate followed by a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.roots {
            let _ = writeln!(
                out,
                "[{}, {}]  {:>2} {:>2}  {}",
                r.interval[0],
                r.interval[1],
                r.sign_lo,
                r.sign_hi,
                r.status.as_str()
            );
        }
        let s = &self.stats;
        let _ = writeln!(
            out,
            "{} candidates, {} evaluations, {} contractions, {} bisections, {} handoffs, {:.3} ms{}",
            self.roots.len(),
            s.evaluations,
            s.contractions,
            s.bisections,
            s.handoffs,
            s.elapsed_ms,
            if s.complete { "" } else { " (iteration budget exhausted)" }
        );
        out
    }
}

/// Shortest decimal that parses back to `t`.
pub fn decimal(t: f64) -> String {
    format!("{t:?}")
}

/// `t` as a C99 hexadecimal float, `-0x1.8p+1` for `-3`.
pub fn hex_float(t: f64) -> String {
    if t.is_nan() {
        return "nan".to_string();
    }
    if t.is_infinite() {
        return if t > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let bits = t.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (lead, e) = match (exp, frac) {
        (0, 0) => return format!("{sign}0x0p+0"),
        (0, _) => (0, -1022),
        _ => (1, exp - 1023),
    };
    let digits = format!("{frac:013x}");
    let digits = digits.trim_end_matches('0');
    let point = if digits.is_empty() { "" } else { "." };
    format!("{sign}0x{lead}{point}{digits}p{e:+}")
}

/// Inverse of [`hex_float`]; also accepts any number of fraction digits up
/// to thirteen.
pub fn parse_hex_float(s: &str) -> Option<f64> {
    match s {
        "nan" => return Some(f64::NAN),
        "inf" => return Some(f64::INFINITY),
        "-inf" => return Some(f64::NEG_INFINITY),
        _ => {}
    }
    let (neg, rest) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let rest = rest.strip_prefix("0x")?;
    let (mantissa, exp) = rest.split_once('p')?;
    let e: i64 = exp.parse().ok()?;
    let (lead, digits) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if digits.len() > 13 {
        return None;
    }
    let frac = if digits.is_empty() {
        0
    } else {
        u64::from_str_radix(digits, 16).ok()? << (4 * (13 - digits.len()))
    };
    let bits = match lead {
        "1" if (-1022..=1023).contains(&e) => (((e + 1023) as u64) << 52) | frac,
        "0" if frac == 0 => 0,
        "0" if e == -1022 => frac,
        _ => return None,
    };
    let t = f64::from_bits(bits);
    Some(if neg { -t } else { t })
}
