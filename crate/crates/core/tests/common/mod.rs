//! Exact rational arithmetic used as an oracle by the integration tests.
//!
//! Expressions are evaluated by a separate small parser straight into
//! `BigRational`, so a bug in the crate's parser or evaluator cannot hide
//! behind the same bug in the oracle.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use ivroot::Interval;

pub fn rat(t: f64) -> BigRational {
    BigRational::from_float(t).expect("finite float")
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `lo <= q <= hi`, with infinite bounds allowed.
pub fn interval_contains(x: Interval, q: &BigRational) -> bool {
    if x.is_empty() {
        return false;
    }
    let above = x.lo() == f64::NEG_INFINITY || (x.lo().is_finite() && rat(x.lo()) <= *q);
    let below = x.hi() == f64::INFINITY || (x.hi().is_finite() && *q <= rat(x.hi()));
    above && below
}

/// Sign of `f(t)` computed exactly.
pub fn exact_sign(src: &str, t: f64) -> Option<i8> {
    let v = eval(src, &rat(t))?;
    Some(if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    })
}

/// Exact value of the expression `src` at `x`, `None` on division by zero.
pub fn eval(src: &str, x: &BigRational) -> Option<BigRational> {
    let mut p = Oracle {
        s: src.as_bytes(),
        i: 0,
        x,
        undefined: false,
    };
    let v = p.sum();
    p.ws();
    assert_eq!(p.i, p.s.len(), "oracle could not read all of {src:?}");
    (!p.undefined).then_some(v)
}

struct Oracle<'a> {
    s: &'a [u8],
    i: usize,
    x: &'a BigRational,
    /// A division by zero happened; parsing goes on to the end anyway.
    undefined: bool,
}

impl Oracle<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i] == b' ' {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn sum(&mut self) -> BigRational {
        let mut v = self.product();
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.i += 1;
            let r = self.product();
            v = if c == b'+' { v + r } else { v - r };
        }
        v
    }

    fn product(&mut self) -> BigRational {
        let mut v = self.unary();
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.i += 1;
            let r = self.unary();
            if c == b'*' {
                v *= r;
            } else if r.is_zero() {
                self.undefined = true;
            } else {
                v /= r;
            }
        }
        v
    }

    fn unary(&mut self) -> BigRational {
        if self.peek() == Some(b'-') {
            self.i += 1;
            return -self.unary();
        }
        let base = self.atom();
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.ws();
            let n = self.digits().parse::<u32>().expect("integer exponent");
            let mut acc = BigRational::one();
            for _ in 0..n {
                acc *= &base;
            }
            return acc;
        }
        base
    }

    fn atom(&mut self) -> BigRational {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let v = self.sum();
                assert_eq!(self.peek(), Some(b')'));
                self.i += 1;
                v
            }
            Some(b'x') => {
                self.i += 1;
                self.x.clone()
            }
            _ => self.number(),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        String::from_utf8(self.s[start..self.i].to_vec()).unwrap()
    }

    /// Decimal literal `123.45e-6` read exactly.
    fn number(&mut self) -> BigRational {
        let whole = self.digits();
        let mut frac = String::new();
        if self.s.get(self.i) == Some(&b'.') {
            self.i += 1;
            frac = self.digits();
        }
        let mut exp: i64 = 0;
        if matches!(self.s.get(self.i), Some(b'e' | b'E')) {
            self.i += 1;
            let neg = match self.s.get(self.i) {
                Some(b'-') => {
                    self.i += 1;
                    true
                }
                Some(b'+') => {
                    self.i += 1;
                    false
                }
                _ => false,
            };
            let e: i64 = self.digits().parse().expect("exponent digits");
            exp = if neg { -e } else { e };
        }
        assert!(
            !whole.is_empty() || !frac.is_empty(),
            "number expected in oracle input"
        );
        let mantissa: BigInt = format!("{whole}{frac}").parse().unwrap();
        let exp = exp - frac.len() as i64;
        let ten = BigInt::from(10);
        if exp >= 0 {
            BigRational::from_integer(mantissa * num_traits::pow(ten, exp as usize))
        } else {
            BigRational::new(mantissa, num_traits::pow(ten, (-exp) as usize))
        }
    }
}

const LITERALS: [&str; 10] = [
    "1", "2", "3", "0.5", "0.1", "1.5", "7", "0.3", "2.25", "1e-2",
];

/// A random fully parenthesised expression in `x` of depth at most `depth`.
pub fn random_expr(rng: &mut StdRng, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.5) {
            "x".to_string()
        } else {
            LITERALS[rng.gen_range(0..LITERALS.len())].to_string()
        };
    }
    let a = random_expr(rng, depth - 1);
    match rng.gen_range(0..7) {
        0 => format!("(-{a})"),
        1 => format!("({a})^{}", rng.gen_range(2..5)),
        2 => format!("({a} / {})", random_expr(rng, depth - 1)),
        3 => format!("({a} - {})", random_expr(rng, depth - 1)),
        4 => format!("({a} + {})", random_expr(rng, depth - 1)),
        _ => format!("({a} * {})", random_expr(rng, depth - 1)),
    }
}

/// A random box inside `[-r, r]` and a random point of it.
pub fn random_box(rng: &mut StdRng, r: f64) -> (Interval, f64) {
    let a = rng.gen_range(-r..r);
    let b = rng.gen_range(-r..r);
    let x = if rng.gen_bool(0.1) {
        Interval::point(a)
    } else {
        Interval::new(a.min(b), a.max(b))
    };
    let t = if rng.gen_bool(0.1) {
        if rng.gen_bool(0.5) {
            x.lo()
        } else {
            x.hi()
        }
    } else {
        rng.gen_range(x.lo()..=x.hi())
    };
    (x, t)
}

/// A cubic `a (x - r1)(x - r2)(x - r3)` with rational roots `p/q`, as source
/// text and the exact roots.
pub fn random_cubic(rng: &mut StdRng) -> (String, Vec<BigRational>) {
    let mut roots = Vec::new();
    let mut factors = Vec::new();
    for _ in 0..3 {
        let p: i64 = rng.gen_range(-40..=40);
        let q: i64 = [1, 2, 3, 4, 5, 7, 8][rng.gen_range(0..7)];
        roots.push(BigRational::new(BigInt::from(p), BigInt::from(q)));
        factors.push(format!("(x - ({p}/{q}))"));
    }
    let a = [1, 2, 3, 5][rng.gen_range(0..4)];
    let lead = if rng.gen_bool(0.5) {
        format!("{a}")
    } else {
        format!("(-{a})")
    };
    (format!("{lead} * {}", factors.join(" * ")), roots)
}
