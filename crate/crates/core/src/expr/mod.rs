//! Expressions in one variable `x` and their interval extensions.
//!
//! An [`Expr`] is an immutable tree built from constants, `x`, the four
//! arithmetic operations, negation and non-negative integer powers. It can be
//! evaluated as
//!
//! * a natural interval extension over a box ([`Expr::eval_interval`]),
//! * an interval enclosure at a point ([`Expr::eval_point`]),
//! * a plain floating point value ([`Expr::eval_f64`]),
//! * a slope enclosure about a center ([`Expr::eval_slope`]) and the centered
//!   form built from it ([`Expr::centered_form`]).
//!
//! [`Expr::derivative`] returns the symbolic derivative as another tree.

mod diff;
mod eval;
mod parse;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::interval::Interval;

pub use eval::SlopePair;
pub use parse::{parse, SyntaxError};

/// A numeric literal. `nearest` is the binary64 value closest to the literal
/// and `enclosure` the tightest interval containing its exact value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant {
    pub nearest: f64,
    pub enclosure: Interval,
}

impl Constant {
    pub fn exact(v: f64) -> Constant {
        Constant {
            nearest: v,
            enclosure: Interval::point(v),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.enclosure.is_point()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Constant),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn constant(v: f64) -> Expr {
        Expr::Const(Constant::exact(v))
    }

    pub fn pow(self, n: u32) -> Expr {
        Expr::Pow(Box::new(self), n)
    }

    /// Product of `(x - root)^multiplicity` factors, optionally negated.
    pub fn from_roots<I>(roots: I, negate: bool) -> Expr
    where
        I: IntoIterator<Item = (f64, u32)>,
    {
        let mut acc: Option<Expr> = None;
        for (r, k) in roots {
            if k == 0 {
                continue;
            }
            let base = if r == 0.0 {
                Expr::Var
            } else if r < 0.0 {
                Expr::Var + Expr::constant(-r)
            } else {
                Expr::Var - Expr::constant(r)
            };
            let factor = if k == 1 { base } else { base.pow(k) };
            acc = Some(match acc {
                None => factor,
                Some(a) => a * factor,
            });
        }
        let p = acc.unwrap_or_else(|| Expr::constant(1.0));
        if negate {
            -p
        } else {
            p
        }
    }

    /// Horner form `c0 + x*(c1 + x*(c2 + ...))` of a coefficient list,
    /// lowest degree first.
    pub fn horner(coeffs: &[f64]) -> Expr {
        let Some((&last, rest)) = coeffs.split_last() else {
            return Expr::constant(0.0);
        };
        let mut acc = Expr::constant(last);
        for &c in rest.iter().rev() {
            acc = Expr::constant(c) + Expr::Var * acc;
        }
        acc
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var => 1,
            Expr::Neg(a) | Expr::Pow(a, _) => 1 + a.size(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(c)
                if c.nearest < 0.0 || (c.nearest == 0.0 && c.nearest.is_sign_negative()) =>
            {
                3
            }
            Expr::Const(_) | Expr::Var => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Const(c) => write!(f, "{:?}", c.nearest),
            Expr::Var => write!(f, "x"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                child(f, a, 4)
            }
            Expr::Add(a, b) => {
                child(f, a, 1)?;
                write!(f, " + ")?;
                child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                child(f, a, 1)?;
                write!(f, " - ")?;
                child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                child(f, a, 2)?;
                write!(f, "*")?;
                child(f, b, 3)
            }
            Expr::Div(a, b) => {
                child(f, a, 2)?;
                write!(f, "/")?;
                child(f, b, 3)
            }
            Expr::Pow(a, n) => {
                child(f, a, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}
