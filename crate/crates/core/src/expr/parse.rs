//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' integer)?
//! primary := number | 'x' | '(' expr ')'
//! ```
//!
//! Numbers are decimal literals with an optional exponent (`2`, `0.5`,
//! `1e-3`). A literal that is not exactly representable is kept as the
//! tightest binary64 interval around its decimal value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::{Constant, Expr};
use crate::float::{next_down, next_up};
use crate::interval::Interval;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {position}: {message}")]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == b'+' { lhs + rhs } else { lhs - rhs };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if op == b'*' { lhs * rhs } else { lhs / rhs };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a non-negative integer exponent"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let n: u32 = digits.parse().map_err(|_| SyntaxError {
            position: start,
            message: format!("exponent {digits} is too large"),
        })?;
        if self.peek() == Some(b'^') {
            return Err(self.error("chained exponents need parentheses"));
        }
        Ok(base.pow(n))
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'x') => {
                self.pos += 1;
                Ok(Expr::Var)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
        }
    }

    fn number(&mut self) -> Result<Expr, SyntaxError> {
        let start = self.pos;
        let mut mantissa = String::new();
        let mut frac_digits: i64 = 0;
        let mut seen_dot = false;
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_digit() {
                mantissa.push(c as char);
                if seen_dot {
                    frac_digits += 1;
                }
            } else if c == b'.' && !seen_dot {
                seen_dot = true;
            } else {
                break;
            }
            self.pos += 1;
        }
        if mantissa.is_empty() {
            return Err(SyntaxError {
                position: start,
                message: "malformed number".into(),
            });
        }
        let mut exp10: i64 = 0;
        if let Some(b'e' | b'E') = self.src.get(self.pos) {
            self.pos += 1;
            let mut neg = false;
            if let Some(&s @ (b'+' | b'-')) = self.src.get(self.pos) {
                neg = s == b'-';
                self.pos += 1;
            }
            let es = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if es == self.pos {
                return Err(self.error("expected exponent digits"));
            }
            let digits = std::str::from_utf8(&self.src[es..self.pos]).unwrap();
            exp10 = digits.parse::<i64>().map_err(|_| SyntaxError {
                position: es,
                message: "exponent out of range".into(),
            })?;
            if neg {
                exp10 = -exp10;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let nearest: f64 = text.parse().map_err(|_| SyntaxError {
            position: start,
            message: format!("malformed number '{text}'"),
        })?;
        if !nearest.is_finite() {
            return Err(SyntaxError {
                position: start,
                message: format!("literal '{text}' overflows binary64"),
            });
        }
        let scale = exp10 - frac_digits;
        let enclosure = if mantissa.bytes().all(|c| c == b'0') {
            Interval::ZERO
        } else if scale + (mantissa.len() as i64) < -330 {
            // below the smallest subnormal
            Interval::new(0.0, next_up(0.0))
        } else {
            enclose(nearest, &decimal_value(&mantissa, scale))
        };
        Ok(Expr::Const(Constant { nearest, enclosure }))
    }
}

fn decimal_value(mantissa: &str, exp10: i64) -> BigRational {
    let m: BigInt = mantissa.parse().expect("digits only");
    let ten = BigInt::from(10u8);
    let scale = num_traits::pow(ten, exp10.unsigned_abs() as usize);
    if exp10 >= 0 {
        BigRational::from_integer(m * scale)
    } else {
        BigRational::new(m, scale)
    }
}

/// Tightest interval with binary64 bounds around `exact`, given its nearest double.
fn enclose(nearest: f64, exact: &BigRational) -> Interval {
    let n = if nearest.is_zero() {
        BigRational::zero()
    } else {
        BigRational::from_float(nearest).expect("finite")
    };
    match n.cmp(exact) {
        std::cmp::Ordering::Equal => Interval::point(nearest),
        std::cmp::Ordering::Less => Interval::new(nearest, next_up(nearest)),
        std::cmp::Ordering::Greater => Interval::new(next_down(nearest), nearest),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable() {
        assert_eq!(parse("x").unwrap(), Expr::Var);
        assert_eq!(parse("  ( x ) ").unwrap(), Expr::Var);
    }

    #[test]
    fn product_of_linear_factors() {
        let e = parse("(x-1)*(x-2)*(x-3)*(x-4)*(x-5)").unwrap();
        // left-associated chain of four products over five factors
        let mut factors = 0;
        let mut node = &e;
        while let Expr::Mul(l, r) = node {
            assert!(matches!(**r, Expr::Sub(..)));
            factors += 1;
            node = l;
        }
        assert!(matches!(node, Expr::Sub(..)));
        assert_eq!(factors + 1, 5);
    }

    #[test]
    fn incomplete_power_reports_offset() {
        let err = parse("x^").unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse("x^-1").unwrap_err();
        assert_eq!(err.position, 2);
    }

    #[test]
    fn other_errors() {
        assert_eq!(parse("").unwrap_err().position, 0);
        assert_eq!(parse("(x+1").unwrap_err().position, 4);
        assert_eq!(parse("2x").unwrap_err().position, 1);
        assert_eq!(parse("x + y").unwrap_err().position, 4);
        assert_eq!(parse("x^2^3").unwrap_err().position, 3);
        assert!(parse("1e400").is_err());
        assert!(parse("1e").is_err());
        assert!(parse("1e-99999999").is_ok());
    }

    #[test]
    fn precedence_and_unary_minus() {
        let e = parse("-x^2").unwrap();
        assert_eq!(e, -(Expr::Var.pow(2)));
        assert_eq!(parse("1 - 2 - 3").unwrap().eval_f64(0.0), -4.0);
        assert_eq!(parse("8 / 4 / 2").unwrap().eval_f64(0.0), 1.0);
        assert_eq!(parse("2 + 3 * x").unwrap().eval_f64(2.0), 8.0);
    }

    #[test]
    fn literals_are_enclosed() {
        let Expr::Const(c) = parse("0.1").unwrap() else {
            panic!()
        };
        assert_eq!(c.nearest, 0.1);
        assert!(!c.is_exact());
        // 0.1 rounds up to its nearest double
        assert_eq!(c.enclosure, Interval::new(next_down(0.1), 0.1));

        let Expr::Const(c) = parse("0.25").unwrap() else {
            panic!()
        };
        assert!(c.is_exact());
        let Expr::Const(c) = parse("2.5e3").unwrap() else {
            panic!()
        };
        assert_eq!(c.enclosure, Interval::point(2500.0));
        let Expr::Const(c) = parse(".5").unwrap() else {
            panic!()
        };
        assert_eq!(c.nearest, 0.5);
    }
}
