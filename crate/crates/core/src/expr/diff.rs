use super::{Constant, Expr};
use crate::round::{add_is_exact, mul_is_exact};

impl Expr {
    /// Symbolic derivative with respect to `x`.
    ///
    /// Trivial terms (`0 + u`, `1 * u`, `u^1`, ...) are dropped as the tree is
    /// built; constants are folded only when the folded value is exact.
    pub fn derivative(&self) -> Expr {
        match self {
            Expr::Const(_) => zero(),
            Expr::Var => one(),
            Expr::Neg(a) => neg(a.derivative()),
            Expr::Add(a, b) => add(a.derivative(), b.derivative()),
            Expr::Sub(a, b) => sub(a.derivative(), b.derivative()),
            Expr::Mul(a, b) => add(
                mul(a.derivative(), (**b).clone()),
                mul((**a).clone(), b.derivative()),
            ),
            Expr::Div(a, b) => {
                let num = sub(
                    mul(a.derivative(), (**b).clone()),
                    mul((**a).clone(), b.derivative()),
                );
                div(num, pow((**b).clone(), 2))
            }
            Expr::Pow(a, n) => match n {
                0 => zero(),
                _ => mul(
                    mul(Expr::constant(*n as f64), pow((**a).clone(), n - 1)),
                    a.derivative(),
                ),
            },
        }
    }
}

fn zero() -> Expr {
    Expr::constant(0.0)
}

fn one() -> Expr {
    Expr::constant(1.0)
}

fn exact_value(e: &Expr) -> Option<f64> {
    match e {
        Expr::Const(c) if c.is_exact() => Some(c.nearest),
        _ => None,
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(Constant {
            nearest: -c.nearest,
            enclosure: -c.enclosure,
        }),
        Expr::Neg(inner) => *inner,
        a => -a,
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (exact_value(&a), exact_value(&b)) {
        (Some(0.0), _) => b,
        (_, Some(0.0)) => a,
        (Some(x), Some(y)) if add_is_exact(x, y) => Expr::constant(x + y),
        _ => a + b,
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (exact_value(&a), exact_value(&b)) {
        (_, Some(0.0)) => a,
        (Some(0.0), _) => neg(b),
        (Some(x), Some(y)) if add_is_exact(x, -y) => Expr::constant(x - y),
        _ => a - b,
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (exact_value(&a), exact_value(&b)) {
        (Some(0.0), _) | (_, Some(0.0)) => zero(),
        (Some(1.0), _) => b,
        (_, Some(1.0)) => a,
        (Some(x), Some(y)) if mul_is_exact(x, y) => Expr::constant(x * y),
        _ => a * b,
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (exact_value(&a), exact_value(&b)) {
        (_, Some(1.0)) => a,
        _ => a / b,
    }
}

fn pow(a: Expr, n: u32) -> Expr {
    match n {
        0 => one(),
        1 => a,
        _ => a.pow(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::interval::Interval;

    #[test]
    fn square_differentiates_to_two_x() {
        let d = parse("x^2").unwrap().derivative();
        assert_eq!(d, Expr::constant(2.0) * Expr::Var);
    }

    #[test]
    fn constants_and_linear() {
        assert_eq!(parse("7").unwrap().derivative(), Expr::constant(0.0));
        assert_eq!(parse("x").unwrap().derivative(), Expr::constant(1.0));
        assert_eq!(parse("3*x - 4").unwrap().derivative(), Expr::constant(3.0));
    }

    #[test]
    fn quintic_product_derivative_at_one() {
        let f = parse("(x-1)*(x-2)*(x-3)*(x-4)*(x-5)").unwrap();
        let d = f.derivative().eval_point(1.0);
        assert!(d.contains(24.0));
        assert!(d.width() <= 1e-12);
    }

    #[test]
    fn quotient_rule() {
        let f = parse("1/x").unwrap();
        let d = f.derivative();
        assert_eq!(d.eval_point(2.0), Interval::point(-0.25));
    }
}
