use super::Expr;
use crate::expr::Bindings;

fn is(e: &Expr, value: f64) -> bool {
    e.as_const() == Some(value)
}

impl Expr {
    /// Bottom-up algebraic cleanup: folds constant subtrees and removes
    /// additive zeros, multiplicative ones, products with zero, unit powers
    /// and double negations. Every rewrite preserves the value wherever both
    /// sides are defined.
    pub fn simplify(&self) -> Expr {
        let node = match self {
            Expr::Const(_) | Expr::Var(_) => return self.clone(),
            Expr::Add(a, b) => {
                let (a, b) = (a.simplify(), b.simplify());
                if is(&a, 0.0) {
                    b
                } else if is(&b, 0.0) {
                    a
                } else {
                    a + b
                }
            }
            Expr::Sub(a, b) => {
                let (a, b) = (a.simplify(), b.simplify());
                if is(&b, 0.0) {
                    a
                } else if is(&a, 0.0) {
                    (-b).simplify()
                } else {
                    a - b
                }
            }
            Expr::Mul(a, b) => {
                let (a, b) = (a.simplify(), b.simplify());
                if is(&a, 0.0) || is(&b, 0.0) {
                    Expr::num(0.0)
                } else if is(&a, 1.0) {
                    b
                } else if is(&b, 1.0) {
                    a
                } else {
                    a * b
                }
            }
            Expr::Div(a, b) => {
                let (a, b) = (a.simplify(), b.simplify());
                if is(&b, 1.0) {
                    a
                } else if is(&a, 0.0) && !is(&b, 0.0) {
                    Expr::num(0.0)
                } else {
                    a / b
                }
            }
            Expr::Pow(a, b) => {
                let (a, b) = (a.simplify(), b.simplify());
                if is(&b, 1.0) {
                    a
                } else if is(&b, 0.0) || is(&a, 1.0) {
                    Expr::num(1.0)
                } else {
                    a.pow(b)
                }
            }
            Expr::Neg(a) => match a.simplify() {
                Expr::Neg(inner) => *inner,
                Expr::Const(v) => Expr::num(-v),
                other => -other,
            },
            Expr::Func(f, a) => a.simplify().apply(*f),
        };
        fold_constants(node)
    }
}

fn fold_constants(node: Expr) -> Expr {
    let all_const = match &node {
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
            a.as_const().is_some() && b.as_const().is_some()
        }
        Expr::Neg(a) | Expr::Func(_, a) => a.as_const().is_some(),
        Expr::Const(_) | Expr::Var(_) => false,
    };
    if !all_const {
        return node;
    }
    // Undefined constant subexpressions stay symbolic so the error surfaces
    // at evaluation time.
    match node.eval(&Bindings::new()) {
        Ok(v) => Expr::num(v),
        Err(_) => node,
    }
}
