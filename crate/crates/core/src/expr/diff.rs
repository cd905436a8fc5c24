use super::{Expr, Func};

impl Expr {
    /// Exact symbolic derivative with respect to `var`, simplified.
    ///
    /// `abs(u)` differentiates to `u / abs(u) * u'`, the sign function away
    /// from zero; evaluating it at `u = 0` is a domain error.
    pub fn derivative(&self, var: &str) -> Expr {
        self.raw_derivative(var).simplify()
    }

    /// The `order`-th derivative, simplifying between steps.
    pub fn nth_derivative(&self, var: &str, order: usize) -> Expr {
        (0..order).fold(self.clone(), |acc, _| acc.derivative(var))
    }

    fn raw_derivative(&self, var: &str) -> Expr {
        if !self.depends_on(var) {
            return Expr::num(0.0);
        }
        match self {
            Expr::Const(_) => Expr::num(0.0),
            Expr::Var(_) => Expr::num(1.0),
            Expr::Add(a, b) => a.raw_derivative(var) + b.raw_derivative(var),
            Expr::Sub(a, b) => a.raw_derivative(var) - b.raw_derivative(var),
            Expr::Mul(a, b) => {
                a.raw_derivative(var) * (**b).clone() + (**a).clone() * b.raw_derivative(var)
            }
            Expr::Div(a, b) => {
                let num = a.raw_derivative(var) * (**b).clone() - (**a).clone() * b.raw_derivative(var);
                num / (**b).clone().pow(2.0)
            }
            Expr::Pow(base, exponent) => {
                let (u, v) = ((**base).clone(), (**exponent).clone());
                if !exponent.depends_on(var) {
                    v.clone() * u.clone().pow(v - 1.0) * base.raw_derivative(var)
                } else if !base.depends_on(var) {
                    self.clone() * u.ln() * exponent.raw_derivative(var)
                } else {
                    let du = base.raw_derivative(var);
                    let dv = exponent.raw_derivative(var);
                    self.clone() * (dv * u.clone().ln() + v * du / u)
                }
            }
            Expr::Neg(a) => -a.raw_derivative(var),
            Expr::Func(func, a) => {
                let u = (**a).clone();
                let du = a.raw_derivative(var);
                let outer = match func {
                    Func::Sin => u.cos(),
                    Func::Cos => -u.sin(),
                    Func::Tan => Expr::num(1.0) / u.cos().pow(2.0),
                    Func::Exp => u.exp(),
                    Func::Ln => Expr::num(1.0) / u,
                    Func::Sqrt => Expr::num(1.0) / (Expr::num(2.0) * u.apply(Func::Sqrt)),
                    Func::Abs => u.clone() / u.apply(Func::Abs),
                };
                outer * du
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::{parse, Bindings};

    fn d(text: &str) -> String {
        parse(text).unwrap().derivative("t").to_string()
    }

    #[test]
    fn textbook_derivatives() {
        assert_eq!(d("t^3"), "3 * t^2");
        assert_eq!(d("sin(2*t)"), "cos(2 * t) * 2");
        assert_eq!(d("exp(t)"), "exp(t)");
        assert_eq!(d("x * 5"), "0");
        assert_eq!(d("t"), "1");
    }

    #[test]
    fn general_power_rule() {
        let f = parse("t^t").unwrap();
        let df = f.derivative("t");
        let t = 1.7_f64;
        let expected = t.powf(t) * (t.ln() + 1.0);
        assert!((df.eval_at("t", t).unwrap() - expected).abs() < 1e-12);
        let g = parse("2^t").unwrap().derivative("t");
        assert!((g.eval_at("t", 3.0).unwrap() - 8.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn abs_is_sign_away_from_zero() {
        let da = parse("abs(t)").unwrap().derivative("t");
        assert_eq!(da.eval_at("t", -3.0).unwrap(), -1.0);
        assert_eq!(da.eval_at("t", 2.0).unwrap(), 1.0);
        assert!(da.eval_at("t", 0.0).unwrap_err().is_domain());
    }

    #[test]
    fn partial_derivatives_treat_other_variables_as_constants() {
        let f = parse("t1^3 * sin(t2)").unwrap();
        let b = Bindings::from([("t1", 2.0), ("t2", 0.5)]);
        let d1 = f.derivative("t1").eval(&b).unwrap();
        let d12 = f.derivative("t1").derivative("t2").eval(&b).unwrap();
        assert!((d1 - 12.0 * 0.5f64.sin()).abs() < 1e-12);
        assert!((d12 - 12.0 * 0.5f64.cos()).abs() < 1e-12);
    }

    #[test]
    fn iterated_derivatives_stay_small() {
        let f = parse("sin(t)").unwrap();
        let d4 = f.nth_derivative("t", 4);
        assert_eq!(d4.to_string(), "sin(t)");
        assert!(parse("exp(2*t)").unwrap().nth_derivative("t", 10).size() < 40);
    }
}
