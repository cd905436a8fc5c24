use std::collections::BTreeMap;

use super::{Expr, Func};
use crate::error::{Error, Result};

/// Variable assignment used for evaluation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Bindings(BTreeMap<String, f64>);

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: impl Into<String>, value: f64) -> Self {
        self.0.insert(name.into(), value);
        self
    }

    pub fn set(&mut self, name: impl Into<String>, value: f64) {
        self.0.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<S: Into<String>, const N: usize> From<[(S, f64); N]> for Bindings {
    fn from(pairs: [(S, f64); N]) -> Self {
        Bindings(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

fn is_integer(x: f64) -> bool {
    x.fract() == 0.0 && x.abs() <= i32::MAX as f64
}

impl Expr {
    /// Evaluates in IEEE double precision.
    ///
    /// Fails with [`Error::Domain`] naming the offending node for a logarithm
    /// of a non-positive value, a square root of a negative one, division by
    /// zero, a non-integer power of a non-positive base, or any non-finite
    /// intermediate result.
    pub fn eval(&self, bindings: &Bindings) -> Result<f64> {
        let value = match self {
            Expr::Const(v) => *v,
            Expr::Var(name) => bindings.get(name).ok_or_else(|| Error::Unbound(name.clone()))?,
            Expr::Add(a, b) => a.eval(bindings)? + b.eval(bindings)?,
            Expr::Sub(a, b) => a.eval(bindings)? - b.eval(bindings)?,
            Expr::Mul(a, b) => a.eval(bindings)? * b.eval(bindings)?,
            Expr::Div(a, b) => {
                let num = a.eval(bindings)?;
                let den = b.eval(bindings)?;
                if den == 0.0 {
                    return Err(self.domain_error(bindings, "division by zero"));
                }
                num / den
            }
            Expr::Pow(a, b) => {
                let base = a.eval(bindings)?;
                let exponent = b.eval(bindings)?;
                if is_integer(exponent) {
                    if base == 0.0 && exponent < 0.0 {
                        return Err(self.domain_error(bindings, "zero raised to a negative power"));
                    }
                    base.powi(exponent as i32)
                } else if base > 0.0 {
                    base.powf(exponent)
                } else {
                    return Err(self.domain_error(
                        bindings,
                        format!("non-integer power {exponent} of non-positive base {base}"),
                    ));
                }
            }
            Expr::Neg(a) => -a.eval(bindings)?,
            Expr::Func(func, a) => {
                let x = a.eval(bindings)?;
                match func {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Tan => x.tan(),
                    Func::Exp => x.exp(),
                    Func::Ln if x > 0.0 => x.ln(),
                    Func::Ln => return Err(self.domain_error(bindings, format!("logarithm of {x}"))),
                    Func::Sqrt if x >= 0.0 => x.sqrt(),
                    Func::Sqrt => return Err(self.domain_error(bindings, format!("square root of {x}"))),
                    Func::Abs => x.abs(),
                }
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(self.domain_error(bindings, "non-finite result"))
        }
    }

    /// Evaluates a univariate expression at `var = value`.
    pub fn eval_at(&self, var: &str, value: f64) -> Result<f64> {
        self.eval(&Bindings::new().with(var, value))
    }

    fn domain_error(&self, bindings: &Bindings, message: impl Into<String>) -> Error {
        let at: Vec<String> = bindings.iter().map(|(k, v)| format!("{k}={v}")).collect();
        Error::domain(self, format!("{} at {}", message.into(), at.join(", ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn at_t(text: &str, t: f64) -> Result<f64> {
        parse(text).unwrap().eval_at("t", t)
    }

    #[test]
    fn trivial_values() {
        assert_eq!(at_t("exp(0)", 0.0).unwrap(), 1.0);
        assert!((at_t("sin(2*t)", std::f64::consts::FRAC_PI_4).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(at_t("t^0.5", 4.0).unwrap(), 2.0);
    }

    #[test]
    fn integer_powers_accept_negative_bases() {
        assert_eq!(at_t("t^3", -2.0).unwrap(), -8.0);
        assert_eq!(at_t("t^(-2)", -2.0).unwrap(), 0.25);
    }

    #[test]
    fn domain_errors_name_the_node() {
        let err = at_t("1 + ln(t)", -1.0).unwrap_err();
        match err {
            Error::Domain { node, message } => {
                assert_eq!(node, "ln(t)");
                assert!(message.contains("t=-1"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(at_t("t^0.5", -4.0).unwrap_err().is_domain());
        assert!(at_t("t^0.5", 0.0).unwrap_err().is_domain());
        assert!(at_t("1/t", 0.0).unwrap_err().is_domain());
        assert!(at_t("sqrt(t)", -1e-3).unwrap_err().is_domain());
        assert!(at_t("exp(t)", 1e3).unwrap_err().is_domain());
    }

    #[test]
    fn unbound_variable() {
        assert_eq!(at_t("x + t", 1.0).unwrap_err(), Error::Unbound("x".into()));
    }

    #[test]
    fn multivariate_bindings() {
        let b = Bindings::from([("x", 2.0), ("t", 3.0)]);
        assert_eq!(parse("x^2 * t").unwrap().eval(&b).unwrap(), 12.0);
        assert_eq!(b.len(), 2);
    }
}
