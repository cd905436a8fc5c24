//! α-fractional Taylor series in three regimes of the order.
//!
//! With `D^i` the classical i-th derivative, `w` a constant weight and
//! `(β)_i = β(β+1)⋯(β+i-1)`:
//!
//! | regime | order | terms beyond `f(x₀)` |
//! |---|---|---|
//! | R1 | `0 < α ≤ 1` | `D^i f(x₀) (x-x₀)^(α+i-1) / (w (α)_i)` for `i ≥ 1` |
//! | R2 | `1 < α ≤ 2` | `Df(x₀)(x-x₀)`, then `D^i f(x₀) (x-x₀)^(α+i-2) / (w (α-1)_i)` for `i ≥ 2` |
//! | R3 | `α = n + A` | classical terms up to `n`, then `D^i f(x₀) (x-x₀)^(A+i-1) / (w (A)_i)` |
//!
//! At `α = 1` and `α = 2` with `w = 1` both R1 and R2 collapse to the
//! classical Taylor polynomial.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::operators::{Alpha, WeightSpec};

/// `α(α+1)⋯(α+i-1)`; the empty product for `i = 0`.
pub fn rising_factorial(alpha: f64, i: u32) -> f64 {
    (0..i).map(|k| alpha + f64::from(k)).product()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    R1,
    R2,
    /// `α = n + a` with `n ≥ 2` and `a ∈ (0, 1]`.
    R3 { n: u32, a: f64 },
}

impl Regime {
    pub fn of(alpha: Alpha) -> Regime {
        let v = alpha.value();
        if v <= 1.0 {
            Regime::R1
        } else if v <= 2.0 {
            Regime::R2
        } else {
            let n = alpha.ceil() - 1;
            Regime::R3 { n, a: v - f64::from(n) }
        }
    }

    /// Number of classical terms after the constant.
    fn head(self) -> u32 {
        match self {
            Regime::R1 => 0,
            Regime::R2 => 1,
            Regime::R3 { n, .. } => n,
        }
    }

    /// Base of the rising factorial and shift of the exponent for tail term `i`.
    fn tail(self, alpha: f64, i: u32) -> (f64, f64) {
        let fi = f64::from(i);
        match self {
            Regime::R1 => (rising_factorial(alpha, i), alpha + fi - 1.0),
            Regime::R2 => (rising_factorial(alpha - 1.0, i), alpha + fi - 2.0),
            Regime::R3 { a, .. } => (rising_factorial(a, i), a + fi - 1.0),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::R1 => f.write_str("R1"),
            Regime::R2 => f.write_str("R2"),
            Regime::R3 { n, a } => write!(f, "R3(n={n}, A={a})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coefficient: f64,
    pub exponent: f64,
}

/// Truncated series about `x0`; `terms[0]` is the constant `f(x0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FracTaylorSeries {
    pub x0: f64,
    pub alpha: Alpha,
    pub weight_value: f64,
    pub regime: Regime,
    pub terms: Vec<Term>,
    /// Highest derivative order used.
    pub order: u32,
}

/// Builds terms `i = 0..=order` from classical derivatives of the
/// univariate `f` at `x0`. The weight must not depend on `t`.
pub fn taylor_build(f: &Expr, x0: f64, alpha: Alpha, w: &WeightSpec, order: u32) -> Result<FracTaylorSeries> {
    let a = alpha.value();
    let weight_value = w.constant_value(a)?;
    if weight_value == 0.0 {
        return Err(Error::Weight(format!("weight `{w}` vanishes at alpha = {a}")));
    }
    let var = f.sole_var("x")?;
    let regime = Regime::of(alpha);
    let mut terms = Vec::with_capacity(order as usize + 1);
    let mut d = f.clone();
    let mut classical_factorial = 1.0;
    for i in 0..=order {
        if i > 0 {
            d = d.derivative(&var);
            classical_factorial *= f64::from(i);
        }
        let value = d.eval_at(&var, x0)?;
        let term = if i <= regime.head() {
            Term {
                coefficient: value / classical_factorial,
                exponent: f64::from(i),
            }
        } else {
            let (factorial, exponent) = regime.tail(a, i);
            Term {
                coefficient: value / (weight_value * factorial),
                exponent,
            }
        };
        terms.push(term);
    }
    Ok(FracTaylorSeries {
        x0,
        alpha,
        weight_value,
        regime,
        terms,
        order,
    })
}

impl FracTaylorSeries {
    /// `Σ coefficient · (x - x0)^exponent` for `x ≥ x0`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= self.x0) {
            return Err(Error::domain(
                format!("(x - {})^alpha", self.x0),
                format!("series needs x >= x0, got x = {x}"),
            ));
        }
        let h = x - self.x0;
        Ok(self.terms.iter().map(|t| t.coefficient * h.powf(t.exponent)).sum())
    }
}

/// Free-function form of [`FracTaylorSeries::eval`].
pub fn taylor_eval(series: &FracTaylorSeries, x: f64) -> Result<f64> {
    series.eval(x)
}
