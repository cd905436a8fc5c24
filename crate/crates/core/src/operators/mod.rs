//! Fractional derivative operators.
//!
//! All univariate operators act on expressions in the variable [`T`] and are
//! evaluated at `t > 0`. The generalized derivative with weight `w` reduces to
//!
//! ```text
//! D^α f(t) = w(t, α) · t^(1-α) · f'(t)
//! ```
//!
//! which [`EvalMethod::ExactReduction`] evaluates with the symbolic
//! derivative. [`EvalMethod::LimitQuotient`] instead evaluates each
//! operator's defining difference quotient at a finite step.

mod caputo;
mod weight;

pub use caputo::caputo;
pub use weight::{validate_weight, WeightSpec};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::Expr;

/// The variable univariate operators differentiate in.
pub const T: &str = "t";

/// Order of differentiation, `α > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Alpha(value))
        } else {
            Err(Error::Alpha {
                alpha: value,
                message: "order must be a positive real".into(),
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Smallest integer `>= α`.
    pub fn ceil(self) -> u32 {
        self.0.ceil() as u32
    }

    /// `n` such that `α ∈ (n, n+1]`; zero for `α ∈ (0, 1]`.
    pub fn integer_part(self) -> u32 {
        self.ceil() - 1
    }

    pub fn is_unit_interval(self) -> bool {
        self.0 <= 1.0
    }

    pub(crate) fn require_unit_interval(self) -> Result<()> {
        if self.is_unit_interval() {
            Ok(())
        } else {
            Err(Error::Alpha {
                alpha: self.0,
                message: "this operator is defined for alpha in (0, 1]".into(),
            })
        }
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;
    fn try_from(value: f64) -> Result<Self> {
        Alpha::new(value)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::num::fmt_f64(self.0))
    }
}

/// How a fractional derivative is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalMethod {
    /// Closed form through the classical symbolic derivative.
    ExactReduction,
    /// Symmetric difference quotient with step `h ∈ (0, 1e-2]`.
    LimitQuotient { h: f64 },
}

impl EvalMethod {
    pub fn limit(h: f64) -> Result<Self> {
        let m = EvalMethod::LimitQuotient { h };
        m.validate()?;
        Ok(m)
    }

    fn validate(self) -> Result<()> {
        match self {
            EvalMethod::LimitQuotient { h } if !(h > 0.0 && h <= 1e-2) => {
                Err(Error::Step(format!("limit step h = {h} outside (0, 1e-2]")))
            }
            _ => Ok(()),
        }
    }
}

impl FromStr for EvalMethod {
    type Err = Error;

    /// `exact` or `limit:<h>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "exact" => Ok(EvalMethod::ExactReduction),
            other => match other.strip_prefix("limit:") {
                Some(h) => EvalMethod::limit(
                    h.parse()
                        .map_err(|_| Error::Step(format!("bad limit step `{h}`")))?,
                ),
                None => Err(Error::Step(format!("unknown method `{s}` (expected exact | limit:<h>)"))),
            },
        }
    }
}

/// The named operators, each a member of (or compared against) the family.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorKind {
    Gfd(WeightSpec),
    Khalil,
    AndersonUlness,
    Katugampola,
    GuebbaiGhiat,
    Camrud,
    /// Caputo integral from `lower`, by the L1 rule on `steps` cells.
    CaputoL1 { lower: f64, steps: usize },
}

impl OperatorKind {
    pub fn name(&self) -> &'static str {
        match self {
            OperatorKind::Gfd(_) => "gfd",
            OperatorKind::Khalil => "khalil",
            OperatorKind::AndersonUlness => "anderson",
            OperatorKind::Katugampola => "katugampola",
            OperatorKind::GuebbaiGhiat => "guebbai",
            OperatorKind::Camrud => "camrud",
            OperatorKind::CaputoL1 { .. } => "caputo",
        }
    }
}

fn require_positive_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("t", format!("fractional operators need t > 0, got t={t}")))
    }
}

fn at(f: &Expr, t: f64) -> Result<f64> {
    f.eval_at(T, t)
}

/// `f` at a perturbed argument; evaluation failures there mean the step was
/// too large for the function's domain.
fn at_shifted(f: &Expr, x: f64, h: f64) -> Result<f64> {
    f.eval_at(T, x).map_err(|e| {
        Error::Step(format!("step h = {h} moves the argument to {x} where evaluation fails: {e}"))
    })
}

/// `(f(x + s ε) - f(x - s ε)) / (2ε)` with `ε = h / max(1, |s|)`, so the
/// argument never moves by more than `h` however large the scale `s` is.
fn symmetric_quotient(f: &Expr, x: f64, scale: f64, h: f64) -> Result<f64> {
    if !scale.is_finite() {
        return Err(Error::Step(format!("argument scale {scale} at {x} is not finite")));
    }
    let eps = h / scale.abs().max(1.0);
    let up = at_shifted(f, x + scale * eps, h)?;
    let down = at_shifted(f, x - scale * eps, h)?;
    Ok((up - down) / (2.0 * eps))
}

/// Generalized fractional derivative of order `α ∈ (0, 1]` at `t > 0`.
///
/// ```
/// use gfd::operators::{gfd, Alpha, EvalMethod, WeightSpec};
///
/// let f = gfd::parse("t").unwrap();
/// let alpha = Alpha::new(0.5).unwrap();
/// let d = gfd(&f, alpha, &WeightSpec::One, 4.0, EvalMethod::ExactReduction).unwrap();
/// assert_eq!(d, 2.0);
/// ```
pub fn gfd(f: &Expr, alpha: Alpha, w: &WeightSpec, t: f64, method: EvalMethod) -> Result<f64> {
    alpha.require_unit_interval()?;
    require_positive_t(t)?;
    method.validate()?;
    let a = alpha.value();
    let scale = w.eval(t, a)? * t.powf(1.0 - a);
    match method {
        EvalMethod::ExactReduction => Ok(scale * at(&f.derivative(T), t)?),
        EvalMethod::LimitQuotient { h } => symmetric_quotient(f, t, scale, h),
    }
}

/// `w(t, α) · t^(1-α) · f'` as an expression in `t`, so the operator can be
/// applied again.
pub fn gfd_expr(f: &Expr, alpha: Alpha, w: &WeightSpec) -> Result<Expr> {
    alpha.require_unit_interval()?;
    let a = alpha.value();
    Ok((w.to_expr(a, T) * Expr::var(T).pow(1.0 - a) * f.derivative(T)).simplify())
}

/// Requires `f(t) > 0` and `f'(t) >= 0`.
fn require_positive_increasing(f: &Expr, t: f64) -> Result<(f64, f64)> {
    let value = at(f, t)?;
    let slope = at(&f.derivative(T), t)?;
    if value <= 0.0 {
        return Err(Error::Positivity {
            t,
            message: format!("f(t) = {value} is not positive"),
        });
    }
    if slope < 0.0 {
        return Err(Error::Positivity {
            t,
            message: format!("f'(t) = {slope} is negative"),
        });
    }
    Ok((value, slope))
}

fn nonnegative_quotient(q: f64, t: f64) -> Result<f64> {
    if q < 0.0 {
        Err(Error::Positivity {
            t,
            message: format!("difference quotient {q} is negative"),
        })
    } else {
        Ok(q)
    }
}

/// Evaluates one of the named operators.
///
/// With [`EvalMethod::ExactReduction`] the closed forms are used:
/// Khalil and Katugampola give `t^(1-α) f'`, Anderson–Ulness gives
/// `(1-α)|t|^α f + α|t|^(1-α) f'`, Guebbai–Ghiat and Camrud give
/// `(f')^α f^(1-α)`. With [`EvalMethod::LimitQuotient`] each operator's own
/// difference quotient is evaluated at step `h`. The Caputo operator ignores
/// `method`.
pub fn named_derivative(kind: &OperatorKind, f: &Expr, alpha: Alpha, t: f64, method: EvalMethod) -> Result<f64> {
    if let OperatorKind::CaputoL1 { lower, steps } = kind {
        return caputo(f, alpha, *lower, t, *steps);
    }
    alpha.require_unit_interval()?;
    require_positive_t(t)?;
    method.validate()?;
    let a = alpha.value();
    match (kind, method) {
        (OperatorKind::Gfd(w), _) => gfd(f, alpha, w, t, method),
        (OperatorKind::Khalil, _) => gfd(f, alpha, &WeightSpec::One, t, method),
        (OperatorKind::Katugampola, EvalMethod::ExactReduction) => {
            Ok(t.powf(1.0 - a) * at(&f.derivative(T), t)?)
        }
        (OperatorKind::Katugampola, EvalMethod::LimitQuotient { h }) => {
            let k = t.powf(-a) * h;
            let up = at_shifted(f, t * k.exp(), h)?;
            let down = at_shifted(f, t * (-k).exp(), h)?;
            Ok((up - down) / (2.0 * h))
        }
        (OperatorKind::AndersonUlness, _) => {
            let value = at(f, t)?;
            let slope = match method {
                EvalMethod::ExactReduction => at(&f.derivative(T), t)?,
                EvalMethod::LimitQuotient { h } => symmetric_quotient(f, t, 1.0, h)?,
            };
            Ok((1.0 - a) * t.abs().powf(a) * value + a * t.abs().powf(1.0 - a) * slope)
        }
        (OperatorKind::GuebbaiGhiat | OperatorKind::Camrud, EvalMethod::ExactReduction) => {
            let (value, slope) = require_positive_increasing(f, t)?;
            Ok(slope.powf(a) * value.powf(1.0 - a))
        }
        (OperatorKind::GuebbaiGhiat, EvalMethod::LimitQuotient { h }) => {
            let (value, _) = require_positive_increasing(f, t)?;
            let q = symmetric_quotient(f, t, value.powf((1.0 - a) / a), h)?;
            Ok(nonnegative_quotient(q, t)?.powf(a))
        }
        (OperatorKind::Camrud, EvalMethod::LimitQuotient { h }) => {
            let (value, _) = require_positive_increasing(f, t)?;
            let q = symmetric_quotient(f, t, 1.0, h)?;
            Ok(value.powf(1.0 - a) * nonnegative_quotient(q, t)?.powf(a))
        }
        (OperatorKind::CaputoL1 { .. }, _) => unreachable!("handled above"),
    }
}

/// The weight that represents `kind` inside the generalized family at `(f, α, t)`:
/// `D^α_kind f(t) / (t^(1-α) f'(t))`.
pub fn weight_of(kind: &OperatorKind, f: &Expr, alpha: Alpha, t: f64) -> Result<f64> {
    require_positive_t(t)?;
    let slope = at(&f.derivative(T), t)?;
    if slope == 0.0 {
        return Err(Error::Singular { t });
    }
    let d = named_derivative(kind, f, alpha, t, EvalMethod::ExactReduction)?;
    Ok(d / (t.powf(1.0 - alpha.value()) * slope))
}

/// Higher-order extension for `α ∈ (n, n+1]`:
/// `w(t, α) · t^(⌈α⌉-α) · f^(⌈α⌉)(t)`.
///
/// For `α ∈ (0, 1]` this coincides with the exact path of [`gfd`].
pub fn gfd_higher(f: &Expr, alpha: Alpha, w: &WeightSpec, t: f64) -> Result<f64> {
    require_positive_t(t)?;
    let a = alpha.value();
    let order = alpha.ceil();
    let scale = w.eval(t, a)? * t.powf(order as f64 - a);
    Ok(scale * at(&f.nth_derivative(T, order as usize), t)?)
}
