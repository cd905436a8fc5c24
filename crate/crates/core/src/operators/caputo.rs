use statrs::function::gamma::gamma;

use super::{Alpha, T};
use crate::error::{Error, Result};
use crate::expr::Expr;

/// Caputo derivative `(1/Γ(1-α)) ∫_a^t f'(x) (t-x)^(-α) dx` for `α ∈ (0, 1)`
/// by the L1 product rule.
///
/// `[a, t]` is split into `steps` equal cells. On each cell `f'` is frozen at
/// the midpoint and the kernel is integrated exactly:
///
/// ```text
/// Σ f'(m_i) [(t - x_i)^(1-α) - (t - x_{i+1})^(1-α)] / Γ(2-α)
/// ```
///
/// The error is `O(h^(2-α))`; for `f` linear the rule is exact.
pub fn caputo(f: &Expr, alpha: Alpha, lower: f64, t: f64, steps: usize) -> Result<f64> {
    let a = alpha.value();
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Alpha {
            alpha: a,
            message: "the Caputo operator needs alpha strictly inside (0, 1)".into(),
        });
    }
    if steps < 2 {
        return Err(Error::Grid(format!("Caputo quadrature needs at least 2 cells, got {steps}")));
    }
    if !(t > lower && lower.is_finite() && t.is_finite()) {
        return Err(Error::Grid(format!("upper limit t = {t} must exceed lower limit {lower}")));
    }
    let slope = f.derivative(T);
    let h = (t - lower) / steps as f64;
    let p = 1.0 - a;
    let mut sum = 0.0;
    // (t - x_i) = (steps - i) h exactly, so the last cell ends at distance 0
    let mut far = (steps as f64 * h).powf(p);
    for i in 0..steps {
        let near = ((steps - i - 1) as f64 * h).powf(p);
        let mid = lower + (i as f64 + 0.5) * h;
        sum += slope.eval_at(T, mid)? * (far - near);
        far = near;
    }
    Ok(sum / gamma(2.0 - a))
}
