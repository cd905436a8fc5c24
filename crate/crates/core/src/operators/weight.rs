use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::{parse_weight, Bindings, Expr};
use crate::report::{PropertyId, PropertyReport, Verdict};

/// The weight `w(t, α)` that selects a member of the generalized family.
///
/// Weight expressions are written in `t`, `alpha` and `tau`. A [`Custom`]
/// weight sees `tau = 1`; [`TauScaled`] multiplies `g(t, α)` by `τ^(α-1)`.
///
/// [`Custom`]: WeightSpec::Custom
/// [`TauScaled`]: WeightSpec::TauScaled
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    /// `w = 1`
    One,
    /// `w = α`
    AlphaConst,
    /// `w = t^(1-α)`
    PowerT,
    /// `w = g(t, α) · τ^(α-1)` with `τ > 0`.
    TauScaled { g: Expr, tau: f64 },
    Custom(Expr),
}

impl WeightSpec {
    pub fn tau_scaled(g: Expr, tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::Weight(format!("tau must be a positive real, got {tau}")));
        }
        check_vars(&g, &["t", "alpha"])?;
        Ok(WeightSpec::TauScaled { g, tau })
    }

    pub fn custom(e: Expr) -> Result<Self> {
        check_vars(&e, &["t", "alpha", "tau"])?;
        Ok(WeightSpec::Custom(e))
    }

    /// Evaluates `w(t, α)`; the result is always finite.
    pub fn eval(&self, t: f64, alpha: f64) -> Result<f64> {
        match self {
            WeightSpec::One => Ok(1.0),
            WeightSpec::AlphaConst => Ok(alpha),
            WeightSpec::PowerT => {
                if t > 0.0 {
                    Ok(t.powf(1.0 - alpha))
                } else {
                    Err(Error::domain("t^(1 - alpha)", format!("weight at t={t}")))
                }
            }
            WeightSpec::TauScaled { g, tau } => {
                let b = Bindings::new().with("t", t).with("alpha", alpha);
                Ok(g.eval(&b)? * tau.powf(alpha - 1.0))
            }
            WeightSpec::Custom(e) => {
                let b = Bindings::new().with("t", t).with("alpha", alpha).with("tau", 1.0);
                e.eval(&b)
            }
        }
    }

    pub fn is_constant_in_t(&self) -> bool {
        match self {
            WeightSpec::One | WeightSpec::AlphaConst => true,
            WeightSpec::PowerT => false,
            WeightSpec::TauScaled { g, .. } => !g.depends_on("t"),
            WeightSpec::Custom(e) => !e.depends_on("t"),
        }
    }

    /// Value of a t-independent weight at order `alpha`.
    pub fn constant_value(&self, alpha: f64) -> Result<f64> {
        if !self.is_constant_in_t() {
            return Err(Error::WeightClass(self.to_string()));
        }
        self.eval(1.0, alpha)
    }

    /// The weight at fixed `alpha` as an expression in `var`.
    pub fn to_expr(&self, alpha: f64, var: &str) -> Expr {
        let e = match self {
            WeightSpec::One => Expr::num(1.0),
            WeightSpec::AlphaConst => Expr::num(alpha),
            WeightSpec::PowerT => Expr::var(var).pow(1.0 - alpha),
            WeightSpec::TauScaled { g, tau } => {
                g.substitute("alpha", &Expr::num(alpha)).rename("t", var) * Expr::num(tau.powf(alpha - 1.0))
            }
            WeightSpec::Custom(e) => e
                .substitute("alpha", &Expr::num(alpha))
                .substitute("tau", &Expr::num(1.0))
                .rename("t", var),
        };
        e.simplify()
    }
}

fn check_vars(e: &Expr, allowed: &[&str]) -> Result<()> {
    match e.free_vars().into_iter().find(|v| !allowed.contains(&v.as_str())) {
        Some(v) => Err(Error::Weight(format!("weight `{e}` uses unsupported variable `{v}`"))),
        None => Ok(()),
    }
}

/// Round-trips with [`FromStr`]: `one`, `alpha`, `power-t`,
/// `tau:<g>:<τ>`, `custom:<expr>`.
impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::One => f.write_str("one"),
            WeightSpec::AlphaConst => f.write_str("alpha"),
            WeightSpec::PowerT => f.write_str("power-t"),
            WeightSpec::TauScaled { g, tau } => write!(f, "tau:{g}:{}", crate::num::fmt_f64(*tau)),
            WeightSpec::Custom(e) => write!(f, "custom:{e}"),
        }
    }
}

impl FromStr for WeightSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "one" => return Ok(WeightSpec::One),
            "alpha" => return Ok(WeightSpec::AlphaConst),
            "power-t" => return Ok(WeightSpec::PowerT),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("tau:") {
            let (g, tau) = rest
                .rsplit_once(':')
                .ok_or_else(|| Error::Weight(format!("expected tau:<g>:<tau>, got `{s}`")))?;
            let tau: f64 = tau
                .trim()
                .parse()
                .map_err(|_| Error::Weight(format!("bad tau `{tau}`")))?;
            return WeightSpec::tau_scaled(parse_weight(g)?, tau);
        }
        if let Some(rest) = s.strip_prefix("custom:") {
            return WeightSpec::custom(parse_weight(rest)?);
        }
        Err(Error::Weight(format!(
            "unknown weight `{s}` (expected one | alpha | power-t | tau:<g>:<tau> | custom:<expr>)"
        )))
    }
}

/// Samples `w` and checks that it equals 1 exactly when `α = 1`.
///
/// Every sampled `t` is also checked at `α = 1`. A sampled `α < 1` with
/// `|w - 1| <= 1e-12` is a violation, as is `w(t, 1) != 1`. Rows carry the
/// point `(t, α)` with `lhs = w` and `rhs = 1`.
pub fn validate_weight(w: &WeightSpec, samples: &[(f64, f64)]) -> PropertyReport {
    const TOL: f64 = 1e-12;
    let mut report = PropertyReport::builder(
        PropertyId::WeightUnitIffFirstOrder,
        format!("w={w}, {} samples", samples.len()),
    );
    let mut violations = 0usize;
    if samples.is_empty() {
        report.note("empty sample grid");
        violations += 1;
    }
    let mut checked_unit = Vec::<f64>::new();
    for &(t, alpha) in samples {
        if !(t > 0.0 && alpha > 0.0 && alpha <= 1.0) {
            report.note(format!("sample (t={t}, alpha={alpha}) outside t > 0, alpha in (0,1]"));
            violations += 1;
            continue;
        }
        if alpha < 1.0 {
            match w.eval(t, alpha) {
                Ok(v) => {
                    report.push(vec![t, alpha], v, 1.0);
                    if (v - 1.0).abs() <= TOL {
                        report.note(format!("w(t={t}, alpha={alpha}) = 1 although alpha < 1"));
                        violations += 1;
                    }
                }
                Err(e) => {
                    report.note(format!("w(t={t}, alpha={alpha}) failed: {e}"));
                    violations += 1;
                }
            }
        }
        if !checked_unit.contains(&t) {
            checked_unit.push(t);
            match w.eval(t, 1.0) {
                Ok(v) => {
                    report.push(vec![t, 1.0], v, 1.0);
                    if (v - 1.0).abs() > TOL {
                        report.note(format!("w(t={t}, alpha=1) = {v}, expected 1"));
                        violations += 1;
                    }
                }
                Err(e) => {
                    report.note(format!("w(t={t}, alpha=1) failed: {e}"));
                    violations += 1;
                }
            }
        }
    }
    let verdict = if violations == 0 { Verdict::Pass } else { Verdict::Fail };
    report.with_verdict(Some(TOL), verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for t in [0.5, 1.0, 2.0, 7.5] {
            for k in 1..=10 {
                out.push((t, k as f64 / 10.0));
            }
        }
        out
    }

    #[test]
    fn presets_evaluate() {
        assert_eq!(WeightSpec::One.eval(3.0, 0.5).unwrap(), 1.0);
        assert_eq!(WeightSpec::AlphaConst.eval(3.0, 0.5).unwrap(), 0.5);
        assert_eq!(WeightSpec::PowerT.eval(4.0, 0.5).unwrap(), 2.0);
        let w: WeightSpec = "tau:alpha:2".parse().unwrap();
        assert!((w.eval(9.0, 0.5).unwrap() - 0.5 / 2f64.sqrt()).abs() < 1e-15);
        let c: WeightSpec = "custom:t^2 * tau".parse().unwrap();
        assert_eq!(c.eval(3.0, 0.2).unwrap(), 9.0);
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["one", "alpha", "power-t", "tau:alpha:2", "custom:t^2", "tau:alpha * t:0.5"] {
            let w: WeightSpec = s.parse().unwrap();
            assert_eq!(w.to_string(), s);
            assert_eq!(w.to_string().parse::<WeightSpec>().unwrap(), w);
        }
        assert!("tau:alpha:-1".parse::<WeightSpec>().is_err());
        assert!("tau:tau:1".parse::<WeightSpec>().is_err());
        assert!("custom:x".parse::<WeightSpec>().is_err());
        assert!("bogus".parse::<WeightSpec>().is_err());
    }

    #[test]
    fn t_dependence_classification() {
        assert!(WeightSpec::One.is_constant_in_t());
        assert!(!WeightSpec::PowerT.is_constant_in_t());
        assert!("tau:alpha:3".parse::<WeightSpec>().unwrap().is_constant_in_t());
        assert!(!"custom:t^(-1/3)".parse::<WeightSpec>().unwrap().is_constant_in_t());
        assert!(WeightSpec::PowerT.constant_value(0.5).is_err());
    }

    #[test]
    fn expression_form_matches_evaluation() {
        let specs: Vec<WeightSpec> = ["one", "alpha", "power-t", "tau:alpha * t:2", "custom:t^2 + alpha"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for w in &specs {
            let e = w.to_expr(0.3, "x");
            let direct = w.eval(1.7, 0.3).unwrap();
            assert!((e.eval_at("x", 1.7).unwrap() - direct).abs() < 1e-14, "{w}");
        }
    }

    #[test]
    fn alpha_weight_is_unit_only_at_first_order() {
        assert_eq!(validate_weight(&WeightSpec::AlphaConst, &grid()).verdict, Verdict::Pass);
    }

    #[test]
    fn unit_weight_violates_only_if() {
        let r = validate_weight(&WeightSpec::One, &grid());
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.notes.iter().any(|n| n.contains("alpha=0.5")));
    }

    #[test]
    fn tau_scaled_alpha_weight_passes() {
        // α·2^(α-1) is increasing on (0, 1] and reaches 1 only at α = 1
        let w = WeightSpec::tau_scaled(Expr::var("alpha"), 2.0).unwrap();
        let values: Vec<f64> = (1..=10).map(|k| w.eval(1.0, k as f64 / 10.0).unwrap()).collect();
        assert!(values.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(validate_weight(&w, &grid()).verdict, Verdict::Pass);
    }

    #[test]
    fn power_t_fails_at_unit_time() {
        assert_eq!(validate_weight(&WeightSpec::PowerT, &grid()).verdict, Verdict::Fail);
        assert_eq!(validate_weight(&WeightSpec::AlphaConst, &[]).verdict, Verdict::Fail);
    }
}
