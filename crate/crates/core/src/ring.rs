//! Executable checks of the algebra carried by the generalized derivative.
//!
//! For `α ∈ (0, 1]` and a positive weight the operator is `m(t) · d/dt` with
//! `m(t) = w(t, α) t^(1-α) > 0`, so linearity, the product rule and the
//! quotient rule hold exactly and are reported as PASS/FAIL. Claims that are
//! not identities in general (the chain rule with the `t^(α-1)/w` factor and
//! the additive composition law) are evaluated under every reading and
//! reported as AUDIT with their residuals.
//!
//! All checks use the exact evaluation path. Points where an expression
//! cannot be evaluated are skipped and listed in the report notes.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::operators::{gfd, gfd_expr, gfd_higher, Alpha, EvalMethod, WeightSpec, T};
use crate::report::{PropertyId, PropertyReport, ReportBuilder, Verdict};

/// Relative tolerance for the linearity, product and quotient rules,
/// measured against the magnitude of the combined terms so that identities
/// whose both sides vanish are not judged on rounding noise.
pub const RING_TOLERANCE: f64 = 1e-9;
/// Relative tolerance for the t-power identities on the exact path.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;
/// Relative tolerance for the t-power identities on the limit path.
pub const IDENTITY_LIMIT_TOLERANCE: f64 = 1e-5;
/// Smallest absolute residual treated as a genuine violation.
pub const NONZERO_RESIDUAL: f64 = 1e-6;
/// Residual bound for witness points, scaled by `1 + |target|`.
pub const WITNESS_TOLERANCE: f64 = 1e-9;
/// Number of interior points scanned for a sign change.
pub const WITNESS_SCAN_POINTS: usize = 10_000;

fn exact(f: &Expr, alpha: Alpha, w: &WeightSpec, t: f64) -> Result<f64> {
    gfd(f, alpha, w, t, EvalMethod::ExactReduction)
}

fn skip(report: &mut ReportBuilder, t: f64, err: &Error) {
    report.note(format!("t={t} skipped: {err}"));
}

/// `D(a f + b g) = a D f + b D g`.
pub fn check_linearity(
    f: &Expr,
    g: &Expr,
    a: f64,
    b: f64,
    alpha: Alpha,
    w: &WeightSpec,
    grid: &[f64],
) -> PropertyReport {
    let mut report = PropertyReport::builder(
        PropertyId::Linearity,
        format!("f={f}; g={g}; a={a}; b={b}; alpha={alpha}; w={w}"),
    );
    let combined = Expr::num(a) * f.clone() + Expr::num(b) * g.clone();
    for &t in grid {
        let sides = || -> Result<(f64, f64, f64)> {
            let lhs = exact(&combined, alpha, w, t)?;
            let (x, y) = (a * exact(f, alpha, w, t)?, b * exact(g, alpha, w, t)?);
            Ok((lhs, x + y, x.abs() + y.abs()))
        };
        match sides() {
            Ok((lhs, rhs, scale)) => report.push_scaled(vec![t], lhs, rhs, scale),
            Err(e) => skip(&mut report, t, &e),
        }
    }
    report.expect_pass(RING_TOLERANCE)
}

/// `D(f g) = f D g + g D f`.
pub fn check_leibniz(f: &Expr, g: &Expr, alpha: Alpha, w: &WeightSpec, grid: &[f64]) -> PropertyReport {
    let mut report =
        PropertyReport::builder(PropertyId::Leibniz, format!("f={f}; g={g}; alpha={alpha}; w={w}"));
    let product = f.clone() * g.clone();
    for &t in grid {
        let sides = || -> Result<(f64, f64, f64)> {
            let lhs = exact(&product, alpha, w, t)?;
            let (fv, gv) = (f.eval_at(T, t)?, g.eval_at(T, t)?);
            let (x, y) = (fv * exact(g, alpha, w, t)?, gv * exact(f, alpha, w, t)?);
            Ok((lhs, x + y, x.abs() + y.abs()))
        };
        match sides() {
            Ok((lhs, rhs, scale)) => report.push_scaled(vec![t], lhs, rhs, scale),
            Err(e) => skip(&mut report, t, &e),
        }
    }
    report.expect_pass(RING_TOLERANCE)
}

/// `D(f / g) = (g D f - f D g) / g²`, skipping points where `|g| < 1e-12`.
pub fn check_quotient(f: &Expr, g: &Expr, alpha: Alpha, w: &WeightSpec, grid: &[f64]) -> PropertyReport {
    let mut report =
        PropertyReport::builder(PropertyId::Quotient, format!("f={f}; g={g}; alpha={alpha}; w={w}"));
    let quotient = f.clone() / g.clone();
    for &t in grid {
        let gv = match g.eval_at(T, t) {
            Ok(v) if v.abs() < 1e-12 => {
                report.note(format!("t={t} skipped: |g| < 1e-12"));
                continue;
            }
            Ok(v) => v,
            Err(e) => {
                skip(&mut report, t, &e);
                continue;
            }
        };
        let sides = || -> Result<(f64, f64, f64)> {
            let lhs = exact(&quotient, alpha, w, t)?;
            let fv = f.eval_at(T, t)?;
            let (x, y) = (gv * exact(f, alpha, w, t)?, fv * exact(g, alpha, w, t)?);
            Ok((lhs, (x - y) / (gv * gv), (x.abs() + y.abs()) / (gv * gv)))
        };
        match sides() {
            Ok((lhs, rhs, scale)) => report.push_scaled(vec![t], lhs, rhs, scale),
            Err(e) => skip(&mut report, t, &e),
        }
    }
    report.expect_pass(RING_TOLERANCE)
}

/// How to read `D^α(f₁(f₂))` on the right-hand side of the chain rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainReading {
    /// Differentiate the composite `f₁(f₂(t))` in `t`.
    CompositeInT,
    /// Evaluate `D^α f₁` at the point `f₂(t)`; needs `f₂(t) > 0`.
    OuterAtInner,
}

/// Audits `D(f ∘ g) = (t^(α-1) / w) · D^α(f(g)) · D g`.
///
/// `f` is the outer function in its own single variable (`x` if constant);
/// `g` is an expression in `t`. The verdict is always AUDIT.
pub fn check_chain(
    f: &Expr,
    g: &Expr,
    alpha: Alpha,
    w: &WeightSpec,
    grid: &[f64],
    reading: ChainReading,
) -> Result<PropertyReport> {
    let outer_var = f.sole_var("x")?;
    let composite = f.substitute(&outer_var, g);
    let outer_in_t = f.rename(&outer_var, T);
    let property = match reading {
        ChainReading::CompositeInT => PropertyId::ChainCompositeInT,
        ChainReading::OuterAtInner => PropertyId::ChainOuterAtInner,
    };
    let mut report =
        PropertyReport::builder(property, format!("f={f}; g={g}; alpha={alpha}; w={w}; reading={reading:?}"));
    let a = alpha.value();
    for &t in grid {
        let sides = || -> Result<(f64, f64)> {
            let lhs = exact(&composite, alpha, w, t)?;
            let inner = match reading {
                ChainReading::CompositeInT => lhs,
                ChainReading::OuterAtInner => {
                    let at = g.eval_at(T, t)?;
                    if at <= 0.0 {
                        return Err(Error::domain(g, format!("inner value {at} is not positive at t={t}")));
                    }
                    exact(&outer_in_t, alpha, w, at)?
                }
            };
            let factor = t.powf(a - 1.0) / w.eval(t, a)?;
            Ok((lhs, factor * inner * exact(g, alpha, w, t)?))
        };
        match sides() {
            Ok((lhs, rhs)) => report.push_at(t, lhs, rhs),
            Err(e) => skip(&mut report, t, &e),
        }
    }
    Ok(report.audit())
}

/// Residual grids for the additive composition law.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionAudit {
    /// `D^(α+β) f` against `(w_α w_β t / w_(α+β)) · D^α D^β f`.
    pub general: PropertyReport,
    /// `w_(α+β) / (w_α w_β)` against `t`, the condition for the special case.
    pub condition: PropertyReport,
    /// `D^(α+β) f` against `D^α D^β f`.
    pub special_case: PropertyReport,
}

impl CompositionAudit {
    pub fn into_reports(self) -> Vec<PropertyReport> {
        vec![self.general, self.condition, self.special_case]
    }
}

/// Audits the additive composition law for `α, β ∈ (0, 1]`.
///
/// `D^(α+β)` uses the higher-order operator when `α + β > 1`. `f` is
/// univariate; its variable is renamed to `t`.
pub fn check_composition_law(
    f: &Expr,
    alpha: Alpha,
    beta: Alpha,
    w: &WeightSpec,
    grid: &[f64],
) -> Result<CompositionAudit> {
    alpha.require_unit_interval()?;
    beta.require_unit_interval()?;
    let f = f.univariate_in(T)?;
    let (a, b) = (alpha.value(), beta.value());
    let sum = Alpha::new(a + b)?;
    let inner = gfd_expr(&f, beta, w)?;
    let inputs = format!("f={f}; alpha={alpha}; beta={beta}; w={w}");
    let mut general = PropertyReport::builder(PropertyId::CompositionLaw, inputs.clone());
    let mut condition = PropertyReport::builder(PropertyId::CompositionCondition, inputs.clone());
    let mut special = PropertyReport::builder(PropertyId::CompositionSpecialCase, inputs);
    let structural = "D^alpha D^beta f applies the first-order operator twice and involves f'' \
                      together with f', while D^(alpha+beta) f involves a single derivative of f; \
                      no weight factor can equate them for every f";
    general.note(structural);
    special.note(structural);
    for &t in grid {
        let values = || -> Result<(f64, f64, f64, f64)> {
            let lhs = gfd_higher(&f, sum, w, t)?;
            let twice = exact(&inner, alpha, w, t)?;
            let (wa, wb, wab) = (w.eval(t, a)?, w.eval(t, b)?, w.eval(t, a + b)?);
            Ok((lhs, twice, wab / (wa * wb), wa * wb * t / wab))
        };
        match values() {
            Ok((lhs, twice, ratio, factor)) => {
                general.push_at(t, lhs, factor * twice);
                condition.push_at(t, ratio, t);
                special.push_at(t, lhs, twice);
            }
            Err(e) => {
                skip(&mut general, t, &e);
                skip(&mut special, t, &e);
            }
        }
    }
    Ok(CompositionAudit {
        general: general.audit(),
        condition: condition.audit(),
        special_case: special.audit(),
    })
}

/// The four identities for `u = t^α / (α w)` with `w` independent of `t`:
/// `D u = 1`, `D sin u = cos u`, `D cos u = -sin u`, `D exp u = exp u`.
///
/// Returned in that order. Weights that depend on `t` are rejected with
/// [`Error::WeightClass`].
pub fn check_identities(
    alpha: Alpha,
    w: &WeightSpec,
    grid: &[f64],
    method: EvalMethod,
) -> Result<Vec<PropertyReport>> {
    alpha.require_unit_interval()?;
    let a = alpha.value();
    let wv = w.constant_value(a)?;
    let u = Expr::var(T).pow(a) / Expr::num(a * wv);
    let tolerance = match method {
        EvalMethod::ExactReduction => IDENTITY_TOLERANCE,
        EvalMethod::LimitQuotient { .. } => IDENTITY_LIMIT_TOLERANCE,
    };
    type Case = (PropertyId, Expr, fn(f64) -> f64);
    let cases: [Case; 4] = [
        (PropertyId::IdentityUnit, u.clone(), |_| 1.0),
        (PropertyId::IdentitySin, u.clone().sin(), f64::cos),
        (PropertyId::IdentityCos, u.clone().cos(), |x| -x.sin()),
        (PropertyId::IdentityExp, u.clone().exp(), f64::exp),
    ];
    let mut out = Vec::with_capacity(4);
    for (property, f, expected) in cases {
        let mut report =
            PropertyReport::builder(property, format!("f={f}; alpha={alpha}; w={w}; method={method:?}"));
        for &t in grid {
            let sides = || -> Result<(f64, f64)> {
                let lhs = gfd(&f, alpha, w, t, method)?;
                Ok((lhs, expected(u.eval_at(T, t)?)))
            };
            match sides() {
                Ok((lhs, rhs)) => report.push_at(t, lhs, rhs),
                Err(e) => skip(&mut report, t, &e),
            }
        }
        out.push(report.expect_pass(tolerance));
    }
    Ok(out)
}

/// A point `c` where a fractional derivative hits a target value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessResult {
    pub c: f64,
    pub target_value: f64,
    pub achieved_value: f64,
    /// Bisection steps after the scan; zero when a scanned point already qualified.
    pub iterations: usize,
}

/// Scans `(a, b)` for `value(c) = target`, then bisects the first sign change.
fn find_level(
    value: impl Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    target: f64,
) -> Result<WitnessResult> {
    let tol = WITNESS_TOLERANCE * (1.0 + target.abs());
    let witness = |c: f64, achieved: f64, iterations| WitnessResult {
        c,
        target_value: target,
        achieved_value: achieved,
        iterations,
    };
    let n = WITNESS_SCAN_POINTS;
    let points: Vec<f64> = (1..=n).map(|k| a + (b - a) * k as f64 / (n + 1) as f64).collect();
    let gaps: Vec<Option<f64>> = points.iter().map(|&c| value(c).ok().map(|v| v - target)).collect();

    if gaps.iter().all(|g| matches!(g, Some(v) if v.abs() <= tol)) {
        let mid = 0.5 * (a + b);
        return Ok(witness(mid, value(mid)?, 0));
    }
    let mut previous: Option<(f64, f64)> = None;
    for (&c, gap) in points.iter().zip(&gaps) {
        let Some(gap) = *gap else {
            previous = None;
            continue;
        };
        if gap.abs() <= tol {
            return Ok(witness(c, gap + target, 0));
        }
        if let Some((lo, lo_gap)) = previous {
            if lo_gap.signum() != gap.signum() {
                return bisect(&value, lo, c, lo_gap, target, tol).map(|(c, v, it)| witness(c, v, it));
            }
        }
        previous = Some((c, gap));
    }
    Err(Error::NoWitness {
        a,
        b,
        message: format!("no sign change of D^alpha f - {target} among {n} scanned points"),
    })
}

fn bisect(
    value: &impl Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    mut lo_gap: f64,
    target: f64,
    tol: f64,
) -> Result<(f64, f64, usize)> {
    let mut iterations = 0;
    let (mut c, mut gap) = (lo, lo_gap);
    while iterations < 200 {
        iterations += 1;
        c = 0.5 * (lo + hi);
        gap = match value(c) {
            Ok(v) => v - target,
            Err(e) => {
                return Err(Error::NoWitness {
                    a: lo,
                    b: hi,
                    message: format!("sign change across a point where D^alpha f is undefined: {e}"),
                })
            }
        };
        if gap == 0.0 || c <= lo || c >= hi {
            break;
        }
        if gap.signum() == lo_gap.signum() {
            lo = c;
            lo_gap = gap;
        } else {
            hi = c;
        }
        if hi - lo <= 4.0 * f64::EPSILON * c.abs() {
            break;
        }
    }
    if gap.abs() > tol {
        return Err(Error::NoWitness {
            a: lo,
            b: hi,
            message: format!("sign change without a root (|residual| = {})", gap.abs()),
        });
    }
    Ok((c, gap + target, iterations))
}

fn require_interval(a: f64, b: f64) -> Result<()> {
    if a > 0.0 && b > a && b.is_finite() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("need 0 < a < b, got [{a}, {b}]")))
    }
}

/// A point `c ∈ (a, b)` with `D^α f(c) = 0`, given `f(a) = f(b)`.
///
/// `D^α f` shares its sign changes with `f'` for positive weights, so the
/// first sign change on a fine scan is refined by bisection. A function whose
/// derivative vanishes on the whole scan returns the midpoint.
pub fn find_rolle_witness(f: &Expr, a: f64, b: f64, alpha: Alpha, w: &WeightSpec) -> Result<WitnessResult> {
    require_interval(a, b)?;
    alpha.require_unit_interval()?;
    let f = f.univariate_in(T)?;
    let (fa, fb) = (f.eval_at(T, a)?, f.eval_at(T, b)?);
    if (fa - fb).abs() > 1e-12 {
        return Err(Error::Precondition(format!("f(a) = {fa} and f(b) = {fb} differ")));
    }
    let df = f.derivative(T);
    let av = alpha.value();
    let d = |c: f64| -> Result<f64> { Ok(w.eval(c, av)? * c.powf(1.0 - av) * df.eval_at(T, c)?) };
    find_level(d, a, b, 0.0)
}

/// Outcome of the mean value search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MvtResult {
    /// Witness for `α w (f(b) - f(a)) / (b^α - a^α)`.
    pub witness: WitnessResult,
    pub corrected_target: f64,
    /// `α w (f(b) - f(a)) / (b - a)`.
    pub printed_target: f64,
    /// A point attaining the printed target, if one exists in `(a, b)`.
    pub printed_witness: Option<WitnessResult>,
}

/// Mean value point for the generalized derivative with a t-independent weight.
///
/// With `h(t) = f(t) - f(a) - K (t^α - a^α) / (α w)` one has
/// `D^α h = D^α f - K`, and `h(b) = 0` forces
/// `K = α w (f(b) - f(a)) / (b^α - a^α)`. The search also reports whether the
/// constant with `b - a` in the denominator is attained anywhere in `(a, b)`.
pub fn find_mvt_witness(f: &Expr, a: f64, b: f64, alpha: Alpha, w: &WeightSpec) -> Result<MvtResult> {
    require_interval(a, b)?;
    alpha.require_unit_interval()?;
    let av = alpha.value();
    let wv = w.constant_value(av)?;
    let f = f.univariate_in(T)?;
    let delta = f.eval_at(T, b)? - f.eval_at(T, a)?;
    let corrected_target = av * wv * delta / (b.powf(av) - a.powf(av));
    let printed_target = av * wv * delta / (b - a);
    let df = f.derivative(T);
    let d = |c: f64| -> Result<f64> { Ok(wv * c.powf(1.0 - av) * df.eval_at(T, c)?) };
    let witness = find_level(d, a, b, corrected_target)?;
    let printed_witness = match find_level(d, a, b, printed_target) {
        Ok(w) => Some(w),
        Err(Error::NoWitness { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(MvtResult {
        witness,
        corrected_target,
        printed_target,
        printed_witness,
    })
}

/// The product rule fails for `α ∈ (1, 2]`: with `f = g = t`,
/// `D^α(t²) = 2 w t^(⌈α⌉-α)` while `2 t D^α t = 0`.
///
/// PASS means the counterexample is established, i.e. the gap exceeds
/// [`NONZERO_RESIDUAL`].
pub fn leibniz_counterexample_higher(alpha: Alpha, w: &WeightSpec, t: f64) -> Result<PropertyReport> {
    let a = alpha.value();
    if !(a > 1.0 && a <= 2.0) {
        return Err(Error::Alpha {
            alpha: a,
            message: "the counterexample is stated for alpha in (1, 2]".into(),
        });
    }
    let id = Expr::var(T);
    let square = id.clone() * id.clone();
    let lhs = gfd_higher(&square, alpha, w, t)?;
    let rhs = 2.0 * t * gfd_higher(&id, alpha, w, t)?;
    let mut report = PropertyReport::builder(
        PropertyId::HigherOrderLeibnizGap,
        format!("f=g=t; alpha={alpha}; w={w}; t={t}"),
    );
    report.push_at(t, lhs, rhs);
    let gap = (lhs - rhs).abs();
    report.note(format!("gap |D(fg) - (f Dg + g Df)| = {gap}"));
    let verdict = if gap > NONZERO_RESIDUAL { Verdict::Pass } else { Verdict::Fail };
    Ok(report.with_verdict(Some(NONZERO_RESIDUAL), verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn a(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    fn grid() -> Vec<f64> {
        (1..=10).map(|k| 0.5 * k as f64).collect()
    }

    #[test]
    fn linearity_examples() {
        let r = check_linearity(&p("t^2"), &p("sin(t)"), 2.0, -3.0, a(0.5), &WeightSpec::One, &grid());
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.max_rel_residual <= 1e-12);
        let zero = check_linearity(&p("t^2"), &p("sin(t)"), 0.0, 0.0, a(0.5), &WeightSpec::One, &grid());
        assert!(zero.rows.iter().all(|r| r.lhs == 0.0 && r.rhs == 0.0));
        let same = check_linearity(&p("exp(t)"), &p("exp(t)"), 1.0, -1.0, a(0.3), &WeightSpec::AlphaConst, &grid());
        assert!(same.rows.iter().all(|r| r.lhs == 0.0 && r.rhs == 0.0));
        assert_eq!(same.verdict, Verdict::Pass);
    }

    #[test]
    fn leibniz_examples() {
        let r = check_leibniz(&p("t^2"), &p("sin(t)"), a(0.5), &WeightSpec::One, &[2.0]);
        let oracle = 2f64.sqrt() * (2.0 * 2.0 * 2f64.sin() + 4.0 * 2f64.cos());
        assert!((r.rows[0].lhs - oracle).abs() < 1e-13);
        assert!((r.rows[0].rhs - oracle).abs() < 1e-13);
        assert_eq!(r.verdict, Verdict::Pass);

        let unit = check_leibniz(&p("t^3"), &p("1"), a(0.4), &WeightSpec::PowerT, &grid());
        for row in &unit.rows {
            let t = row.point[0];
            let direct = gfd(&p("t^3"), a(0.4), &WeightSpec::PowerT, t, EvalMethod::ExactReduction).unwrap();
            assert!((row.lhs - direct).abs() <= 1e-14 * direct.abs());
            assert!((row.rhs - direct).abs() <= 1e-14 * direct.abs());
        }

        let r = check_leibniz(&p("t"), &p("t"), a(1.0), &WeightSpec::One, &grid());
        assert!(r.rows.iter().all(|row| row.lhs == 2.0 * row.point[0] && row.rhs == 2.0 * row.point[0]));
    }

    #[test]
    fn quotient_examples() {
        let grid: Vec<f64> = (1..=5).map(f64::from).collect();
        let r = check_quotient(&p("sin(t)"), &p("t"), a(0.5), &WeightSpec::AlphaConst, &grid);
        assert_eq!(r.verdict, Verdict::Pass);
        for row in &r.rows {
            let t = row.point[0];
            let oracle = 0.5 * t.sqrt() * (t * t.cos() - t.sin()) / (t * t);
            assert!((row.lhs - oracle).abs() < 1e-13);
        }
        let same = check_quotient(&p("exp(t) + 1"), &p("exp(t) + 1"), a(0.5), &WeightSpec::One, &grid);
        assert!(same.rows.iter().all(|r| r.lhs == 0.0 && r.rhs == 0.0));
        let half = check_quotient(&p("t^3"), &p("2"), a(0.7), &WeightSpec::One, &grid);
        for row in &half.rows {
            let lin = gfd(&p("t^3"), a(0.7), &WeightSpec::One, row.point[0], EvalMethod::ExactReduction).unwrap();
            assert!((row.rhs - lin / 2.0).abs() < 1e-13 * lin);
        }
        let zero_den = check_quotient(&p("t"), &p("t - 2"), a(0.5), &WeightSpec::One, &[1.0, 2.0, 3.0]);
        assert_eq!(zero_den.rows.len(), 2);
        assert!(zero_den.notes.iter().any(|n| n.contains("t=2")));
    }

    #[test]
    fn chain_identity_inner_collapses_both_readings() {
        for reading in [ChainReading::CompositeInT, ChainReading::OuterAtInner] {
            let r = check_chain(&p("x^2"), &p("t"), a(0.6), &WeightSpec::One, &grid(), reading).unwrap();
            assert_eq!(r.verdict, Verdict::Audit);
            // g = t: D g = t^(1-α), so the factor t^(α-1) cancels it
            assert!(r.max_rel_residual < 1e-14, "{reading:?}: {}", r.max_rel_residual);
        }
    }

    #[test]
    fn chain_first_order_readings() {
        let (f, g) = (p("sin(x)"), p("t^2 + 1"));
        let grid = grid();
        let composite = check_chain(&f, &g, a(1.0), &WeightSpec::One, &grid, ChainReading::CompositeInT).unwrap();
        for row in &composite.rows {
            let t = row.point[0];
            let (gv, dg) = (t * t + 1.0, 2.0 * t);
            let expected = (gv.cos() * dg * (dg - 1.0)).abs();
            assert!((row.abs_residual - expected).abs() < 1e-12 * (1.0 + expected));
        }
        let outer = check_chain(&f, &g, a(1.0), &WeightSpec::One, &grid, ChainReading::OuterAtInner).unwrap();
        assert!(outer.max_rel_residual < 1e-14);
    }

    #[test]
    fn chain_generic_fixture_fails_by_a_margin() {
        let r = check_chain(&p("x^2"), &p("t^2"), a(0.5), &WeightSpec::One, &[2.0], ChainReading::OuterAtInner)
            .unwrap();
        let lhs = 2f64.sqrt() * 32.0;
        let rhs = 2f64.powf(-0.5) * (4f64.sqrt() * 8.0) * (2f64.sqrt() * 4.0);
        assert!((r.rows[0].lhs - lhs).abs() < 1e-12);
        assert!((r.rows[0].rhs - rhs).abs() < 1e-12);
        assert!(r.max_abs_residual > 0.1);
        assert_eq!(r.verdict, Verdict::Audit);
    }

    #[test]
    fn composition_examples() {
        let c = check_composition_law(&p("3"), a(0.5), a(0.5), &WeightSpec::One, &grid()).unwrap();
        assert!(c.general.rows.iter().all(|r| r.lhs == 0.0 && r.rhs == 0.0));

        let c = check_composition_law(&p("t"), a(0.5), a(0.5), &WeightSpec::One, &[1.0]).unwrap();
        assert_eq!(c.general.rows[0].lhs, 1.0);
        assert!((c.general.rows[0].rhs - 0.5).abs() < 1e-15);
        assert!((c.general.max_abs_residual - 0.5).abs() < 1e-15);
        for r in [&c.general, &c.condition, &c.special_case] {
            assert_eq!(r.verdict, Verdict::Audit);
        }

        let c = check_composition_law(&p("exp(t)"), a(0.5), a(0.5), &WeightSpec::One, &[1.0, 2.0]).unwrap();
        assert!(c.general.rows.iter().all(|r| r.abs_residual > NONZERO_RESIDUAL));
    }

    #[test]
    fn composition_above_first_order_uses_higher_operator() {
        let c = check_composition_law(&p("t^3"), a(0.75), a(0.5), &WeightSpec::One, &[2.0]).unwrap();
        // D^1.25 t³ = t^0.75 · 6t
        assert!((c.general.rows[0].lhs - 2f64.powf(0.75) * 12.0).abs() < 1e-12);
    }

    #[test]
    fn identities_examples() {
        let reports = check_identities(a(0.5), &WeightSpec::AlphaConst, &[3.0], EvalMethod::ExactReduction).unwrap();
        assert!((reports[0].rows[0].lhs - 1.0).abs() < 1e-15);
        let e = check_identities(a(1.0), &WeightSpec::One, &[0.7], EvalMethod::ExactReduction).unwrap();
        assert!((e[3].rows[0].lhs - 0.7f64.exp()).abs() < 1e-15);
        let s = check_identities(a(0.5), &WeightSpec::One, &[4.0], EvalMethod::ExactReduction).unwrap();
        assert!((s[1].rows[0].rhs - 4f64.cos()).abs() < 1e-15);
        assert!((s[1].rows[0].lhs - 4f64.cos()).abs() < 1e-14);
        for r in reports.iter().chain(&e).chain(&s) {
            assert_eq!(r.verdict, Verdict::Pass, "{}", r.property);
        }
        assert!(matches!(
            check_identities(a(0.5), &WeightSpec::PowerT, &[1.0], EvalMethod::ExactReduction),
            Err(Error::WeightClass(_))
        ));
    }

    #[test]
    fn rolle_examples() {
        let r = find_rolle_witness(&p("(t - 1) * (t - 3)"), 1.0, 3.0, a(0.5), &WeightSpec::One).unwrap();
        assert!((r.c - 2.0).abs() < 1e-12, "{}", r.c);
        assert!(r.achieved_value.abs() <= 1e-9);
        assert!(r.iterations > 0);

        let r = find_rolle_witness(&p("5"), 1.0, 2.0, a(0.5), &WeightSpec::One).unwrap();
        assert_eq!(r.c, 1.5);

        let r = find_rolle_witness(&p("sin(t)"), FRAC_PI_4, 3.0 * FRAC_PI_4, a(0.3), &WeightSpec::AlphaConst)
            .unwrap();
        assert!((r.c - FRAC_PI_2).abs() < 1e-12);

        assert!(matches!(
            find_rolle_witness(&p("t"), 1.0, 2.0, a(0.5), &WeightSpec::One),
            Err(Error::Precondition(_))
        ));
        assert!(find_rolle_witness(&p("t"), 0.0, 2.0, a(0.5), &WeightSpec::One).is_err());
    }

    #[test]
    fn rolle_rejects_discontinuous_sign_changes() {
        // equal endpoint values, but the derivative flips sign through a pole
        let f = p("1 / (t - 2.00005)^2");
        let r = find_rolle_witness(&f, 1.00005, 3.00005, a(0.5), &WeightSpec::One);
        assert!(matches!(r, Err(Error::NoWitness { .. })), "{r:?}");
    }

    #[test]
    fn mvt_examples() {
        let r = find_mvt_witness(&p("t^2"), 1.0, 2.0, a(0.5), &WeightSpec::One).unwrap();
        let target = 1.5 / (2f64.sqrt() - 1.0);
        assert!((r.corrected_target - target).abs() < 1e-14);
        // root-finder oracle: 2 c^1.5 = K  ⇒  c = (K/2)^(2/3)
        let c = (target / 2.0).powf(2.0 / 3.0);
        assert!((r.witness.c - c).abs() < 1e-10);
        assert!((r.witness.c - 1.485_564).abs() < 1e-6);
        assert!((r.witness.achieved_value - target).abs() <= 1e-9 * (1.0 + target));
        assert_eq!(r.printed_target, 1.5);
        assert!(r.printed_witness.is_none());
        assert!((0.75f64.powf(2.0 / 3.0) - 0.8255).abs() < 1e-4);

        let lin = find_mvt_witness(&p("3*t"), 1.0, 2.0, a(1.0), &WeightSpec::One).unwrap();
        assert_eq!(lin.corrected_target, 3.0);
        assert_eq!(lin.witness.c, 1.5);

        assert!(matches!(
            find_mvt_witness(&p("t^2"), 1.0, 2.0, a(0.5), &WeightSpec::PowerT),
            Err(Error::WeightClass(_))
        ));
    }

    #[test]
    fn higher_order_counterexample() {
        for (alpha, t, gap) in [(1.5, 1.0, 2.0), (1.5, 4.0, 4.0), (2.0, 1.0, 2.0)] {
            let r = leibniz_counterexample_higher(a(alpha), &WeightSpec::One, t).unwrap();
            assert_eq!(r.verdict, Verdict::Pass);
            assert_eq!(r.rows[0].rhs, 0.0);
            assert!((r.max_abs_residual - gap).abs() <= 1e-12);
        }
        assert!(leibniz_counterexample_higher(a(0.5), &WeightSpec::One, 1.0).is_err());
        assert!(leibniz_counterexample_higher(a(2.5), &WeightSpec::One, 1.0).is_err());
    }
}
