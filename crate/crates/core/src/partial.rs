//! Generalized partial fractional derivatives over multivariate expressions.
//!
//! The first-order operator along coordinate `tᵢ` is
//! `w(tᵢ, α) tᵢ^(1-α) ∂f/∂tᵢ`; the mixed second-order operator along
//! `tᵢ` then `tⱼ` is `wⱼ wᵢ (tⱼ tᵢ)^(1-α) ∂²f/∂tⱼ∂tᵢ`. Properties that the
//! univariate ring checks already cover are audited on the restriction of
//! `f` to one axis.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{Bindings, Expr};
use crate::operators::{gfd, Alpha, EvalMethod, WeightSpec, T};
use crate::report::{PropertyId, PropertyReport, ReportBuilder, Verdict};
use crate::ring::{self, ChainReading};

/// Tolerance for the restriction and operator-composition checks.
pub const RESTRICTION_TOLERANCE: f64 = 1e-12;
/// Tolerance for the symmetry of the mixed second-order operator.
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

/// Coordinate, order and weight of one partial operator. The weight's `t`
/// is read as the coordinate itself.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSpec {
    pub var: String,
    pub alpha: Alpha,
    pub weight: WeightSpec,
}

impl PartialSpec {
    pub fn new(var: impl Into<String>, alpha: Alpha, weight: WeightSpec) -> Result<Self> {
        alpha.require_unit_interval()?;
        Ok(PartialSpec {
            var: var.into(),
            alpha,
            weight,
        })
    }

    /// `w(tᵢ, α) tᵢ^(1-α)` at coordinate value `ti`.
    fn multiplier(&self, ti: f64) -> Result<f64> {
        let a = self.alpha.value();
        Ok(self.weight.eval(ti, a)? * ti.powf(1.0 - a))
    }
}

impl fmt::Display for PartialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[alpha={}, w={}]", self.var, self.alpha, self.weight)
    }
}

/// An evaluation point with strictly positive coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Bindings);

impl Point {
    pub fn new<S: Into<String>>(coords: impl IntoIterator<Item = (S, f64)>) -> Result<Self> {
        let mut b = Bindings::new();
        for (name, v) in coords {
            let name = name.into();
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parameter(format!("coordinate {name} = {v} must be positive")));
            }
            b.set(name, v);
        }
        Ok(Point(b))
    }

    pub fn get(&self, var: &str) -> Result<f64> {
        self.0.get(var).ok_or_else(|| Error::Unbound(var.to_string()))
    }

    pub fn bindings(&self) -> &Bindings {
        &self.0
    }

    /// Coordinate values ordered by variable name.
    pub fn coords(&self) -> Vec<f64> {
        self.0.iter().map(|(_, v)| v).collect()
    }
}

/// First-order partial operator at `p`.
pub fn gpfd(f: &Expr, spec: &PartialSpec, p: &Point) -> Result<f64> {
    if !f.depends_on(&spec.var) {
        return Ok(0.0);
    }
    let ti = p.get(&spec.var)?;
    Ok(spec.multiplier(ti)? * f.derivative(&spec.var).eval(p.bindings())?)
}

/// The first-order partial operator as an expression in the same variables.
pub fn gpfd_expr(f: &Expr, spec: &PartialSpec) -> Expr {
    let a = spec.alpha.value();
    let m = spec.weight.to_expr(a, &spec.var) * Expr::var(spec.var.as_str()).pow(1.0 - a);
    (m * f.derivative(&spec.var)).simplify()
}

/// Mixed second-order operator, first along `spec_i` then along `spec_j`.
/// Both specs must share one order.
pub fn gpfd_second(f: &Expr, spec_i: &PartialSpec, spec_j: &PartialSpec, p: &Point) -> Result<f64> {
    if spec_i.alpha != spec_j.alpha {
        return Err(Error::Alpha {
            alpha: spec_j.alpha.value(),
            message: format!("mixed operator needs one order, got {} and {}", spec_i.alpha, spec_j.alpha),
        });
    }
    let mixed = f.derivative(&spec_i.var).derivative(&spec_j.var);
    if mixed.as_const() == Some(0.0) {
        return Ok(0.0);
    }
    let (ti, tj) = (p.get(&spec_i.var)?, p.get(&spec_j.var)?);
    Ok(spec_j.multiplier(tj)? * spec_i.multiplier(ti)? * mixed.eval(p.bindings())?)
}

/// Swapping the two axes (with their weights) leaves the mixed operator unchanged.
pub fn check_mixed_symmetry(
    f: &Expr,
    i: &str,
    j: &str,
    alpha: Alpha,
    w_i: &WeightSpec,
    w_j: &WeightSpec,
    points: &[Point],
) -> Result<PropertyReport> {
    let si = PartialSpec::new(i, alpha, w_i.clone())?;
    let sj = PartialSpec::new(j, alpha, w_j.clone())?;
    let mut report = PropertyReport::builder(PropertyId::MixedSymmetry, format!("f={f}; i={si}; j={sj}"));
    for p in points {
        match gpfd_second(f, &si, &sj, p).and_then(|l| Ok((l, gpfd_second(f, &sj, &si, p)?))) {
            Ok((lhs, rhs)) => report.push(p.coords(), lhs, rhs),
            Err(e) => report.note(format!("{:?} skipped: {e}", p.coords())),
        }
    }
    Ok(report.expect_pass(SYMMETRY_TOLERANCE))
}

/// `f` with every coordinate except `var` fixed at `p`, written in `t`.
pub fn restrict_to_axis(f: &Expr, var: &str, p: &Point) -> Expr {
    let mut e = f.clone();
    for (name, v) in p.bindings().iter() {
        if name != var {
            e = e.substitute(name, &Expr::num(v));
        }
    }
    e.rename(var, T)
}

/// Partial operator against the univariate operator of the restriction.
pub fn check_restriction(f: &Expr, spec: &PartialSpec, points: &[Point]) -> PropertyReport {
    let mut report = PropertyReport::builder(PropertyId::PartialRestriction, format!("f={f}; {spec}"));
    for p in points {
        let sides = || -> Result<(f64, f64)> {
            let lhs = gpfd(f, spec, p)?;
            let restricted = restrict_to_axis(f, &spec.var, p);
            let rhs = gfd(&restricted, spec.alpha, &spec.weight, p.get(&spec.var)?, EvalMethod::ExactReduction)?;
            Ok((lhs, rhs))
        };
        match sides() {
            Ok((lhs, rhs)) => report.push(p.coords(), lhs, rhs),
            Err(e) => report.note(format!("{:?} skipped: {e}", p.coords())),
        }
    }
    report.expect_pass(RESTRICTION_TOLERANCE)
}

/// Folds per-point univariate reports into one report keyed by full coordinates.
struct Merge {
    builder: ReportBuilder,
    tolerance: Option<f64>,
}

impl Merge {
    fn new(property: PropertyId, inputs: String) -> Self {
        Merge {
            builder: PropertyReport::builder(property, inputs),
            tolerance: None,
        }
    }

    fn absorb(&mut self, p: &Point, report: PropertyReport) {
        self.tolerance = report.tolerance;
        for row in report.rows {
            self.builder.push_scaled(p.coords(), row.lhs, row.rhs, row.scale);
        }
        for note in report.notes {
            self.builder.note(format!("{:?}: {note}", p.coords()));
        }
    }

    fn finish(self) -> PropertyReport {
        match self.tolerance {
            Some(tol) => self.builder.expect_pass(tol),
            None => self.builder.audit(),
        }
    }
}

/// Linearity, product and quotient rules (PASS expected) and the chain and
/// composition claims (AUDIT) for the partial operator along `spec.var`,
/// each evaluated on the restriction of the inputs through every point.
///
/// `outer` is a univariate function composed with `g` for the chain audit;
/// `beta` is the second order for the composition audit.
pub fn audit_partial_properties(
    f: &Expr,
    g: &Expr,
    outer: &Expr,
    spec: &PartialSpec,
    beta: Alpha,
    points: &[Point],
) -> Result<Vec<PropertyReport>> {
    let inputs = format!("f={f}; g={g}; outer={outer}; {spec}; beta={beta}");
    let mut merges = [
        Merge::new(PropertyId::PartialLinearity, inputs.clone()),
        Merge::new(PropertyId::PartialLeibniz, inputs.clone()),
        Merge::new(PropertyId::PartialQuotient, inputs.clone()),
        Merge::new(PropertyId::PartialChainOuterAtInner, inputs.clone()),
        Merge::new(PropertyId::PartialCompositionLaw, inputs),
    ];
    let (alpha, w) = (spec.alpha, &spec.weight);
    for p in points {
        let t = [p.get(&spec.var)?];
        let (fr, gr) = (restrict_to_axis(f, &spec.var, p), restrict_to_axis(g, &spec.var, p));
        let reports = [
            ring::check_linearity(&fr, &gr, 2.0, -3.0, alpha, w, &t),
            ring::check_leibniz(&fr, &gr, alpha, w, &t),
            ring::check_quotient(&fr, &gr, alpha, w, &t),
            ring::check_chain(outer, &gr, alpha, w, &t, ChainReading::OuterAtInner)?,
            ring::check_composition_law(&fr, alpha, beta, w, &t)?.general,
        ];
        for (merge, report) in merges.iter_mut().zip(reports) {
            merge.absorb(p, report);
        }
    }
    // linearity, product and quotient carry a tolerance; the audits do not
    let out: Vec<PropertyReport> = merges.into_iter().map(Merge::finish).collect();
    debug_assert!(out[3].verdict == Verdict::Audit && out[4].verdict == Verdict::Audit);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn a(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    fn pt(t1: f64, t2: f64) -> Point {
        Point::new([("t1", t1), ("t2", t2)]).unwrap()
    }

    fn spec(var: &str, alpha: f64, w: WeightSpec) -> PartialSpec {
        PartialSpec::new(var, a(alpha), w).unwrap()
    }

    fn points() -> Vec<Point> {
        let mut out = Vec::new();
        for t1 in [0.5, 1.0, 1.7, 3.0] {
            for t2 in [0.25, 1.3, 2.9] {
                out.push(pt(t1, t2));
            }
        }
        out
    }

    #[test]
    fn first_order_example() {
        let f = parse("t1^3 * sin(t2)").unwrap();
        let s = spec("t1", 0.4, WeightSpec::AlphaConst);
        for p in points() {
            let (t1, t2) = (p.get("t1").unwrap(), p.get("t2").unwrap());
            let oracle = 0.4 * t1.powf(0.6) * 3.0 * t1 * t1 * t2.sin();
            assert!((gpfd(&f, &s, &p).unwrap() - oracle).abs() <= 1e-13 * oracle.abs().max(1.0));
        }
        assert_eq!(gpfd(&parse("t2^2").unwrap(), &s, &pt(1.0, 2.0)).unwrap(), 0.0);
        let classical = gpfd(&f, &spec("t2", 1.0, WeightSpec::One), &pt(2.0, 0.5)).unwrap();
        assert!((classical - 8.0 * 0.5f64.cos()).abs() < 1e-14);
    }

    #[test]
    fn second_order_examples() {
        let f = parse("t1^3 * sin(t2)").unwrap();
        let (si, sj) = (spec("t1", 1.0, WeightSpec::One), spec("t2", 1.0, WeightSpec::One));
        let v = gpfd_second(&f, &si, &sj, &pt(2.0, 0.5)).unwrap();
        assert!((v - 12.0 * 0.5f64.cos()).abs() < 1e-14);

        let sum = parse("t1 + t2").unwrap();
        assert_eq!(gpfd_second(&sum, &si, &sj, &pt(2.0, 0.5)).unwrap(), 0.0);

        let wi: WeightSpec = "custom:t^2".parse().unwrap();
        let wj: WeightSpec = "custom:t^(-1/3)".parse().unwrap();
        let (si, sj) = (spec("t1", 0.2, wi), spec("t2", 0.2, wj));
        let (t1, t2) = (1.5, 2.5);
        let v = gpfd_second(&parse("t1 * t2").unwrap(), &si, &sj, &pt(t1, t2)).unwrap();
        let oracle = t2.powf(-1.0 / 3.0) * t1 * t1 * (t1 * t2).powf(0.8);
        assert!((v - oracle).abs() < 1e-14 * oracle);

        let mismatched = spec("t2", 0.3, WeightSpec::One);
        assert!(gpfd_second(&f, &si, &mismatched, &pt(1.0, 1.0)).is_err());
    }

    #[test]
    fn mixed_symmetry_examples() {
        let one = WeightSpec::One;
        let r = check_mixed_symmetry(&parse("t1^3 * sin(t2)").unwrap(), "t1", "t2", a(0.5), &one, &one, &points())
            .unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        for row in &r.rows {
            let (t1, t2) = (row.point[0], row.point[1]);
            let oracle = (t1 * t2).sqrt() * 3.0 * t1 * t1 * t2.cos();
            assert!((row.lhs - oracle).abs() <= 1e-12 * oracle.abs().max(1.0));
        }
        let r = check_mixed_symmetry(&parse("t1^2 + t2^2").unwrap(), "t1", "t2", a(0.5), &one, &one, &points())
            .unwrap();
        assert!(r.rows.iter().all(|row| row.lhs == 0.0 && row.rhs == 0.0));
        let r = check_mixed_symmetry(
            &parse("exp(t1 * t2)").unwrap(),
            "t1",
            "t2",
            a(1.0),
            &WeightSpec::PowerT,
            &WeightSpec::AlphaConst,
            &points(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn restriction_matches_univariate_operator() {
        let f = parse("t1^2 * exp(t2) + sqrt(t1 * t2)").unwrap();
        for w in [WeightSpec::One, WeightSpec::PowerT, "tau:alpha:3".parse().unwrap()] {
            for var in ["t1", "t2"] {
                let r = check_restriction(&f, &spec(var, 0.35, w.clone()), &points());
                assert_eq!(r.verdict, Verdict::Pass, "{var} {w}: {}", r.max_rel_residual);
            }
        }
    }

    #[test]
    fn second_order_is_composition_of_first_order() {
        let f = parse("t1^3 * sin(t2) + t1 * t2^2").unwrap();
        let si = spec("t1", 0.6, WeightSpec::PowerT);
        let sj = spec("t2", 0.6, WeightSpec::AlphaConst);
        let inner = gpfd_expr(&f, &si);
        for p in points() {
            let composed = gpfd(&inner, &sj, &p).unwrap();
            let direct = gpfd_second(&f, &si, &sj, &p).unwrap();
            assert!((composed - direct).abs() <= 1e-10 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn partial_properties() {
        let f = parse("t1^2 * sin(t2) + t2").unwrap();
        let g = parse("exp(t1) + t2^2").unwrap();
        let outer = parse("x^2").unwrap();
        let reports =
            audit_partial_properties(&f, &g, &outer, &spec("t1", 0.5, WeightSpec::One), a(0.5), &points())
                .unwrap();
        let verdicts: Vec<Verdict> = reports.iter().map(|r| r.verdict).collect();
        assert_eq!(
            verdicts,
            [Verdict::Pass, Verdict::Pass, Verdict::Pass, Verdict::Audit, Verdict::Audit]
        );
        assert!(reports[3].max_abs_residual > 1e-6);
        assert_eq!(reports[0].rows[0].point.len(), 2);
    }

    #[test]
    fn points_need_positive_coordinates() {
        assert!(Point::new([("x", 0.0)]).is_err());
        assert!(Point::new([("x", -1.0)]).is_err());
        assert!(matches!(pt(1.0, 1.0).get("t3"), Err(Error::Unbound(_))));
    }
}
