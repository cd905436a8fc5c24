//! The linear equation `a D^α y + b y = c` and residual checks for two
//! fractional PDEs written in classical form.
//!
//! With a constant weight `w` the equation reduces to
//! `y' = (c - b y) t^(α-1) / (a w)`, which has the closed form
//! `y = c/b + c₁ exp(-b t^α / (a w α))` and is integrated numerically from
//! some `t0 > 0` because of the `t^(α-1)` factor.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{parse_with_vars, Bindings, Expr};
use crate::operators::{gfd, Alpha, EvalMethod, WeightSpec, T};
use crate::partial::{gpfd, gpfd_second, PartialSpec, Point};

/// Largest `|y|` the integrator accepts before reporting a blow-up.
pub const BLOWUP: f64 = 1e12;

/// `a D^α y + b y = c` with `y(t0) = y0`.
///
/// `t0 = 0` is allowed for the closed form, where it stands for the limit
/// `t0 → 0⁺`; the numerical solver needs `t0 > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFracODE {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: Alpha,
    pub weight: f64,
    pub t0: f64,
    pub y0: f64,
}

impl LinearFracODE {
    pub fn new(a: f64, b: f64, c: f64, alpha: Alpha, weight: f64, t0: f64, y0: f64) -> Result<Self> {
        let finite = [a, b, c, weight, t0, y0].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::Parameter("coefficients must be finite".into()));
        }
        if a == 0.0 {
            return Err(Error::Parameter("a must be nonzero".into()));
        }
        if !(weight > 0.0) {
            return Err(Error::Parameter(format!("weight must be positive, got {weight}")));
        }
        if t0 < 0.0 {
            return Err(Error::Parameter(format!("t0 must be >= 0, got {t0}")));
        }
        if !alpha.is_unit_interval() {
            return Err(Error::Parameter(format!("alpha must lie in (0, 1], got {alpha}")));
        }
        Ok(LinearFracODE {
            a,
            b,
            c,
            alpha,
            weight,
            t0,
            y0,
        })
    }

    fn weight_spec(&self) -> WeightSpec {
        WeightSpec::Custom(Expr::num(self.weight))
    }

    /// Right-hand side of the reduced classical equation.
    fn slope(&self, t: f64, y: f64) -> f64 {
        (self.c - self.b * y) * t.powf(self.alpha.value() - 1.0) / (self.a * self.weight)
    }
}

/// Closed-form solution in `t`.
pub fn solve_linear_closed(ode: &LinearFracODE) -> Expr {
    let LinearFracODE { a, b, c, weight: w, t0, y0, .. } = *ode;
    let alpha = ode.alpha.value();
    let t_alpha = Expr::var(T).pow(alpha);
    if b == 0.0 {
        let rate = c / (a * w * alpha);
        return (Expr::num(y0 - rate * t0.powf(alpha)) + Expr::num(rate) * t_alpha).simplify();
    }
    let k = b / (a * w * alpha);
    let steady = c / b;
    let c1 = (y0 - steady) * (k * t0.powf(alpha)).exp();
    (Expr::num(steady) + Expr::num(c1) * (Expr::num(-k) * t_alpha).exp()).simplify()
}

/// Classic fourth-order Runge–Kutta on `[t0, t_end]`.
///
/// The step is shrunk so that a whole number of steps lands on `t_end`;
/// it must not exceed a tenth of the interval.
pub fn solve_linear_numeric(ode: &LinearFracODE, t_end: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    let t0 = ode.t0;
    if !(t0 > 0.0) {
        return Err(Error::Step(format!("integration needs t0 > 0, got {t0}")));
    }
    let span = t_end - t0;
    if !(span > 0.0 && span.is_finite()) {
        return Err(Error::Step(format!("t_end = {t_end} must exceed t0 = {t0}")));
    }
    if !(step > 0.0 && step <= span / 10.0) {
        return Err(Error::Step(format!("step {step} must lie in (0, {}]", span / 10.0)));
    }
    let n = (span / step * (1.0 - 1e-12)).ceil() as usize;
    let h = span / n as f64;
    let mut out = Vec::with_capacity(n + 1);
    let mut y = ode.y0;
    out.push((t0, y));
    for i in 0..n {
        let t = t0 + i as f64 * h;
        let k1 = ode.slope(t, y);
        let k2 = ode.slope(t + 0.5 * h, y + 0.5 * h * k1);
        let k3 = ode.slope(t + 0.5 * h, y + 0.5 * h * k2);
        let k4 = ode.slope(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let t_next = if i + 1 == n { t_end } else { t0 + (i + 1) as f64 * h };
        if !(y.abs() <= BLOWUP) {
            return Err(Error::Blowup { t: t_next, y: y.abs() });
        }
        out.push((t_next, y));
    }
    Ok(out)
}

/// Pointwise residuals of a candidate solution.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub label: String,
    /// Coordinate names of each point, e.g. `["t"]` or `["x", "t"]`.
    pub coords: Vec<String>,
    pub points: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
    pub max_abs_residual: f64,
    pub notes: Vec<String>,
}

impl ResidualReport {
    fn new(label: impl Into<String>, coords: &[&str]) -> Self {
        ResidualReport {
            label: label.into(),
            coords: coords.iter().map(|s| s.to_string()).collect(),
            points: Vec::new(),
            residuals: Vec::new(),
            max_abs_residual: 0.0,
            notes: Vec::new(),
        }
    }

    fn push(&mut self, point: Vec<f64>, residual: f64) {
        self.max_abs_residual = self.max_abs_residual.max(residual.abs());
        self.points.push(point);
        self.residuals.push(residual);
    }
}

/// `a D^α y + b y - c` on the exact path at each grid point.
pub fn ode_residual(ode: &LinearFracODE, y: &Expr, grid: &[f64]) -> ResidualReport {
    let mut report = ResidualReport::new(format!("{} D^{} y + {} y = {}", ode.a, ode.alpha, ode.b, ode.c), &[T]);
    let w = ode.weight_spec();
    for &t in grid {
        let value = || -> Result<f64> {
            let d = gfd(y, ode.alpha, &w, t, EvalMethod::ExactReduction)?;
            Ok(ode.a * d + ode.b * y.eval_at(T, t)? - ode.c)
        };
        match value() {
            Ok(r) => report.push(vec![t], r),
            Err(e) => report.notes.push(format!("t={t} skipped: {e}")),
        }
    }
    report
}

/// Variables a custom PDE residual may use.
pub const PDE_SYMBOLS: [&str; 8] = ["x", "t", "u", "u_x", "u_t", "u_xx", "u_tt", "u_xt"];

/// Equation whose residual is evaluated for a candidate `u(x, t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Pde {
    /// `u_t + (2/3) x u_x + u - x²`, the classical form of
    /// `u_t + 2 x^(1/3) ∂^(1/3)u/∂x^(1/3) + u = x²` with `w = 1/3`.
    Pde1,
    /// `x² x^(4/5) t^(4/5) u_xt + 2 t^(1/3) u`, the printed classical form of
    /// the order-1/5 mixed equation with `w_x = x²`, `w_t = t^(-1/3)`.
    Pde2,
    /// Pde1 with the fractional term evaluated by the partial operator.
    Pde1Fractional,
    /// `∂^(1/5)_t ∂^(1/5)_x u + 2u/x` evaluated by the mixed partial operator.
    Pde2Fractional,
    /// Any expression over [`PDE_SYMBOLS`].
    Custom(Expr),
}

impl Pde {
    /// Parses `pde1`, `pde2`, `pde1-frac`, `pde2-frac` or a custom
    /// expression over [`PDE_SYMBOLS`].
    pub fn parse(text: &str) -> Result<Pde> {
        Ok(match text.trim() {
            "pde1" => Pde::Pde1,
            "pde2" => Pde::Pde2,
            "pde1-frac" => Pde::Pde1Fractional,
            "pde2-frac" => Pde::Pde2Fractional,
            other => Pde::Custom(parse_with_vars(other, &PDE_SYMBOLS)?),
        })
    }
}

impl fmt::Display for Pde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pde::Pde1 => f.write_str("pde1"),
            Pde::Pde2 => f.write_str("pde2"),
            Pde::Pde1Fractional => f.write_str("pde1-frac"),
            Pde::Pde2Fractional => f.write_str("pde2-frac"),
            Pde::Custom(e) => write!(f, "{e}"),
        }
    }
}

fn classical_partials(u: &Expr, b: &Bindings) -> Result<Bindings> {
    let (ux, ut) = (u.derivative("x"), u.derivative("t"));
    let mut out = b.clone();
    out.set("u", u.eval(b)?);
    out.set("u_x", ux.eval(b)?);
    out.set("u_t", ut.eval(b)?);
    out.set("u_xx", ux.derivative("x").eval(b)?);
    out.set("u_tt", ut.derivative("t").eval(b)?);
    out.set("u_xt", ux.derivative("t").eval(b)?);
    Ok(out)
}

fn pde_residual_at(pde: &Pde, u: &Expr, p: &Point) -> Result<f64> {
    let (x, t) = (p.get("x")?, p.get("t")?);
    let b = p.bindings();
    let third = || Alpha::new(1.0 / 3.0);
    let fifth = || Alpha::new(0.2);
    match pde {
        Pde::Pde1 => {
            let v = classical_partials(u, b)?;
            let get = |k: &str| v.get(k).expect("bound above");
            Ok(get("u_t") + 2.0 / 3.0 * x * get("u_x") + get("u") - x * x)
        }
        Pde::Pde2 => {
            let uxt = u.derivative("x").derivative("t").eval(b)?;
            Ok(x * x * x.powf(0.8) * t.powf(0.8) * uxt + 2.0 * t.cbrt() * u.eval(b)?)
        }
        Pde::Pde1Fractional => {
            let spec = PartialSpec::new("x", third()?, WeightSpec::Custom(Expr::num(1.0 / 3.0)))?;
            let frac = gpfd(u, &spec, p)?;
            Ok(u.derivative("t").eval(b)? + 2.0 * x.cbrt() * frac + u.eval(b)? - x * x)
        }
        Pde::Pde2Fractional => {
            let wx = WeightSpec::Custom(Expr::var("t").pow(2.0));
            let wt = WeightSpec::Custom(Expr::var("t").pow(-1.0 / 3.0));
            let sx = PartialSpec::new("x", fifth()?, wx)?;
            let st = PartialSpec::new("t", fifth()?, wt)?;
            Ok(gpfd_second(u, &sx, &st, p)? + 2.0 * u.eval(b)? / x)
        }
        Pde::Custom(e) => e.eval(&classical_partials(u, b)?),
    }
}

/// Residual of `pde` for the candidate `u(x, t)` at each point.
pub fn pde_residual(pde: &Pde, u: &Expr, points: &[Point]) -> ResidualReport {
    let mut report = ResidualReport::new(pde.to_string(), &["x", "t"]);
    for p in points {
        let coords = vec![p.get("x").unwrap_or(f64::NAN), p.get("t").unwrap_or(f64::NAN)];
        match pde_residual_at(pde, u, p) {
            Ok(r) => report.push(coords, r),
            Err(e) => report.notes.push(format!("{coords:?} skipped: {e}")),
        }
    }
    report
}

/// Points `(x, t)` on an `n × n` grid over `[lo, hi]²`.
pub fn square_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<Point>> {
    let axis = crate::num::linspace(lo, hi, n);
    let mut out = Vec::with_capacity(n * n);
    for &x in &axis {
        for &t in &axis {
            out.push(Point::new([("x", x), ("t", t)])?);
        }
    }
    Ok(out)
}

/// Candidate solutions for the two PDEs.
pub mod candidates {
    use crate::expr::Expr;

    fn parse(s: &str) -> Expr {
        crate::expr::parse(s).expect("candidate expression parses")
    }

    /// `(3/7) x² (1 - e^(-7t/3))`, which satisfies [`Pde1`](super::Pde::Pde1)
    /// and vanishes at `t = 0`.
    pub fn pde1() -> Expr {
        parse("3/7 * x^2 * (1 - exp(-7*t/3))")
    }

    /// `(x²/7)(1 - e^(-7/3))`, constant in `t`; it leaves a residual.
    pub fn pde1_printed() -> Expr {
        parse("x^2/7 * (1 - exp(-7/3))")
    }

    /// Separated solution of [`Pde2`](super::Pde::Pde2):
    /// `f'/f = k x^(-14/5)` and `g'/g = -2/(k t^(7/15))` integrate to
    /// `exp(-(5k/9) x^(-9/5) - (15/(4k)) t^(8/15))`.
    pub fn pde2(k: f64) -> Expr {
        let x = Expr::num(-5.0 * k / 9.0) * Expr::var("x").pow(-9.0 / 5.0);
        let t = Expr::num(-15.0 / (4.0 * k)) * Expr::var("t").pow(8.0 / 15.0);
        (x + t).exp()
    }

    /// `exp(k x^(1/15) - 2 t^(8/15) / k)`.
    pub fn pde2_printed(k: f64) -> Expr {
        let x = Expr::num(k) * Expr::var("x").pow(1.0 / 15.0);
        let t = Expr::num(-2.0 / k) * Expr::var("t").pow(8.0 / 15.0);
        (x + t).exp()
    }

    /// `exp(15k x^(1/15) - (15/(4k)) t^(8/15))`, which integrates
    /// `f'/f = k x^(-14/15)` instead of `k x^(-14/5)`.
    pub fn pde2_fifteenth_root(k: f64) -> Expr {
        let x = Expr::num(15.0 * k) * Expr::var("x").pow(1.0 / 15.0);
        let t = Expr::num(-15.0 / (4.0 * k)) * Expr::var("t").pow(8.0 / 15.0);
        (x + t).exp()
    }
}
