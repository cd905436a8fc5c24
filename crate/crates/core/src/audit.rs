//! Deterministic bundles of property reports, one per audit suite.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::{parse, Expr};
use crate::num::linspace;
use crate::operators::{gfd, Alpha, EvalMethod, WeightSpec, T};
use crate::partial::{self, PartialSpec, Point};
use crate::report::{PropertyId, PropertyReport, Verdict};
use crate::ring::{self, ChainReading, NONZERO_RESIDUAL, WITNESS_TOLERANCE};
use crate::sample;

pub const DEFAULT_SEED: u64 = 42;
/// Random instances drawn by the ring suite.
pub const RING_DRAWS: usize = 100;
/// Interval the random instances are evaluated on.
pub const SAMPLE_RANGE: (f64, f64) = (0.5, 5.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Ring,
    Partial,
    Identities,
    Theorems,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ring" => Ok(Suite::Ring),
            "partial" => Ok(Suite::Partial),
            "identities" => Ok(Suite::Identities),
            "theorems" => Ok(Suite::Theorems),
            _ => Err(Error::Parameter(format!(
                "unknown suite `{s}` (expected ring | partial | identities | theorems)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Ring => "ring",
            Suite::Partial => "partial",
            Suite::Identities => "identities",
            Suite::Theorems => "theorems",
        })
    }
}

/// One random instance for the linearity, product and quotient checks.
#[derive(Debug, Clone, PartialEq)]
pub struct RingDraw {
    pub f: Expr,
    pub g: Expr,
    /// Strictly positive on `t > 0`, used as the quotient denominator.
    pub denominator: Expr,
    pub a: f64,
    pub b: f64,
    pub alpha: Alpha,
    pub weight: WeightSpec,
    pub grid: Vec<f64>,
}

/// `n` instances with `α ∈ (0, 1]`, weights cycling through one, alpha and
/// power-t, and ten sorted points in [`SAMPLE_RANGE`].
pub fn ring_draws(seed: u64, n: usize) -> Vec<RingDraw> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = [WeightSpec::One, WeightSpec::AlphaConst, WeightSpec::PowerT];
    (0..n)
        .map(|k| {
            let f = sample::smooth(&mut rng, T, 3);
            let g = sample::smooth(&mut rng, T, 3);
            let denominator = sample::positive(&mut rng, T, 2);
            let a = (rng.random_range(-3.0..3.0f64) * 4.0).round() / 4.0;
            let b = (rng.random_range(-3.0..3.0f64) * 4.0).round() / 4.0;
            let alpha = Alpha::new(1.0 - rng.random::<f64>()).expect("alpha in (0, 1]");
            let mut grid: Vec<f64> = (0..10).map(|_| rng.random_range(SAMPLE_RANGE.0..=SAMPLE_RANGE.1)).collect();
            grid.sort_by(f64::total_cmp);
            RingDraw {
                f,
                g,
                denominator,
                a,
                b,
                alpha,
                weight: weights[k % weights.len()].clone(),
                grid,
            }
        })
        .collect()
}

fn alpha(v: f64) -> Alpha {
    Alpha::new(v).expect("fixture order is positive")
}

fn fixture(s: &str) -> Expr {
    parse(s).expect("fixture parses")
}

/// Linearity, product and quotient over [`RING_DRAWS`] random instances,
/// then the chain-rule readings and the composition law on `f = x²`,
/// `g = t²`, `α = β = 0.5`, `w = 1`.
pub fn ring_suite(seed: u64) -> Result<Vec<PropertyReport>> {
    let draws = ring_draws(seed, RING_DRAWS);
    let inputs = format!("seed={seed}; {RING_DRAWS} random instances on t in [0.5, 5]");
    let mut linear = Vec::new();
    let mut leibniz = Vec::new();
    let mut quotient = Vec::new();
    for d in &draws {
        linear.push(ring::check_linearity(&d.f, &d.g, d.a, d.b, d.alpha, &d.weight, &d.grid));
        leibniz.push(ring::check_leibniz(&d.f, &d.g, d.alpha, &d.weight, &d.grid));
        quotient.push(ring::check_quotient(&d.f, &d.denominator, d.alpha, &d.weight, &d.grid));
    }
    let mut out = vec![
        PropertyReport::merge(PropertyId::Linearity, inputs.clone(), linear),
        PropertyReport::merge(PropertyId::Leibniz, inputs.clone(), leibniz),
        PropertyReport::merge(PropertyId::Quotient, inputs, quotient),
    ];
    let (f, g, half) = (fixture("x^2"), fixture("t^2"), alpha(0.5));
    let grid = linspace(SAMPLE_RANGE.0, SAMPLE_RANGE.1, 10);
    for reading in [ChainReading::CompositeInT, ChainReading::OuterAtInner] {
        out.push(ring::check_chain(&f, &g, half, &WeightSpec::One, &grid, reading)?);
    }
    out.extend(ring::check_composition_law(&fixture("t^2"), half, half, &WeightSpec::One, &grid)?.into_reports());
    Ok(out)
}

/// Partial-operator checks on fixed fixtures at seeded points in `[0.5, 3]²`.
pub fn partial_suite(seed: u64) -> Result<Vec<PropertyReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..20)
        .map(|_| Point::new([("t1", rng.random_range(0.5..3.0)), ("t2", rng.random_range(0.5..3.0))]))
        .collect::<Result<Vec<_>>>()?;
    let f = fixture("t1^3 * sin(t2)");
    let g = fixture("exp(t1) + t2^2");
    let half = alpha(0.5);

    let mut out = vec![
        partial::check_mixed_symmetry(&f, "t1", "t2", half, &WeightSpec::One, &WeightSpec::One, &points)?,
        partial::check_mixed_symmetry(
            &fixture("exp(t1 * t2)"),
            "t1",
            "t2",
            alpha(0.3),
            &WeightSpec::PowerT,
            &WeightSpec::AlphaConst,
            &points,
        )?,
    ];
    for var in ["t1", "t2"] {
        let spec = PartialSpec::new(var, alpha(0.35), WeightSpec::PowerT)?;
        out.push(partial::check_restriction(&(f.clone() * g.clone()), &spec, &points));
    }
    let spec = PartialSpec::new("t1", half, WeightSpec::One)?;
    out.extend(partial::audit_partial_properties(&f, &g, &fixture("x^2"), &spec, half, &points)?);
    Ok(out)
}

/// The four t-power identities, each merged over every order in `alphas`.
pub fn identities_suite(
    alphas: &[Alpha],
    w: &WeightSpec,
    grid: &[f64],
    method: EvalMethod,
) -> Result<Vec<PropertyReport>> {
    let mut parts: [Vec<PropertyReport>; 4] = Default::default();
    for &a in alphas {
        for (slot, report) in parts.iter_mut().zip(ring::check_identities(a, w, grid, method)?) {
            slot.push(report);
        }
    }
    let ids = [
        PropertyId::IdentityUnit,
        PropertyId::IdentitySin,
        PropertyId::IdentityCos,
        PropertyId::IdentityExp,
    ];
    let orders: Vec<String> = alphas.iter().map(ToString::to_string).collect();
    let inputs = format!("w={w}; alpha in {{{}}}; {} points; method={method:?}", orders.join(", "), grid.len());
    Ok(ids
        .into_iter()
        .zip(parts)
        .map(|(id, p)| PropertyReport::merge(id, inputs.clone(), p))
        .collect())
}

/// Orders `0.1, 0.2, …, 1.0`.
pub fn tenth_orders() -> Vec<Alpha> {
    (1..=10).map(|k| alpha(f64::from(k) / 10.0)).collect()
}

/// Rolle and mean value witnesses on fixed fixtures, the printed mean value
/// constant, and the product-rule gap above first order.
pub fn theorems_suite() -> Result<Vec<PropertyReport>> {
    let mut out = Vec::new();

    let rolle_cases = [
        ("(t - 1) * (t - 3)", 1.0, 3.0, 0.5, WeightSpec::One),
        ("sin(t)", FRAC_PI_4, 3.0 * FRAC_PI_4, 0.3, WeightSpec::AlphaConst),
        ("5", 1.0, 2.0, 0.5, WeightSpec::One),
    ];
    let mut rolle = PropertyReport::builder(
        PropertyId::RolleWitness,
        "D^alpha f(c) = 0 for f(a) = f(b); lhs is the achieved value",
    );
    let mut rolle_ok = true;
    for (f, a, b, order, w) in rolle_cases {
        let r = ring::find_rolle_witness(&fixture(f), a, b, alpha(order), &w)?;
        rolle.push_at(r.c, r.achieved_value, 0.0);
        rolle.note(format!("f={f} on [{a}, {b}], alpha={order}, w={w}: c={} after {} bisections", r.c, r.iterations));
        rolle_ok &= r.achieved_value.abs() <= WITNESS_TOLERANCE;
    }
    out.push(rolle.with_verdict(Some(WITNESS_TOLERANCE), pass_if(rolle_ok)));

    let mvt_cases = [
        ("t^2", 1.0, 2.0, 0.5, WeightSpec::One),
        ("3 * t", 1.0, 2.0, 1.0, WeightSpec::One),
        ("exp(t)", 0.5, 2.0, 0.7, WeightSpec::AlphaConst),
    ];
    let mut mvt = PropertyReport::builder(
        PropertyId::MvtWitness,
        "D^alpha f(c) = alpha w (f(b) - f(a)) / (b^alpha - a^alpha)",
    );
    let mut printed = PropertyReport::builder(
        PropertyId::MvtPrintedConstant,
        "lhs = alpha w (f(b) - f(a)) / (b - a), rhs = the attainable constant",
    );
    let mut mvt_ok = true;
    for (f, a, b, order, w) in mvt_cases {
        let r = ring::find_mvt_witness(&fixture(f), a, b, alpha(order), &w)?;
        mvt.push_at(r.witness.c, r.witness.achieved_value, r.corrected_target);
        let tol = WITNESS_TOLERANCE * (1.0 + r.corrected_target.abs());
        mvt_ok &= (r.witness.achieved_value - r.corrected_target).abs() <= tol;
        printed.push_at(r.witness.c, r.printed_target, r.corrected_target);
        printed.note(match r.printed_witness {
            Some(w) => format!("f={f} on [{a}, {b}]: printed constant {} attained at c={}", r.printed_target, w.c),
            None => format!(
                "f={f} on [{a}, {b}]: printed constant {} is unattainable in the interval",
                r.printed_target
            ),
        });
    }
    out.push(mvt.with_verdict(Some(WITNESS_TOLERANCE), pass_if(mvt_ok)));
    out.push(printed.audit());

    let gaps = [(1.5, 1.0), (1.5, 4.0), (1.25, 2.0), (2.0, 1.0)]
        .into_iter()
        .map(|(order, t)| ring::leibniz_counterexample_higher(alpha(order), &WeightSpec::One, t))
        .collect::<Result<Vec<_>>>()?;
    let all_gaps = gaps.iter().all(|r| r.verdict == Verdict::Pass);
    let mut gap = PropertyReport::builder(PropertyId::HigherOrderLeibnizGap, "f = g = t, w = 1");
    for r in gaps {
        for row in r.rows {
            gap.push(row.point, row.lhs, row.rhs);
        }
        for n in r.notes {
            gap.note(n);
        }
    }
    out.push(gap.with_verdict(Some(NONZERO_RESIDUAL), pass_if(all_gaps)));
    Ok(out)
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// True when every PASS-expected report passed.
pub fn all_expected_pass(reports: &[PropertyReport]) -> bool {
    reports
        .iter()
        .all(|r| !r.is_pass_expected() || r.verdict == Verdict::Pass)
}

/// Worst relative deviation between exact and limit evaluation of `f`.
pub fn exact_limit_gap(f: &Expr, alpha: Alpha, w: &WeightSpec, t: f64, h: f64) -> Result<f64> {
    let exact = gfd(f, alpha, w, t, EvalMethod::ExactReduction)?;
    let limit = gfd(f, alpha, w, t, EvalMethod::limit(h)?)?;
    Ok(crate::num::rel_err(exact, limit))
}
