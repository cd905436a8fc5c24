//! Audit reports: per-point left/right values, residuals and a verdict.

use std::fmt;
use std::io::{self, Write};

use serde::Serialize;

use crate::num::fmt_f64;

/// Which identity or claim a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyId {
    WeightUnitIffFirstOrder,
    Linearity,
    Leibniz,
    Quotient,
    ChainCompositeInT,
    ChainOuterAtInner,
    CompositionLaw,
    CompositionCondition,
    CompositionSpecialCase,
    IdentityUnit,
    IdentitySin,
    IdentityCos,
    IdentityExp,
    RolleWitness,
    MvtWitness,
    MvtPrintedConstant,
    HigherOrderLeibnizGap,
    MixedSymmetry,
    PartialRestriction,
    PartialLinearity,
    PartialLeibniz,
    PartialQuotient,
    PartialChainOuterAtInner,
    PartialCompositionLaw,
}

impl PropertyId {
    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::WeightUnitIffFirstOrder => "weight_unit_iff_first_order",
            PropertyId::Linearity => "linearity",
            PropertyId::Leibniz => "leibniz",
            PropertyId::Quotient => "quotient",
            PropertyId::ChainCompositeInT => "chain_composite_in_t",
            PropertyId::ChainOuterAtInner => "chain_outer_at_inner",
            PropertyId::CompositionLaw => "composition_law",
            PropertyId::CompositionCondition => "composition_condition",
            PropertyId::CompositionSpecialCase => "composition_special_case",
            PropertyId::IdentityUnit => "identity_unit",
            PropertyId::IdentitySin => "identity_sin",
            PropertyId::IdentityCos => "identity_cos",
            PropertyId::IdentityExp => "identity_exp",
            PropertyId::RolleWitness => "rolle_witness",
            PropertyId::MvtWitness => "mvt_witness",
            PropertyId::MvtPrintedConstant => "mvt_printed_constant",
            PropertyId::HigherOrderLeibnizGap => "higher_order_leibniz_gap",
            PropertyId::MixedSymmetry => "mixed_symmetry",
            PropertyId::PartialRestriction => "partial_restriction",
            PropertyId::PartialLinearity => "partial_linearity",
            PropertyId::PartialLeibniz => "partial_leibniz",
            PropertyId::PartialQuotient => "partial_quotient",
            PropertyId::PartialChainOuterAtInner => "partial_chain_outer_at_inner",
            PropertyId::PartialCompositionLaw => "partial_composition_law",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// Residuals recorded for a claim that is not expected to hold.
    Audit,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Audit => "AUDIT",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    /// Evaluation point; one coordinate for univariate checks.
    pub point: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    /// Magnitude of the terms combined on either side; the relative residual
    /// is taken against `max(|lhs|, |rhs|, scale)`.
    #[serde(skip)]
    pub scale: f64,
}

impl ReportRow {
    pub fn rel_residual(&self) -> f64 {
        let denom = self.lhs.abs().max(self.rhs.abs()).max(self.scale);
        if self.abs_residual == 0.0 {
            0.0
        } else {
            self.abs_residual / denom
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub inputs: String,
    pub rows: Vec<ReportRow>,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    /// Relative tolerance for PASS-expected properties, `None` for audits.
    pub tolerance: Option<f64>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl PropertyReport {
    pub fn builder(property: PropertyId, inputs: impl Into<String>) -> ReportBuilder {
        ReportBuilder {
            property,
            inputs: inputs.into(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// True when the report was expected to pass.
    pub fn is_pass_expected(&self) -> bool {
        self.tolerance.is_some()
    }

    pub fn lhs(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.lhs).collect()
    }

    pub fn rhs(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.rhs).collect()
    }

    /// Concatenates the rows and notes of several reports on one property.
    ///
    /// Parts with a tolerance are re-checked against it over all rows, and a
    /// failed part fails the whole. Parts without one merge into an audit.
    pub fn merge(
        property: PropertyId,
        inputs: impl Into<String>,
        parts: impl IntoIterator<Item = PropertyReport>,
    ) -> PropertyReport {
        let mut builder = PropertyReport::builder(property, inputs);
        let mut tolerance = None;
        let mut failed = 0usize;
        for part in parts {
            tolerance = tolerance.or(part.tolerance);
            if part.verdict == Verdict::Fail {
                failed += 1;
            }
            builder.rows.extend(part.rows);
            builder.notes.extend(part.notes);
        }
        let Some(tol) = tolerance else {
            return builder.audit();
        };
        if failed > 0 {
            builder.note(format!("{failed} merged part(s) failed"));
        }
        let mut merged = builder.expect_pass(tol);
        if failed > 0 {
            merged.verdict = Verdict::Fail;
        }
        merged
    }

    /// Header matching [`PropertyReport::write_rows`].
    pub const CSV_HEADER: &'static str = "property_id,t,lhs,rhs,abs_residual";

    /// One CSV row per evaluated point. Multivariate points join their
    /// coordinates with `;`.
    pub fn write_rows<W: Write>(&self, out: &mut W) -> io::Result<()> {
        for row in &self.rows {
            let point: Vec<String> = row.point.iter().map(|&x| fmt_f64(x)).collect();
            writeln!(
                out,
                "{},{},{},{},{}",
                self.property,
                point.join(";"),
                fmt_f64(row.lhs),
                fmt_f64(row.rhs),
                fmt_f64(row.abs_residual)
            )?;
        }
        Ok(())
    }

    /// JSON summary object: property, verdict, residual maxima, point count, notes.
    pub fn summary_json(&self) -> String {
        #[derive(Serialize)]
        struct Summary<'a> {
            property_id: PropertyId,
            verdict: Verdict,
            max_abs_residual: f64,
            max_rel_residual: f64,
            tolerance: Option<f64>,
            points: usize,
            inputs: &'a str,
            notes: &'a [String],
        }
        let summary = Summary {
            property_id: self.property,
            verdict: self.verdict,
            max_abs_residual: self.max_abs_residual,
            max_rel_residual: self.max_rel_residual,
            tolerance: self.tolerance,
            points: self.rows.len(),
            inputs: &self.inputs,
            notes: &self.notes,
        };
        serde_json::to_string(&summary).expect("summary serializes")
    }
}

pub struct ReportBuilder {
    property: PropertyId,
    inputs: String,
    rows: Vec<ReportRow>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn push(&mut self, point: Vec<f64>, lhs: f64, rhs: f64) {
        self.push_scaled(point, lhs, rhs, 0.0);
    }

    /// Row whose relative residual is measured against `scale` when that
    /// exceeds both sides, e.g. `|f Dg| + |g Df|` for the product rule.
    pub fn push_scaled(&mut self, point: Vec<f64>, lhs: f64, rhs: f64, scale: f64) {
        self.rows.push(ReportRow {
            point,
            lhs,
            rhs,
            abs_residual: (lhs - rhs).abs(),
            scale: scale.abs(),
        });
    }

    pub fn push_at(&mut self, t: f64, lhs: f64, rhs: f64) {
        self.push(vec![t], lhs, rhs);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn finish(self, tolerance: Option<f64>, verdict: Verdict) -> PropertyReport {
        let (max_abs, max_rel) = residual_maxima(&self.rows);
        PropertyReport {
            property: self.property,
            inputs: self.inputs,
            rows: self.rows,
            max_abs_residual: max_abs,
            max_rel_residual: max_rel,
            tolerance,
            verdict,
            notes: self.notes,
        }
    }

    /// PASS when at least one point was evaluated and every relative
    /// residual is within `tolerance`.
    pub fn expect_pass(mut self, tolerance: f64) -> PropertyReport {
        if self.rows.is_empty() {
            self.note("no admissible grid points");
        }
        let (_, max_rel) = residual_maxima(&self.rows);
        let verdict = if !self.rows.is_empty() && max_rel <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.finish(Some(tolerance), verdict)
    }

    pub fn audit(self) -> PropertyReport {
        self.finish(None, Verdict::Audit)
    }

    /// Explicit verdict, for reports whose pass condition is not a residual bound.
    pub fn with_verdict(self, tolerance: Option<f64>, verdict: Verdict) -> PropertyReport {
        self.finish(tolerance, verdict)
    }
}

fn residual_maxima(rows: &[ReportRow]) -> (f64, f64) {
    rows.iter().fold((0.0, 0.0), |(abs, rel), r| {
        (abs.max(r.abs_residual), rel.max(r.rel_residual()))
    })
}

/// Writes a sequence of reports as one CSV document followed by one
/// `# {json}` summary line per report.
pub fn write_reports<W: Write>(reports: &[PropertyReport], out: &mut W) -> io::Result<()> {
    writeln!(out, "{}", PropertyReport::CSV_HEADER)?;
    for report in reports {
        report.write_rows(out)?;
    }
    for report in reports {
        writeln!(out, "# {}", report.summary_json())?;
    }
    Ok(())
}
