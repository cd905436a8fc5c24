//! Small numeric helpers shared by the operators, reports and CLI output.

use std::str::FromStr;

use crate::error::Error;

/// Shortest text that parses back to exactly `x`.
///
/// Plain decimal notation in the mid range, exponent notation for very small
/// or very large magnitudes.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// `|a - b| / max(|a|, |b|)`, zero when both are zero.
pub fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Uniform grid `start:stop:step`, inclusive of `stop` when it lies on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self, Error> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::Grid("non-finite bound".into()));
        }
        if step <= 0.0 {
            return Err(Error::Grid(format!("step must be positive, got {step}")));
        }
        if stop < start {
            return Err(Error::Grid(format!("stop {stop} lies before start {start}")));
        }
        Ok(Self { start, stop, step })
    }

    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid points computed as `start + k * step` and rounded to 12
    /// significant digits, so `0.1:1:0.3` ends at `1` rather than `0.9999999999999999`.
    pub fn points(&self) -> Vec<f64> {
        (0..self.len())
            .map(|k| {
                let p = self.start + k as f64 * self.step;
                format!("{p:.11e}").parse().unwrap_or(p)
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(Error::Grid(format!("expected start:stop:step, got `{s}`")));
        };
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Grid(format!("bad number `{p}` in `{s}`")))
        };
        Grid::new(num(start)?, num(stop)?, num(step)?)
    }
}

/// `n` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..n)
            .map(|k| start + (stop - start) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}
