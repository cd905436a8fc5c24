//! Seeded random expressions that stay finite and differentiable on
//! `t ∈ [0.5, 5]`.
//!
//! Two grammars are mixed: [`smooth`] draws arbitrary smooth expressions and
//! [`positive`] draws expressions that are strictly positive on `t > 0`, used
//! wherever a logarithm, root, fractional power or denominator needs one.

use rand::Rng;

use crate::expr::{Expr, Func};

const POWERS: [f64; 6] = [-1.5, -1.0, 0.5, 1.5, 2.0, 3.0];

fn coefficient<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    // quarter steps keep printed fixtures readable
    let v = (rng.random_range(lo..hi) * 4.0).round() / 4.0;
    if v == 0.0 {
        0.25
    } else {
        v
    }
}

/// A smooth expression in `var` of depth at most `depth + 1`.
pub fn smooth<R: Rng + ?Sized>(rng: &mut R, var: &str, depth: usize) -> Expr {
    if depth == 0 {
        return if rng.random_bool(0.7) {
            Expr::var(var)
        } else {
            Expr::num(coefficient(rng, -3.0, 3.0))
        };
    }
    let d = depth - 1;
    match rng.random_range(0..11) {
        0 => smooth(rng, var, d) + smooth(rng, var, d),
        1 => smooth(rng, var, d) - smooth(rng, var, d),
        2 | 3 => smooth(rng, var, d) * smooth(rng, var, d),
        4 => smooth(rng, var, d) / positive(rng, var, d),
        5 => smooth(rng, var, d).sin(),
        6 => smooth(rng, var, d).cos(),
        7 => bounded(rng, var, d).exp(),
        8 => positive(rng, var, d).ln(),
        9 => -smooth(rng, var, d),
        _ => positive(rng, var, d),
    }
}

/// An expression that is strictly positive wherever `var > 0`.
pub fn positive<R: Rng + ?Sized>(rng: &mut R, var: &str, depth: usize) -> Expr {
    if depth == 0 {
        return if rng.random_bool(0.7) {
            Expr::var(var)
        } else {
            Expr::num(coefficient(rng, 0.5, 3.0))
        };
    }
    let d = depth - 1;
    match rng.random_range(0..8) {
        0 => positive(rng, var, d) + positive(rng, var, d),
        1 => positive(rng, var, d) * positive(rng, var, d),
        2 => positive(rng, var, d) / positive(rng, var, d),
        3 => bounded(rng, var, d).exp(),
        4 => Expr::num(1.0) + smooth(rng, var, d).pow(2.0),
        5 => positive(rng, var, d).apply(Func::Sqrt),
        6 => {
            let p = POWERS[rng.random_range(0..POWERS.len())];
            positive(rng, var, d).pow(p)
        }
        _ => positive(rng, var, d).apply(Func::Abs),
    }
}

/// Argument for `exp`, bounded so the exponential stays moderate.
fn bounded<R: Rng + ?Sized>(rng: &mut R, var: &str, depth: usize) -> Expr {
    match rng.random_range(0..3) {
        0 => smooth(rng, var, depth).sin(),
        1 => smooth(rng, var, depth).cos(),
        _ => Expr::num(coefficient(rng, -0.5, 0.5)) * Expr::var(var),
    }
}
