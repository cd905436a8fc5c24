//! Real-valued expression trees.
//!
//! [`Expr`] is the single function representation used by every operator in
//! this crate. Expressions are parsed from text ([`parse`]), evaluated against
//! a set of [`Bindings`], differentiated symbolically and simplified.
//!
//! ```
//! use gfd::expr::{parse, Bindings};
//!
//! let f = parse("t^3 * sin(2*t)").unwrap();
//! let df = f.derivative("t");
//! let at = Bindings::new().with("t", 1.0);
//! let expected = 3.0 * 2f64.sin() + 2.0 * 2f64.cos();
//! assert!((df.eval(&at).unwrap() - expected).abs() < 1e-12);
//! ```

mod diff;
mod eval;
mod parse;
mod simplify;

use std::collections::BTreeSet;
use std::fmt;

pub use eval::Bindings;
pub use parse::{parse, parse_weight, parse_with_vars, FUNCTION_NAMES, RESERVED};

use crate::error::{Error, Result};

/// Elementary unary functions understood by the parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl Func {
    pub const ALL: [Func; 7] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Expression tree over named real variables.
///
/// Values are immutable once built; every transformation returns a new tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// `base ^ exponent`. A non-integer exponent needs a positive base at
    /// evaluation time.
    Pow(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Func(Func, Box<Expr>),
}

impl Expr {
    pub fn num(value: f64) -> Expr {
        Expr::Const(value)
    }

    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    pub fn pow(self, exponent: impl Into<Expr>) -> Expr {
        Expr::Pow(Box::new(self), Box::new(exponent.into()))
    }

    pub fn apply(self, func: Func) -> Expr {
        Expr::Func(func, Box::new(self))
    }

    pub fn sin(self) -> Expr {
        self.apply(Func::Sin)
    }

    pub fn cos(self) -> Expr {
        self.apply(Func::Cos)
    }

    pub fn exp(self) -> Expr {
        self.apply(Func::Exp)
    }

    pub fn ln(self) -> Expr {
        self.apply(Func::Ln)
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(v) => Some(*v),
            _ => None,
        }
    }

    /// Names of all variables occurring in the tree, sorted.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(name) => {
                out.insert(name.clone());
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Neg(a) | Expr::Func(_, a) => a.collect_vars(out),
        }
    }

    pub fn depends_on(&self, var: &str) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(name) => name == var,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.depends_on(var) || b.depends_on(var)
            }
            Expr::Neg(a) | Expr::Func(_, a) => a.depends_on(var),
        }
    }

    /// Replaces every occurrence of `var` by `value`.
    pub fn substitute(&self, var: &str, value: &Expr) -> Expr {
        match self {
            Expr::Var(name) if name == var => value.clone(),
            Expr::Const(_) | Expr::Var(_) => self.clone(),
            Expr::Add(a, b) => Expr::Add(Box::new(a.substitute(var, value)), Box::new(b.substitute(var, value))),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.substitute(var, value)), Box::new(b.substitute(var, value))),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.substitute(var, value)), Box::new(b.substitute(var, value))),
            Expr::Div(a, b) => Expr::Div(Box::new(a.substitute(var, value)), Box::new(b.substitute(var, value))),
            Expr::Pow(a, b) => Expr::Pow(Box::new(a.substitute(var, value)), Box::new(b.substitute(var, value))),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(var, value))),
            Expr::Func(f, a) => Expr::Func(*f, Box::new(a.substitute(var, value))),
        }
    }

    pub fn rename(&self, from: &str, to: &str) -> Expr {
        self.substitute(from, &Expr::var(to))
    }

    /// The single variable of a univariate expression, or `default` for a
    /// constant one.
    pub fn sole_var(&self, default: &str) -> Result<String> {
        let vars = self.free_vars();
        match vars.len() {
            0 => Ok(default.to_string()),
            1 => Ok(vars.into_iter().next().unwrap()),
            _ => Err(Error::Parameter(format!(
                "expected a univariate expression, found variables {:?} in `{self}`",
                vars
            ))),
        }
    }

    /// Renames the single free variable (if any) to `var`.
    pub fn univariate_in(&self, var: &str) -> Result<Expr> {
        let current = self.sole_var(var)?;
        Ok(if current == var { self.clone() } else { self.rename(&current, var) })
    }

    /// Node count, used to keep generated trees bounded.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) => 1,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                1 + a.size() + b.size()
            }
            Expr::Neg(a) | Expr::Func(_, a) => 1 + a.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) => 1,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Expr::Neg(a) | Expr::Func(_, a) => 1 + a.depth(),
        }
    }
}

impl From<f64> for Expr {
    fn from(value: f64) -> Self {
        Expr::Const(value)
    }
}

impl From<&str> for Expr {
    fn from(name: &str) -> Self {
        Expr::Var(name.to_string())
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl<R: Into<Expr>> std::ops::$trait<R> for Expr {
            type Output = Expr;
            fn $method(self, rhs: R) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs.into()))
            }
        }
    };
}

binary_op!(Add, add, Add);
binary_op!(Sub, sub, Sub);
binary_op!(Mul, mul, Mul);
binary_op!(Div, div, Div);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl std::str::FromStr for Expr {
    type Err = crate::error::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

// Binding strength used by the printer. Negative constants sit below
// everything so they are always parenthesized as operands.
const PREC_NEG_CONST: u8 = 0;
const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Const(v) if v.is_sign_negative() => PREC_NEG_CONST,
        Expr::Const(_) | Expr::Var(_) | Expr::Func(..) => PREC_ATOM,
        Expr::Add(..) | Expr::Sub(..) => PREC_SUM,
        Expr::Mul(..) | Expr::Div(..) => PREC_PRODUCT,
        Expr::Neg(_) => PREC_NEG,
        Expr::Pow(..) => PREC_POW,
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if precedence(e) < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Canonical text form. Parsing the output yields a structurally identical tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(v) => f.write_str(&crate::num::fmt_f64(*v)),
            Expr::Var(name) => f.write_str(name),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let op = if matches!(self, Expr::Add(..)) { "+" } else { "-" };
                write_operand(f, a, PREC_SUM)?;
                write!(f, " {op} ")?;
                let min = if matches!(**b, Expr::Neg(_)) { PREC_POW } else { PREC_PRODUCT };
                write_operand(f, b, min)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                let op = if matches!(self, Expr::Mul(..)) { "*" } else { "/" };
                write_operand(f, a, PREC_PRODUCT)?;
                write!(f, " {op} ")?;
                write_operand(f, b, PREC_POW)
            }
            Expr::Pow(a, b) => {
                write_operand(f, a, PREC_ATOM)?;
                f.write_str("^")?;
                write_operand(f, b, PREC_POW)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                if matches!(**a, Expr::Const(_)) {
                    write!(f, "({a})")
                } else {
                    write_operand(f, a, PREC_POW)
                }
            }
            Expr::Func(func, a) => write!(f, "{func}({a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing_uses_minimal_parentheses() {
        let cases = [
            "t^3 * sin(t2)",
            "2 - (t - 1)",
            "-t^2",
            "(-2)^t",
            "a / (b * c)",
            "a^b^c",
            "(a^b)^c",
            "-(2) * t",
            "t * (-x)",
            "2^(-t)",
        ];
        for text in cases {
            let e = parse(text).unwrap();
            assert_eq!(e.to_string(), text, "printing {e:?}");
        }
    }

    #[test]
    fn negative_constant_round_trips() {
        let e = Expr::num(-2.5) * Expr::var("t");
        assert_eq!(e.to_string(), "(-2.5) * t");
        assert_eq!(parse(&e.to_string()).unwrap(), e);
        let n = -Expr::num(2.0);
        assert_eq!(parse(&n.to_string()).unwrap(), n);
    }

    #[test]
    fn substitution_and_free_vars() {
        let f = parse("x^2 + sin(x)").unwrap();
        let composed = f.substitute("x", &parse("t^2").unwrap());
        assert_eq!(composed.free_vars().into_iter().collect::<Vec<_>>(), vec!["t"]);
        assert!(composed.depends_on("t"));
        assert!(!composed.depends_on("x"));
        assert_eq!(f.univariate_in("t").unwrap(), parse("t^2 + sin(t)").unwrap());
        assert!(parse("x*y").unwrap().sole_var("t").is_err());
        assert_eq!(parse("3").unwrap().sole_var("t").unwrap(), "t");
    }
}
