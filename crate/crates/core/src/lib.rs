//! Generalized fractional derivatives `D^α f(t) = w(t, α) t^(1-α) f'(t)`:
//! symbolic expressions, the operator family and its named members, audits
//! of the algebraic identities, fractional Taylor series and solvers for the
//! linear equations built on the operator.
//!
//! ```
//! use gfd::operators::gfd;
//! use gfd::{parse, Alpha, EvalMethod, WeightSpec};
//!
//! let f = parse("t").unwrap();
//! let d = gfd(&f, Alpha::new(0.5).unwrap(), &WeightSpec::One, 4.0, EvalMethod::ExactReduction).unwrap();
//! assert_eq!(d, 2.0);
//! ```

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod error;
pub mod expr;
pub mod num;
pub mod operators;
pub mod partial;
pub mod report;
pub mod ring;
pub mod sample;
pub mod solver;
pub mod taylor;

pub use error::{Error, ParseError, Result};
pub use expr::{parse, Bindings, Expr, Func};
pub use operators::{Alpha, EvalMethod, OperatorKind, WeightSpec};
pub use report::{PropertyId, PropertyReport, Verdict};

/// The guide's snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/expressions.md")]
    struct Expressions;
    #[doc = include_str!("../../../book/src/operators.md")]
    struct Operators;
    #[doc = include_str!("../../../book/src/ring.md")]
    struct Ring;
    #[doc = include_str!("../../../book/src/partial.md")]
    struct Partial;
    #[doc = include_str!("../../../book/src/taylor.md")]
    struct Taylor;
    #[doc = include_str!("../../../book/src/equations.md")]
    struct Equations;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
