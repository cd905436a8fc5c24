//! `gfd`: evaluate generalized fractional derivatives, compare the named
//! operators, run property audits, print Taylor series and solve the linear
//! equation. All results are CSV on standard output or `--out`.
//!
//! Exit codes: 0 success, 1 usage, 2 domain error, 3 failed audit under `--strict`.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gfd::audit::Suite;
use gfd::num::Grid;
use gfd::{Alpha, EvalMethod, Expr, WeightSpec};

#[derive(Debug, Parser)]
#[command(name = "gfd", version, about = "Generalized fractional derivatives as CSV")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one operator at a point or over a grid.
    Eval(EvalArgs),
    /// Print the operator applied to an expression, symbolically.
    Deriv(DerivArgs),
    /// Caputo, Khalil, Anderson, Guebbai and the alpha-weighted GFD side by side.
    Compare(CompareArgs),
    /// Run a property audit suite.
    Audit(AuditArgs),
    /// Coefficients of the fractional Taylor series.
    Taylor(TaylorArgs),
    /// Solve a D^alpha y + b y = c in closed form and by Runge-Kutta.
    Ode(OdeArgs),
    /// Residuals of a candidate solution of one of the PDEs.
    PdeCheck(PdeArgs),
}

#[derive(Debug, Args)]
struct Output {
    /// Write to a file instead of standard output (`-` or `stdout` for standard output).
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Op {
    Gfd,
    Khalil,
    Katugampola,
    Anderson,
    Guebbai,
    Camrud,
    Caputo,
    /// `w t^(ceil(alpha) - alpha) f^(ceil(alpha))`, for any alpha > 0.
    Higher,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_parser = parse_expr)]
    expr: Expr,
    #[arg(long, value_enum, default_value = "gfd")]
    op: Op,
    #[arg(long, value_parser = parse_alpha)]
    alpha: Alpha,
    #[arg(long, default_value = "one", value_parser = parse_weight)]
    weight: WeightSpec,
    #[arg(long, default_value = "exact", value_parser = parse_method)]
    method: EvalMethod,
    /// Single evaluation point.
    #[arg(long, conflicts_with = "grid", required_unless_present = "grid", allow_negative_numbers = true)]
    t: Option<f64>,
    #[arg(long, value_parser = parse_grid)]
    grid: Option<Grid>,
    /// Lower limit of the Caputo integral.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    lower: f64,
    #[arg(long, default_value_t = 1000)]
    caputo_steps: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct DerivArgs {
    #[arg(long, value_parser = parse_expr)]
    expr: Expr,
    #[arg(long, value_parser = parse_alpha)]
    alpha: Alpha,
    #[arg(long, default_value = "one", value_parser = parse_weight)]
    weight: WeightSpec,
    /// Also tabulate the result on this grid.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<Grid>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long, default_value = "sin(2*t)", value_parser = parse_expr)]
    expr: Expr,
    #[arg(long, default_value = "0.75", value_parser = parse_alpha)]
    alpha: Alpha,
    #[arg(long, default_value = "0.1:10:0.01", value_parser = parse_grid)]
    grid: Grid,
    #[arg(long, default_value = "exact", value_parser = parse_method)]
    method: EvalMethod,
    #[arg(long, default_value_t = 1000)]
    caputo_steps: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = gfd::audit::DEFAULT_SEED)]
    seed: u64,
    /// Exit with status 3 if any PASS-expected property fails.
    #[arg(long)]
    strict: bool,
    /// Identities suite only; defaults to 0.1, 0.2, ..., 1.0.
    #[arg(long, value_parser = parse_alpha)]
    alpha: Option<Alpha>,
    /// Identities suite only.
    #[arg(long, default_value = "alpha", value_parser = parse_weight)]
    weight: WeightSpec,
    /// Identities suite only.
    #[arg(long, default_value = "0.1:10:0.1", value_parser = parse_grid)]
    grid: Grid,
    /// Identities suite only.
    #[arg(long, default_value = "exact", value_parser = parse_method)]
    method: EvalMethod,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct TaylorArgs {
    #[arg(long, value_parser = parse_expr)]
    expr: Expr,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x0: f64,
    #[arg(long, value_parser = parse_alpha)]
    alpha: Alpha,
    #[arg(long, default_value = "one", value_parser = parse_weight)]
    weight: WeightSpec,
    /// Highest derivative order.
    #[arg(long, short = 'n', default_value_t = 10)]
    order: u32,
    /// Also report the partial sum at this point.
    #[arg(long, allow_negative_numbers = true)]
    at: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct OdeArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    b: f64,
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    c: f64,
    #[arg(long, default_value = "0.5", value_parser = parse_alpha)]
    alpha: Alpha,
    /// Must not depend on t.
    #[arg(long, default_value = "one", value_parser = parse_weight)]
    weight: WeightSpec,
    #[arg(long, default_value_t = 0.01)]
    t0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    y0: f64,
    #[arg(long, default_value_t = 2.0)]
    t_end: f64,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    /// Print every k-th step.
    #[arg(long, default_value_t = 1)]
    every: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Candidate {
    Pde1,
    Pde1Printed,
    Pde2,
    Pde2Printed,
    Pde2FifteenthRoot,
}

#[derive(Debug, Args)]
struct PdeArgs {
    /// pde1 | pde2 | pde1-frac | pde2-frac, or an expression in
    /// x, t, u, u_x, u_t, u_xx, u_tt, u_xt.
    #[arg(long, default_value = "pde1", value_parser = parse_pde)]
    equation: gfd::solver::Pde,
    /// Candidate u(x, t).
    #[arg(long, value_parser = parse_expr, conflicts_with = "candidate", required_unless_present = "candidate")]
    expr: Option<Expr>,
    /// A built-in candidate instead of --expr.
    #[arg(long, value_enum)]
    candidate: Option<Candidate>,
    /// Separation constant for the pde2 candidates.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    k: f64,
    /// Applied to both x and t.
    #[arg(long, default_value = "0.5:2:0.1", value_parser = parse_grid)]
    grid: Grid,
    #[command(flatten)]
    output: Output,
}

fn parse_expr(s: &str) -> Result<Expr, String> {
    gfd::parse(s).map_err(|e| e.to_string())
}

fn parse_alpha(s: &str) -> Result<Alpha, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    Alpha::new(v).map_err(|e| e.to_string())
}

fn parse_weight(s: &str) -> Result<WeightSpec, String> {
    s.parse().map_err(|e: gfd::Error| e.to_string())
}

fn parse_method(s: &str) -> Result<EvalMethod, String> {
    s.parse().map_err(|e: gfd::Error| e.to_string())
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.parse().map_err(|e: gfd::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: gfd::Error| e.to_string())
}

fn parse_pde(s: &str) -> Result<gfd::solver::Pde, String> {
    gfd::solver::Pde::parse(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
