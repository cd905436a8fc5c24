use std::fmt::{self, Write as _};
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;

use gfd::audit::{self, Suite};
use gfd::num::fmt_f64;
use gfd::operators::{caputo, gfd_expr, gfd_higher, named_derivative};
use gfd::partial::Point;
use gfd::report::write_reports;
use gfd::solver::{self, candidates, LinearFracODE};
use gfd::taylor::taylor_build;
use gfd::{Error, Expr, OperatorKind, WeightSpec};

use crate::{
    AuditArgs, Candidate, Command, CompareArgs, DerivArgs, EvalArgs, Op, OdeArgs, Output, PdeArgs, TaylorArgs,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Io(io::Error),
    /// Output was written but a PASS-expected property failed.
    Strict,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Strict => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o: {e}"),
            CliError::Strict => f.write_str("a PASS-expected property failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::Domain { .. }
            | Error::Unbound(_)
            | Error::Positivity { .. }
            | Error::Singular { .. }
            | Error::NoWitness { .. }
            | Error::Blowup { .. } => CliError::Domain(message),
            _ => CliError::Usage(message),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Eval(args) => emit(&args.output, eval(&args)?),
        Command::Deriv(args) => emit(&args.output, deriv(&args)?),
        Command::Compare(args) => emit(&args.output, compare(&args)?),
        Command::Audit(args) => {
            let (text, ok) = audit(&args)?;
            emit(&args.output, text)?;
            if args.strict && !ok {
                return Err(CliError::Strict);
            }
            Ok(())
        }
        Command::Taylor(args) => emit(&args.output, taylor(&args)?),
        Command::Ode(args) => emit(&args.output, ode(&args)?),
        Command::PdeCheck(args) => emit(&args.output, pde_check(&args)?),
    }
}

/// Writes the finished document in one piece; nothing is written on error.
fn emit(output: &Output, text: String) -> Result<()> {
    match output.out.as_deref() {
        None | Some("-") | Some("stdout") => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => fs::write(Path::new(path), text)?,
    }
    Ok(())
}

fn points(t: Option<f64>, grid: Option<&gfd::num::Grid>) -> Vec<f64> {
    match (t, grid) {
        (Some(t), _) => vec![t],
        (None, Some(g)) => g.points(),
        (None, None) => Vec::new(),
    }
}

fn eval(args: &EvalArgs) -> Result<String> {
    let kind = match args.op {
        Op::Gfd => Some(OperatorKind::Gfd(args.weight.clone())),
        Op::Khalil => Some(OperatorKind::Khalil),
        Op::Katugampola => Some(OperatorKind::Katugampola),
        Op::Anderson => Some(OperatorKind::AndersonUlness),
        Op::Guebbai => Some(OperatorKind::GuebbaiGhiat),
        Op::Camrud => Some(OperatorKind::Camrud),
        Op::Caputo => None,
        Op::Higher => None,
    };
    let mut out = String::from("t,value\n");
    for t in points(args.t, args.grid.as_ref()) {
        let value = match (&kind, args.op) {
            (Some(kind), _) => named_derivative(kind, &args.expr, args.alpha, t, args.method)?,
            (None, Op::Caputo) => caputo(&args.expr, args.alpha, args.lower, t, args.caputo_steps)?,
            (None, _) => gfd_higher(&args.expr, args.alpha, &args.weight, t)?,
        };
        writeln!(out, "{},{}", fmt_f64(t), fmt_f64(value)).expect("write to String");
    }
    Ok(out)
}

fn deriv(args: &DerivArgs) -> Result<String> {
    let d = gfd_expr(&args.expr, args.alpha, &args.weight)?;
    let Some(grid) = &args.grid else {
        return Ok(format!("derivative\n{d}\n"));
    };
    let mut out = format!("# D^{} {} = {d} (w={})\nt,value\n", args.alpha, args.expr, args.weight);
    for t in grid.points() {
        let value = d.eval_at("t", t)?;
        writeln!(out, "{},{}", fmt_f64(t), fmt_f64(value)).expect("write to String");
    }
    Ok(out)
}

/// Blank for values the operator does not define at this point.
fn cell(value: gfd::Result<f64>) -> Result<String> {
    match value {
        Ok(v) => Ok(fmt_f64(v)),
        Err(Error::Positivity { .. } | Error::Singular { .. }) => Ok(String::new()),
        Err(e) => Err(e.into()),
    }
}

fn compare(args: &CompareArgs) -> Result<String> {
    if args.alpha.value() >= 1.0 {
        return Err(CliError::Usage(format!("compare needs alpha in (0, 1), got {}", args.alpha)));
    }
    if args.grid.start <= 0.0 {
        return Err(CliError::Domain(format!("compare needs a grid starting above 0, got {}", args.grid.start)));
    }
    let kinds = [
        OperatorKind::CaputoL1 {
            lower: 0.0,
            steps: args.caputo_steps,
        },
        OperatorKind::Khalil,
        OperatorKind::AndersonUlness,
        OperatorKind::GuebbaiGhiat,
        OperatorKind::Gfd(WeightSpec::AlphaConst),
    ];
    let mut out = String::from("t,caputo,khalil,anderson,guebbai,gfd_alpha\n");
    for t in args.grid.points() {
        out.push_str(&fmt_f64(t));
        for kind in &kinds {
            out.push(',');
            out.push_str(&cell(named_derivative(kind, &args.expr, args.alpha, t, args.method))?);
        }
        out.push('\n');
    }
    Ok(out)
}

fn audit(args: &AuditArgs) -> Result<(String, bool)> {
    let reports = match args.suite {
        Suite::Ring => audit::ring_suite(args.seed)?,
        Suite::Partial => audit::partial_suite(args.seed)?,
        Suite::Identities => {
            let alphas = args.alpha.map_or_else(audit::tenth_orders, |a| vec![a]);
            audit::identities_suite(&alphas, &args.weight, &args.grid.points(), args.method)?
        }
        Suite::Theorems => audit::theorems_suite()?,
    };
    let mut buf = Vec::new();
    write_reports(&reports, &mut buf)?;
    let text = String::from_utf8(buf).expect("reports are UTF-8");
    Ok((text, audit::all_expected_pass(&reports)))
}

fn taylor(args: &TaylorArgs) -> Result<String> {
    let series = taylor_build(&args.expr, args.x0, args.alpha, &args.weight, args.order)?;
    let mut out = format!(
        "# regime={} alpha={} x0={} w={} order={}\n",
        series.regime,
        args.alpha,
        fmt_f64(args.x0),
        args.weight,
        args.order
    );
    if let Some(x) = args.at {
        writeln!(out, "# partial_sum({})={}", fmt_f64(x), fmt_f64(series.eval(x)?)).expect("write to String");
    }
    out.push_str("i,exponent,coefficient\n");
    for (i, term) in series.terms.iter().enumerate() {
        writeln!(out, "{i},{},{}", fmt_f64(term.exponent), fmt_f64(term.coefficient)).expect("write to String");
    }
    Ok(out)
}

fn ode(args: &OdeArgs) -> Result<String> {
    if args.every == 0 {
        return Err(CliError::Usage("--every must be at least 1".into()));
    }
    let weight = args.weight.constant_value(args.alpha.value())?;
    let ode = LinearFracODE::new(args.a, args.b, args.c, args.alpha, weight, args.t0, args.y0)?;
    let closed = solver::solve_linear_closed(&ode);
    let trajectory = solver::solve_linear_numeric(&ode, args.t_end, args.step)?;
    let mut out = format!("# closed form: y = {closed}\nt,y,closed_form\n");
    let last = trajectory.len() - 1;
    for (k, &(t, y)) in trajectory.iter().enumerate() {
        if k % args.every != 0 && k != last {
            continue;
        }
        let exact = closed.eval_at("t", t)?;
        writeln!(out, "{},{},{}", fmt_f64(t), fmt_f64(y), fmt_f64(exact)).expect("write to String");
    }
    Ok(out)
}

fn candidate(c: Candidate, k: f64) -> Expr {
    match c {
        Candidate::Pde1 => candidates::pde1(),
        Candidate::Pde1Printed => candidates::pde1_printed(),
        Candidate::Pde2 => candidates::pde2(k),
        Candidate::Pde2Printed => candidates::pde2_printed(k),
        Candidate::Pde2FifteenthRoot => candidates::pde2_fifteenth_root(k),
    }
}

fn pde_check(args: &PdeArgs) -> Result<String> {
    let u = match (&args.expr, args.candidate) {
        (Some(e), _) => e.clone(),
        (None, Some(c)) => candidate(c, args.k),
        (None, None) => return Err(CliError::Usage("one of --expr or --candidate is required".into())),
    };
    let axis = args.grid.points();
    let mut grid = Vec::with_capacity(axis.len() * axis.len());
    for &x in &axis {
        for &t in &axis {
            grid.push(Point::new([("x", x), ("t", t)])?);
        }
    }
    let report = solver::pde_residual(&args.equation, &u, &grid);
    if report.residuals.is_empty() {
        let reason = report.notes.first().cloned().unwrap_or_default();
        return Err(CliError::Domain(format!("no grid point admits a residual: {reason}")));
    }
    let mut out = format!(
        "# equation={} u={u} max_abs_residual={}\n",
        args.equation,
        fmt_f64(report.max_abs_residual)
    );
    for note in &report.notes {
        writeln!(out, "# {note}").expect("write to String");
    }
    out.push_str(&report.coords.join(","));
    out.push_str(",residual\n");
    for (p, r) in report.points.iter().zip(&report.residuals) {
        let coords: Vec<String> = p.iter().copied().map(fmt_f64).collect();
        writeln!(out, "{},{}", coords.join(","), fmt_f64(*r)).expect("write to String");
    }
    Ok(out)
}
