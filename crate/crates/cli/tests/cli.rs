use std::process::{Command, Output};

fn gfd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gfd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn rows(out: &Output) -> Vec<Vec<String>> {
    stdout(out)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn eval_cubic_at_one() {
    let out = gfd(&["eval", "--expr", "t^3", "--op", "gfd", "--alpha", "0.5", "--weight", "one", "--t", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "t,value\n1,3\n");
}

#[test]
fn eval_limit_path_agrees_with_exact() {
    let exact = gfd(&["eval", "--expr", "t^3", "--alpha", "0.5", "--t", "1"]);
    let limit = gfd(&["eval", "--expr", "t^3", "--alpha", "0.5", "--t", "1", "--method", "limit:1e-6"]);
    let v: f64 = rows(&limit)[0][1].parse().unwrap();
    assert!(exact.status.success() && (v - 3.0).abs() < 1e-8);
}

#[test]
fn eval_higher_order() {
    let out = gfd(&["eval", "--expr", "t^2", "--op", "higher", "--alpha", "1.5", "--t", "1"]);
    assert_eq!(stdout(&out), "t,value\n1,2\n");
}

#[test]
fn compare_khalil_of_t_at_four() {
    let out = gfd(&["compare", "--expr", "t", "--alpha", "0.5", "--grid", "4:4:1"]);
    assert!(out.status.success());
    assert_eq!(rows(&out)[0][2], "2");
}

#[test]
fn compare_blanks_guebbai_where_undefined() {
    let out = gfd(&["compare", "--grid", "0.1:3:0.1"]);
    let rows = rows(&out);
    assert_eq!(rows.len(), 30);
    assert!(rows.iter().all(|r| r.len() == 6));
    // sin(2t) decreases past t = pi/4.
    assert!(rows.iter().any(|r| r[4].is_empty()));
    assert!(rows.iter().any(|r| !r[4].is_empty()));
    assert!(stdout(&out).lines().all(|l| !l.contains("NaN")));
}

#[test]
fn compare_rejects_bad_inputs() {
    assert_eq!(gfd(&["compare", "--alpha", "1"]).status.code(), Some(1));
    let out = gfd(&["compare", "--grid", "0:1:0.1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty(), "no partial rows");
}

#[test]
fn exit_codes() {
    assert_eq!(gfd(&["eval", "--expr", "t", "--alpha", "0.5"]).status.code(), Some(1));
    assert_eq!(gfd(&["eval", "--expr", "t +", "--alpha", "0.5", "--t", "1"]).status.code(), Some(1));
    assert_eq!(gfd(&["eval", "--expr", "t", "--alpha", "0.5", "--t", "-1"]).status.code(), Some(2));
    assert_eq!(gfd(&["eval", "--expr", "sqrt(t - 2)", "--alpha", "0.5", "--t", "1"]).status.code(), Some(2));
    assert_eq!(gfd(&["audit", "--suite", "everything"]).status.code(), Some(1));
    assert_eq!(gfd(&["--help"]).status.code(), Some(0));
}

#[test]
fn audit_ring_verdicts() {
    let out = gfd(&["audit", "--suite", "ring", "--seed", "42", "--strict"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("property_id,t,lhs,rhs,abs_residual\n"));
    let summaries: Vec<&str> = text.lines().filter(|l| l.starts_with("# ")).collect();
    assert_eq!(summaries.len(), 8);
    for id in ["linearity", "leibniz", "quotient"] {
        let line = summaries.iter().find(|l| l.contains(&format!("\"property_id\":\"{id}\""))).unwrap();
        assert!(line.contains("\"verdict\":\"PASS\""), "{line}");
    }
    assert_eq!(summaries.iter().filter(|l| l.contains("\"verdict\":\"AUDIT\"")).count(), 5);
}

#[test]
fn audit_is_deterministic_per_seed() {
    let a = gfd(&["audit", "--suite", "partial", "--seed", "7"]);
    let b = gfd(&["audit", "--suite", "partial", "--seed", "7"]);
    let c = gfd(&["audit", "--suite", "partial", "--seed", "8"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn audit_identities_four_pass_rows() {
    let out = gfd(&["audit", "--suite", "identities", "--weight", "alpha", "--strict"]);
    assert!(out.status.success());
    let passes = stdout(&out).lines().filter(|l| l.contains("\"verdict\":\"PASS\"")).count();
    assert_eq!(passes, 4);
}

#[test]
fn identities_with_time_dependent_weight_is_usage_error() {
    let out = gfd(&["audit", "--suite", "identities", "--weight", "power-t"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn audit_theorems_rolle_witness() {
    let out = gfd(&["audit", "--suite", "theorems"]);
    assert!(stdout(&out).contains("f=(t - 1) * (t - 3) on [1, 3], alpha=0.5, w=one: c=2 "));
}

#[test]
fn taylor_exp_rows() {
    let out = gfd(&["taylor", "--expr", "exp(x)", "--x0", "0", "--alpha", "1", "--order", "5"]);
    let rows = rows(&out);
    let mut factorial = 1.0;
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            factorial *= i as f64;
        }
        assert_eq!(row[0], i.to_string());
        let c: f64 = row[2].parse().unwrap();
        assert!((c - 1.0 / factorial).abs() < 1e-15);
    }
    assert_eq!(rows.len(), 6);
}

#[test]
fn taylor_rejects_time_dependent_weight() {
    let out = gfd(&["taylor", "--expr", "exp(x)", "--alpha", "0.5", "--weight", "power-t"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ode_closed_form_and_trajectory() {
    let out = gfd(&["ode", "--t0", "0.01", "--t-end", "1", "--step", "0.001", "--every", "100"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# closed form: y = "));
    let rows = rows(&out);
    assert_eq!(rows.first().unwrap()[0], "0.01");
    assert_eq!(rows.last().unwrap()[0], "1");
    for row in rows {
        let y: f64 = row[1].parse().unwrap();
        let exact: f64 = row[2].parse().unwrap();
        assert!((y - exact).abs() < 1e-6);
    }
}

#[test]
fn ode_step_too_large_is_usage_error() {
    assert_eq!(gfd(&["ode", "--step", "0.5"]).status.code(), Some(1));
}

#[test]
fn pde_check_candidates() {
    let max = |out: &Output| -> f64 {
        let text = stdout(out);
        let line = text.lines().next().unwrap();
        line.rsplit("max_abs_residual=").next().unwrap().parse().unwrap()
    };
    assert!(max(&gfd(&["pde-check", "--equation", "pde1", "--candidate", "pde1"])) < 1e-8);
    assert!(max(&gfd(&["pde-check", "--equation", "pde1", "--candidate", "pde1-printed"])) > 1e-2);
    assert!(max(&gfd(&["pde-check", "--equation", "pde2", "--candidate", "pde2", "--grid", "1:2:0.1"])) < 1e-6);
    let custom = gfd(&["pde-check", "--equation", "u_t - u_xx", "--expr", "exp(-t) * sin(x)"]);
    assert!(max(&custom) < 1e-12);
    assert_eq!(rows(&custom).len(), 16 * 16);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("gfd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("deriv.csv");
    let out = gfd(&["deriv", "--expr", "t^2", "--alpha", "0.5", "--grid", "1:2:1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.ends_with("t,value\n1,2\n2,5.656854249492381\n"), "{text}");
    std::fs::remove_dir_all(dir).unwrap();
}
