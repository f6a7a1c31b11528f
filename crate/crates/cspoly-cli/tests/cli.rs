//! End-to-end tests of the binary: exit codes, column gating, output
//! determinism across thread counts, and CSV/JSON value agreement.

use std::collections::HashMap;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cspoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

fn cell<'a>(header: &[String], row: &'a [String], name: &str) -> &'a str {
    let idx = header.iter().position(|h| h == name).unwrap();
    &row[idx]
}

#[test]
fn eval_gating_at_turning_point() {
    let out = run(&[
        "eval", "--alpha", "0.5", "--beta", "1.5", "--n", "80", "--t", "1.0",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    assert!(!cell(&header, row, "rel_err_uniform").is_empty());
    assert!(cell(&header, row, "rel_err_outer").is_empty());
    assert!(cell(&header, row, "rel_err_inner").is_empty());
    assert!(cell(&header, row, "outer_sign").is_empty());
    assert!(cell(&header, row, "inner_log10").is_empty());
}

#[test]
fn eval_outer_error_consistent_with_convergence_table() {
    let conv = run(&[
        "convergence",
        "--alpha",
        "0.3",
        "--beta",
        "1.7",
        "--n-list",
        "100,200",
        "--t",
        "1.5",
    ]);
    assert!(conv.status.success());
    let (ch, crows) = parse_csv(&stdout(&conv));
    let conv_err: f64 = cell(&ch, &crows[1], "err_outer").parse().unwrap();

    let ev = run(&[
        "eval", "--alpha", "0.3", "--beta", "1.7", "--n", "200", "--t", "1.5",
    ]);
    let (eh, erows) = parse_csv(&stdout(&ev));
    let eval_err: f64 = cell(&eh, &erows[0], "rel_err_outer").parse().unwrap();
    assert_eq!(conv_err, eval_err);
    assert!(eval_err <= 1e-3);
}

#[test]
fn invalid_parameters_exit_one_without_rows() {
    let out = run(&[
        "eval", "--alpha", "1.5", "--beta", "0.5", "--n", "10", "--t", "1.0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let unknown = run(&["eval", "--alpha", "0.3", "--beta", "1.7", "--frobnicate"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn convergence_validation() {
    let dec = run(&[
        "convergence",
        "--alpha",
        "0.3",
        "--beta",
        "1.7",
        "--n-list",
        "200,100",
        "--t",
        "1.5",
    ]);
    assert_eq!(dec.status.code(), Some(1));
    let small = run(&[
        "convergence",
        "--alpha",
        "0.3",
        "--beta",
        "1.7",
        "--n-list",
        "10,20",
        "--t",
        "1.5",
    ]);
    assert_eq!(small.status.code(), Some(1));
}

#[test]
fn convergence_shape_and_ratio_band() {
    let out = run(&[
        "convergence",
        "--alpha",
        "0.3",
        "--beta",
        "1.7",
        "--n-list",
        "100,200,400,800",
        "--t",
        "1.5",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 4);
    assert!(cell(&header, &rows[0], "ratio_outer").is_empty());
    for row in &rows[1..] {
        let r: f64 = cell(&header, row, "ratio_outer").parse().unwrap();
        assert!((1.6..=2.6).contains(&r), "outer ratio {r}");
    }
    // inner column is empty at t = 1.5
    for row in &rows {
        assert!(cell(&header, row, "err_inner").is_empty());
    }

    // at the turning point the uniform column shows the same decay band
    let out = run(&[
        "convergence",
        "--alpha",
        "0.3",
        "--beta",
        "1.7",
        "--n-list",
        "100,200,400,800",
        "--t",
        "1.0",
    ]);
    let (header, rows) = parse_csv(&stdout(&out));
    for row in &rows[1..] {
        let r: f64 = cell(&header, row, "ratio_uniform").parse().unwrap();
        assert!((1.6..=2.6).contains(&r), "uniform ratio {r}");
    }
}

#[test]
fn output_identical_across_thread_counts_and_reruns() {
    let base = [
        "sweep", "--alpha", "0.3", "--beta", "1.7", "--n", "120", "--t-min", "0.1", "--t-max",
        "2.0", "--t-step", "0.05",
    ];
    let mut with_one = base.to_vec();
    with_one.extend(["--threads", "1"]);
    let mut with_four = base.to_vec();
    with_four.extend(["--threads", "4"]);
    let a = run(&with_one);
    let b = run(&with_four);
    let c = run(&with_four);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&b), stdout(&c));
}

#[test]
fn sweep_row_count_and_monotone_t() {
    let out = run(&[
        "sweep", "--alpha", "0.3", "--beta", "1.7", "--n", "200", "--t-min", "0.1", "--t-max",
        "2.0", "--t-step", "0.01",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 191);
    let mut prev = f64::NEG_INFINITY;
    for row in &rows {
        let t: f64 = cell(&header, row, "t").parse().unwrap();
        assert!(t > prev);
        prev = t;
    }
}

#[test]
fn zeros_histogram_counts_and_symmetry() {
    let out = run(&[
        "zeros", "--alpha", "0.5", "--beta", "1.5", "--n", "400", "--c", "1",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    let mut hist = Vec::new();
    let mut zeros = 0usize;
    let mut ks = None;
    for row in &rows {
        match cell(&header, row, "section") {
            "hist" => hist.push(cell(&header, row, "value").parse::<i64>().unwrap()),
            "zero" => zeros += 1,
            "ks" => ks = Some(cell(&header, row, "value").parse::<f64>().unwrap()),
            _ => {}
        }
    }
    assert_eq!(zeros, 400);
    assert_eq!(hist.len(), 64);
    assert_eq!(hist.iter().sum::<i64>(), 400);
    for k in 0..32 {
        assert!((hist[k] - hist[63 - k]).abs() <= 1, "bin {k}");
    }
    let ks = ks.expect("ks row present");
    assert!(ks > 0.0 && ks < 0.06);
}

#[test]
fn zeros_ks_shrinks_with_degree() {
    let ks_of = |n: &str| {
        let out = run(&[
            "zeros", "--alpha", "0.5", "--beta", "1.5", "--n", n, "--c", "1",
        ]);
        let (header, rows) = parse_csv(&stdout(&out));
        rows.iter()
            .find(|r| cell(&header, r, "section") == "ks")
            .map(|r| cell(&header, r, "value").parse::<f64>().unwrap())
            .unwrap()
    };
    assert!(ks_of("400") < ks_of("100"));
}

#[test]
fn sum_lemma_expression_argument() {
    let out = run(&[
        "sum-lemma",
        "--beta",
        "1.5",
        "--n-list",
        "2500,10000",
        "--x",
        "2*sqrt(n)",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 2);
    let x0: f64 = cell(&header, &rows[0], "x").parse().unwrap();
    assert_eq!(x0, 2.0 * 2500f64.sqrt());
    let gap0: f64 = cell(&header, &rows[0], "gap").parse().unwrap();
    let gap1: f64 = cell(&header, &rows[1], "gap").parse().unwrap();
    assert!(gap1 <= gap0 / 3.0, "gap(10000)={gap1} vs gap(2500)={gap0}");
}

#[test]
fn hermite_check_max_deviation() {
    let out = run(&["hermite-check", "--n-max", "50"]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 51);
    let max_dev = rows
        .iter()
        .map(|r| cell(&header, r, "max_rel_dev").parse::<f64>().unwrap())
        .fold(0.0f64, f64::max);
    assert!(max_dev <= 1e-10, "max_rel_dev {max_dev:e}");
}

#[test]
fn json_and_csv_encode_identical_values() {
    let csv_out = run(&[
        "eval", "--alpha", "0.3", "--beta", "1.7", "--n", "150", "--t", "0.5", "--format", "csv",
    ]);
    let json_out = run(&[
        "eval", "--alpha", "0.3", "--beta", "1.7", "--n", "150", "--t", "0.5", "--format", "json",
    ]);
    assert!(csv_out.status.success() && json_out.status.success());
    let (header, rows) = parse_csv(&stdout(&csv_out));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    assert!(parsed.get("config").is_some());
    let jrows = parsed["rows"].as_array().unwrap();
    assert_eq!(jrows.len(), rows.len());
    for (jrow, crow) in jrows.iter().zip(rows.iter()) {
        let jmap: &serde_json::Map<String, serde_json::Value> = jrow.as_object().unwrap();
        for (name, cval) in header.iter().zip(crow.iter()) {
            let jval = &jmap[name];
            if cval.is_empty() {
                assert!(jval.is_null(), "{name}: csv empty but json {jval}");
            } else if let Some(jf) = jval.as_f64() {
                let cf: f64 = cval.parse().unwrap();
                assert_eq!(jf, cf, "{name}: {jf} vs {cf}");
            } else {
                assert_eq!(jval.as_str().unwrap(), cval, "{name}");
            }
        }
    }
}

#[test]
fn json_key_order_follows_columns() {
    let out = run(&[
        "eval", "--alpha", "0.3", "--beta", "1.7", "--n", "100", "--t", "1.5", "--format", "json",
    ]);
    let text = stdout(&out);
    let row_line = text.lines().find(|l| l.contains("\"exact_sign\"")).unwrap();
    let pos = |k: &str| row_line.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("n") < pos("big_n"));
    assert!(pos("big_n") < pos("t"));
    assert!(pos("exact_sign") < pos("exact_log10"));
    assert!(pos("uniform_log10") < pos("rel_err_uniform"));
    assert!(pos("rel_err_outer") < pos("inner_sign"));
}

#[test]
fn raw_scale_interprets_position_as_x() {
    let raw = run(&[
        "eval", "--alpha", "0.3", "--beta", "1.7", "--n", "100", "--x", "15.0", "--scale", "raw",
    ]);
    assert!(raw.status.success());
    let (header, rows) = parse_csv(&stdout(&raw));
    let x: f64 = cell(&header, &rows[0], "x").parse().unwrap();
    let t: f64 = cell(&header, &rows[0], "t").parse().unwrap();
    let big_n: f64 = cell(&header, &rows[0], "big_n").parse().unwrap();
    assert!((x - 15.0).abs() <= 1e-12);
    assert!((t - 15.0 / big_n.sqrt()).abs() <= 1e-12);
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("cspoly-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zeros.csv");
    let to_file = run(&[
        "zeros",
        "--alpha",
        "0.3",
        "--beta",
        "1.7",
        "--n",
        "50",
        "--c",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    let direct = run(&[
        "zeros", "--alpha", "0.3", "--beta", "1.7", "--n", "50", "--c", "1",
    ]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&direct));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn multi_degree_multi_position_grid() {
    let out = run(&[
        "eval",
        "--alpha",
        "0.3",
        "--beta",
        "1.7",
        "--n-list",
        "60,80",
        "--t-grid",
        "0.5,1.0,1.5",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 6);
    let mut seen: HashMap<(String, String), usize> = HashMap::new();
    for row in &rows {
        let key = (
            cell(&header, row, "n").to_string(),
            cell(&header, row, "t").to_string(),
        );
        *seen.entry(key).or_default() += 1;
    }
    assert_eq!(seen.len(), 6);
}
