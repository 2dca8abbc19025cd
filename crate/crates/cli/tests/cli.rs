use std::process::{Command, Output};

fn sr_qsd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sr-qsd"))
        .args(args)
        .env_remove("QSD_SR_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn pdf_table_header_and_signs() {
    let out = sr_qsd(&["pdf", "--A", "20", "--bounds", "u1,l5", "--grid-points", "256", "--format", "csv"]);
    let (header, rows) = csv(&stdout(&out));
    assert_eq!(header, ["x", "q", "u1", "u1_err", "l5", "l5_err"]);
    assert_eq!(rows.len(), 256);
    for r in &rows {
        assert!(r[3] >= 0.0, "u1_err {}", r[3]);
        assert!(r[5] <= 0.0, "l5_err {}", r[5]);
        assert_eq!(r[3], r[2] - r[1]);
    }
}

#[test]
fn floats_carry_seventeen_digits() {
    let text = stdout(&sr_qsd(&["lambda", "--A", "20"]));
    let cell = text.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    assert_eq!(cell.split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
    assert!((cell.parse::<f64>().unwrap() - 0.058_856_1).abs() < 1e-6);
}

#[test]
fn lambda_at_critical_threshold() {
    let text = stdout(&sr_qsd(&["lambda", "--A", "10.240465"]));
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |n: &str| row[header.iter().position(|h| *h == n).unwrap()];
    assert!((col("lambda").parse::<f64>().unwrap() - 0.125).abs() < 1e-4);
    assert!(col("residual").parse::<f64>().unwrap().abs() <= 1e-12);
}

#[test]
fn several_thresholds_get_a_leading_column() {
    let (header, rows) = csv(&stdout(&sr_qsd(&["cdf", "--A", "15", "--A", "30", "--grid-points", "8"])));
    assert_eq!(&header[..4], ["A", "x", "Q", "H"]);
    assert_eq!(rows.len(), 16);
    assert_eq!(rows[0][0], 15.0);
    assert_eq!(rows[15][0], 30.0);
    assert_eq!(rows[15][1], 30.0);
}

#[test]
fn json_metadata() {
    let text = stdout(&sr_qsd(&["sadd", "--A", "20", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["metadata"]["A"], 20.0);
    assert_eq!(v["metadata"]["regime"], "real-order");
    assert!(v["metadata"]["versions"]["sr-qsd"].is_string());
    assert_eq!(v["columns"][2]["name"], "sadd_exact");
    let exact = v["columns"][2]["values"][0].as_f64().unwrap();
    assert!((exact - 2.65116).abs() < 1e-4);
}

#[test]
fn gap_rows_satisfy_the_chain() {
    let (header, rows) = csv(&stdout(&sr_qsd(&["gap", "--A", "15", "--A", "60", "--grid-kind", "linear"])));
    assert_eq!(header, ["A", "x_star", "x_star_upper", "grid_sup", "sup_bound_exact", "sup_bound"]);
    for r in rows {
        assert!(r[1] <= r[2]);
        assert!(r[3] <= r[4] && r[4] <= r[5]);
    }
}

#[test]
fn validate_is_reproducible() {
    let args = ["validate", "--A", "20", "--paths", "2000", "--seed", "7", "--t-end", "30"];
    let a = sr_qsd(&args);
    let b = sr_qsd(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("check,A,n_paths,survivors,statistic,limit,pass\nkilled_ks,"));
}

#[test]
fn sequential_and_parallel_agree() {
    let args = ["bounds", "--A", "20", "--grid-points", "32"];
    let par = stdout(&sr_qsd(&args));
    let seq = stdout(&sr_qsd(&[&args[..], &["--sequential"]].concat()));
    assert_eq!(par, seq);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.csv");
    let out = sr_qsd(&["lambda", "--A", "5", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().starts_with("A,lambda,"));
}

#[test]
fn exit_codes() {
    assert_eq!(sr_qsd(&["lambda", "--A", "-1"]).status.code(), Some(1));
    assert_eq!(sr_qsd(&["lambda"]).status.code(), Some(1));
    assert_eq!(sr_qsd(&["pdf", "--A", "20", "--grid-points", "1"]).status.code(), Some(1));
    assert_eq!(sr_qsd(&["pdf", "--A", "5", "--bounds", "l4"]).status.code(), Some(1));
    assert_eq!(sr_qsd(&["pdf", "--A", "20", "--bounds", "nope"]).status.code(), Some(1));
    assert_eq!(sr_qsd(&["frobnicate"]).status.code(), Some(1));
    let starved = sr_qsd(&["pdf", "--A", "20", "--grid-points", "3", "--max-subdivisions", "1"]);
    assert_eq!(starved.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&starved.stderr).contains("quadrature"));
    assert_eq!(sr_qsd(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_thread_count() {
    let out = Command::new(env!("CARGO_BIN_EXE_sr-qsd"))
        .args(["lambda", "--A", "5"])
        .env("QSD_SR_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
