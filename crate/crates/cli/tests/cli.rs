//! End-to-end tests of the `zh` binary: output shapes, reference values,
//! determinism, and exit codes.

use std::process::{Command, Output};

fn zh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zh"))
        .args(args)
        .env("ZH_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn decompose_reference_example() {
    let out = zh(&["decompose", "--d", "3", "x1^2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let components = v["components"].as_array().unwrap();
    assert_eq!(components.len(), 2);
    // h2 = x1^2 - r^2/3, h0 = 1/3
    assert_eq!(components[0]["k"], 0);
    assert_eq!(components[0]["h"]["l"], 2);
    assert_eq!(components[1]["h"]["terms"][0]["c"], "1/3");
}

#[test]
fn decompose_output_round_trips_through_the_parser() {
    let out = zh(&[
        "decompose",
        "--d",
        "3",
        "3/2*x1^2*x2 - x3^3",
        "--format",
        "pretty",
    ]);
    assert!(out.status.success());
    // each pretty line is "k = <k>: <polynomial text>"
    for line in stdout_of(&out).lines() {
        let (_, poly) = line.split_once(": ").unwrap();
        zonal_harmonics::polyalg::HomogeneousPolynomial::parse(3, poly).unwrap();
    }
}

#[test]
fn bessel_reference_value() {
    // sqrt(2/pi) cos(1) = 0.4310988680...
    let out = zh(&["bessel", "--nu", "-1/2", "--at", "1.0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let want = (2.0 / std::f64::consts::PI).sqrt() * 1.0f64.cos();
    assert!((v["value"].as_f64().unwrap() - want).abs() < 1e-13);
}

#[test]
fn ft_sphere_methods_agree() {
    let mut values = Vec::new();
    for method in ["components", "laplacian", "oracle"] {
        let out = zh(&[
            "ft-sphere",
            "--d",
            "3",
            "--poly",
            "x1*x2",
            "--at",
            "0.5,-1,0.25",
            "--method",
            method,
        ]);
        assert!(out.status.success(), "method {method}");
        let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
        values.push((
            v["value_re"].as_f64().unwrap(),
            v["value_im"].as_f64().unwrap(),
        ));
    }
    for pair in values.windows(2) {
        assert!((pair[0].0 - pair[1].0).abs() < 1e-10);
        assert!((pair[0].1 - pair[1].1).abs() < 1e-10);
    }
}

#[test]
fn malformed_polynomial_is_a_usage_error_with_position() {
    let out = zh(&["decompose", "--d", "3", "x1^2 + x9"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("byte 8"), "missing position: {err}");
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = zh(&["verify", "--suite", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_and_is_byte_deterministic() {
    let args = ["verify", "--suite", "corollary4", "--seed", "7"];
    let first = zh(&args);
    assert_eq!(first.status.code(), Some(0));
    let second = zh(&args);
    assert_eq!(
        first.stdout, second.stdout,
        "verify output not deterministic"
    );
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&first)).unwrap();
    assert_eq!(report["summary"]["total"], report["summary"]["passed"]);
    // timing never appears in machine-readable output
    assert!(!stdout_of(&first).contains("wall_time"));
}

#[test]
fn verify_randomized_suite_depends_only_on_seed() {
    let a = zh(&[
        "verify", "--suite", "theorem1", "--seed", "3", "--cases", "5",
    ]);
    let b = zh(&[
        "verify", "--suite", "theorem1", "--seed", "3", "--cases", "5",
    ]);
    let c = zh(&[
        "verify", "--suite", "theorem1", "--seed", "4", "--cases", "5",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn verify_csv_schema() {
    let out = zh(&[
        "verify", "--suite", "genfunc", "--seed", "7", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "suite,case_id,param_json,residual,tolerance,pass"
    );
    assert!(lines.next().unwrap().starts_with("genfunc,genfunc-0000,"));
}

#[test]
fn verify_list_enumerates_all_suites() {
    let out = zh(&["verify", "--list"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        vec![
            "theorem1",
            "theorem2",
            "theorem3",
            "corollary3",
            "corollary4",
            "bochner",
            "periodicity",
            "genfunc"
        ]
    );
}

#[test]
fn zonal_expand_csv_and_taylor_file() {
    let dir = std::env::temp_dir().join("zh-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("taylor.txt");
    // phi(t) = 1 + 2t
    std::fs::write(&path, "1 0\n2 0\n").unwrap();
    let out = zh(&[
        "zonal-expand",
        "--alpha",
        "1/2",
        "--profile",
        &format!("taylor:{}", path.display()),
        "--terms",
        "1",
        "--format",
        "csv",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout_of(&out);
    assert!(text.starts_with("m,re,im,weight"));
    // f_1 = 2 / (2 Gamma(a+2)) with a = 1/2: Gamma(5/2) = 3 sqrt(pi)/4
    let f1: f64 = text
        .lines()
        .nth(2)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    let want = 1.0 / (0.75 * std::f64::consts::PI.sqrt());
    assert!((f1 - want).abs() < 1e-14, "{f1} vs {want}");
}

#[test]
fn zonal_expand_genfunc_profile() {
    let out = zh(&[
        "zonal-expand", "--alpha", "1", "--profile", "genfunc:0.4", "--terms", "6",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    // weight * f_m is the coefficient of Z^m: r^m C_m(1) = (m+1) 0.4^m here
    for (m, row) in rows.as_array().unwrap().iter().enumerate() {
        let c = row["re"].as_f64().unwrap() * row["weight"].as_f64().unwrap();
        let want = (m as f64 + 1.0) * 0.4f64.powi(m as i32);
        assert!((c - want).abs() < 1e-12, "m={m}: {c} vs {want}");
    }
}

#[test]
fn verify_output_independent_of_thread_count() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_zh"))
            .args(["verify", "--suite", "corollary4", "--seed", "11"])
            .env("ZH_THREADS", threads)
            .output()
            .expect("binary runs")
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn hankel_gaussian_value() {
    let out = zh(&[
        "hankel",
        "--nu",
        "3/2",
        "--profile",
        "gaussian",
        "--at",
        "2.0",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let want = 2f64.powf(-2.5) * (-1.0f64).exp();
    assert!((v["value"].as_f64().unwrap() - want).abs() < 1e-9);
}

#[test]
fn csv_rejected_where_it_has_no_form() {
    let out = zh(&["bessel", "--nu", "1/2", "--at", "1.0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}
