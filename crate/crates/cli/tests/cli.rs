use std::process::{Command, Output};

use horocurve_cli::emit::read_csv;

fn horocurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horocurve")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// (t, class) pairs from `classify` output.
fn classified(o: &Output) -> Vec<(f64, String)> {
    stdout(o)
        .lines()
        .filter_map(|l| l.strip_prefix("t = "))
        .map(|l| {
            let (t, c) = l.split_once("  ").unwrap();
            (t.trim().parse().unwrap(), c.trim().to_string())
        })
        .collect()
}

#[test]
fn example1_involute_has_one_cusp_near_zero() {
    let o = horocurve(&["classify", "--curve", "example1", "--object", "involute", "--sign", "plus", "--const-c", "-1", "--domain=-1,1"]);
    assert!(o.status.success(), "{o:?}");
    let pts = classified(&o);
    assert_eq!(pts.len(), 1, "{pts:?}");
    assert!(pts[0].0.abs() < 1e-12);
    assert_eq!(pts[0].1, "(2,3)-cusp");
}

#[test]
fn example2_involute_has_four_cusps() {
    let o = horocurve(&["classify", "--curve", "example2", "--object", "involute", "--sign", "plus"]);
    assert!(o.status.success(), "{o:?}");
    let pts = classified(&o);
    let want = [-std::f64::consts::FRAC_PI_2, 0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI];
    assert_eq!(pts.len(), 4, "{pts:?}");
    for ((t, c), w) in pts.iter().zip(want) {
        assert!((t - w).abs() < 1e-9, "{t} vs {w}");
        assert_eq!(c, "(2,3)-cusp");
    }
}

#[test]
fn sample_writes_exact_rows() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.csv");
    let h = std::f64::consts::FRAC_PI_2;
    let dom = format!("--domain={},{}", -h, h);
    let o = horocurve(&["sample", "--curve", "example1", "--steps", "3", &dom, "--out", p.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let tracks = read_csv(std::fs::File::open(&p).unwrap()).unwrap();
    let labels: Vec<&str> = tracks.iter().map(|(l, _)| l.as_str()).collect();
    assert_eq!(labels, ["gamma", "nu", "mu", "curvature"]);
    let want = [[1.5, 0.5, 1.0], [1.0, 0.0, 0.0], [1.5, 0.5, -1.0]];
    for (r, w) in tracks[0].1.iter().zip(want) {
        for k in 0..3 {
            assert!((r.x[k] - w[k]).abs() < 1e-15, "{r:?}");
        }
    }
}

#[test]
fn svg_stays_inside_the_disk_and_marks_cusps() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("inv.svg");
    let o = horocurve(&["classify", "--curve", "example2", "--object", "involute", "--sign", "plus", "--out", p.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let svg = std::fs::read_to_string(&p).unwrap();
    assert_eq!(svg.matches("<g stroke=").count(), 4);
    let mut n = 0;
    for line in svg.lines().filter(|l| l.starts_with("<polyline")) {
        let pts = line.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        for xy in pts.split_whitespace() {
            let (a, b) = xy.split_once(',').unwrap();
            let (a, b): (f64, f64) = (a.parse().unwrap(), b.parse().unwrap());
            assert!(a * a + b * b < 1.0);
            n += 1;
        }
    }
    assert!(n > 2000);
}

#[test]
fn json_output_carries_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    let r = dir.path().join("report.json");
    let o = horocurve(&[
        "parallel", "--curve", "example1", "--sign", "plus", "--const-c", "0.5", "--anchor", "0",
        "--out", p.to_str().unwrap(), "--report", r.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{o:?}");
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    let sol = &v["report"]["solution"];
    assert_eq!(sol["kind"], "lambda");
    let lo = sol["validity"]["lo"].as_f64().unwrap();
    assert!((lo - 0.5f64.ln().asin()).abs() < 1e-5, "{lo}");
    assert!(!sol["truncations"].as_array().unwrap().is_empty());
    assert_eq!(v["tracks"].as_array().unwrap().len(), 3);
    let rep: serde_json::Value = serde_json::from_slice(&std::fs::read(&r).unwrap()).unwrap();
    assert_eq!(rep["tolerances"]["zero"], 1e-9);
    assert_eq!(rep["outputs"].as_array().unwrap().len(), 2);
}

#[test]
fn curvature_spec_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("curve.json");
    std::fs::write(
        &spec,
        r#"{"kind":"curvature","m":"cos(t)","n":"cos(t)","frame":[1,0,0,0,-1,0,0,0,-1],"domain":[0,3.141592653589793]}"#,
    )
    .unwrap();
    let o = horocurve(&["evolute", "--curve", spec.to_str().unwrap(), "--sign", "minus", "--steps", "11"]);
    assert!(o.status.success(), "{o:?}");
    let tracks = read_csv(o.stdout.as_slice()).unwrap();
    for r in &tracks[1].1 {
        let s = r.t.sin();
        let want = [1.5 - s / 2.0 + s * s / 4.0, 1.0 - s / 2.0 + s * s / 4.0, -s / 2.0 + 0.5];
        for k in 0..3 {
            assert!((r.x[k] - want[k]).abs() < 1e-6, "{r:?}");
        }
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["classify", "--curve", "example1", "--object", "spiral"][..],
        &["parallel", "--curve", "example1", "--sign", "plus", "--const-c", "1", "--constant", "-2"],
        &["parallel", "--curve", "example1", "--sign", "plus", "--lambda0", "1"],
        &["involute", "--curve", "example2", "--sign", "plus", "--const-c", "1"],
        &["sample", "--curve", "{\"kind\":\"spline\"}"],
        &["verify", "--suite", "13"],
    ] {
        assert_eq!(horocurve(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn numerical_failures_exit_with_one() {
    let bad = r#"{"kind":"parametric","gamma":["2","1","1"],"nu":["0","1","0"],"domain":[0,1]}"#;
    let o = horocurve(&["sample", "--curve", bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("frame check"));
    let o = horocurve(&["parallel", "--curve", "example1", "--sign", "plus", "--constant", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_passes_on_a_clean_build() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("verify.json");
    let o = horocurve(&["verify", "--suite", "all", "--report", r.to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 12, "{out}");
    assert_eq!(o.status.code(), Some(0), "{out}");
    let rep: serde_json::Value = serde_json::from_slice(&std::fs::read(&r).unwrap()).unwrap();
    assert_eq!(rep["acceptance"].as_array().unwrap().len(), 12);
}
