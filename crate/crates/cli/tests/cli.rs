use std::process::{Command, Output};

use serde_json::Value;

fn abflux(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abflux")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV document, split on commas; no field here is quoted.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn stderr_error(o: &Output) -> Value {
    let v: Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).expect("stderr is JSON");
    v["error"].clone()
}

#[test]
fn standard_spectrum_rows() {
    let o = abflux(&["spectrum", "--alpha", "0.3", "--B", "1", "--xi", "0", "--eta", "0", "--zeta", "0", "--lambda-max", "8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("lambda,z,source,sectors,multiplicity\n"));
    let got: Vec<(f64, u32)> = rows(&text).iter().map(|r| (r[0].parse().unwrap(), r[4].parse().unwrap())).collect();
    // Landau levels: m_cap = 3 stable sectors plus the critical sector -1.
    let want = [(1.0, 4), (1.6, 1), (3.0, 4), (3.6, 2), (5.0, 4), (5.6, 3), (7.0, 4), (7.6, 4)];
    assert_eq!(got.len(), want.len(), "{text}");
    for ((l, m), (wl, wm)) in got.iter().zip(want) {
        assert!((l - wl).abs() < 1e-12);
        assert_eq!(*m, wm, "multiplicity at {l}");
    }
}

#[test]
fn infinity_starts_below_landau() {
    let o = abflux(&["spectrum", "--bc", "inf", "--alpha", "0.3", "--B", "1", "--lambda-max", "4"]);
    assert!(o.status.success());
    let first = &rows(&stdout(&o))[0];
    assert_eq!(first[0], "-0.4");
    assert_eq!(first[3], "-1");
}

#[test]
fn conflicting_charts_exit_one() {
    let o = abflux(&["spectrum", "--xi", "0", "--u", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_error(&o)["kind"], "config");
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_flags_exit_one() {
    for args in [
        &["spectrum", "--bc", "zero"][..],
        &["spectrum", "--xi", "0", "--zeta", "-1"],
        &["spectrum", "--alpha", "1.5", "--xi", "0"],
        &["sweep", "--dir", "1,0", "--t", "-1:1:5"],
        &["sweep", "--dir", "1,0,0", "--t", "1:-1:5"],
        &["verify", "nothing"],
        &["spectrum", "--xi", "0", "--format", "svg"],
    ] {
        let o = abflux(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert_eq!(stderr_error(&o)["exit_code"], 1, "{args:?}");
    }
}

#[test]
fn first_figure_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.svg");
    let o = abflux(&[
        "sweep",
        "--dir",
        "0.95,0.25,0.25",
        "--t",
        "-5:5:501",
        "--alpha",
        "0.3",
        "--B",
        "1",
        "--format",
        "svg",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"version="1.1""#));
    assert!(svg.contains("stroke-dasharray"));
    assert!(svg.matches("<polyline").count() >= 10);
    assert!(!svg.contains("href"), "no external assets");
}

#[test]
fn sweeps_anchor_at_ab_values() {
    let want = [1.0, 1.6, 3.0, 3.6, 5.0, 5.6, 7.0, 7.6, 9.0, 9.6];
    for dir in ["0.95,0.25,0.25", "0.95,-0.25,0"] {
        let o = abflux(&["sweep", "--dir", dir, "--t", "-5:5:501", "--alpha", "0.3", "--B", "1"]);
        assert!(o.status.success());
        let text = stdout(&o);
        assert!(text.starts_with("t,branch_id,lambda\n"));
        let mut at_zero: Vec<f64> = rows(&text).iter().filter(|r| r[0] == "0").map(|r| r[2].parse().unwrap()).collect();
        at_zero.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(at_zero.len(), want.len(), "{dir}: {at_zero:?}");
        for (a, b) in at_zero.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{dir}: {a} vs {b}");
        }
    }
}

#[test]
fn two_step_sweep_has_two_columns() {
    let o = abflux(&["sweep", "--dir", "1,1,1", "--t", "-1:1:2"]);
    assert!(o.status.success());
    let mut ts: Vec<String> = rows(&stdout(&o)).into_iter().map(|r| r[0].clone()).collect();
    ts.dedup();
    assert_eq!(ts, ["-1", "1"]);
}

#[test]
fn csv_is_byte_stable_with_lf() {
    let args = ["sweep", "--dir", "0.95,-0.25,0", "--t", "-2:2:41"];
    let (a, b) = (abflux(&args), abflux(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.contains(&b'\r'));
    let spec = ["spectrum", "--u", "0.4", "--v", "-0.2", "--w-re", "0.3", "--w-im", "0.1"];
    assert_eq!(abflux(&spec).stdout, abflux(&spec).stdout);
}

/// Minimal check against the schema printed by `--help`: required keys at
/// the top level, in `config`, and in every record and diagnostic.
#[test]
fn json_matches_help_schema() {
    let help = stdout(&abflux(&["--help"]));
    let start = help.find("JSON output schema").unwrap();
    let schema: Value = serde_json::from_str(help[start..].split_once('\n').unwrap().1.trim()).unwrap();
    let required = |v: &Value| -> Vec<String> {
        v["required"].as_array().unwrap().iter().map(|k| k.as_str().unwrap().to_string()).collect()
    };
    let record_kinds = schema["properties"]["records"]["items"]["oneOf"].as_array().unwrap().clone();

    let dir = tempfile::tempdir().unwrap();
    let runs: [(&str, Vec<&str>); 4] = [
        ("spectrum", vec!["spectrum", "--xi", "-1", "--eta", "0.5", "--zeta", "0.3", "--lambda-max", "6"]),
        ("sweep", vec!["sweep", "--dir", "1,0.5,0.2", "--t", "-1:1:5"]),
        ("verify", vec!["verify", "digamma"]),
        ("green", vec!["green", "--m", "-1", "--z-re", "0.2", "--r1", "1", "--r2", "2", "--terms", "50"]),
    ];
    for (kind, mut args) in runs {
        let path = dir.path().join(format!("{kind}.json"));
        let p = path.to_str().unwrap().to_string();
        args.extend(["--format", "json", "--output", &p]);
        let o = abflux(&args);
        assert!(o.status.success(), "{kind}: {}", String::from_utf8_lossy(&o.stderr));
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for key in required(&schema) {
            assert!(doc.get(&key).is_some(), "{kind}: missing {key}");
        }
        assert_eq!(doc.as_object().unwrap().len(), 3);
        for key in required(&schema["properties"]["config"]) {
            assert!(doc["config"].get(&key).is_some(), "{kind}: config missing {key}");
        }
        assert_eq!(doc["config"]["command"], kind);
        let item = record_kinds.iter().find(|k| k["title"] == kind).unwrap();
        let records = doc["records"].as_array().unwrap();
        assert!(!records.is_empty(), "{kind}");
        for r in records {
            for key in required(item) {
                assert!(r.get(&key).is_some(), "{kind}: record missing {key}");
            }
        }
        for d in doc["diagnostics"].as_array().unwrap() {
            assert!(d.get("level").is_some() && d.get("message").is_some());
        }
    }
}

#[test]
fn verify_exit_code_follows_checks() {
    let o = abflux(&["verify", "unitary"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(rows(&stdout(&o)).iter().all(|r| r.last().unwrap() == "true"));

    let o = abflux(&["verify", "green"]);
    let any_failed = stdout(&o).lines().skip(1).any(|l| l.ends_with(",false"));
    assert_eq!(o.status.code(), Some(if any_failed { 3 } else { 0 }));
    if any_failed {
        assert_eq!(stderr_error(&o)["kind"], "verify");
    }
}

#[test]
fn green_series_tracks_closed_form() {
    let o = abflux(&["green", "--m", "1", "--z-re", "1.5", "--r1", "0.8", "--r2", "2.0", "--terms", "400"]);
    assert!(o.status.success());
    let r = &rows(&stdout(&o))[0];
    let rel: f64 = r[9].parse().unwrap();
    assert!(rel < 1e-2, "relative difference {rel}");
}
