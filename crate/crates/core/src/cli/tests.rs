use super::*;
use crate::catalog::{build_affine_line, build_chart, build_nodal_conic, ChartId};
use crate::scalars::FieldSpec;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["diagres"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_job(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn json_report(args: &[&str]) -> (i32, Report) {
    let mut full = args.to_vec();
    full.extend_from_slice(&["--report", "json"]);
    let (code, out, err) = call(&full);
    assert!(err.is_empty(), "{err}");
    (code, Report::from_json(&out).unwrap())
}

#[test]
fn examples_pass_with_exit_zero() {
    let (code, r) = json_report(&["verify", "--example", "affine-line"]);
    assert_eq!(code, 0);
    assert!(r.passed && r.conclusion.is_some());

    let (code, r) = json_report(&["verify", "--example", "nodal-conic", "--field", "fp:101"]);
    assert_eq!(code, 0);
    assert_eq!(r.items.len(), 2);
    assert_eq!(r.field, "fp:101");
    assert!(r.items[1].notes.iter().any(|n| n.contains("length 1 resolution")));
    assert!(r.items[1].witness.as_ref().unwrap().passed);
}

#[test]
fn cycle_reports_every_chart() {
    let (code, r) = json_report(&["verify", "--example", "cycle", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r.items.len(), 16);
    assert!(r.conclusion.unwrap().contains("I_4"));
    let names: Vec<&str> = r.items.iter().map(|i| i.name.as_str()).collect();
    assert_eq!(names[0], "chart (1, 1) (diagonal)");
    assert_eq!(names[2], "chart (1, 3) (distant)");

    let (code, r) = json_report(&["verify", "--example", "cycle", "--n", "5", "--chart", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(r.items.len(), 1);
    assert_eq!(r.items[0].chart.as_ref().unwrap().id, ChartId::new(2, 3, 5).unwrap());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["verify"]).0, 2);
    assert_eq!(call(&["verify", "--example", "nowhere"]).0, 2);
    assert_eq!(call(&["verify", "--example", "cycle", "--n", "2"]).0, 2);
    assert_eq!(call(&["verify", "--example", "cycle", "--chart", "1,9"]).0, 2);
    assert_eq!(call(&["verify", "--example", "affine-line", "--field", "fp:100"]).0, 2);
    assert_eq!(call(&["export", "--example", "cycle"]).0, 2);
    assert_eq!(call(&["verify", "--job", "/nonexistent/job.json"]).0, 2);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn exported_jobs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["export", "--example", "affine-line"],
        vec!["export", "--example", "cycle", "--n", "4", "--chart", "4,1"],
        vec!["export", "--example", "cycle", "--n", "4", "--chart", "1,3"],
    ] {
        let (code, text, _) = call(&args);
        assert_eq!(code, 0);
        let file = JobFile::from_json(&text).unwrap();
        assert_eq!(JobFile::from_json(&file.to_json()).unwrap(), file);
        let path = write_job(&dir, "job.json", &text);
        let (code, r) = json_report(&["verify", "--job", &path]);
        assert_eq!(code, 0, "{args:?}: {:?}", r.items[0].first_failure);
    }
}

#[test]
fn exported_chart_matches_catalog_objects() {
    let id = ChartId::new(2, 2, 3).unwrap();
    let chart = build_chart(3, id, FieldSpec::Rationals).unwrap();
    let job = JobFile::from_chart(3, &chart).build(None, None).unwrap();
    assert_eq!(job.complex.ranks(), chart.complex.ranks());
    assert_eq!(job.complex.differentials(), chart.complex.differentials());
    assert_eq!(job.complex.all_labels(), chart.complex.all_labels());
    assert_eq!(job.witness.unwrap().models.len(), chart.witness.unwrap().models.len());
}

#[test]
fn field_override_rebuilds_certificates() {
    let e = build_nodal_conic(FieldSpec::Rationals).unwrap();
    let file = JobFile::from_entry(&e);
    let job = file.build(Some(FieldSpec::prime(7).unwrap()), None).unwrap();
    assert_eq!(job.ring.field().characteristic(), Some(7));
    let w = job.witness.unwrap();
    let r = crate::witness::verify_witness(&w, &job.complex, job.diagonal.as_ref().unwrap()).unwrap();
    assert!(r.passed);
}

#[test]
fn corrupt_jobs_exit_two_with_positions() {
    let dir = tempfile::TempDir::new().unwrap();
    let good = JobFile::from_entry(&build_affine_line(FieldSpec::Rationals).unwrap()).to_json();

    let truncated = write_job(&dir, "truncated.json", &good[..good.len() / 2]);
    let (code, _, err) = call(&["verify", "--job", &truncated]);
    assert_eq!(code, 2);
    assert!(err.contains("line "), "{err}");

    let mut value: serde_json::Value = serde_json::from_str(&good).unwrap();
    value["complex"]["differentials"]["1"][0][0] = "x1 +* y".into();
    let text = serde_json::to_string_pretty(&value).unwrap();
    let bad = write_job(&dir, "bad_poly.json", &text);
    let (code, _, err) = call(&["verify", "--job", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("complex.differentials.1[0][0]"), "{err}");
    let line = text.lines().position(|l| l.contains("x1 +* y")).unwrap() + 1;
    assert!(err.contains(&format!("line {line},")), "{err}");

    value["complex"]["differentials"]["1"][0][0] = "1".into();
    value["schema"] = 9.into();
    let wrong = write_job(&dir, "schema.json", &value.to_string());
    let (code, _, err) = call(&["verify", "--job", &wrong]);
    assert_eq!(code, 2);
    assert!(err.contains("schema 9"));

    value["schema"] = 1.into();
    value["ring"]["order"] = "deglex".into();
    let order = write_job(&dir, "order.json", &value.to_string());
    assert_eq!(call(&["verify", "--job", &order]).0, 2);

    value["ring"]["order"] = "grevlex".into();
    value["surprise"] = true.into();
    let extra = write_job(&dir, "extra.json", &value.to_string());
    assert_eq!(call(&["verify", "--job", &extra]).0, 2);
}

#[test]
fn failing_job_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let e = build_affine_line(FieldSpec::Rationals).unwrap();
    let mut value: serde_json::Value = serde_json::to_value(JobFile::from_entry(&e)).unwrap();
    value["diagonal"]["ideal"] = serde_json::json!(["x1 - 2*x2"]);
    let path = write_job(&dir, "wrong_ideal.json", &value.to_string());
    let (code, r) = json_report(&["verify", "--job", &path]);
    assert_eq!(code, 1);
    assert!(!r.passed && r.conclusion.is_none());
    assert!(r.items[0].first_failure.is_some());
    let (code, out, _) = call(&["verify", "--job", &path]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL]") && out.contains("first failure"));
}

#[test]
fn gb_prints_reduced_bases() {
    let dir = tempfile::tempdir().unwrap();
    let job = serde_json::json!({
        "schema": 1,
        "name": "twisted-cubic",
        "ring": {"variables": ["x", "y", "z", "w"]},
        "complex": {"lo": 0, "ranks": [1]},
        "expectation": "exact_everywhere",
        "groebner": {"rank": 1, "generators": [["x*z - y^2"], ["y*w - z^2"], ["x*w - y*z"]]}
    });
    let path = write_job(&dir, "cubic.json", &job.to_string());
    let (code, r) = json_report(&["gb", "--job", &path]);
    assert_eq!(code, 0);
    assert_eq!(r.items[0].groebner.as_ref().unwrap().len(), 3);
}

#[test]
fn exactness_jobs_flag_homology() {
    let dir = tempfile::tempdir().unwrap();
    let job = |d: &str| {
        serde_json::json!({
            "schema": 1,
            "name": "two-term",
            "ring": {"variables": ["x"]},
            "complex": {"lo": 0, "ranks": [1, 1], "differentials": {"1": [[d]]}},
            "expectation": "exact_everywhere"
        })
    };
    let unit = write_job(&dir, "unit.json", &job("1").to_string());
    assert_eq!(json_report(&["verify", "--job", &unit]).0, 0);
    let x = write_job(&dir, "x.json", &job("x").to_string());
    let (code, r) = json_report(&["verify", "--job", &x]);
    assert_eq!(code, 1);
    assert_eq!(r.items[0].nonexact, vec![0]);
}

#[test]
fn text_reports_are_deterministic() {
    let strip = |s: String| s.lines().filter(|l| !l.starts_with("elapsed")).collect::<Vec<_>>().join("\n");
    let a = strip(call(&["verify", "--example", "cycle", "--n", "3"]).1);
    let b = strip(call(&["verify", "--example", "cycle", "--n", "3"]).1);
    assert_eq!(a, b);
    assert!(a.contains("PASS: 9/9 passed"));

    let json = || {
        let mut r = json_report(&["verify", "--example", "cycle", "--n", "3"]).1;
        r.elapsed_ms = 0;
        let text = r.to_json();
        assert_eq!(Report::from_json(&text).unwrap(), r);
        text
    };
    assert_eq!(json(), json());
}

#[test]
fn witness_command_requires_a_witness() {
    assert_eq!(call(&["witness", "--example", "nodal-conic"]).0, 0);
    let dir = tempfile::tempdir().unwrap();
    let e = build_affine_line(FieldSpec::Rationals).unwrap();
    let mut file = JobFile::from_entry(&e);
    file.witness = None;
    let path = write_job(&dir, "plain.json", &file.to_json());
    assert_eq!(call(&["witness", "--job", &path]).0, 2);
    assert_eq!(call(&["verify", "--job", &path]).0, 0);
}
