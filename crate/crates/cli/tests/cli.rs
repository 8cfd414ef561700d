//! Binary-level tests: exit-code contract, serialization schema and
//! round-trip stability, sweep determinism, and the verify filter.

use std::process::{Command, Output};

use quartics::report::CurveReport;
use quartics_cli::output;

fn quartics(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartics"))
        .args(args)
        .env_remove("QUARTICS_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn report_generic_member_is_transitive() {
    let out = quartics(&["report", "--pencil", "1", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let report: CurveReport = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert!(report.transitive);
    assert_eq!(report.wp_count, 24);
    assert_eq!(report.group_order, 24);
    assert_eq!(report.signature.genus, 0);
    assert_eq!(report.signature.periods, vec![2, 2, 2, 3]);
    assert!(report.hurwitz_bound_ok);
}

#[test]
fn report_fields_in_schema_order() {
    let out = quartics(&["report", "--pencil", "1", "0"]);
    let text = stdout_of(&out);
    let fields = [
        "\"curve_id\"",
        "\"smooth\"",
        "\"group_order\"",
        "\"wp_count\"",
        "\"weight_histogram\"",
        "\"orbit_sizes\"",
        "\"transitive\"",
        "\"signature\"",
        "\"hurwitz_bound_ok\"",
        "\"points\"",
    ];
    let mut last = 0;
    for f in fields {
        let pos = text.find(f).unwrap_or_else(|| panic!("missing field {f}"));
        assert!(pos > last || last == 0, "field {f} out of order");
        last = pos;
    }
}

#[test]
fn report_json_round_trips_byte_identical() {
    let out = quartics(&["report", "--named", "c3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let text = text.trim();
    let parsed: CurveReport = serde_json::from_str(text).unwrap();
    let re_emitted = output::report_to_json(&parsed);
    assert_eq!(text, re_emitted, "serialization is not a fixed point");
}

#[test]
fn report_singular_member_exits_two() {
    let out = quartics(&["report", "--pencil", "2", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout_of(&out);
    assert!(text.contains("\"smooth\":false"));
    assert!(text.contains("\"witness\""));
}

#[test]
fn report_named_c3_histogram() {
    let out = quartics(&["report", "--named", "c3"]);
    assert_eq!(out.status.code(), Some(0));
    let report: CurveReport = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(report.wp_count, 12);
    assert_eq!(report.weight_histogram.get("2"), Some(&12));
    assert_eq!(report.orbit_sizes, vec![12]);
}

#[test]
fn report_text_format() {
    let out = quartics(&["report", "--named", "fermat", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("wp count     12"));
    assert!(text.contains("transitive"));
}

#[test]
fn sweep_rows_in_grid_order_with_status() {
    let out = quartics(&["sweep", "--points", "0.5 1.0 2.0 3.0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], output::SWEEP_HEADER);
    assert!(lines[1].starts_with("5e-1,0,true,24,1,true,0,ok"));
    assert!(lines[2].starts_with("1e0,0,true,24,1,true,0,ok"));
    assert!(lines[3].contains("singular"));
    assert!(lines[4].starts_with("3e0,0,true,12,1,true,12,ok"));
}

#[test]
fn sweep_bytes_independent_of_worker_count() {
    let a = quartics(&["sweep", "--points", "0.7 1.3:0.4 -0.6", "--workers", "1"]);
    let b = quartics(&["sweep", "--points", "0.7 1.3:0.4 -0.6", "--workers", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "sweep output depends on worker count");
}

#[test]
fn sweep_grid_spec() {
    let out = quartics(&["sweep", "--grid", "0.5:1.5:3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert_eq!(text.trim().lines().count(), 4);
    for line in text.trim().lines().skip(1) {
        assert!(line.ends_with("ok"));
        assert!(line.contains(",true,24,1,true,0,"));
    }
}

#[test]
fn verify_subset_passes() {
    let out = quartics(&["verify", "--only", "weights"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("PASS weights_sum"));
    assert!(text.contains("1/1 criteria passed"));
}

#[test]
fn verify_with_corrupted_cluster_eps_fails() {
    let out = quartics(&["verify", "--only", "weights", "--cluster-eps", "1e-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("FAIL weights_sum"));
}

#[test]
fn usage_errors_exit_sixty_four() {
    assert_eq!(quartics(&["report"]).status.code(), Some(64));
    assert_eq!(
        quartics(&["report", "--named", "bring"]).status.code(),
        Some(64)
    );
    assert_eq!(quartics(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(
        quartics(&["sweep", "--points", "1.0", "--workers", "0"])
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn config_file_and_env_var() {
    let dir = std::env::temp_dir().join("quartics-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.json");
    std::fs::write(&path, r#"{"workers": 2, "format": "text"}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_quartics"))
        .args(["report", "--named", "fermat"])
        .env("QUARTICS_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // the config's text format applies
    assert!(stdout_of(&out).contains("wp count     12"));
}
