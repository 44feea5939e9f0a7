use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn scenario(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn chainstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chainstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (String, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = chainstab(&full);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let value = serde_json::from_str(&text).unwrap();
    (text, value)
}

const SCENARIOS: [&str; 8] = [
    "all_twists.json",
    "endpoint.json",
    "genus_bound.json",
    "line_bundle_0_4.json",
    "middle.json",
    "semistable_kernel.json",
    "structure_sheaf.json",
    "two_component_twisted.json",
];

#[test]
fn every_scenario_checks_cleanly() {
    for name in SCENARIOS {
        let out = chainstab(&["check", &scenario(name)]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(stdout(&out).contains("verdict: "), "{name}");
    }
}

#[test]
fn expected_verdicts() {
    let cases = [
        ("all_twists.json", "strongly_unstable", "all_twists"),
        ("endpoint.json", "strongly_unstable", "endpoint_sections"),
        ("genus_bound.json", "strongly_unstable", "all_twists"),
        ("line_bundle_0_4.json", "strongly_unstable", "bigas_engine"),
        ("middle.json", "strongly_unstable", "middle_sections"),
        ("structure_sheaf.json", "w_stable", "bigas_sufficiency"),
    ];
    for (name, kind, criterion) in cases {
        let (_, report) = json(&["check", &scenario(name)]);
        assert_eq!(report["verdict"]["kind"], kind, "{name}");
        assert_eq!(report["verdict"]["criterion"], criterion, "{name}");
    }
}

#[test]
fn json_output_is_canonical_and_deterministic() {
    for name in SCENARIOS {
        for command in ["check", "polarize"] {
            let (text, value) = json(&[command, &scenario(name)]);
            let mut again = serde_json::to_string_pretty(&value).unwrap();
            again.push('\n');
            assert_eq!(text, again, "{command} {name}");
            let (second, _) = json(&[command, &scenario(name)]);
            assert_eq!(text, second, "{command} {name}");
        }
    }
}

#[test]
fn text_and_json_agree() {
    for name in SCENARIOS {
        let text = stdout(&chainstab(&["check", &scenario(name)]));
        let (_, report) = json(&["check", &scenario(name)]);
        let verdict = &report["verdict"];
        let line = format!(
            "verdict: {} ({})",
            verdict["kind"].as_str().unwrap(),
            verdict["criterion"].as_str().unwrap()
        );
        assert!(text.contains(&line), "{name}: missing {line:?}");
        let region = format!("region: {}", report["region"]["status"].as_str().unwrap());
        assert!(text.contains(&region), "{name}: missing {region:?}");
        if let Some(summary) = verdict["certificate"]["summary"].as_str() {
            assert!(text.contains(summary), "{name}");
        }
    }
}

#[test]
fn polarize_structure_sheaf() {
    let (_, out) = json(&["polarize", &scenario("structure_sheaf.json")]);
    assert_eq!(out["numerics"]["chi_global"], -3);
    assert_eq!(out["region"]["s_intervals"][0]["text"], "[1/3, 2/3]");
    assert_eq!(out["region"]["witness"], serde_json::json!(["1/2", "1/2"]));
}

#[test]
fn oracle_on_endpoint_scenario() {
    let (_, out) = json(&["--denominator", "60", "oracle", &scenario("endpoint.json")]);
    assert_eq!(out["denominator"], 60);
    assert_eq!(out["grid_size"], 59);
    assert_eq!(out["grid_point_count"], 0);
    assert_eq!(out["region_status"], "infeasible");
    assert_eq!(out["agreement"], true);
}

#[test]
fn oracle_sweeps_twists_for_all_twists_scenario() {
    let (_, out) = json(&[
        "--denominator",
        "12",
        "--twist-range",
        "2",
        "oracle",
        &scenario("all_twists.json"),
    ]);
    assert_eq!(out["twist_sweep"]["twists_checked"], 125);
    assert_eq!(out["twist_sweep"]["absence_count"], 0);
    assert_eq!(out["agreement"], true);
}

#[test]
fn schema_is_json() {
    let (_, schema) = json(&["schema"]);
    assert!(schema["properties"]["curve"].is_object());
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = std::env::temp_dir().join(format!("chainstab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        (
            "one_component.json",
            r#"{"curve": {"genera": [2]}, "subject": {"sheaf": {"multirank": [1], "multidegree": [0]}}}"#,
        ),
        (
            "genus_one.json",
            r#"{"curve": {"genera": [1, 2]}, "subject": {"sheaf": {"multirank": [1, 1], "multidegree": [0, 0]}}}"#,
        ),
        ("syntax.json", r#"{"curve": "#),
        (
            "unknown_field.json",
            r#"{"curve": {"genera": [2, 2]}, "colour": 1, "subject": {"sheaf": {"multirank": [1, 1], "multidegree": [0, 0]}}}"#,
        ),
        (
            "k_not_above_r.json",
            r#"{"curve": {"genera": [2, 2]}, "subject": {"pair": {"rank": 2, "dim_v": 2, "multidegree": [3, 3]}}}"#,
        ),
    ];
    for (name, body) in cases {
        let path = dir.join(name);
        std::fs::write(&path, body).unwrap();
        let out = chainstab(&["check", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(
            String::from_utf8_lossy(&out.stderr).starts_with("error: "),
            "{name}"
        );
        assert!(out.stdout.is_empty(), "{name}");
    }
    std::fs::remove_dir_all(&dir).unwrap();

    assert_eq!(
        chainstab(&["check", "/no/such/scenario.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(chainstab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(chainstab(&["--help"]).status.code(), Some(0));
}

#[test]
fn contradictory_flags_are_rejected() {
    let dir = std::env::temp_dir().join(format!("chainstab-cli-contra-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("contradiction.json");
    let body = r#"{
        "curve": {"genera": [2, 2]},
        "subject": {"pair": {
            "rank": 1, "dim_v": 3, "multidegree": [6, 6],
            "restriction_semistable": [true, false],
            "twisted_sections_nonzero": [true, false],
            "kernel_restriction_semistable": [true, true]
        }}
    }"#;
    std::fs::write(&path, body).unwrap();
    let out = chainstab(&["check", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(out.status.code(), Some(2));
}
