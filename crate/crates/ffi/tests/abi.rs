use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use chainstab_ffi::*;

const LINE_BUNDLE: &str = r#"{"curve": {"genera": [2, 2]}, "subject": {"sheaf": {"multirank": [1, 1], "multidegree": [0, 4]}}}"#;
const STRUCTURE_SHEAF: &str = r#"{"curve": {"genera": [2, 2]}, "subject": {"sheaf": {"multirank": [1, 1], "multidegree": [0, 0]}}}"#;
const ENDPOINT: &str = r#"{"curve": {"genera": [2, 2]}, "subject": {"pair": {"rank": 1, "dim_v": 3, "multidegree": [6, 6],
    "restriction_semistable": [true, false], "twisted_sections_nonzero": [true, false], "ker_rho_nonzero": [true, false]}}}"#;

fn parse(json: &str) -> *mut ChainstabScenario {
    let text = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { chainstab_scenario_from_json(text.as_ptr(), &mut out) };
    assert_eq!(status, ChainstabStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> Option<String> {
    let p = chainstab_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    chainstab_string_free(p);
    s
}

#[test]
fn check_reports_verdict_and_json() {
    let scenario = parse(LINE_BUNDLE);
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(chainstab_check(scenario, &mut report), ChainstabStatus::Ok);
        let mut verdict = ChainstabVerdict::Inconclusive;
        assert_eq!(
            chainstab_report_verdict(report, &mut verdict),
            ChainstabStatus::Ok
        );
        assert_eq!(verdict, ChainstabVerdict::StronglyUnstable);

        let mut json = ptr::null_mut();
        assert_eq!(
            chainstab_report_to_json(report, &mut json),
            ChainstabStatus::Ok
        );
        let text = take_string(json);
        let expected = chainstab::report::to_canonical_string(&chainstab::report::report(
            &chainstab::stability::analyze_scenario(
                &chainstab::Scenario::from_json(LINE_BUNDLE).unwrap(),
            )
            .unwrap(),
        ));
        assert_eq!(text, expected);
        chainstab_report_free(report);
        chainstab_scenario_free(scenario);
    }
    assert_eq!(last_error(), None);
}

#[test]
fn polarize_and_oracle_return_json() {
    let scenario = parse(STRUCTURE_SHEAF);
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(chainstab_polarize(scenario, &mut json), ChainstabStatus::Ok);
        assert!(take_string(json).contains("\"text\": \"[1/3, 2/3]\""));

        assert_eq!(
            chainstab_oracle(scenario, 12, 0, &mut json),
            ChainstabStatus::Ok
        );
        assert!(take_string(json).contains("\"grid_point_count\": 5"));

        assert_eq!(
            chainstab_oracle(scenario, 1, 0, &mut json),
            ChainstabStatus::InvalidInput
        );
        assert!(last_error().is_some());
        assert_eq!(
            chainstab_oracle(scenario, 12, -1, &mut json),
            ChainstabStatus::InvalidArgument
        );
        chainstab_scenario_free(scenario);
    }
}

#[test]
fn endpoint_oracle_finds_nothing() {
    let scenario = parse(ENDPOINT);
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(
            chainstab_oracle(scenario, 60, 3, &mut json),
            ChainstabStatus::Ok
        );
        let text = take_string(json);
        assert!(text.contains("\"grid_point_count\": 0"));
        assert!(text.contains("\"agreement\": true"));
        chainstab_scenario_free(scenario);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(
            chainstab_scenario_from_json(ptr::null(), &mut out),
            ChainstabStatus::InvalidArgument
        );
        assert!(out.is_null());
        assert!(last_error().unwrap().contains("null"));

        let text = CString::new("{\"curve\": {\"genera\": [2]}}").unwrap();
        assert_eq!(
            chainstab_scenario_from_json(text.as_ptr(), &mut out),
            ChainstabStatus::InvalidInput
        );
        assert!(out.is_null());

        let text = CString::new(LINE_BUNDLE).unwrap();
        assert_eq!(
            chainstab_scenario_from_json(text.as_ptr(), ptr::null_mut()),
            ChainstabStatus::InvalidArgument
        );

        let mut report = ptr::null_mut();
        assert_eq!(
            chainstab_check(ptr::null(), &mut report),
            ChainstabStatus::InvalidArgument
        );

        let contradictory = parse(
            r#"{"curve": {"genera": [2, 2]}, "subject": {"pair": {"rank": 1, "dim_v": 3, "multidegree": [6, 6],
                "restriction_semistable": [true, false], "twisted_sections_nonzero": [true, false],
                "kernel_restriction_semistable": [true, true]}}}"#,
        );
        assert_eq!(
            chainstab_check(contradictory, &mut report),
            ChainstabStatus::InvalidInput
        );
        assert!(report.is_null());
        chainstab_scenario_free(contradictory);

        chainstab_scenario_free(ptr::null_mut());
        chainstab_report_free(ptr::null_mut());
        chainstab_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("include")
            .join("chainstab.h"),
    )
    .unwrap();
    for name in [
        "chainstab_scenario_from_json",
        "chainstab_scenario_free",
        "chainstab_check",
        "chainstab_report_free",
        "chainstab_report_verdict",
        "chainstab_report_to_json",
        "chainstab_polarize",
        "chainstab_oracle",
        "chainstab_string_free",
        "chainstab_last_error",
        "CHAINSTAB_STATUS_INVALID_INPUT = 2",
        "typedef struct ChainstabScenario ChainstabScenario;",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles and runs a small C program against the static library when a C
/// compiler is on the path.
#[test]
fn c_program_links_and_runs() {
    let compiler = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&compiler).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libchainstab_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let binary = std::env::temp_dir().join(format!("chainstab-smoke-{}", std::process::id()));
    let status = Command::new(&compiler)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&binary)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&binary).output().unwrap();
    let _ = std::fs::remove_file(&binary);
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
