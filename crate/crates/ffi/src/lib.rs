//! C ABI for `chainstab`.
//!
//! Scenarios and reports are opaque handles. Every function returns a
//! [`ChainstabStatus`]; on failure a message is available from
//! [`chainstab_last_error`] on the same thread. Strings handed out by this
//! library are NUL-terminated JSON and must be released with
//! [`chainstab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chainstab::oracle::{cross_validate, GridSpec};
use chainstab::stability::analyze_scenario;
use chainstab::{report, Error, Report, Scenario, VerdictKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainstabStatus {
    Ok = 0,
    /// A null pointer, non-UTF-8 text or an out-of-range number.
    InvalidArgument = 1,
    /// The scenario was rejected: malformed, unsupported or contradictory.
    InvalidInput = 2,
    Internal = 3,
    /// A Rust panic was caught at the boundary.
    Panic = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainstabVerdict {
    WSemistable = 0,
    WStable = 1,
    StronglyUnstable = 2,
    Inconclusive = 3,
}

/// A parsed scenario.
pub struct ChainstabScenario {
    inner: Scenario,
}

/// The result of `chainstab_check`.
pub struct ChainstabReport {
    inner: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

struct Failure(ChainstabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Internal(_) => ChainstabStatus::Internal,
            _ => ChainstabStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn bad_argument(message: &str) -> Failure {
    Failure(ChainstabStatus::InvalidArgument, message.to_string())
}

/// Runs `f`, converting errors and panics into a status and the thread's
/// last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ChainstabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            ChainstabStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {message}"));
            ChainstabStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(ptr: *const T, name: &str) -> Result<&'a T, Failure> {
    ptr.as_ref()
        .ok_or_else(|| bad_argument(&format!("{name} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(bad_argument("output pointer is null"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(text: String) -> Result<*mut c_char, Failure> {
    CString::new(text).map(CString::into_raw).map_err(|_| {
        Failure(
            ChainstabStatus::Internal,
            "output contains a NUL byte".into(),
        )
    })
}

/// Parses a scenario from NUL-terminated UTF-8 JSON.
///
/// # Safety
/// `json` must be null or a valid NUL-terminated string, and `out` must be
/// null or writable. On success `*out` owns a handle to release with
/// [`chainstab_scenario_free`].
#[no_mangle]
pub unsafe extern "C" fn chainstab_scenario_from_json(
    json: *const c_char,
    out: *mut *mut ChainstabScenario,
) -> ChainstabStatus {
    guard(|| {
        if json.is_null() {
            return Err(bad_argument("json is null"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| bad_argument("json is not valid UTF-8"))?;
        let inner = Scenario::from_json(text)?;
        write_out(out, Box::into_raw(Box::new(ChainstabScenario { inner })))
    })
}

/// # Safety
/// `scenario` must be null or a handle from [`chainstab_scenario_from_json`]
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn chainstab_scenario_free(scenario: *mut ChainstabScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Full stability analysis.
///
/// # Safety
/// `scenario` must be a live handle and `out` writable. On success `*out`
/// owns a report to release with [`chainstab_report_free`].
#[no_mangle]
pub unsafe extern "C" fn chainstab_check(
    scenario: *const ChainstabScenario,
    out: *mut *mut ChainstabReport,
) -> ChainstabStatus {
    guard(|| {
        let scenario = borrow(scenario, "scenario")?;
        let inner = analyze_scenario(&scenario.inner)?;
        write_out(out, Box::into_raw(Box::new(ChainstabReport { inner })))
    })
}

/// # Safety
/// `report` must be null or a live handle from [`chainstab_check`].
#[no_mangle]
pub unsafe extern "C" fn chainstab_report_free(report: *mut ChainstabReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn chainstab_report_verdict(
    report: *const ChainstabReport,
    out: *mut ChainstabVerdict,
) -> ChainstabStatus {
    guard(|| {
        let report = borrow(report, "report")?;
        let verdict = match report.inner.verdict.kind {
            VerdictKind::WSemistable => ChainstabVerdict::WSemistable,
            VerdictKind::WStable => ChainstabVerdict::WStable,
            VerdictKind::StronglyUnstable => ChainstabVerdict::StronglyUnstable,
            VerdictKind::Inconclusive => ChainstabVerdict::Inconclusive,
        };
        write_out(out, verdict)
    })
}

/// The report as canonical JSON, identical to `chainstab --format json check`.
///
/// # Safety
/// `report` must be a live handle and `out` writable. `*out` must be
/// released with [`chainstab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn chainstab_report_to_json(
    report: *const ChainstabReport,
    out: *mut *mut c_char,
) -> ChainstabStatus {
    guard(|| {
        let report = borrow(report, "report")?;
        let text = report::to_canonical_string(&report::report(&report.inner));
        write_out(out, into_c_string(text)?)
    })
}

/// The feasible polarization region as canonical JSON.
///
/// # Safety
/// As for [`chainstab_report_to_json`], with a live scenario handle.
#[no_mangle]
pub unsafe extern "C" fn chainstab_polarize(
    scenario: *const ChainstabScenario,
    out: *mut *mut c_char,
) -> ChainstabStatus {
    guard(|| {
        let scenario = borrow(scenario, "scenario")?;
        let (sheaf, region) = chainstab::cli::polarize(&scenario.inner)?;
        let text = report::to_canonical_string(&report::polarization_result(&sheaf, &region));
        write_out(out, into_c_string(text)?)
    })
}

/// Brute-force cross-validation at grid denominator `denominator`, sweeping
/// twists with `|deg L_j| <= twist_range` where the all-twists hypotheses
/// hold.
///
/// # Safety
/// As for [`chainstab_report_to_json`], with a live scenario handle.
#[no_mangle]
pub unsafe extern "C" fn chainstab_oracle(
    scenario: *const ChainstabScenario,
    denominator: u64,
    twist_range: i64,
    out: *mut *mut c_char,
) -> ChainstabStatus {
    guard(|| {
        let scenario = borrow(scenario, "scenario")?;
        if twist_range < 0 {
            return Err(bad_argument("twist_range must be non-negative"));
        }
        let spec = GridSpec::new(denominator, scenario.inner.curve.components())?;
        let result = cross_validate(&scenario.inner, spec, twist_range)?;
        write_out(
            out,
            into_c_string(report::to_canonical_string(&report::validation(&result)))?,
        )
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn chainstab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null after a
/// successful call. The pointer stays valid until the next call into this
/// library on the same thread.
#[no_mangle]
pub extern "C" fn chainstab_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
