//! C ABI for hopfkit.
//!
//! Scenarios are held behind opaque handles; every entry point returns a
//! status code mirroring the CLI exit-code contract (0 ok, 1 verification
//! failed, 2 unusable input, 3 resource bound). Strings returned through
//! out-parameters are heap-allocated and must be released with
//! `hopfkit_string_free`. The most recent error message per thread is
//! available from `hopfkit_last_error`.

use hopfkit::scenario::{
    classify_error, export_object, gallery, run_scenario, write_outputs, Scenario,
};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

/// Status codes of every FFI entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopfkitStatus {
    Ok = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    ResourceLimit = 3,
    NullArgument = 4,
    InternalPanic = 5,
}

/// An opaque, loaded scenario.
pub struct HopfkitScenario {
    inner: Scenario,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of_code(code: i32) -> HopfkitStatus {
    match code {
        0 => HopfkitStatus::Ok,
        1 => HopfkitStatus::VerificationFailed,
        3 => HopfkitStatus::ResourceLimit,
        _ => HopfkitStatus::InvalidInput,
    }
}

fn status_of_error(e: &hopfkit::Error) -> HopfkitStatus {
    set_error(&e.to_string());
    status_of_code(classify_error(e))
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok()
}

fn give_string(out: *mut *mut c_char, s: String) -> HopfkitStatus {
    if out.is_null() {
        return HopfkitStatus::NullArgument;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            HopfkitStatus::Ok
        }
        Err(_) => {
            set_error("string contains an interior NUL byte");
            HopfkitStatus::InvalidInput
        }
    }
}

fn guarded(f: impl FnOnce() -> HopfkitStatus) -> HopfkitStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            HopfkitStatus::InternalPanic
        }
    }
}

/// Most recent error message on this thread, or NULL. The caller owns the
/// returned string and must free it with `hopfkit_string_free`.
#[no_mangle]
pub extern "C" fn hopfkit_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string handed out by this library.
#[no_mangle]
pub extern "C" fn hopfkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe {
            drop(CString::from_raw(s));
        }
    }
}

/// Parse a scenario from JSON text into an opaque handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hopfkit_scenario_from_json(
    json: *const c_char,
    out: *mut *mut HopfkitScenario,
) -> HopfkitStatus {
    guarded(|| {
        let Some(text) = (unsafe { cstr(json) }) else {
            return HopfkitStatus::NullArgument;
        };
        if out.is_null() {
            return HopfkitStatus::NullArgument;
        }
        match Scenario::from_json(text) {
            Ok(sc) => {
                unsafe { *out = Box::into_raw(Box::new(HopfkitScenario { inner: sc })) };
                HopfkitStatus::Ok
            }
            Err(e) => status_of_error(&e),
        }
    })
}

/// Load a scenario file into an opaque handle.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hopfkit_scenario_from_file(
    path: *const c_char,
    out: *mut *mut HopfkitScenario,
) -> HopfkitStatus {
    guarded(|| {
        let Some(p) = (unsafe { cstr(path) }) else {
            return HopfkitStatus::NullArgument;
        };
        if out.is_null() {
            return HopfkitStatus::NullArgument;
        }
        match Scenario::from_file(Path::new(p)) {
            Ok(sc) => {
                unsafe { *out = Box::into_raw(Box::new(HopfkitScenario { inner: sc })) };
                HopfkitStatus::Ok
            }
            Err(e) => status_of_error(&e),
        }
    })
}

/// Release a scenario handle.
///
/// # Safety
/// `s` must be a handle from this library or NULL; it must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn hopfkit_scenario_free(s: *mut HopfkitScenario) {
    if !s.is_null() {
        unsafe {
            drop(Box::from_raw(s));
        }
    }
}

/// Run the scenario's pipelines. `cap` overrides the truncation cap when
/// nonzero. When `out_dir` is non-NULL the reports and exports are written
/// there; when `report_json` is non-NULL it receives the verification
/// report as JSON.
///
/// # Safety
/// `s` must be a live scenario handle; the string arguments must be
/// NUL-terminated when non-NULL.
#[no_mangle]
pub unsafe extern "C" fn hopfkit_run(
    s: *const HopfkitScenario,
    cap: usize,
    out_dir: *const c_char,
    report_json: *mut *mut c_char,
) -> HopfkitStatus {
    guarded(|| {
        let Some(handle) = (unsafe { s.as_ref() }) else {
            return HopfkitStatus::NullArgument;
        };
        let cap_override = if cap == 0 { None } else { Some(cap) };
        let (outcome, code) = run_scenario(&handle.inner, cap_override);
        if code != 0 {
            set_error(&outcome.text_report());
        }
        if let Some(dir) = unsafe { cstr(out_dir) } {
            if let Err(e) = write_outputs(&outcome, Path::new(dir)) {
                return status_of_error(&e);
            }
        }
        if !report_json.is_null() {
            let json = match serde_json_string(&outcome) {
                Ok(j) => j,
                Err(status) => return status,
            };
            let st = give_string(report_json, json);
            if st != HopfkitStatus::Ok {
                return st;
            }
        }
        status_of_code(code)
    })
}

fn serde_json_string(outcome: &hopfkit::scenario::RunOutcome) -> Result<String, HopfkitStatus> {
    match serde_json::to_string_pretty(outcome) {
        Ok(s) => Ok(s),
        Err(e) => {
            set_error(&e.to_string());
            Err(HopfkitStatus::InvalidInput)
        }
    }
}

/// Copy one of the canonical gallery scenarios into `out`.
///
/// # Safety
/// `name` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hopfkit_gallery(
    name: *const c_char,
    out: *mut *mut c_char,
) -> HopfkitStatus {
    guarded(|| {
        let Some(n) = (unsafe { cstr(name) }) else {
            return HopfkitStatus::NullArgument;
        };
        match gallery(n) {
            Ok(text) => give_string(out, text.to_string()),
            Err(e) => status_of_error(&e),
        }
    })
}

/// Export one object of the scenario (`klambda`, `kgamma`, `bw`, `bv`,
/// `U`, `A`, `twist`) as structure-constant JSON.
///
/// # Safety
/// `s` must be a live handle, `id` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hopfkit_export(
    s: *const HopfkitScenario,
    id: *const c_char,
    out: *mut *mut c_char,
) -> HopfkitStatus {
    guarded(|| {
        let Some(handle) = (unsafe { s.as_ref() }) else {
            return HopfkitStatus::NullArgument;
        };
        let Some(object) = (unsafe { cstr(id) }) else {
            return HopfkitStatus::NullArgument;
        };
        match export_object(&handle.inner, object) {
            Ok(json) => give_string(out, json),
            Err(e) => status_of_error(&e),
        }
    })
}
