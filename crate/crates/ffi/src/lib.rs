//! C interface to `jetsym`.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns a
//! [`JetsymStatus`]; the message of the last failure on the calling thread is
//! available from [`jetsym_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use jetsym::cli::{emit_report, parse_equation, run_pipeline, ErrorKind, Format, ParseError, Report, RunConfig};
use jetsym::engine::{is_symmetry, EvolutionEquation};

/// Status codes. The positive values match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetsymStatus {
    Ok = 0,
    Other = 1,
    Syntax = 2,
    Scope = 3,
    ClosureViolation = 4,
    UnresolvedSpectrum = 5,
    NullPointer = 10,
    InvalidUtf8 = 11,
    InvalidConfig = 12,
}

impl From<ErrorKind> for JetsymStatus {
    fn from(k: ErrorKind) -> Self {
        match k {
            ErrorKind::Syntax => JetsymStatus::Syntax,
            ErrorKind::Scope => JetsymStatus::Scope,
            ErrorKind::ClosureViolation => JetsymStatus::ClosureViolation,
            ErrorKind::UnresolvedSpectrum => JetsymStatus::UnresolvedSpectrum,
            ErrorKind::Other => JetsymStatus::Other,
        }
    }
}

/// Parsed evolution equation.
pub struct JetsymEquation(EvolutionEquation);

/// Result of a pipeline run.
pub struct JetsymReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: JetsymStatus, msg: impl Into<String>) -> JetsymStatus {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
    status
}

fn parse_fail(e: ParseError) -> JetsymStatus {
    let status = match e {
        ParseError::Syntax { .. } => JetsymStatus::Syntax,
        ParseError::Scope(_) => JetsymStatus::Scope,
    };
    fail(status, e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, JetsymStatus> {
    if p.is_null() {
        return Err(fail(JetsymStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(JetsymStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn jetsym_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn jetsym_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses `u_t = <expr>` into `*out`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jetsym_equation_parse(src: *const c_char, out: *mut *mut JetsymEquation) -> JetsymStatus {
    if out.is_null() {
        return fail(JetsymStatus::NullPointer, "null output pointer");
    }
    *out = ptr::null_mut();
    let src = match read_str(src) {
        Ok(s) => s,
        Err(st) => return st,
    };
    match parse_equation(src) {
        Ok(eq) => {
            *out = Box::into_raw(Box::new(JetsymEquation(eq)));
            JetsymStatus::Ok
        }
        Err(e) => parse_fail(e),
    }
}

/// # Safety
/// `eq` must come from [`jetsym_equation_parse`] or be null.
#[no_mangle]
pub unsafe extern "C" fn jetsym_equation_free(eq: *mut JetsymEquation) {
    if !eq.is_null() {
        drop(Box::from_raw(eq));
    }
}

/// Differential order of the right-hand side, or 0 for a null handle.
///
/// # Safety
/// `eq` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn jetsym_equation_order(eq: *const JetsymEquation) -> u32 {
    eq.as_ref().map_or(0, |e| e.0.order())
}

/// Writes 1 to `*out` if the characteristic `eta` is a symmetry of `eq`.
///
/// # Safety
/// `eq` must be a live handle, `eta` a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn jetsym_is_symmetry(
    eq: *const JetsymEquation,
    eta: *const c_char,
    out: *mut i32,
) -> JetsymStatus {
    let (Some(eq), false) = (eq.as_ref(), out.is_null()) else {
        return fail(JetsymStatus::NullPointer, "null handle or output pointer");
    };
    let eta = match read_str(eta) {
        Ok(s) => s,
        Err(st) => return st,
    };
    match jetsym::cli::parse_expression(eta) {
        Ok(e) => {
            *out = i32::from(is_symmetry(&e, &eq.0));
            JetsymStatus::Ok
        }
        Err(e) => parse_fail(e),
    }
}

/// Runs the pipeline on a JSON run configuration. A report is produced even
/// when the analysis fails; the returned status then carries the error kind
/// and the report holds the details.
///
/// # Safety
/// `config_json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jetsym_run_json(config_json: *const c_char, out: *mut *mut JetsymReport) -> JetsymStatus {
    if out.is_null() {
        return fail(JetsymStatus::NullPointer, "null output pointer");
    }
    *out = ptr::null_mut();
    let src = match read_str(config_json) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let cfg: RunConfig = match serde_json::from_str(src) {
        Ok(c) => c,
        Err(e) => return fail(JetsymStatus::InvalidConfig, format!("bad run configuration: {e}")),
    };
    let report = run_pipeline(&cfg);
    let status = match &report.error {
        Some(err) => fail(err.kind.into(), err.message.clone()),
        None => JetsymStatus::Ok,
    };
    *out = Box::into_raw(Box::new(JetsymReport(report)));
    status
}

/// Pretty JSON of the report; free with [`jetsym_string_free`]. Null for a
/// null handle.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn jetsym_report_json(report: *const JetsymReport) -> *mut c_char {
    report
        .as_ref()
        .map_or(ptr::null_mut(), |r| into_c(emit_report(&r.0, Format::Json)))
}

/// Exit code the command-line tool would return for this report.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn jetsym_report_exit_code(report: *const JetsymReport) -> i32 {
    report.as_ref().map_or(JetsymStatus::NullPointer as i32, |r| r.0.exit_code())
}

/// # Safety
/// `report` must come from [`jetsym_run_json`] or be null.
#[no_mangle]
pub unsafe extern "C" fn jetsym_report_free(report: *mut JetsymReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn jetsym_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
