//! C interface to the ambiskew session engine.
//!
//! Sessions are parsed once and may be run any number of times with
//! different options. Every fallible call returns an [`AmbiskewStatus`];
//! the message of the most recent failure on the calling thread is
//! available from [`ambiskew_last_error`]. Strings returned by this
//! library are owned by the caller and released with
//! [`ambiskew_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ambiskew::gallery;
use ambiskew::report::Report;
use ambiskew::session::{ExecOptions, Executor, Session};
use ambiskew::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbiskewStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    UnknownName = 4,
    Execution = 5,
    NotFound = 6,
    OutOfRange = 7,
    Panic = 8,
}

/// Parsed session together with its run options.
pub struct AmbiskewSession {
    session: Session,
    opts: ExecOptions,
}

/// Outcome of one run.
pub struct AmbiskewReport {
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> AmbiskewStatus {
    match e {
        Error::Syntax { .. } | Error::Redeclared(_) => AmbiskewStatus::Syntax,
        Error::UnknownName(_) => AmbiskewStatus::UnknownName,
        _ => AmbiskewStatus::Execution,
    }
}

fn fail(status: AmbiskewStatus, msg: impl Into<String>) -> AmbiskewStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> AmbiskewStatus) -> AmbiskewStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(AmbiskewStatus::Panic, format!("internal panic: {msg}"))
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, AmbiskewStatus> {
    if p.is_null() {
        return Err(fail(AmbiskewStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(AmbiskewStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! non_null {
    ($p:expr, $what:expr) => {
        if $p.is_null() {
            return fail(AmbiskewStatus::NullArgument, concat!($what, " is null"));
        }
    };
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn ambiskew_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ambiskew_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses session text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_session_parse(text: *const c_char, out: *mut *mut AmbiskewSession) -> AmbiskewStatus {
    guard(|| {
        non_null!(out, "out");
        *out = ptr::null_mut();
        let text = try_ffi!(read_str(text, "text"));
        match Session::parse(text) {
            Ok(session) => {
                *out = Box::into_raw(Box::new(AmbiskewSession { session, opts: ExecOptions::default() }));
                AmbiskewStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Loads a built-in gallery case by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_session_from_gallery(name: *const c_char, out: *mut *mut AmbiskewSession) -> AmbiskewStatus {
    guard(|| {
        non_null!(out, "out");
        *out = ptr::null_mut();
        let name = try_ffi!(read_str(name, "name"));
        let cases = gallery::registry();
        let Some(case) = gallery::find(&cases, name) else {
            return fail(AmbiskewStatus::NotFound, format!("no gallery case `{name}`"));
        };
        match Session::parse(&case.source) {
            Ok(session) => {
                let opts = ExecOptions { command: format!("gallery {name}"), ..Default::default() };
                *out = Box::into_raw(Box::new(AmbiskewSession { session, opts }));
                AmbiskewStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Number of built-in gallery cases.
#[no_mangle]
pub extern "C" fn ambiskew_gallery_count() -> usize {
    gallery::registry().len()
}

/// Name of gallery case `index` as a newly allocated string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_gallery_name(index: usize, out: *mut *mut c_char) -> AmbiskewStatus {
    guard(|| {
        non_null!(out, "out");
        *out = ptr::null_mut();
        let cases = gallery::registry();
        match cases.get(index) {
            Some(c) => {
                *out = into_c(c.name.to_string());
                AmbiskewStatus::Ok
            }
            None => fail(AmbiskewStatus::OutOfRange, format!("index {index} of {}", cases.len())),
        }
    })
}

/// Releases a session. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_session_free(s: *mut AmbiskewSession) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Sets the sampling seed, monomial bound and triple count used by later runs.
///
/// # Safety
/// `s` must be a live session.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_session_set_sampling(s: *mut AmbiskewSession, seed: u64, bound: u32, triples: usize) -> AmbiskewStatus {
    guard(|| {
        non_null!(s, "session");
        let o = &mut (*s).opts;
        o.seed = seed;
        o.bound = bound;
        o.triples = triples;
        AmbiskewStatus::Ok
    })
}

/// Substitutes a value for a parameter in later runs. The value is a scalar
/// expression in the remaining parameters.
///
/// # Safety
/// `s` must be a live session; `name` and `value` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_session_specialize(s: *mut AmbiskewSession, name: *const c_char, value: *const c_char) -> AmbiskewStatus {
    guard(|| {
        non_null!(s, "session");
        let name = try_ffi!(read_str(name, "name"));
        let value = try_ffi!(read_str(value, "value"));
        let spec = &mut (*s).opts.specialize;
        spec.retain(|(n, _)| n != name);
        spec.push((name.to_string(), value.to_string()));
        AmbiskewStatus::Ok
    })
}

/// Canonical text of the session as a newly allocated string.
///
/// # Safety
/// `s` must be a live session and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_session_print(s: *const AmbiskewSession, out: *mut *mut c_char) -> AmbiskewStatus {
    guard(|| {
        non_null!(s, "session");
        non_null!(out, "out");
        *out = into_c((*s).session.to_string());
        AmbiskewStatus::Ok
    })
}

/// Runs every statement of the session. A report is produced whenever
/// execution completes, whether or not its verdicts pass.
///
/// # Safety
/// `s` must be a live session and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_session_run(s: *const AmbiskewSession, out: *mut *mut AmbiskewReport) -> AmbiskewStatus {
    guard(|| {
        non_null!(s, "session");
        non_null!(out, "out");
        *out = ptr::null_mut();
        let s = &*s;
        match Executor::new(s.opts.clone()).run(&s.session) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(AmbiskewReport { report }));
                AmbiskewStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `r` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_report_free(r: *mut AmbiskewReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// 1 if every verdict passed, 0 otherwise or for null.
///
/// # Safety
/// `r` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_report_passed(r: *const AmbiskewReport) -> i32 {
    r.as_ref().map_or(0, |r| r.report.passed() as i32)
}

/// 1 if the run was skipped because an assumption failed under
/// specialization, 0 otherwise or for null.
///
/// # Safety
/// `r` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_report_skipped(r: *const AmbiskewReport) -> i32 {
    r.as_ref().map_or(0, |r| r.report.skipped.is_some() as i32)
}

/// Number of verdicts, or 0 for null.
///
/// # Safety
/// `r` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_report_verdict_count(r: *const AmbiskewReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.verdicts.len())
}

/// Verdict `index`: its name, outcome and witness. The witness is null for
/// passing verdicts without a note. Either string pointer may be null to
/// skip it.
///
/// # Safety
/// `r` must be a live report and `pass` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_report_verdict(
    r: *const AmbiskewReport,
    index: usize,
    name: *mut *mut c_char,
    pass: *mut i32,
    witness: *mut *mut c_char,
) -> AmbiskewStatus {
    guard(|| {
        non_null!(r, "report");
        non_null!(pass, "pass");
        let vs = &(*r).report.verdicts;
        let Some(v) = vs.get(index) else {
            return fail(AmbiskewStatus::OutOfRange, format!("index {index} of {}", vs.len()));
        };
        *pass = v.pass as i32;
        if !name.is_null() {
            *name = into_c(v.name.clone());
        }
        if !witness.is_null() {
            *witness = v.witness.clone().map_or(ptr::null_mut(), into_c);
        }
        AmbiskewStatus::Ok
    })
}

/// Human-readable report as a newly allocated string.
///
/// # Safety
/// `r` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_report_text(r: *const AmbiskewReport, out: *mut *mut c_char) -> AmbiskewStatus {
    guard(|| {
        non_null!(r, "report");
        non_null!(out, "out");
        *out = into_c((*r).report.to_text());
        AmbiskewStatus::Ok
    })
}

/// JSON report as a newly allocated string.
///
/// # Safety
/// `r` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ambiskew_report_json(r: *const AmbiskewReport, out: *mut *mut c_char) -> AmbiskewStatus {
    guard(|| {
        non_null!(r, "report");
        non_null!(out, "out");
        *out = into_c((*r).report.to_json());
        AmbiskewStatus::Ok
    })
}
