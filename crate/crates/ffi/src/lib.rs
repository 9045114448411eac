//! C ABI over `gapbound`.
//!
//! Every entry point returns a [`GbStatus`]. On anything other than
//! `GB_OK` a message is available from [`gb_last_error`] on the same
//! thread. Strings returned through `char **` out-parameters are owned by
//! the caller and released with [`gb_string_free`]; reports are released
//! with [`gb_report_free`].

use std::cell::RefCell;
use std::cmp::Ordering;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gapbound::cli::{invoke, Invocation, EXIT_CONFIG, EXIT_PASS};
use gapbound::rings::{format_rational, parse_rational, quad_norm, ExactPower, QuadRing};
use gapbound::vandermonde::k_function;

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbStatus {
    GbOk = 0,
    /// A required pointer argument was null.
    GbNullPointer = 1,
    /// A string argument was not valid UTF-8.
    GbInvalidUtf8 = 2,
    /// Arguments were rejected; see `gb_last_error`.
    GbInvalidArgument = 3,
    /// An internal error was caught at the boundary.
    GbInternal = 4,
}

/// Opaque result of [`gb_run`].
pub struct GbReport {
    exit_code: i32,
    output: CString,
    diagnostics: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(GbStatus, String);

impl Failure {
    fn invalid(msg: impl ToString) -> Self {
        Failure(GbStatus::GbInvalidArgument, msg.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GbStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GbStatus::GbOk,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            GbStatus::GbInternal
        }
    }
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(GbStatus::GbNullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GbStatus::GbInvalidUtf8, format!("{what} is not UTF-8")))
}

fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    // SAFETY: callers pass either null or a pointer valid for writes.
    unsafe { p.as_mut() }.ok_or_else(|| Failure(GbStatus::GbNullPointer, format!("{what} is null")))
}

fn to_c_string(s: String) -> CString {
    CString::new(s.replace('\0', " ")).expect("NUL bytes replaced")
}

/// Runs one CLI command. `argv` holds `argc` arguments without the
/// program name, e.g. `{"k-table", "--m", "3", "--s", "3/2"}`.
///
/// Failed checks still yield `GB_OK` and a report whose exit code is 1.
/// Configuration errors yield `GB_INVALID_ARGUMENT` and no report.
///
/// # Safety
/// `argv` must point to `argc` valid NUL-terminated strings and `out` must
/// be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gb_run(
    argv: *const *const c_char,
    argc: usize,
    out: *mut *mut GbReport,
) -> GbStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        if argv.is_null() && argc > 0 {
            return Err(Failure(GbStatus::GbNullPointer, "argv is null".into()));
        }
        let mut args = vec!["gapbound".to_string()];
        for i in 0..argc {
            args.push(read_str(*argv.add(i), "argv entry")?.to_string());
        }
        let Invocation {
            exit_code,
            stdout,
            stderr,
        } = invoke(args);
        if exit_code == EXIT_CONFIG {
            return Err(Failure::invalid(stderr.trim_end()));
        }
        *out = Box::into_raw(Box::new(GbReport {
            exit_code,
            output: to_c_string(stdout),
            diagnostics: to_c_string(stderr),
        }));
        Ok(())
    })
}

/// The rendered report in the requested `--format`; empty when `--out`
/// was given. Valid until the report is freed.
///
/// # Safety
/// `report` must be null or a live report from [`gb_run`].
#[no_mangle]
pub unsafe extern "C" fn gb_report_output(report: *const GbReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.output.as_ptr())
}

/// Summary written to standard error by the CLI, possibly empty.
///
/// # Safety
/// `report` must be null or a live report from [`gb_run`].
#[no_mangle]
pub unsafe extern "C" fn gb_report_diagnostics(report: *const GbReport) -> *const c_char {
    report
        .as_ref()
        .map_or(ptr::null(), |r| r.diagnostics.as_ptr())
}

/// CLI exit code: 0 all checks passed, 1 some check failed; -1 for null.
///
/// # Safety
/// `report` must be null or a live report from [`gb_run`].
#[no_mangle]
pub unsafe extern "C" fn gb_report_exit_code(report: *const GbReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.exit_code)
}

/// # Safety
/// `report` must be null or a live report from [`gb_run`].
#[no_mangle]
pub unsafe extern "C" fn gb_report_passed(report: *const GbReport) -> bool {
    report.as_ref().is_some_and(|r| r.exit_code == EXIT_PASS)
}

/// # Safety
/// `report` must be null or a report from [`gb_run`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gb_report_free(report: *mut GbReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// `K(s, m)` for a rational `s` written `"num/den"`. The value is returned
/// as an exact rational string.
///
/// # Safety
/// `s` must be a valid NUL-terminated string; `value` and `argmax` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gb_k_function(
    s: *const c_char,
    m: usize,
    value: *mut *mut c_char,
    argmax: *mut usize,
) -> GbStatus {
    guard(|| {
        let value = out_ptr(value, "value")?;
        let argmax = out_ptr(argmax, "argmax")?;
        let s = parse_rational(read_str(s, "s")?).map_err(Failure::invalid)?;
        let k = k_function(&s, m).map_err(Failure::invalid)?;
        *value = to_c_string(format_rational(&k.value)).into_raw();
        *argmax = k.argmax_k;
        Ok(())
    })
}

/// `N(a + b·√−d) = a² + d·b²` as a decimal string.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gb_quad_norm(d: u64, a: i64, b: i64, out: *mut *mut c_char) -> GbStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let ring = QuadRing::order(d).map_err(Failure::invalid)?;
        *out = to_c_string(quad_norm(&ring.element(a, b)).to_string()).into_raw();
        Ok(())
    })
}

/// Compares two products of rational powers such as `"2^(1/2) * 3"`
/// exactly. Writes -1, 0 or 1 to `ordering`.
///
/// # Safety
/// `x` and `y` must be valid NUL-terminated strings; `ordering` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gb_exact_power_compare(
    x: *const c_char,
    y: *const c_char,
    ordering: *mut i32,
) -> GbStatus {
    guard(|| {
        let ordering = out_ptr(ordering, "ordering")?;
        let x: ExactPower = read_str(x, "x")?.parse().map_err(Failure::invalid)?;
        let y: ExactPower = read_str(y, "y")?.parse().map_err(Failure::invalid)?;
        *ordering = match x.compare(&y) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        Ok(())
    })
}

/// Releases a string returned through an out-parameter.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failed call on this thread, or null.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn gb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn gb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
