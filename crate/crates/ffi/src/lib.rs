//! C ABI over the obstructor engine.
//!
//! Reports are opaque handles owned by the caller and released with
//! [`obstructor_report_free`]. Strings returned through out-parameters are
//! owned by the caller and released with [`obstructor_string_free`]. Every
//! fallible call returns an [`ObstructorStatus`]; on failure a description is
//! kept per thread and read with [`obstructor_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use obstructor::catalog::{self, CatalogError, GroupSpec};
use obstructor::engine::{ObstructionReport, Provenance, REPORT_SCHEMA_VERSION};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructorStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The group spec did not parse.
    ParseError = 3,
    /// The catalog or engine rejected the request.
    EngineError = 4,
    /// A numeric argument was out of range (level or genus of zero).
    InvalidArgument = 5,
    /// The engine panicked; this is a bug.
    Internal = 6,
}

/// Opaque derivation result.
pub struct ObstructorReport {
    inner: ObstructionReport,
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

type Outcome<T> = Result<T, (ObstructorStatus, String)>;

fn guard(f: impl FnOnce() -> Outcome<()>) -> ObstructorStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ObstructorStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error: the engine panicked");
            ObstructorStatus::Internal
        }
    }
}

/// # Safety
/// `s` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Outcome<&'a str> {
    if s.is_null() {
        return Err((ObstructorStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (ObstructorStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn parse(spec: &str) -> Outcome<GroupSpec> {
    GroupSpec::parse(spec).map_err(|e| (ObstructorStatus::ParseError, e.to_string()))
}

fn engine(e: CatalogError) -> (ObstructorStatus, String) {
    match e {
        CatalogError::Spec(e) => (ObstructorStatus::ParseError, e.to_string()),
        CatalogError::Invalid(m) => (ObstructorStatus::InvalidArgument, m),
        e => (ObstructorStatus::EngineError, e.to_string()),
    }
}

fn non_null<T>(p: *mut T, what: &str) -> Outcome<()> {
    if p.is_null() {
        Err((ObstructorStatus::NullArgument, format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// # Safety
/// `r` must be null or a live handle from [`obstructor_derive`].
unsafe fn report<'a>(r: *const ObstructorReport) -> Outcome<&'a ObstructionReport> {
    r.as_ref().map(|r| &r.inner).ok_or((ObstructorStatus::NullArgument, "report is null".into()))
}

/// Derives `l0` for the group named by `spec` (e.g. `"SU(6)/Z3"`) and
/// stores a new report handle in `*out`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn obstructor_derive(spec: *const c_char, out: *mut *mut ObstructorReport) -> ObstructorStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let spec = parse(read_str(spec, "spec")?)?;
        let inner = catalog::derive_l0(&spec).map_err(engine)?;
        *out = Box::into_raw(Box::new(ObstructorReport { inner }));
        Ok(())
    })
}

/// Releases a report. Null is accepted and ignored.
///
/// # Safety
/// `r` must be null or a handle from [`obstructor_derive`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn obstructor_report_free(r: *mut ObstructorReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn obstructor_report_l0(r: *const ObstructorReport, out: *mut u64) -> ObstructorStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = report(r)?.l0;
        Ok(())
    })
}

/// The value of the closed-form table for the same group.
///
/// # Safety
/// `r` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn obstructor_report_closed_form_l0(
    r: *const ObstructorReport,
    out: *mut u64,
) -> ObstructorStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = report(r)?.closed_form_l0;
        Ok(())
    })
}

/// Whether some prime's contribution rests on a lemma instead of Hopf data.
///
/// # Safety
/// `r` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn obstructor_report_lemma_backed(
    r: *const ObstructorReport,
    out: *mut bool,
) -> ObstructorStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = report(r)?.provenance == Provenance::PartiallyLemmaBacked;
        Ok(())
    })
}

/// The report as JSON, in the same schema as `obstructor derive --json`.
/// The string is owned by the caller.
///
/// # Safety
/// `r` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn obstructor_report_json(r: *const ObstructorReport, out: *mut *mut c_char) -> ObstructorStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let json = serde_json::to_string(report(r)?).map_err(|e| (ObstructorStatus::Internal, e.to_string()))?;
        let c = CString::new(json).map_err(|e| (ObstructorStatus::Internal, e.to_string()))?;
        *out = c.into_raw();
        Ok(())
    })
}

/// Writes `l0` for `spec` straight from the closed-form table, without
/// running the engine.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn obstructor_closed_form_l0(spec: *const c_char, out: *mut u64) -> ObstructorStatus {
    guard(|| {
        non_null(out, "out")?;
        let spec = parse(read_str(spec, "spec")?)?;
        *out = catalog::closed_form_l0(&spec);
        Ok(())
    })
}

/// Whether the moduli space of flat `spec`-bundles on a genus-`genus`
/// surface admits a pre-quantization at `level`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn obstructor_prequantizable(
    spec: *const c_char,
    level: u64,
    genus: u64,
    out: *mut bool,
) -> ObstructorStatus {
    guard(|| {
        non_null(out, "out")?;
        let spec = parse(read_str(spec, "spec")?)?;
        *out = catalog::prequantizable(&spec, level, genus).map_err(engine)?.prequantizable;
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn obstructor_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn obstructor_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Version of the JSON report schema.
#[no_mangle]
pub extern "C" fn obstructor_schema_version() -> u32 {
    REPORT_SCHEMA_VERSION
}

/// Crate version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn obstructor_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
