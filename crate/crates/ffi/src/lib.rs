//! C ABI for the arrangement analysis library.
//!
//! Arrangements live behind an opaque handle created from the text format
//! or the catalog. Every fallible call returns a status code; the detailed
//! message of the most recent failure on the current thread is available
//! through [`arrfree_last_error_message`]. Structured results are returned
//! as JSON strings allocated by this library and released with
//! [`arrfree_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use arrfree::catalog::{self, CatalogName, CatalogParams};
use arrfree::format::{parse_arrangement, parse_rational, serialize_arrangement};
use arrfree::freeness::{decide_free, enumerate_profiles};
use arrfree::geometry::Arrangement;
use arrfree::report::analyze;
use arrfree::search::{inductive_certificate, prove_stuck};
use arrfree::verify::{verify_paper, VerifyOptions};

/// Opaque arrangement handle.
pub struct ArrfreeArrangement {
    inner: Arrangement,
}

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArrfreeStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Input text could not be parsed.
    ParseError = 2,
    /// The input violates a precondition of the requested operation.
    InvalidInput = 3,
    /// A string argument was not valid UTF-8.
    Utf8Error = 4,
    /// An internal invariant was violated.
    InternalError = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(status: ArrfreeStatus, msg: &str) -> ArrfreeStatus {
    set_error(msg);
    status
}

/// Detail message for the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn arrfree_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn arrfree_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, ArrfreeStatus> {
    if ptr.is_null() {
        return Err(fail(ArrfreeStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(ArrfreeStatus::Utf8Error, "string argument is not UTF-8"))
}

fn give_string(out: *mut *mut c_char, s: String) -> ArrfreeStatus {
    if out.is_null() {
        return fail(ArrfreeStatus::NullArgument, "null output pointer");
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            ArrfreeStatus::Ok
        }
        Err(_) => fail(ArrfreeStatus::InternalError, "result contained a NUL byte"),
    }
}

fn guarded<F: FnOnce() -> ArrfreeStatus>(f: F) -> ArrfreeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(ArrfreeStatus::InternalError, &msg)
        }
    }
}

unsafe fn handle_ref<'a>(
    handle: *const ArrfreeArrangement,
) -> Result<&'a Arrangement, ArrfreeStatus> {
    if handle.is_null() {
        return Err(fail(ArrfreeStatus::NullArgument, "null arrangement handle"));
    }
    Ok(&(*handle).inner)
}

fn boxed(out: *mut *mut ArrfreeArrangement, arr: Arrangement) -> ArrfreeStatus {
    if out.is_null() {
        return fail(ArrfreeStatus::NullArgument, "null output pointer");
    }
    unsafe { *out = Box::into_raw(Box::new(ArrfreeArrangement { inner: arr })) };
    ArrfreeStatus::Ok
}

/// Parses an arrangement from the text format into a new handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrfree_arrangement_parse(
    text: *const c_char,
    out: *mut *mut ArrfreeArrangement,
) -> ArrfreeStatus {
    guarded(|| {
        let text = match read_utf8(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_arrangement(text) {
            Ok(arr) => boxed(out, arr),
            Err(e) => fail(ArrfreeStatus::ParseError, &e.to_string()),
        }
    })
}

/// Builds a catalog arrangement. `lambda` is an optional rational like
/// `"2/3"` (pass null for the default); `k` is the family size parameter
/// (pass 0 when not applicable).
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `lambda` may be null;
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrfree_arrangement_from_catalog(
    name: *const c_char,
    lambda: *const c_char,
    k: usize,
    out: *mut *mut ArrfreeArrangement,
) -> ArrfreeStatus {
    guarded(|| {
        let name = match read_utf8(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        let name = match CatalogName::parse(name) {
            Ok(n) => n,
            Err(e) => return fail(ArrfreeStatus::InvalidInput, &e.to_string()),
        };
        let lambda = if lambda.is_null() {
            None
        } else {
            let text = match read_utf8(lambda) {
                Ok(t) => t,
                Err(s) => return s,
            };
            match parse_rational(text) {
                Ok(r) => Some(r),
                Err(e) => return fail(ArrfreeStatus::ParseError, &e),
            }
        };
        let params = CatalogParams { lambda, k: if k == 0 { None } else { Some(k) } };
        match catalog::get(name, params) {
            Ok(entry) => boxed(out, entry.arrangement),
            Err(e) => fail(ArrfreeStatus::InvalidInput, &e.to_string()),
        }
    })
}

/// Releases an arrangement handle. Null is ignored.
///
/// # Safety
/// `handle` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn arrfree_arrangement_free(handle: *mut ArrfreeArrangement) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of lines in the arrangement; 0 on a null handle.
///
/// # Safety
/// `handle` must be a live handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn arrfree_arrangement_line_count(
    handle: *const ArrfreeArrangement,
) -> usize {
    match handle_ref(handle) {
        Ok(arr) => arr.len(),
        Err(_) => 0,
    }
}

/// Serializes the arrangement in the text format.
///
/// # Safety
/// `handle` must be a live handle; `out` a valid pointer. The result is
/// released with `arrfree_string_free`.
#[no_mangle]
pub unsafe extern "C" fn arrfree_arrangement_serialize(
    handle: *const ArrfreeArrangement,
    out: *mut *mut c_char,
) -> ArrfreeStatus {
    guarded(|| {
        let arr = match handle_ref(handle) {
            Ok(a) => a,
            Err(s) => return s,
        };
        give_string(out, serialize_arrangement(arr))
    })
}

fn json_of<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

/// Full analysis (lattice invariants, profiles, verdict) as JSON.
///
/// # Safety
/// `handle` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrfree_analyze_json(
    handle: *const ArrfreeArrangement,
    out: *mut *mut c_char,
) -> ArrfreeStatus {
    guarded(|| {
        let arr = match handle_ref(handle) {
            Ok(a) => a,
            Err(s) => return s,
        };
        let verdict = match decide_free(arr) {
            Ok(v) => v,
            Err(e) => return fail(ArrfreeStatus::InvalidInput, &e.to_string()),
        };
        match analyze(arr, verdict) {
            Ok(report) => give_string(out, json_of(&report)),
            Err(e) => fail(ArrfreeStatus::InvalidInput, &e.to_string()),
        }
    })
}

/// Freeness verdict as JSON.
///
/// # Safety
/// `handle` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrfree_decide_free_json(
    handle: *const ArrfreeArrangement,
    out: *mut *mut c_char,
) -> ArrfreeStatus {
    guarded(|| {
        let arr = match handle_ref(handle) {
            Ok(a) => a,
            Err(s) => return s,
        };
        match decide_free(arr) {
            Ok(v) => give_string(out, json_of(&v)),
            Err(e) => fail(ArrfreeStatus::InvalidInput, &e.to_string()),
        }
    })
}

/// Inductive-filtration search result as JSON (`null` chain when none).
///
/// # Safety
/// `handle` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrfree_inductive_json(
    handle: *const ArrfreeArrangement,
    out: *mut *mut c_char,
) -> ArrfreeStatus {
    guarded(|| {
        let arr = match handle_ref(handle) {
            Ok(a) => a,
            Err(s) => return s,
        };
        match inductive_certificate(arr) {
            Ok(chain) => give_string(out, json_of(&chain)),
            Err(e) => fail(ArrfreeStatus::InvalidInput, &e.to_string()),
        }
    })
}

/// Free-neighbor search result as JSON (`null` when not stuck).
///
/// # Safety
/// `handle` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrfree_stuck_json(
    handle: *const ArrfreeArrangement,
    out: *mut *mut c_char,
) -> ArrfreeStatus {
    guarded(|| {
        let arr = match handle_ref(handle) {
            Ok(a) => a,
            Err(s) => return s,
        };
        match prove_stuck(arr) {
            Ok(stuck) => give_string(out, json_of(&stuck)),
            Err(e) => fail(ArrfreeStatus::InvalidInput, &e.to_string()),
        }
    })
}

/// Balanced-profile enumeration up to `ell_max` as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrfree_profiles_json(
    ell_max: usize,
    out: *mut *mut c_char,
) -> ArrfreeStatus {
    guarded(|| give_string(out, json_of(&enumerate_profiles(ell_max))))
}

/// Runs the full reproduction suite; the report is returned as JSON and the
/// status is `Ok` even when items fail (inspect the `passed` field).
///
/// # Safety
/// `lambda` may be null; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrfree_verify_paper_json(
    lambda: *const c_char,
    out: *mut *mut c_char,
) -> ArrfreeStatus {
    guarded(|| {
        let lambda = if lambda.is_null() {
            None
        } else {
            let text = match read_utf8(lambda) {
                Ok(t) => t,
                Err(s) => return s,
            };
            match parse_rational(text) {
                Ok(r) => Some(r),
                Err(e) => return fail(ArrfreeStatus::ParseError, &e),
            }
        };
        let report = verify_paper(&VerifyOptions { lambda, corrupt: None });
        give_string(out, json_of(&report))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must have been returned by this library and not freed already.
#[no_mangle]
pub unsafe extern "C" fn arrfree_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
