//! C ABI for the csop library.
//!
//! All functions are `unsafe extern "C"`; strings are UTF-8,
//! NUL-terminated, and owned by this library unless stated otherwise.
//! Every fallible call returns a [`CsopStatus`]; the message of the most
//! recent error on the calling thread is available via
//! [`csop_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use csop::json::{evaluate, measure_to_json, parse_measure, parse_problem};
use csop::setfn::MonotoneMeasure;
use csop::Error;

/// Status codes of every fallible FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CsopStatus {
    Ok = 0,
    /// malformed input (bad UTF-8, bad JSON, missing fields)
    Parse = 1,
    /// well-formed input violating a class invariant (e.g. monotonicity)
    Validation = 2,
    /// operator precondition failed (e.g. the IE gate)
    Precondition = 3,
    /// capacity/normalization guard failed
    Capacity = 4,
    /// null pointer argument
    NullPointer = 5,
    /// any other library error
    Internal = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CsopStatus {
    match e {
        Error::Malformed(_) | Error::Json(_) | Error::Io(_) => CsopStatus::Parse,
        Error::Validation(_) | Error::InvalidGroundSize(_) | Error::GroundMismatch(_, _) => {
            CsopStatus::Validation
        }
        Error::Precondition(_) => CsopStatus::Precondition,
        Error::Capacity(_) => CsopStatus::Capacity,
        Error::InvalidParameter(_) => CsopStatus::Validation,
    }
}

fn fail(e: Error) -> CsopStatus {
    let code = status_of(&e);
    set_error(e.to_string());
    code
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, CsopStatus> {
    if ptr.is_null() {
        set_error("null pointer".into());
        return Err(CsopStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("input is not valid UTF-8".into());
        CsopStatus::Parse
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> CsopStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CsopStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL".into());
            CsopStatus::Internal
        }
    }
}

/// Opaque monotone-measure handle.
pub struct CsopMeasure {
    inner: MonotoneMeasure,
}

/// Message of the most recent error on this thread, or null. The pointer
/// is valid until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn csop_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |c| c.as_ptr())
    })
}

/// Frees a string returned by this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn csop_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Evaluates a problem file (JSON text); on success `*out_report`
/// receives the report JSON, to be freed with [`csop_string_free`].
#[no_mangle]
pub unsafe extern "C" fn csop_eval_json(
    problem_json: *const c_char,
    out_report: *mut *mut c_char,
) -> CsopStatus {
    if out_report.is_null() {
        set_error("null output pointer".into());
        return CsopStatus::NullPointer;
    }
    let text = match read_str(problem_json) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let value: serde_json::Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return fail(Error::Json(e)),
    };
    let problem = match parse_problem(&value) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let report = match evaluate(&problem) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    match serde_json::to_string(&report) {
        Ok(s) => give_string(s, out_report),
        Err(e) => fail(Error::Json(e)),
    }
}

/// Parses a measure (JSON text) into an opaque handle; free with
/// [`csop_measure_free`].
#[no_mangle]
pub unsafe extern "C" fn csop_measure_parse(
    measure_json: *const c_char,
    out_measure: *mut *mut CsopMeasure,
) -> CsopStatus {
    if out_measure.is_null() {
        set_error("null output pointer".into());
        return CsopStatus::NullPointer;
    }
    let text = match read_str(measure_json) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let value: serde_json::Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return fail(Error::Json(e)),
    };
    match parse_measure(&value) {
        Ok(m) => {
            *out_measure = Box::into_raw(Box::new(CsopMeasure { inner: m }));
            CsopStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Frees a measure handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn csop_measure_free(m: *mut CsopMeasure) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Ground-set size of a measure handle; 0 on null.
#[no_mangle]
pub unsafe extern "C" fn csop_measure_n(m: *const CsopMeasure) -> usize {
    m.as_ref().map_or(0, |m| m.inner.ground().n())
}

/// Value of the measure on the subset encoded as a bitmask
/// (point i is bit i-1). Returns NaN on null or out-of-range masks.
#[no_mangle]
pub unsafe extern "C" fn csop_measure_value(m: *const CsopMeasure, mask: u32) -> f64 {
    match m.as_ref() {
        Some(m) if m.inner.ground().contains_mask(mask) => m.inner.value(mask),
        _ => f64::NAN,
    }
}

/// Canonical JSON form of a measure handle.
#[no_mangle]
pub unsafe extern "C" fn csop_measure_to_json(
    m: *const CsopMeasure,
    out_json: *mut *mut c_char,
) -> CsopStatus {
    if out_json.is_null() || m.is_null() {
        set_error("null pointer".into());
        return CsopStatus::NullPointer;
    }
    let v = measure_to_json(&(*m).inner);
    give_string(v.to_string(), out_json)
}
