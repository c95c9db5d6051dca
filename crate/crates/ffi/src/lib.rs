//! C ABI over the `gkk` library.
//!
//! Matrices live behind opaque `GkkMatrix` handles. Every entry point
//! returns a `GkkStatus`; results go through out-pointers. Strings handed
//! back to the caller are NUL-terminated and must be released with
//! `gkk_string_free`. After a failing call, `gkk_last_error` describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gkk::classify::{classify, Caps, Property};
use gkk::exact::{format_fraction, parse_rational, RatMatrix};
use gkk::family::{build_a, build_b, FamilyParams};
use gkk::Error;

/// Status codes returned by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GkkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    CapExceeded = 5,
    Computation = 6,
    Panic = 7,
}

/// Opaque matrix handle.
pub struct GkkMatrix {
    inner: RatMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(err: &Error) -> GkkStatus {
    match err {
        Error::Parse(_) | Error::Json(_) => GkkStatus::Parse,
        Error::CapExceeded { .. } => GkkStatus::CapExceeded,
        Error::NotSquare { .. }
        | Error::Shape { .. }
        | Error::IndexOutOfRange { .. }
        | Error::UnsortedIndexSet
        | Error::AmbientMismatch { .. }
        | Error::CardinalityMismatch { .. }
        | Error::InvalidParameter(_) => GkkStatus::InvalidArgument,
        _ => GkkStatus::Computation,
    }
}

/// Run `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), GkkStatus>) -> GkkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GkkStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            GkkStatus::Panic
        }
    }
}

fn lift<T>(r: gkk::Result<T>) -> Result<T, GkkStatus> {
    r.map_err(|e| {
        let status = status_of(&e);
        set_error(e.to_string());
        status
    })
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, GkkStatus> {
    if p.is_null() {
        set_error("null string argument".into());
        return Err(GkkStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        GkkStatus::InvalidUtf8
    })
}

unsafe fn matrix_arg<'a>(m: *const GkkMatrix) -> Result<&'a RatMatrix, GkkStatus> {
    if m.is_null() {
        set_error("null matrix handle".into());
        return Err(GkkStatus::NullPointer);
    }
    Ok(&(*m).inner)
}

fn check_out<T>(out: *mut T) -> Result<(), GkkStatus> {
    if out.is_null() {
        set_error("null output pointer".into());
        return Err(GkkStatus::NullPointer);
    }
    Ok(())
}

unsafe fn put_matrix(out: *mut *mut GkkMatrix, inner: RatMatrix) {
    *out = Box::into_raw(Box::new(GkkMatrix { inner }));
}

unsafe fn put_string(out: *mut *mut c_char, text: String) {
    *out = CString::new(text).expect("no interior NUL").into_raw();
}

/// Build `A(n, k, t)`; `t` is a decimal or fraction string such as `"1/2"`.
///
/// # Safety
/// `t` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkk_matrix_family(
    n: usize,
    k: usize,
    t: *const c_char,
    out: *mut *mut GkkMatrix,
) -> GkkStatus {
    guard(|| {
        check_out(out)?;
        let t = lift(parse_rational(str_arg(t)?))?;
        let a = lift(FamilyParams::new(n, k, t).and_then(|p| build_a(&p)))?;
        put_matrix(out, a);
        Ok(())
    })
}

/// Build the limit matrix `B_k` of order `2k + 2`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkk_matrix_limit(k: usize, out: *mut *mut GkkMatrix) -> GkkStatus {
    guard(|| {
        check_out(out)?;
        put_matrix(out, lift(build_b(k))?);
        Ok(())
    })
}

/// The `n x n` identity.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkk_matrix_identity(n: usize, out: *mut *mut GkkMatrix) -> GkkStatus {
    guard(|| {
        check_out(out)?;
        put_matrix(out, RatMatrix::identity(n));
        Ok(())
    })
}

/// Parse a matrix from the JSON format the CLI writes.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkk_matrix_from_json(json: *const c_char, out: *mut *mut GkkMatrix) -> GkkStatus {
    guard(|| {
        check_out(out)?;
        let m = lift(RatMatrix::from_json(str_arg(json)?))?;
        put_matrix(out, m);
        Ok(())
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gkk_matrix_free(m: *mut GkkMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Order of a square matrix.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkk_matrix_order(m: *const GkkMatrix, out: *mut usize) -> GkkStatus {
    guard(|| {
        check_out(out)?;
        *out = lift(matrix_arg(m)?.order())?;
        Ok(())
    })
}

/// Exact determinant as a `"p/q"` string.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkk_matrix_det(m: *const GkkMatrix, out: *mut *mut c_char) -> GkkStatus {
    guard(|| {
        check_out(out)?;
        let d = lift(matrix_arg(m)?.det())?;
        put_string(out, format_fraction(&d));
        Ok(())
    })
}

/// The matrix as JSON.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkk_matrix_to_json(m: *const GkkMatrix, out: *mut *mut c_char) -> GkkStatus {
    guard(|| {
        check_out(out)?;
        put_string(out, matrix_arg(m)?.to_json());
        Ok(())
    })
}

/// Test one property (`"P"`, `"WSS"`, `"GKK"`, `"OMEGA"`, `"TAU"`,
/// `"POS_STABLE"` or `"VARGA_WEDGE"`) with default caps. `holds` receives
/// 1 or 0.
///
/// # Safety
/// `m` must be a live handle, `property` a valid C string and `holds` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkk_classify(m: *const GkkMatrix, property: *const c_char, holds: *mut i32) -> GkkStatus {
    guard(|| {
        check_out(holds)?;
        let a = matrix_arg(m)?;
        let p = lift(Property::parse(str_arg(property)?))?;
        let report = lift(classify(a, &[p], &Caps::default(), 1e-12))?;
        *holds = i32::from(report[0].holds);
        Ok(())
    })
}

/// Full report for one property as JSON, witness included.
///
/// # Safety
/// `m` must be a live handle, `property` a valid C string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkk_classify_json(
    m: *const GkkMatrix,
    property: *const c_char,
    out: *mut *mut c_char,
) -> GkkStatus {
    guard(|| {
        check_out(out)?;
        let a = matrix_arg(m)?;
        let p = lift(Property::parse(str_arg(property)?))?;
        let report = lift(classify(a, &[p], &Caps::default(), 1e-12))?;
        put_string(out, report[0].to_json_value(25).to_string());
        Ok(())
    })
}

/// Message for the last failing call on this thread, or null. The caller
/// owns the copy.
#[no_mangle]
pub extern "C" fn gkk_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gkk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
