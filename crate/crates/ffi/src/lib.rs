//! C ABI over the qonsager library.
//!
//! Objects are returned through opaque handles that the caller releases with
//! the matching `*_free` function. Strings returned to the caller are owned by
//! the caller and released with [`qonsager_string_free`]. Every fallible call
//! returns a [`QonsagerStatus`]; on failure [`qonsager_last_error_message`]
//! describes the problem.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qonsager::coefficients::{coeffs_by_route, CoeffTable, Route};
use qonsager::freealg::{parse_expression, NcPoly};
use qonsager::rewrite::normal_form;
use qonsager::verify::{verify_relation, VerificationReport};
use qonsager::Error;

/// Result codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QonsagerStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Integrity = 4,
    Internal = 5,
}

/// A coefficient table `c_j^{[r,p]}`.
pub struct QonsagerCoeffTable {
    inner: CoeffTable,
}

/// An element of the free algebra on `A`, `A*`.
pub struct QonsagerPoly {
    inner: NcPoly,
}

/// Outcome of reducing one relation.
pub struct QonsagerReport {
    inner: VerificationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> QonsagerStatus {
    match e {
        Error::Parse { .. } | Error::ExponentOverflow { .. } => QonsagerStatus::Parse,
        Error::Domain(_) | Error::IndexOutOfRange(_) | Error::DimensionMismatch(_) => QonsagerStatus::InvalidArgument,
        Error::InexactDivision(_) | Error::Integrity(_) | Error::IncompleteTable { .. } => QonsagerStatus::Integrity,
    }
}

fn fail(status: QonsagerStatus, msg: &str) -> QonsagerStatus {
    set_error(msg);
    status
}

/// Runs `f`, converting library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), QonsagerStatus>) -> QonsagerStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QonsagerStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(QonsagerStatus::Internal, "internal panic"),
    }
}

fn lib<T>(r: qonsager::Result<T>) -> Result<T, QonsagerStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, QonsagerStatus> {
    if s.is_null() {
        return Err(fail(QonsagerStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(QonsagerStatus::InvalidArgument, "string is not valid UTF-8"))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), QonsagerStatus> {
    if out.is_null() {
        return Err(fail(QonsagerStatus::NullPointer, "null output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), QonsagerStatus> {
    if out.is_null() {
        return Err(fail(QonsagerStatus::NullPointer, "null output pointer"));
    }
    let c = CString::new(s).map_err(|_| fail(QonsagerStatus::Internal, "string contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, QonsagerStatus> {
    p.as_ref()
        .ok_or_else(|| fail(QonsagerStatus::NullPointer, "null handle"))
}

fn parse_route(s: &str) -> Result<Route, QonsagerStatus> {
    s.parse::<Route>()
        .map_err(|e| fail(QonsagerStatus::InvalidArgument, &e.to_string()))
}

/// Message for the most recent failure on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn qonsager_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qonsager_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the order-`r` table by `route` (`genfun`, `closed`, `closed-literal`,
/// `recursion` or `lusztig`).
///
/// # Safety
/// `route` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qonsager_coeffs_new(
    r: u32,
    route: *const c_char,
    out: *mut *mut QonsagerCoeffTable,
) -> QonsagerStatus {
    guard(|| {
        let route = parse_route(read_str(route)?)?;
        let inner = lib(coeffs_by_route(r as usize, route))?;
        write_out(out, QonsagerCoeffTable { inner })
    })
}

/// Order `r` of the table, or 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn qonsager_coeffs_r(t: *const QonsagerCoeffTable) -> u32 {
    t.as_ref().map_or(0, |t| t.inner.r() as u32)
}

/// Entry `(p, j)` in the canonical Laurent string form.
///
/// # Safety
/// `t` must be a live table handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qonsager_coeffs_entry(
    t: *const QonsagerCoeffTable,
    p: u32,
    j: u32,
    out: *mut *mut c_char,
) -> QonsagerStatus {
    guard(|| {
        let t = borrow(t)?;
        let v = lib(t.inner.entry(p as usize, j as usize))?;
        write_string(out, v.to_string())
    })
}

/// # Safety
/// `t` must be null or a handle from [`qonsager_coeffs_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qonsager_coeffs_free(t: *mut QonsagerCoeffTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Parses an expression such as `A^3 A* - [3]_q A^2 A* A + rho0 A* A`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qonsager_poly_parse(text: *const c_char, out: *mut *mut QonsagerPoly) -> QonsagerStatus {
    guard(|| {
        let inner = lib(parse_expression(read_str(text)?))?;
        write_out(out, QonsagerPoly { inner })
    })
}

/// Normal form of `x` as a new handle.
///
/// # Safety
/// `x` must be a live polynomial handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qonsager_poly_normal_form(
    x: *const QonsagerPoly,
    out: *mut *mut QonsagerPoly,
) -> QonsagerStatus {
    guard(|| {
        let x = borrow(x)?;
        write_out(
            out,
            QonsagerPoly {
                inner: normal_form(&x.inner),
            },
        )
    })
}

/// Canonical printed form of `x`.
///
/// # Safety
/// `x` must be a live polynomial handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qonsager_poly_to_string(x: *const QonsagerPoly, out: *mut *mut c_char) -> QonsagerStatus {
    guard(|| {
        let x = borrow(x)?;
        write_string(out, x.inner.to_string())
    })
}

/// Number of terms of `x`, or 0 for a null handle.
///
/// # Safety
/// `x` must be null or a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn qonsager_poly_term_count(x: *const QonsagerPoly) -> usize {
    x.as_ref().map_or(0, |x| x.inner.len())
}

/// # Safety
/// `x` must be null or a polynomial handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qonsager_poly_free(x: *mut QonsagerPoly) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Builds the order-`r` relation from `route` and reduces it to normal form.
///
/// # Safety
/// `route` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qonsager_verify(
    r: u32,
    route: *const c_char,
    out: *mut *mut QonsagerReport,
) -> QonsagerStatus {
    guard(|| {
        let route = parse_route(read_str(route)?)?;
        let inner = lib(verify_relation(r as usize, route))?;
        write_out(out, QonsagerReport { inner })
    })
}

/// 1 if the residual is zero, 0 otherwise (including a null handle).
///
/// # Safety
/// `rep` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qonsager_report_is_zero(rep: *const QonsagerReport) -> i32 {
    rep.as_ref().map_or(0, |r| i32::from(r.inner.is_zero()))
}

/// Number of terms left after reduction, or 0 for a null handle.
///
/// # Safety
/// `rep` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qonsager_report_residual_terms(rep: *const QonsagerReport) -> usize {
    rep.as_ref().map_or(0, |r| r.inner.residual_term_count)
}

/// The report as a JSON object.
///
/// # Safety
/// `rep` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qonsager_report_to_json(rep: *const QonsagerReport, out: *mut *mut c_char) -> QonsagerStatus {
    guard(|| {
        let rep = borrow(rep)?;
        write_string(out, rep.inner.to_json())
    })
}

/// # Safety
/// `rep` must be null or a report handle from [`qonsager_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qonsager_report_free(rep: *mut QonsagerReport) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}
