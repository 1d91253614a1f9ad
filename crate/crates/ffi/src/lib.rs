//! C ABI over the corank library.
//!
//! Exact values cross the boundary as opaque `CorankNumber` handles holding
//! a rational; render them with `corank_number_to_string`. Every fallible
//! call returns a `CorankStatus`; on failure the message is available from
//! `corank_last_error_message` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use corank::bounds::genus_upper;
use corank::classmass::{eichler_mass, h_minus, mass, FieldFamily, MassReport};
use corank::util::fmt_rational;
use corank::Error;
use num_rational::BigRational;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorankStatus {
    /// Success.
    Ok = 0,
    /// Input outside the operation's domain.
    InvalidArgument = 1,
    /// An exact computation produced an impossible value.
    InternalInconsistency = 2,
    /// A decision procedure reached its cap.
    Undecided = 3,
    /// A required pointer was null.
    NullPointer = 4,
    /// A Rust panic was caught at the boundary.
    Panic = 5,
}

/// An exact rational number.
pub struct CorankNumber(BigRational);

/// Masses and Euler characteristics for one n.
pub struct CorankMassReport(MassReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: CorankStatus, msg: impl Into<String>) -> CorankStatus {
    set_error(msg.into());
    status
}

fn status_of(e: Error) -> CorankStatus {
    let status = match e {
        Error::InvalidArgument(_) => CorankStatus::InvalidArgument,
        Error::InternalInconsistency(_) => CorankStatus::InternalInconsistency,
        Error::Undecided(_) => CorankStatus::Undecided,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> CorankStatus) -> CorankStatus {
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(CorankStatus::Panic, "panic inside corank"))
}

unsafe fn store<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn with_number<F>(out: *mut *mut CorankNumber, f: F) -> CorankStatus
where
    F: FnOnce() -> corank::Result<BigRational>,
{
    if out.is_null() {
        return fail(CorankStatus::NullPointer, "output pointer is null");
    }
    *out = ptr::null_mut();
    guard(|| match f() {
        Ok(q) => {
            store(out, CorankNumber(q));
            CorankStatus::Ok
        }
        Err(e) => status_of(e),
    })
}

/// Relative class number h⁻ of the field named by `family` (`pow2`,
/// `3pow2`, `sqrt3`, `sqrtp`, `sqrtuplus`) at parameter `s`.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn corank_hminus(
    family: *const c_char,
    s: u32,
    out: *mut *mut CorankNumber,
) -> CorankStatus {
    if family.is_null() {
        return fail(CorankStatus::NullPointer, "family is null");
    }
    let Ok(name) = CStr::from_ptr(family).to_str() else {
        return fail(CorankStatus::InvalidArgument, "family is not UTF-8");
    };
    with_number(out, || {
        Ok(BigRational::from_integer(h_minus(FieldFamily::from_cli(
            name, s,
        )?)?))
    })
}

/// Eichler mass M_n for n = 2^s or 3·2^s, n ≥ 8.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn corank_mass(n: u64, out: *mut *mut CorankNumber) -> CorankStatus {
    with_number(out, || mass(n))
}

/// Upper bound 24·n·M_n on the genus of the quotient graph.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn corank_genus_upper(n: u64, out: *mut *mut CorankNumber) -> CorankStatus {
    with_number(out, || {
        genus_upper(n)?
            .exact()
            .ok_or_else(|| Error::InternalInconsistency("upper bound is not exact".into()))
    })
}

/// Decimal rendering `p/q` or `p`; free with `corank_string_free`.
/// Returns NULL for a NULL handle.
///
/// # Safety
/// `num` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn corank_number_to_string(num: *const CorankNumber) -> *mut c_char {
    match num.as_ref() {
        Some(n) => CString::new(fmt_rational(&n.0)).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// 1 if the number is an integer, 0 otherwise or for NULL.
///
/// # Safety
/// `num` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn corank_number_is_integer(num: *const CorankNumber) -> i32 {
    num.as_ref().map_or(0, |n| n.0.is_integer() as i32)
}

/// Releases a number handle. NULL is ignored.
///
/// # Safety
/// `num` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn corank_number_free(num: *mut CorankNumber) {
    if !num.is_null() {
        drop(Box::from_raw(num));
    }
}

/// Mass report for n.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn corank_mass_report(
    n: u64,
    out: *mut *mut CorankMassReport,
) -> CorankStatus {
    if out.is_null() {
        return fail(CorankStatus::NullPointer, "output pointer is null");
    }
    *out = ptr::null_mut();
    guard(|| match eichler_mass(n) {
        Ok(r) => {
            store(out, CorankMassReport(r));
            CorankStatus::Ok
        }
        Err(e) => status_of(e),
    })
}

/// One field of a mass report: `zeta_minus1`, `M`, `vm_gr`, `em_gr`,
/// `vm_gr_bar`, `em_gr_bar`, `euler_psu` or `euler_pu`.
///
/// # Safety
/// `report` must be a live handle, `field` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn corank_mass_report_field(
    report: *const CorankMassReport,
    field: *const c_char,
    out: *mut *mut CorankNumber,
) -> CorankStatus {
    let (Some(r), false) = (report.as_ref(), field.is_null()) else {
        return fail(CorankStatus::NullPointer, "report or field is null");
    };
    let name = CStr::from_ptr(field).to_string_lossy().into_owned();
    let m = &r.0;
    with_number(out, || {
        Ok(match name.as_str() {
            "zeta_minus1" => m.zeta_minus_one.clone(),
            "M" => m.mass.clone(),
            "vm_gr" => m.vm_gr.clone(),
            "em_gr" => m.em_gr.clone(),
            "vm_gr_bar" => m.vm_gr_bar.clone(),
            "em_gr_bar" => m.em_gr_bar.clone(),
            "euler_psu" => m.euler_psu.clone(),
            "euler_pu" => m.euler_pu.clone(),
            _ => return Err(Error::InvalidArgument(format!("unknown mass field {name}"))),
        })
    })
}

/// Releases a mass report. NULL is ignored.
///
/// # Safety
/// `report` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn corank_mass_report_free(report: *mut CorankMassReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn corank_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn corank_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_out_pointer() {
        let st = unsafe { corank_mass(8, ptr::null_mut()) };
        assert_eq!(st, CorankStatus::NullPointer);
        assert!(!corank_last_error_message().is_null());
    }
}
