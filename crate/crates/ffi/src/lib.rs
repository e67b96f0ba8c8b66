//! C ABI over the `eigenpencil` library.
//!
//! Pencils cross the boundary as opaque `EpPencil` handles; point sets and pencils can also
//! be exchanged in the library's text formats. Every fallible call returns an `EpStatus`
//! and, on failure, leaves a message retrievable with `ep_last_error` on the same thread.
//! Strings returned through `char **` must be released with `ep_string_free`, handles with
//! `ep_pencil_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eigenpencil::canonical::build_canonical;
use eigenpencil::eigen::{eigenvalues, eigenvectors_for, EigenvalueSource};
use eigenpencil::io::{parse_pencil, parse_quadrics, write_pencil, write_points, PointSet};
use eigenpencil::projective::DEFAULT_ENUM_BUDGET;
use eigenpencil::realize::{realize_variety, squareize};
use eigenpencil::reflect::{sigma, sigma_minus};
use eigenpencil::{Error, Field, MatrixPencil};

/// Result of every fallible call. Values match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpStatus {
    Ok = 0,
    /// Null pointer, invalid UTF-8 or an unusable argument.
    InvalidArgument = 1,
    /// Malformed pencil or quadrics text.
    Format = 2,
    /// Mathematical precondition failed (e.g. pencil not reduced, budget exceeded).
    Domain = 3,
    /// Unexpected internal failure.
    Internal = 4,
}

/// Opaque matrix pencil.
pub struct EpPencil {
    inner: MatrixPencil,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Fail(EpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = if e.is_format_error() { EpStatus::Format } else { EpStatus::Domain };
        Fail(status, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> EpStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => EpStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            EpStatus::Internal
        }
    }
}

unsafe fn text_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(EpStatus::InvalidArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(EpStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn pencil_arg<'a>(p: *const EpPencil) -> Result<&'a MatrixPencil, Fail> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Fail(EpStatus::InvalidArgument, "pencil handle is null".into()))
}

unsafe fn put_pencil(out: *mut *mut EpPencil, p: MatrixPencil) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(EpStatus::InvalidArgument, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(EpPencil { inner: p }));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(EpStatus::InvalidArgument, "output pointer is null".into()));
    }
    *out = CString::new(s).expect("formats contain no nul").into_raw();
    Ok(())
}

fn budget_or_default(budget: u64) -> u64 {
    if budget == 0 {
        DEFAULT_ENUM_BUDGET
    } else {
        budget
    }
}

/// Message for the most recent failure on this thread, or NULL. Valid until the next
/// library call on the same thread.
#[no_mangle]
pub extern "C" fn ep_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ep_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `p` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ep_pencil_free(p: *mut EpPencil) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parses the pencil text format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_pencil_parse(text: *const c_char, out: *mut *mut EpPencil) -> EpStatus {
    guard(|| {
        let p = parse_pencil(text_arg(text, "text")?)?;
        put_pencil(out, p)
    })
}

/// Renders a pencil in the canonical text format.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_pencil_to_text(p: *const EpPencil, out: *mut *mut c_char) -> EpStatus {
    guard(|| put_string(out, write_pencil(pencil_arg(p)?)))
}

/// Number of matrices and the dimension vector `(a, b)`.
///
/// # Safety
/// `p` must be a live handle; the output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_pencil_dims(p: *const EpPencil, n: *mut usize, a: *mut usize, b: *mut usize) -> EpStatus {
    guard(|| {
        let p = pencil_arg(p)?;
        if n.is_null() || a.is_null() || b.is_null() {
            return Err(Fail(EpStatus::InvalidArgument, "output pointer is null".into()));
        }
        *n = p.n();
        *a = p.a();
        *b = p.b();
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_pencil_is_reduced(p: *const EpPencil, out: *mut bool) -> EpStatus {
    guard(|| {
        let p = pencil_arg(p)?;
        if out.is_null() {
            return Err(Fail(EpStatus::InvalidArgument, "output pointer is null".into()));
        }
        *out = p.is_reduced();
        Ok(())
    })
}

/// The canonical module for `n` variables over `field` (`"rational"` or `"gf<p>"`).
///
/// # Safety
/// `field` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_canonical(n: usize, field: *const c_char, out: *mut *mut EpPencil) -> EpStatus {
    guard(|| {
        let field: Field = text_arg(field, "field")?
            .parse()
            .map_err(|e: Error| Fail(EpStatus::InvalidArgument, e.to_string()))?;
        put_pencil(out, build_canonical(n, field)?.into_pencil())
    })
}

/// Realizes the zero set of a quadric system given in the quadrics text format.
///
/// # Safety
/// `quadrics` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_realize(quadrics: *const c_char, out: *mut *mut EpPencil) -> EpStatus {
    guard(|| {
        let system = parse_quadrics(text_arg(quadrics, "quadrics")?)?;
        let r = realize_variety(system.n, system.field, &system.quadrics)?;
        put_pencil(out, r.pencil)
    })
}

/// All eigenvalues of a reduced pencil over a prime field, as point-set text.
/// A `budget` of 0 selects the default enumeration limit.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_eigenvalues(p: *const EpPencil, budget: u64, out: *mut *mut c_char) -> EpStatus {
    guard(|| {
        let p = pencil_arg(p)?;
        let values = eigenvalues(p, &EigenvalueSource::All, budget_or_default(budget))?;
        put_string(out, write_points(&PointSet::new(p.n(), p.field(), values)))
    })
}

/// The eigenvector variety of a reduced pencil over a prime field, as point-set text.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_eigenvectors(p: *const EpPencil, budget: u64, out: *mut *mut c_char) -> EpStatus {
    guard(|| {
        let p = pencil_arg(p)?;
        let points = eigenvectors_for(p, &EigenvalueSource::All, budget_or_default(budget))?;
        put_string(out, write_points(&PointSet::new(p.a(), p.field(), points)))
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_sigma(p: *const EpPencil, out: *mut *mut EpPencil) -> EpStatus {
    guard(|| put_pencil(out, sigma(pencil_arg(p)?)))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_sigma_minus(p: *const EpPencil, out: *mut *mut EpPencil) -> EpStatus {
    guard(|| put_pencil(out, sigma_minus(pencil_arg(p)?)))
}

/// Square pencil with the same bristles, using every eigenvalue of a prime field.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_squareize(p: *const EpPencil, budget: u64, out: *mut *mut EpPencil) -> EpStatus {
    guard(|| {
        let p = pencil_arg(p)?;
        put_pencil(out, squareize(p, &EigenvalueSource::All, budget_or_default(budget))?)
    })
}
