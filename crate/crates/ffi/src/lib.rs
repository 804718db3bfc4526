//! C interface to `pivhopf`.
//!
//! Objects cross the boundary as opaque handles that must be released with
//! their `*_free` function. Every call returns a [`PhStatus`]; on failure the
//! message is available from [`ph_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use pivhopf::exactnum::{ExactMatrix, Scalar};
use pivhopf::freehopf::{build_presentation, verify_hopf};
use pivhopf::intertwine::{tensor_objects, Intertwiner, ObjectJson};
use pivhopf::monadlim::truncate;
use pivhopf::pivpair::PivotalPair;
use pivhopf::suite::run_suite;
use pivhopf::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhStatus {
    Ok = 0,
    /// The call succeeded but a mathematical check failed.
    CheckFailed = 1,
    /// Malformed input: bad JSON, shapes, or arguments.
    InvalidInput = 2,
    /// A computation could not be carried out, e.g. a singular matrix.
    MathError = 3,
    NullPointer = 4,
    Panic = 5,
}

/// A pivotal pair.
pub struct PhPair(Arc<PivotalPair>);

/// An object intertwined with a pivotal pair.
pub struct PhObject(Intertwiner);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> PhStatus {
    set_error(e.to_string());
    if e.is_input_error() {
        PhStatus::InvalidInput
    } else {
        PhStatus::MathError
    }
}

fn guard(f: impl FnOnce() -> PhStatus) -> PhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            PhStatus::Panic
        }
    }
}

fn null(what: &str) -> PhStatus {
    set_error(format!("{what} is null"));
    PhStatus::NullPointer
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PhStatus> {
    if s.is_null() {
        return Err(null("string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not UTF-8");
        PhStatus::InvalidInput
    })
}

/// `n×n` matrix from row-major numerators and optional denominators.
unsafe fn read_matrix(n: usize, num: *const i64, den: *const i64) -> Result<ExactMatrix, PhStatus> {
    if num.is_null() {
        return Err(null("numerators"));
    }
    let nums = std::slice::from_raw_parts(num, n * n);
    let dens = (!den.is_null()).then(|| std::slice::from_raw_parts(den, n * n));
    if dens.is_some_and(|d| d.contains(&0)) {
        set_error("zero denominator");
        return Err(PhStatus::InvalidInput);
    }
    Ok(ExactMatrix::from_fn(n, n, |i, j| {
        let k = i * n + j;
        Scalar::ratio(nums[k], dens.map_or(1, |d| d[k]))
    }))
}

fn write_string(out: *mut *mut c_char, s: String) -> PhStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            PhStatus::Ok
        }
        Err(_) => {
            set_error("output contains a NUL byte");
            PhStatus::MathError
        }
    }
}

fn verdict(passed: bool) -> PhStatus {
    if passed {
        PhStatus::Ok
    } else {
        PhStatus::CheckFailed
    }
}

/// The message of the last failed call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn ph_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ph_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build the pair of an invertible `n×n` matrix. `den` may be null for integer entries.
///
/// # Safety
/// `num` (and `den` if non-null) must point to `n*n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ph_pair_from_matrix(
    n: usize,
    num: *const i64,
    den: *const i64,
    out: *mut *mut PhPair,
) -> PhStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let q = match read_matrix(n, num, den) {
            Ok(q) => q,
            Err(s) => return s,
        };
        match PivotalPair::from_matrix(n, &q) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(PhPair(Arc::new(p))));
                PhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Parse a pair from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ph_pair_from_json(json: *const c_char, out: *mut *mut PhPair) -> PhStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match serde_json::from_str::<PivotalPair>(text) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(PhPair(Arc::new(p))));
                PhStatus::Ok
            }
            Err(e) => fail(e.into()),
        }
    })
}

/// Check the snake identities: `Ok` when all hold, `CheckFailed` otherwise.
///
/// # Safety
/// `pair` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ph_pair_check(pair: *const PhPair) -> PhStatus {
    guard(|| match pair.as_ref() {
        Some(p) => {
            let rep = p.0.check();
            if let Some(c) = rep.failures().next() {
                set_error(format!("failed: {}", c.name));
            }
            verdict(rep.passed)
        }
        None => null("pair"),
    })
}

/// Serialize a pair; free the result with [`ph_string_free`].
///
/// # Safety
/// `pair` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ph_pair_to_json(pair: *const PhPair, out: *mut *mut c_char) -> PhStatus {
    guard(|| match (pair.as_ref(), out.is_null()) {
        (Some(p), false) => match serde_json::to_string(&*p.0) {
            Ok(s) => write_string(out, s),
            Err(e) => fail(e.into()),
        },
        _ => null("pair or out"),
    })
}

/// # Safety
/// `pair` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ph_pair_free(pair: *mut PhPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Parse an object `{"dimX", "sigma", "pair" | "Q"}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ph_object_from_json(json: *const c_char, out: *mut *mut PhObject) -> PhStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let built = serde_json::from_str::<ObjectJson>(text)
            .map_err(Error::from)
            .and_then(ObjectJson::build);
        match built {
            Ok(o) => {
                *out = Box::into_raw(Box::new(PhObject(o)));
                PhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The carrier dimension of an object, or 0 for a null handle.
///
/// # Safety
/// `obj` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ph_object_dim(obj: *const PhObject) -> usize {
    obj.as_ref().map_or(0, |o| o.0.dim_x())
}

/// Check that the induced `Q`-intertwining is inverse to `σ`.
///
/// # Safety
/// `obj` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ph_object_check(obj: *const PhObject) -> PhStatus {
    guard(|| match obj.as_ref() {
        Some(o) => {
            let rep = o.0.check();
            if let Some(c) = rep.failures().next() {
                set_error(format!("failed: {}", c.name));
            }
            verdict(rep.passed)
        }
        None => null("object"),
    })
}

/// The tensor product `a⊗b`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ph_object_tensor(
    a: *const PhObject,
    b: *const PhObject,
    out: *mut *mut PhObject,
) -> PhStatus {
    guard(|| match (a.as_ref(), b.as_ref(), out.is_null()) {
        (Some(a), Some(b), false) => match tensor_objects(&a.0, &b.0) {
            Ok(t) => {
                *out = Box::into_raw(Box::new(PhObject(t)));
                PhStatus::Ok
            }
            Err(e) => fail(e),
        },
        _ => null("object or out"),
    })
}

/// Serialize an object; free the result with [`ph_string_free`].
///
/// # Safety
/// `obj` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ph_object_to_json(obj: *const PhObject, out: *mut *mut c_char) -> PhStatus {
    guard(|| match (obj.as_ref(), out.is_null()) {
        (Some(o), false) => match serde_json::to_string(&ObjectJson::from(&o.0)) {
            Ok(s) => write_string(out, s),
            Err(e) => fail(e.into()),
        },
        _ => null("object or out"),
    })
}

/// # Safety
/// `obj` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ph_object_free(obj: *mut PhObject) {
    if !obj.is_null() {
        drop(Box::from_raw(obj));
    }
}

/// Verify the Hopf algebra axioms of the matrix `Q` up to `degree`.
/// When `report` is non-null it receives the JSON report.
///
/// # Safety
/// `num` (and `den` if non-null) must point to `n*n` values; `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ph_hopf_verify(
    n: usize,
    num: *const i64,
    den: *const i64,
    degree: usize,
    report: *mut *mut c_char,
) -> PhStatus {
    guard(|| {
        let q = match read_matrix(n, num, den) {
            Ok(q) => q,
            Err(s) => return s,
        };
        let rep = match build_presentation(n, &q).and_then(|p| verify_hopf(&p, degree)) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        if !report.is_null() {
            match serde_json::to_string(&rep) {
                Ok(s) => {
                    let st = write_string(report, s);
                    if st != PhStatus::Ok {
                        return st;
                    }
                }
                Err(e) => return fail(e.into()),
            }
        }
        verdict(rep.passed)
    })
}

/// `dim T_{≤degree}(X)` for `dim X = dim_x` over the pair of `Q`.
///
/// # Safety
/// `num` (and `den` if non-null) must point to `n*n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ph_monad_quotient_dim(
    n: usize,
    num: *const i64,
    den: *const i64,
    dim_x: usize,
    degree: usize,
    out: *mut usize,
) -> PhStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let q = match read_matrix(n, num, den) {
            Ok(q) => q,
            Err(s) => return s,
        };
        let dim = PivotalPair::from_matrix(n, &q).and_then(|p| truncate(&Arc::new(p), dim_x, degree));
        match dim {
            Ok(t) => {
                *out = t.dim();
                PhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Run the seeded verification battery and return its JSON report.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ph_suite_run(seed: u64, out: *mut *mut c_char) -> PhStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let rep = run_suite(seed);
        match serde_json::to_string(&rep) {
            Ok(s) => {
                let st = write_string(out, s);
                if st == PhStatus::Ok {
                    verdict(rep.passed)
                } else {
                    st
                }
            }
            Err(e) => fail(e.into()),
        }
    })
}
