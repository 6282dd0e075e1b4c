//! C ABI for the poisson23 engine.
//!
//! Algebras are opaque handles created by [`p23_algebra_parse_json`] and
//! released by [`p23_algebra_free`]. Strings returned through out-parameters
//! are owned by the caller and must be released with [`p23_string_free`].
//! Every fallible function returns a [`P23Status`]; on failure a
//! human-readable message for the calling thread is available through
//! [`p23_last_error`]. The generated header lives at `include/poisson23.h`.

use poisson23::algebra::{Algebra, DEFAULT_DIMENSION_CAP};
use poisson23::{analysis, format, report};
use serde::Serialize;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P23Status {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The algebra file failed to parse or validate.
    ParseError = 2,
    /// The dimension exceeds the axiom-scan cap.
    DimensionCap = 3,
    InternalError = 4,
}

/// Opaque algebra handle.
pub struct P23Algebra {
    inner: Algebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let sanitized = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error").expect("static string"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(sanitized));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn string_out(out: *mut *mut c_char, value: String) -> P23Status {
    match CString::new(value) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            P23Status::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte".to_string());
            P23Status::InternalError
        }
    }
}

fn json_out<T: Serialize>(out: *mut *mut c_char, value: &T) -> P23Status {
    match serde_json::to_string(value) {
        Ok(s) => string_out(out, s),
        Err(e) => {
            set_error(format!("serialization failed: {e}"));
            P23Status::InternalError
        }
    }
}

/// Last error message for this thread, or null when none is recorded.
/// The returned string must be released with [`p23_string_free`].
#[no_mangle]
pub extern "C" fn p23_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned by a `p23_*` function and not
/// yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn p23_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses an algebra-definition file (JSON text) into a handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn p23_algebra_parse_json(
    text: *const c_char,
    out: *mut *mut P23Algebra,
) -> P23Status {
    if text.is_null() || out.is_null() {
        return P23Status::NullArgument;
    }
    clear_error();
    let bytes = unsafe { CStr::from_ptr(text) }.to_bytes();
    match format::parse_algebra_file(bytes) {
        Ok(inner) => {
            let handle = Box::new(P23Algebra { inner });
            unsafe { *out = Box::into_raw(handle) };
            P23Status::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            P23Status::ParseError
        }
    }
}

/// Releases an algebra handle.
///
/// # Safety
/// `alg` must be a handle from this library not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn p23_algebra_free(alg: *mut P23Algebra) {
    if !alg.is_null() {
        drop(unsafe { Box::from_raw(alg) });
    }
}

/// Dimension of the algebra, through an out-parameter.
///
/// # Safety
/// `alg` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn p23_algebra_dim(alg: *const P23Algebra, out: *mut u32) -> P23Status {
    if alg.is_null() || out.is_null() {
        return P23Status::NullArgument;
    }
    unsafe { *out = (*alg).inner.dim() as u32 };
    P23Status::Ok
}

/// Canonical file serialization of the algebra.
///
/// # Safety
/// `alg` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn p23_algebra_write_json(
    alg: *const P23Algebra,
    out: *mut *mut c_char,
) -> P23Status {
    if alg.is_null() || out.is_null() {
        return P23Status::NullArgument;
    }
    clear_error();
    let bytes = format::write_algebra_file(unsafe { &(*alg).inner });
    match String::from_utf8(bytes) {
        Ok(text) => string_out(out, text),
        Err(_) => P23Status::InternalError,
    }
}

/// Adjoins a multiplicative identity, producing a new handle.
///
/// # Safety
/// `alg` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn p23_algebra_unitalize(
    alg: *const P23Algebra,
    out: *mut *mut P23Algebra,
) -> P23Status {
    if alg.is_null() || out.is_null() {
        return P23Status::NullArgument;
    }
    let unital = unsafe { &(*alg).inner }.unitalize();
    let handle = Box::new(P23Algebra {
        inner: unital.algebra,
    });
    unsafe { *out = Box::into_raw(handle) };
    P23Status::Ok
}

#[derive(Serialize)]
struct CheckJson {
    passed: bool,
    char_two: bool,
    violations: Vec<report::ViolationJson>,
}

/// Runs the axiom scan. `max_dim` of 0 selects the default cap. The JSON
/// result carries `passed` and the violation list; a failing algebra still
/// returns `Ok` (the failure is data, not an error).
///
/// # Safety
/// `alg` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn p23_check_axioms_json(
    alg: *const P23Algebra,
    max_dim: u32,
    out: *mut *mut c_char,
) -> P23Status {
    if alg.is_null() || out.is_null() {
        return P23Status::NullArgument;
    }
    clear_error();
    let algebra = unsafe { &(*alg).inner };
    let cap = if max_dim == 0 {
        DEFAULT_DIMENSION_CAP
    } else {
        max_dim as usize
    };
    match algebra.check_axioms_capped(cap) {
        Ok(r) => json_out(
            out,
            &CheckJson {
                passed: r.passed(),
                char_two: algebra.field().is_char_two(),
                violations: report::violations_json(&r),
            },
        ),
        Err(e) => {
            set_error(e.to_string());
            P23Status::DimensionCap
        }
    }
}

#[derive(Serialize)]
struct SchurFfiJson {
    dim: usize,
    field: String,
    center: report::SubspaceJson,
    codim_d: usize,
    derived: report::SubspaceJson,
    #[serde(rename = "K")]
    k: report::SubspaceJson,
    #[serde(rename = "dim_K")]
    dim_k: usize,
    bound: u64,
    bound_ok: bool,
    #[serde(rename = "K_is_lie_ideal")]
    k_is_lie_ideal: bool,
    quotient_abelian: bool,
    generator_count_check: bool,
    closure_one_round: bool,
}

/// Runs the Schur-type analysis and returns the full report as JSON.
///
/// # Safety
/// `alg` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn p23_schur_json(
    alg: *const P23Algebra,
    out: *mut *mut c_char,
) -> P23Status {
    if alg.is_null() || out.is_null() {
        return P23Status::NullArgument;
    }
    clear_error();
    let algebra = unsafe { &(*alg).inner };
    let r = analysis::schur_analysis(algebra);
    json_out(
        out,
        &SchurFfiJson {
            dim: algebra.dim(),
            field: algebra.field().to_string(),
            center: report::SubspaceJson::from_subspace(&r.center),
            codim_d: r.codim_d,
            derived: report::SubspaceJson::from_subspace(&r.derived),
            k: report::SubspaceJson::from_subspace(&r.k),
            dim_k: r.dim_k,
            bound: r.bound,
            bound_ok: r.bound_ok,
            k_is_lie_ideal: r.k_is_lie_ideal,
            quotient_abelian: r.quotient_abelian,
            generator_count_check: r.generator_count_check,
            closure_one_round: r.closure_one_round,
        },
    )
}

#[derive(Serialize)]
struct CenterJson {
    dim: usize,
    codim_d: usize,
    center: report::SubspaceJson,
}

/// Computes the center and returns `{dim, codim_d, center}` as JSON.
///
/// # Safety
/// `alg` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn p23_center_json(
    alg: *const P23Algebra,
    out: *mut *mut c_char,
) -> P23Status {
    if alg.is_null() || out.is_null() {
        return P23Status::NullArgument;
    }
    clear_error();
    let algebra = unsafe { &(*alg).inner };
    let z = analysis::center(algebra);
    json_out(
        out,
        &CenterJson {
            dim: algebra.dim(),
            codim_d: algebra.dim() - z.dim(),
            center: report::SubspaceJson::from_subspace(&z),
        },
    )
}
