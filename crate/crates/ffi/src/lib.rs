//! C interface to `daerealize`.
//!
//! Objects are opaque handles owned by the caller and released with the
//! matching `*_free` function. Every entry point returns a [`DrStatus`];
//! on failure, [`dr_last_error`] describes the problem until the next call
//! on the same thread. Strings returned through out-parameters are owned by
//! the caller and released with [`dr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use daerealize::arith::MPoly;
use daerealize::cli::{parse_dae, SystemSource};
use daerealize::dynsys::{io_equation, verify_report, DynSystem, IoOutcome};
use daerealize::realize::{realize, Mode, RealizeError, RealizeOptions, Tag};

/// Result codes of every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON, expression or equation.
    Parse = 3,
    /// Well-formed input that violates a precondition of the operation.
    Invalid = 4,
    /// The computation is outside the implemented scope.
    Unsupported = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DrMode {
    Auto = 0,
    OrderZero = 1,
    FirstOrder = 2,
    InputAffine = 3,
}

/// Verdict of [`dr_realize`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DrOutcome {
    Realized = 0,
    No = 1,
    Unsupported = 2,
}

/// A state-space system `x' = f(x, u)`, `y = g(x, u)`.
pub struct DrSystem {
    source: SystemSource,
    system: DynSystem,
}

/// A differential polynomial in `y`, `u` and parameters.
pub struct DrEquation {
    poly: MPoly,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(DrStatus, String);

type Outcome = Result<(), Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> DrStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DrStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            DrStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(DrStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(DrStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(DrStatus::NullPointer, format!("{what} is null")))
}

fn check_out<T>(p: *mut T) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(DrStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message describing the last failure on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a system document `{states, input, params, rates, output}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_system_from_json(json: *const c_char, out: *mut *mut DrSystem) -> DrStatus {
    guard(|| {
        check_out(out)?;
        let source = SystemSource::from_json(text(json, "json")?).map_err(|e| Failure(DrStatus::Parse, e.to_string()))?;
        let system = source.to_system().map_err(|e| Failure(DrStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(DrSystem { source, system }));
        Ok(())
    })
}

/// Writes the system document of `sys` to `*out`.
///
/// # Safety
/// `sys` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_system_to_json(sys: *const DrSystem, out: *mut *mut c_char) -> DrStatus {
    guard(|| {
        check_out(out)?;
        *out = c_string(deref(sys, "system")?.source.to_json());
        Ok(())
    })
}

/// # Safety
/// `sys` must be null or come from this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dr_system_free(sys: *mut DrSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Parses an equation in the text format of the command line tool.
/// Parameters declared by `params_from` (nullable) are recognized as well.
///
/// # Safety
/// `src` must be a NUL-terminated string; `params_from` null or valid;
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dr_equation_parse(
    src: *const c_char,
    params_from: *const DrSystem,
    out: *mut *mut DrEquation,
) -> DrStatus {
    guard(|| {
        check_out(out)?;
        let params = params_from.as_ref().map(|s| s.source.param_vars()).unwrap_or_default();
        let poly = parse_dae(text(src, "equation")?, &params).map_err(|e| Failure(DrStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(DrEquation { poly }));
        Ok(())
    })
}

/// Writes `eq` as text to `*out`.
///
/// # Safety
/// `eq` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_equation_to_string(eq: *const DrEquation, out: *mut *mut c_char) -> DrStatus {
    guard(|| {
        check_out(out)?;
        *out = c_string(deref(eq, "equation")?.poly.to_string());
        Ok(())
    })
}

/// # Safety
/// `eq` must be null or come from this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dr_equation_free(eq: *mut DrEquation) {
    if !eq.is_null() {
        drop(Box::from_raw(eq));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn dr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Sets `*holds` to whether `eq` is the input-output equation of `sys`.
///
/// # Safety
/// Handles must come from this library; `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_verify(sys: *const DrSystem, eq: *const DrEquation, holds: *mut bool) -> DrStatus {
    guard(|| {
        check_out(holds)?;
        let (sys, eq) = (deref(sys, "system")?, deref(eq, "equation")?);
        let v = verify_report(&sys.system, &eq.poly).map_err(|e| Failure(DrStatus::Invalid, e.to_string()))?;
        *holds = v.holds();
        Ok(())
    })
}

/// Computes the input-output equation of `sys`.
///
/// # Safety
/// `sys` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_io_equation(sys: *const DrSystem, out: *mut *mut DrEquation) -> DrStatus {
    guard(|| {
        check_out(out)?;
        match io_equation(&deref(sys, "system")?.system) {
            IoOutcome::Equation { p, .. } => {
                *out = Box::into_raw(Box::new(DrEquation { poly: p }));
                Ok(())
            }
            IoOutcome::Unsupported(r) => Err(Failure(DrStatus::Unsupported, r)),
        }
    })
}

/// Searches for a realization of `eq`. On `DR_OUTCOME_REALIZED`, `*system`
/// receives a new handle; otherwise it is set to null and [`dr_last_error`]
/// is left empty unless the status is an error.
///
/// # Safety
/// `eq` must come from this library; `outcome` and `system` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_realize(
    eq: *const DrEquation,
    mode: DrMode,
    outcome: *mut DrOutcome,
    system: *mut *mut DrSystem,
) -> DrStatus {
    guard(|| {
        check_out(outcome)?;
        check_out(system)?;
        *system = ptr::null_mut();
        let mode = match mode {
            DrMode::Auto => Mode::Auto,
            DrMode::OrderZero => Mode::OrderZero,
            DrMode::FirstOrder => Mode::FirstOrder,
            DrMode::InputAffine => Mode::InputAffine,
        };
        let out = realize(&deref(eq, "equation")?.poly, &RealizeOptions::with_mode(mode)).map_err(|e| match e {
            RealizeError::Validation(_) | RealizeError::Precondition(_) => Failure(DrStatus::Invalid, e.to_string()),
        })?;
        *outcome = match out.tag {
            Tag::Realized => DrOutcome::Realized,
            Tag::No => DrOutcome::No,
            Tag::Unsupported => DrOutcome::Unsupported,
        };
        if let Some(s) = out.system {
            *system = Box::into_raw(Box::new(DrSystem { source: SystemSource::from_system(&s), system: s }));
        }
        Ok(())
    })
}
