//! C interface to `retic-core`.
//!
//! Inputs live behind an opaque [`ReticInput`] handle created from the JSON
//! file formats (`.alg` / `.cms` contents). Every fallible call returns a
//! [`ReticStatus`]; on failure, [`retic_last_error`] describes what went
//! wrong on the calling thread. Strings handed out by the library must be
//! released with [`retic_string_free`], handles with [`retic_input_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use retic_core::algebra::validate_algebra;
use retic_core::corpus::Entry;
use retic_core::reticulation::{Analysis, Variant};
use retic_core::structure::{from_finite_algebra, validate_structure, AlgebraLattice, CommutatorLattice};
use retic_core::summary::{reticulation_summary, spectrum_summary};
use retic_core::verify::{verify_entries, Suite};
use retic_core::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReticStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input failed to parse or validate.
    InvalidInput = 3,
    /// The computation was rejected (e.g. an asymmetric commutator).
    ComputationFailed = 4,
    /// The operation does not apply to this kind of input.
    WrongKind = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

/// Which file format a handle was created from.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReticKind {
    Algebra = 0,
    Structure = 1,
}

/// An algebra or a commutator structure.
pub struct ReticInput {
    entry: Entry,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("nul bytes removed")));
}

fn fail(status: ReticStatus, msg: impl Into<String>) -> ReticStatus {
    set_error(msg);
    status
}

fn from_core(err: Error) -> ReticStatus {
    let status = match err {
        Error::Parse(_)
        | Error::ArityMismatch { .. }
        | Error::RangeViolation(_)
        | Error::MissingTable(_)
        | Error::SignatureMismatch(_)
        | Error::LatticeLawViolation(_)
        | Error::CommutatorAxiomViolation(_)
        | Error::CompactSetViolation(_)
        | Error::JoinDensityViolation(_) => ReticStatus::InvalidInput,
        _ => ReticStatus::ComputationFailed,
    };
    fail(status, err.to_string())
}

/// Runs `f`, turning panics into [`ReticStatus::Panic`].
fn guard(f: impl FnOnce() -> ReticStatus) -> ReticStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(ReticStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, ReticStatus> {
    if p.is_null() {
        return Err(fail(ReticStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(ReticStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> ReticStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            ReticStatus::Ok
        }
        Err(_) => fail(ReticStatus::ComputationFailed, "output contains a nul byte"),
    }
}

fn with_structure<T>(
    entry: &Entry,
    f: impl FnOnce(&dyn CommutatorLattice) -> retic_core::Result<T>,
) -> retic_core::Result<T> {
    match entry {
        Entry::Algebra(a) => f(&AlgebraLattice::new(a.clone())?),
        Entry::Structure(s) => f(s),
    }
}

/// Parses `json` as the given kind. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn retic_input_from_json(
    json: *const c_char,
    kind: ReticKind,
    out: *mut *mut ReticInput,
) -> ReticStatus {
    guard(|| {
        if out.is_null() {
            return fail(ReticStatus::NullArgument, "null output pointer");
        }
        let raw = match read_str(json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let entry = match kind {
            ReticKind::Algebra => validate_algebra(raw).map(Entry::Algebra),
            ReticKind::Structure => validate_structure(raw, None).map(Entry::Structure),
        };
        match entry {
            Ok(entry) => {
                *out = Box::into_raw(Box::new(ReticInput { entry }));
                ReticStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `input` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn retic_input_free(input: *mut ReticInput) {
    if !input.is_null() {
        drop(Box::from_raw(input));
    }
}

/// The kind of input behind a handle.
///
/// # Safety
/// `input` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn retic_input_kind(input: *const ReticInput, out: *mut ReticKind) -> ReticStatus {
    if input.is_null() || out.is_null() {
        return fail(ReticStatus::NullArgument, "null argument");
    }
    *out = match (*input).entry {
        Entry::Algebra(_) => ReticKind::Algebra,
        Entry::Structure(_) => ReticKind::Structure,
    };
    ReticStatus::Ok
}

/// Universe size of an algebra, or number of elements of a structure.
///
/// # Safety
/// `input` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn retic_input_size(input: *const ReticInput, out: *mut usize) -> ReticStatus {
    if input.is_null() || out.is_null() {
        return fail(ReticStatus::NullArgument, "null argument");
    }
    *out = match &(*input).entry {
        Entry::Algebra(a) => a.size(),
        Entry::Structure(s) => s.len(),
    };
    ReticStatus::Ok
}

/// Number of congruences of an algebra, or elements of a structure.
///
/// # Safety
/// `input` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn retic_con_count(input: *const ReticInput, out: *mut usize) -> ReticStatus {
    if input.is_null() || out.is_null() {
        return fail(ReticStatus::NullArgument, "null argument");
    }
    guard(|| match with_structure(&(*input).entry, |s| Ok(s.len())) {
        Ok(n) => {
            *out = n;
            ReticStatus::Ok
        }
        Err(e) => from_core(e),
    })
}

/// The commutator structure of an algebra's congruence lattice, as a new
/// handle of kind [`ReticKind::Structure`].
///
/// # Safety
/// `input` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn retic_structure_from_algebra(
    input: *const ReticInput,
    out: *mut *mut ReticInput,
) -> ReticStatus {
    if input.is_null() || out.is_null() {
        return fail(ReticStatus::NullArgument, "null argument");
    }
    guard(|| {
        let Entry::Algebra(a) = &(*input).entry else {
            return fail(ReticStatus::WrongKind, "input is already a structure");
        };
        match from_finite_algebra(a) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(ReticInput {
                    entry: Entry::Structure(s),
                }));
                ReticStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Primes, radicals and the Zariski topology as JSON.
///
/// # Safety
/// `input` and `out` must be valid pointers; free `*out` with
/// [`retic_string_free`].
#[no_mangle]
pub unsafe extern "C" fn retic_spectrum_json(input: *const ReticInput, out: *mut *mut c_char) -> ReticStatus {
    if input.is_null() || out.is_null() {
        return fail(ReticStatus::NullArgument, "null argument");
    }
    guard(|| {
        let json = with_structure(&(*input).entry, |s| {
            let an = Analysis::new(s)?;
            Ok(spectrum_summary(s, &an).to_string())
        });
        match json {
            Ok(j) => write_string(out, j),
            Err(e) => from_core(e),
        }
    })
}

/// The reticulation as JSON; `variant` is `'K'` or `'C'`.
///
/// # Safety
/// `input` and `out` must be valid pointers; free `*out` with
/// [`retic_string_free`].
#[no_mangle]
pub unsafe extern "C" fn retic_reticulation_json(
    input: *const ReticInput,
    variant: c_char,
    out: *mut *mut c_char,
) -> ReticStatus {
    if input.is_null() || out.is_null() {
        return fail(ReticStatus::NullArgument, "null argument");
    }
    let variant = match variant as u8 {
        b'K' | b'k' => Variant::K,
        b'C' | b'c' => Variant::C,
        _ => return fail(ReticStatus::InvalidInput, "variant must be 'K' or 'C'"),
    };
    guard(|| {
        let json = with_structure(&(*input).entry, |s| {
            let an = Analysis::new(s)?;
            Ok(reticulation_summary(s, &an, variant).to_string())
        });
        match json {
            Ok(j) => write_string(out, j),
            Err(e) => from_core(e),
        }
    })
}

/// Runs a verification suite (`"core"`, `"reticulation"`, `"boolean"`,
/// `"annihilator"`, `"minprime"`, `"functor"` or `"all"`). `*failures`
/// receives the number of failed checks; `report` may be null, otherwise it
/// receives the JSON report.
///
/// # Safety
/// `input`, `suite` and `failures` must be valid; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn retic_verify(
    input: *const ReticInput,
    suite: *const c_char,
    failures: *mut usize,
    report: *mut *mut c_char,
) -> ReticStatus {
    if input.is_null() || failures.is_null() {
        return fail(ReticStatus::NullArgument, "null argument");
    }
    let suite = match read_str(suite) {
        Ok(s) => s,
        Err(status) => return status,
    };
    guard(|| {
        let suite: Suite = match suite.parse() {
            Ok(s) => s,
            Err(e) => return from_core(e),
        };
        let r = verify_entries(std::slice::from_ref(&(*input).entry), suite);
        *failures = r.summary.fail + r.instances.iter().filter(|i| i.error.is_some()).count();
        if report.is_null() {
            ReticStatus::Ok
        } else {
            write_string(report, r.to_json())
        }
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn retic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The last error message on this thread, or null. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn retic_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// A static description of a status code.
#[no_mangle]
pub extern "C" fn retic_status_message(status: ReticStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        ReticStatus::Ok => c"ok",
        ReticStatus::NullArgument => c"null argument",
        ReticStatus::InvalidUtf8 => c"invalid UTF-8",
        ReticStatus::InvalidInput => c"invalid input",
        ReticStatus::ComputationFailed => c"computation failed",
        ReticStatus::WrongKind => c"wrong input kind",
        ReticStatus::Panic => c"internal panic",
    };
    msg.as_ptr()
}
