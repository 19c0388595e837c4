//! C ABI over `coxtor`.
//!
//! Every fallible call returns a [`CtStatus`] and writes its result through an
//! out-pointer. Symbols and dagger symbols are opaque handles released with
//! their `_free` function; strings returned by the library are JSON, owned by
//! the caller and released with [`ct_string_free`]. After a failing call,
//! [`ct_last_error`] gives the detailed message for the calling thread.
//!
//! Attachment nodes are 1-based here, matching the node names.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use coxtor::geometry::manifold_volume;
use coxtor::symbol::parse_symbol;
use coxtor::torsionfree::{build_dagger, cyclic_extension, DaggerSymbol, Mode};
use coxtor::{CoxeterSymbol, Error, WeylData};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed symbol JSON or an invalid symbol.
    InvalidInput = 3,
    /// Bad type name, node number, mode or dimension.
    InvalidArgument = 4,
    /// The mathematical construction does not apply to this input.
    Precondition = 5,
    /// A certificate step or consistency check failed.
    CheckFailed = 6,
    /// The input exceeds a documented size cap.
    TooLarge = 7,
    /// Internal error; please report it.
    Internal = 8,
}

pub const CT_MODE_PLAIN: u32 = 0;
pub const CT_MODE_HAT: u32 = 1;

/// Opaque Coxeter symbol.
pub struct CtSymbol(CoxeterSymbol);

/// Opaque dagger symbol.
pub struct CtDagger(DaggerSymbol);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CtStatus {
    match e {
        Error::Parse(_) | Error::DuplicateNode(_) | Error::BadLabel(_) | Error::UnknownNode(_) | Error::InfValue(_) => {
            CtStatus::InvalidInput
        }
        Error::InvalidType(_) | Error::NotAdmissible(_) | Error::DuplicateAttachment(_) | Error::OutOfRange(_) => {
            CtStatus::InvalidArgument
        }
        Error::NotFinite
        | Error::OddLabel(_)
        | Error::NotInvolution
        | Error::Disconnected
        | Error::NoTarget
        | Error::Precondition(_) => CtStatus::Precondition,
        Error::TooLarge { .. } | Error::OrderBound(_) => CtStatus::TooLarge,
        Error::CheckFailed(_) => CtStatus::CheckFailed,
    }
}

struct Fail(CtStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording failures and catching panics at the boundary.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            CtStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            CtStatus::Internal
        }
    }
}

fn non_null<T>(p: *const T) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(CtStatus::NullPointer, "null pointer argument".into()))
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    non_null(p)?;
    CStr::from_ptr(p).to_str().map_err(|e| Fail(CtStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|e| Fail(CtStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn mode_of(mode: u32) -> Result<Mode, Fail> {
    match mode {
        CT_MODE_PLAIN => Ok(Mode::Plain),
        CT_MODE_HAT => Ok(Mode::Hat),
        m => Err(Fail(CtStatus::InvalidArgument, format!("unknown mode {m}"))),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Fail> {
    serde_json::to_string(v).map_err(|e| Fail(CtStatus::Internal, e.to_string()))
}

/// Static description of a status code (taken as an integer so unknown
/// values are safe). Never null.
#[no_mangle]
pub extern "C" fn ct_status_message(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer argument",
        2 => c"string is not valid UTF-8",
        3 => c"invalid symbol input",
        4 => c"invalid argument",
        5 => c"construction does not apply",
        6 => c"check failed",
        7 => c"input too large",
        8 => c"internal error",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// Detailed message of the last failing call on this thread, or "" after a
/// success. Valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ct_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ct_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses symbol JSON (`{"nodes": [...], "edges": [[a, b, m], ...]}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_symbol_parse(json: *const c_char, out: *mut *mut CtSymbol) -> CtStatus {
    guard(|| {
        non_null(out)?;
        let g = parse_symbol(read_str(json)?)?;
        *out = Box::into_raw(Box::new(CtSymbol(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from [`ct_symbol_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ct_symbol_free(g: *mut CtSymbol) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ct_symbol_len(g: *const CtSymbol) -> usize {
    g.as_ref().map_or(0, |g| g.0.len())
}

/// Euler characteristic as JSON `{"num": .., "den": ..}`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_symbol_euler(g: *const CtSymbol, out: *mut *mut c_char) -> CtStatus {
    guard(|| {
        non_null(g)?;
        non_null(out)?;
        let chi = (*g).0.euler_characteristic()?;
        write_string(out, to_json(&chi)?)
    })
}

/// Signature of the cosine matrix; `inf_value` is used for infinite labels.
///
/// # Safety
/// `g` must be a live handle; the three out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_symbol_signature(
    g: *const CtSymbol,
    inf_value: f64,
    positive: *mut usize,
    negative: *mut usize,
    zero: *mut usize,
) -> CtStatus {
    guard(|| {
        non_null(g)?;
        non_null(positive)?;
        non_null(negative)?;
        non_null(zero)?;
        let (p, n, z) = (*g).0.signature(inf_value)?;
        (*positive, *negative, *zero) = (p, n, z);
        Ok(())
    })
}

/// Builds the dagger symbol on the Weyl type `psi` (e.g. "E6") with pendants
/// at the given 1-based nodes.
///
/// # Safety
/// `psi` must be NUL-terminated, `nodes` must point to `len` values, `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_dagger_build(
    psi: *const c_char,
    nodes: *const u32,
    len: usize,
    out: *mut *mut CtDagger,
) -> CtStatus {
    guard(|| {
        non_null(out)?;
        non_null(nodes)?;
        let w = WeylData::parse(read_str(psi)?)?;
        let raw = std::slice::from_raw_parts(nodes, len);
        let mut idx = Vec::with_capacity(len);
        for &n in raw {
            if n == 0 || n as usize > w.rank {
                return Err(Fail(CtStatus::InvalidArgument, format!("node {n} is not in 1..={}", w.rank)));
            }
            idx.push(n as usize - 1);
        }
        let d = build_dagger(&w, &idx)?;
        *out = Box::into_raw(Box::new(CtDagger(d)));
        Ok(())
    })
}

/// # Safety
/// `d` must be null or a handle from [`ct_dagger_build`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ct_dagger_free(d: *mut CtDagger) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// The extended symbol Γ as symbol JSON.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_dagger_gamma(d: *const CtDagger, out: *mut *mut c_char) -> CtStatus {
    guard(|| {
        non_null(d)?;
        non_null(out)?;
        write_string(out, (*d).0.gamma().to_json())
    })
}

/// Torsion-freeness certificate as JSON. `*ok` is set to whether every step
/// passed; a failed certificate still returns `CT_STATUS_OK`.
///
/// # Safety
/// `d` must be a live handle; `out` and `ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_dagger_certify(
    d: *const CtDagger,
    mode: u32,
    out: *mut *mut c_char,
    ok: *mut bool,
) -> CtStatus {
    guard(|| {
        non_null(d)?;
        non_null(out)?;
        non_null(ok)?;
        let cert = (*d).0.certify_torsion_free(mode_of(mode)?)?;
        *ok = cert.ok();
        write_string(out, cert.to_json())
    })
}

/// Cyclic extension `{zeta, p, index, certificate}` as JSON. Returns
/// `CT_STATUS_CHECK_FAILED` (and no string) if the certificate fails.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_dagger_extend(d: *const CtDagger, out: *mut *mut c_char) -> CtStatus {
    guard(|| {
        non_null(d)?;
        non_null(out)?;
        let ext = cyclic_extension(&(*d).0)?;
        if !ext.certificate.ok() {
            return Err(Fail(CtStatus::CheckFailed, "extension certificate has failing steps".into()));
        }
        write_string(out, to_json(&ext)?)
    })
}

/// Volume, Euler characteristic, index and deck order of the manifold built
/// from the Vinberg simplex group in dimension `n` (4, 6 or 8), as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_manifold_volume(n: u32, out: *mut *mut c_char) -> CtStatus {
    guard(|| {
        non_null(out)?;
        let v = manifold_volume(n)?;
        write_string(out, to_json(&v)?)
    })
}
