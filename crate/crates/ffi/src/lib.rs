//! C ABI over `toric-spectrum`.
//!
//! Every fallible call returns a [`TsStatus`]; on failure a description is
//! available from [`ts_last_error_message`] on the same thread. Atlases are
//! opaque handles released with [`ts_atlas_free`], strings returned by the
//! library are released with [`ts_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toric_spectrum::linalg::IntVector;
use toric_spectrum::report::{self, DocumentError};
use toric_spectrum::semigroup::{enumerate_faces, SpectrumAtlas};
use toric_spectrum::Error;

/// Result codes. Values 2 to 4 match the exit codes of the command line tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Unsupported = 3,
    Internal = 4,
    Panic = 5,
}

/// Opaque face atlas of a semigroup.
pub struct TsAtlas {
    inner: SpectrumAtlas,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: TsStatus, message: String) -> TsStatus {
    set_error(message);
    status
}

fn from_error(e: Error) -> TsStatus {
    let status = match e {
        Error::Unsupported(_) | Error::Indeterminate { .. } => TsStatus::Unsupported,
        Error::Internal(_) => TsStatus::Internal,
        _ => TsStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

fn from_document_error(e: DocumentError) -> TsStatus {
    let status = match e {
        DocumentError::Unsupported(_) => TsStatus::Unsupported,
        _ => TsStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> TsStatus) -> TsStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(TsStatus::Panic, "panic inside toric-spectrum".into()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// The message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a JSON input document and builds its atlas.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn ts_atlas_from_json(json: *const c_char, out: *mut *mut TsAtlas) -> TsStatus {
    if json.is_null() || out.is_null() {
        return fail(TsStatus::NullPointer, "null argument".into());
    }
    guard(|| {
        // SAFETY: checked non-null; the caller guarantees NUL termination.
        let text = match unsafe { CStr::from_ptr(json) }.to_str() {
            Ok(t) => t,
            Err(e) => return fail(TsStatus::InvalidInput, format!("input is not UTF-8: {e}")),
        };
        let spec = match report::parse_document(text) {
            Ok(s) => s,
            Err(e) => return from_document_error(e),
        };
        match enumerate_faces(&spec) {
            Ok(atlas) => {
                // SAFETY: checked non-null above.
                unsafe { *out = Box::into_raw(Box::new(TsAtlas { inner: atlas })) };
                TsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases an atlas. NULL is ignored.
///
/// # Safety
/// `atlas` must come from [`ts_atlas_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ts_atlas_free(atlas: *mut TsAtlas) {
    if !atlas.is_null() {
        // SAFETY: the caller hands back ownership of a pointer from Box::into_raw.
        drop(unsafe { Box::from_raw(atlas) });
    }
}

/// Number of faces (idempotents); 0 for NULL.
///
/// # Safety
/// `atlas` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_atlas_face_count(atlas: *const TsAtlas) -> usize {
    // SAFETY: the caller guarantees the handle is live.
    unsafe { atlas.as_ref() }.map_or(0, |a| a.inner.faces.len())
}

/// Ambient rank `n`; 0 for NULL.
///
/// # Safety
/// `atlas` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_atlas_ambient_rank(atlas: *const TsAtlas) -> usize {
    // SAFETY: the caller guarantees the handle is live.
    unsafe { atlas.as_ref() }.map_or(0, |a| a.inner.ambient_rank())
}

/// Writes whether `S ∩ (−S) = {0}`.
///
/// # Safety
/// `atlas` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_atlas_is_antisymmetric(atlas: *const TsAtlas, out: *mut bool) -> TsStatus {
    // SAFETY: the caller guarantees the handle is live.
    match (unsafe { atlas.as_ref() }, out.is_null()) {
        (Some(a), false) => {
            // SAFETY: checked non-null.
            unsafe { *out = a.inner.antisymmetric };
            TsStatus::Ok
        }
        _ => fail(TsStatus::NullPointer, "null argument".into()),
    }
}

/// Dimension, lattice rank and number of torsion factors of one face.
///
/// # Safety
/// `atlas` must be a live handle; the output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_atlas_face_info(
    atlas: *const TsAtlas,
    face: usize,
    dim: *mut usize,
    rank: *mut usize,
    torsion_len: *mut usize,
) -> TsStatus {
    // SAFETY: the caller guarantees the handle is live.
    let Some(a) = (unsafe { atlas.as_ref() }) else {
        return fail(TsStatus::NullPointer, "null atlas".into());
    };
    if dim.is_null() || rank.is_null() || torsion_len.is_null() {
        return fail(TsStatus::NullPointer, "null output".into());
    }
    match a.inner.face(face) {
        Ok(f) => {
            // SAFETY: all three checked non-null.
            unsafe {
                *dim = f.dim();
                *rank = f.rank();
                *torsion_len = f.torsion.len();
            }
            TsStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

unsafe fn point(x: *const i64, len: usize) -> Option<IntVector> {
    if x.is_null() && len > 0 {
        return None;
    }
    if len == 0 {
        return Some(IntVector(Vec::new()));
    }
    // SAFETY: the caller guarantees `len` readable entries.
    Some(IntVector::from_i64s(unsafe { std::slice::from_raw_parts(x, len) }))
}

unsafe fn membership(
    atlas: *const TsAtlas,
    x: *const i64,
    len: usize,
    out: *mut bool,
    hull: bool,
) -> TsStatus {
    // SAFETY: the caller guarantees the handle is live.
    let Some(a) = (unsafe { atlas.as_ref() }) else {
        return fail(TsStatus::NullPointer, "null atlas".into());
    };
    // SAFETY: forwarded caller guarantee.
    let Some(x) = (unsafe { point(x, len) }) else {
        return fail(TsStatus::NullPointer, "null point".into());
    };
    if out.is_null() {
        return fail(TsStatus::NullPointer, "null output".into());
    }
    guard(|| {
        let r = if hull { a.inner.hull_contains(&x) } else { a.inner.contains(&x) };
        match r {
            Ok(b) => {
                // SAFETY: checked non-null.
                unsafe { *out = b };
                TsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Writes whether `x ∈ S` for the point `x[0..len]`.
///
/// # Safety
/// `atlas` must be live, `x` must point to `len` integers and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_atlas_contains(atlas: *const TsAtlas, x: *const i64, len: usize, out: *mut bool) -> TsStatus {
    // SAFETY: forwarded caller guarantee.
    unsafe { membership(atlas, x, len, out, false) }
}

/// Writes whether `x` lies in the hull of `S`.
///
/// # Safety
/// Same as [`ts_atlas_contains`].
#[no_mangle]
pub unsafe extern "C" fn ts_atlas_hull_contains(
    atlas: *const TsAtlas,
    x: *const i64,
    len: usize,
    out: *mut bool,
) -> TsStatus {
    // SAFETY: forwarded caller guarantee.
    unsafe { membership(atlas, x, len, out, true) }
}

/// The JSON report as a new string (free with [`ts_string_free`]); NULL on failure.
///
/// # Safety
/// `atlas` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_atlas_report_json(atlas: *const TsAtlas) -> *mut c_char {
    // SAFETY: the caller guarantees the handle is live.
    match unsafe { atlas.as_ref() } {
        Some(a) => into_c_string(report::json_report_text(&a.inner)),
        None => ptr::null_mut(),
    }
}

/// The idempotent Hasse diagram in DOT format (free with [`ts_string_free`]).
///
/// # Safety
/// `atlas` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_atlas_dot(atlas: *const TsAtlas) -> *mut c_char {
    // SAFETY: the caller guarantees the handle is live.
    match unsafe { atlas.as_ref() } {
        Some(a) => into_c_string(report::dot(&a.inner)),
        None => ptr::null_mut(),
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the pointer came from CString::into_raw.
        drop(unsafe { CString::from_raw(s) });
    }
}
