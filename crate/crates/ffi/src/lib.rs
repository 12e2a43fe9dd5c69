//! C ABI for the exact-dynamics library.
//!
//! Conventions:
//! - Handles (`RzlVector`, `RzlRauzyState`) are opaque; create them with the
//!   `_new`/`_parse` constructors and release them with the matching `_free`.
//! - Every fallible call returns an [`RzlStatus`]; on any non-`Ok` status the
//!   out-parameters are left untouched and `rzl_last_error` returns a
//!   thread-local, NUL-terminated description valid until the next failing
//!   call on the same thread.
//! - Strings returned through `char **` out-parameters are heap-allocated;
//!   release them with `rzl_string_free`. Rationals are decimal `"p/q"`
//!   text, never floating point.
//! - Panics never cross the boundary; they surface as `RZL_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rauzylab::induction::{step, Move, RauzyState};
use rauzylab::numerics::{fmt_rat, parse_rat, RVector};
use rauzylab::perm::{rauzy_class, Perm};
use rauzylab::report::RunConfig;
use rauzylab::verify::run_suite;

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RzlStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Text input could not be parsed.
    Parse = 2,
    /// Structurally valid input outside an operation's domain (including
    /// expected terminations such as a boundary tie).
    Domain = 3,
    /// An internal panic was caught at the boundary.
    Panic = 4,
}

/// Opaque exact rational vector.
pub struct RzlVector(RVector);

/// Opaque induction state: positive lengths plus an irreducible permutation.
pub struct RzlRauzyState(RauzyState);

thread_local! {
    static LAST_ERROR: RefCell<CString> =
        RefCell::new(CString::new("no error").expect("static"));
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("sanitized");
    });
}

/// Returns the thread-local message for the most recent failure. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rzl_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string; do not free.
#[no_mangle]
pub extern "C" fn rzl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

fn guarded(body: impl FnOnce() -> RzlStatus) -> RzlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| (*s).to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(&message);
            RzlStatus::Panic
        }
    }
}

/// # Safety
/// `text` must be a valid NUL-terminated pointer.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, RzlStatus> {
    if text.is_null() {
        set_error("null string argument");
        return Err(RzlStatus::NullArgument);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        RzlStatus::Parse
    })
}

fn give_string(text: String, out: *mut *mut c_char) -> RzlStatus {
    match CString::new(text) {
        Ok(cstring) => {
            unsafe { *out = cstring.into_raw() };
            RzlStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            RzlStatus::Panic
        }
    }
}

/// Frees a string returned by this library. Null is a no-op.
///
/// # Safety
/// `text` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rzl_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

// ---------------------------------------------------------------------------
// Vectors

/// Parses a comma-separated list of rationals ("5,3" or "1/2,2/3,4") into a
/// new vector handle.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rzl_vector_parse(
    text: *const c_char,
    out: *mut *mut RzlVector,
) -> RzlStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out-parameter");
            return RzlStatus::NullArgument;
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let mut entries = Vec::new();
        for piece in text.split(',') {
            match parse_rat(piece.trim()) {
                Ok(r) => entries.push(r),
                Err(e) => {
                    set_error(&e.to_string());
                    return RzlStatus::Parse;
                }
            }
        }
        if entries.is_empty() {
            set_error("empty vector");
            return RzlStatus::Parse;
        }
        *out = Box::into_raw(Box::new(RzlVector(RVector::new(entries))));
        RzlStatus::Ok
    })
}

/// Releases a vector handle. Null is a no-op.
///
/// # Safety
/// `vector` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rzl_vector_free(vector: *mut RzlVector) {
    if !vector.is_null() {
        drop(Box::from_raw(vector));
    }
}

/// Number of coordinates.
///
/// # Safety
/// `vector` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rzl_vector_len(
    vector: *const RzlVector,
    out: *mut usize,
) -> RzlStatus {
    guarded(|| {
        if vector.is_null() || out.is_null() {
            set_error("null argument");
            return RzlStatus::NullArgument;
        }
        *out = (*vector).0.len();
        RzlStatus::Ok
    })
}

/// Renders the vector as comma-separated `"p/q"` text.
///
/// # Safety
/// `vector` must be a live handle; `out` must be valid. Free the result with
/// `rzl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rzl_vector_to_string(
    vector: *const RzlVector,
    out: *mut *mut c_char,
) -> RzlStatus {
    guarded(|| {
        if vector.is_null() || out.is_null() {
            set_error("null argument");
            return RzlStatus::NullArgument;
        }
        let text = (*vector)
            .0
            .iter()
            .map(fmt_rat)
            .collect::<Vec<_>>()
            .join(",");
        give_string(text, out)
    })
}

// ---------------------------------------------------------------------------
// Planar subtractive algorithm

/// One subtractive step on a planar vector. Writes the branch letter (1 or
/// 2) and a fresh handle for the image.
///
/// # Safety
/// `vector` must be a live two-coordinate handle; `out` and `letter` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rzl_euclid_step(
    vector: *const RzlVector,
    out: *mut *mut RzlVector,
    letter: *mut i32,
) -> RzlStatus {
    guarded(|| {
        if vector.is_null() || out.is_null() || letter.is_null() {
            set_error("null argument");
            return RzlStatus::NullArgument;
        }
        match rauzylab::euclid::e_step(&(*vector).0) {
            Ok((next, s)) => {
                *letter = match s {
                    rauzylab::euclid::EStep::B1 => 1,
                    rauzylab::euclid::EStep::B2 => 2,
                };
                *out = Box::into_raw(Box::new(RzlVector(next)));
                RzlStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                RzlStatus::Domain
            }
        }
    })
}

/// Full subtractive expansion of a planar vector as a JSON document with the
/// branch letters, continued-fraction digits, and final vector.
///
/// # Safety
/// `vector` must be a live two-coordinate handle; `out` must be valid. Free
/// the result with `rzl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rzl_expand_json(
    vector: *const RzlVector,
    depth_cap: usize,
    out: *mut *mut c_char,
) -> RzlStatus {
    guarded(|| {
        if vector.is_null() || out.is_null() {
            set_error("null argument");
            return RzlStatus::NullArgument;
        }
        let expansion = match rauzylab::euclid::expansion(&(*vector).0, depth_cap) {
            Ok(e) => e,
            Err(e) => {
                set_error(&e.to_string());
                return RzlStatus::Domain;
            }
        };
        let digits = rauzylab::euclid::cf_digits(&expansion).ok();
        let doc = serde_json::json!({
            "steps": expansion.steps.len(),
            "letters": rauzylab::cones::ConePath::Euclid(expansion.steps.clone()).to_compact(),
            "cf_digits": digits,
            "terminated": expansion.terminated,
            "final_vector": expansion.final_vector,
        });
        give_string(doc.to_string(), out)
    })
}

// ---------------------------------------------------------------------------
// Induction

/// Builds an induction state from positive lengths and a permutation bottom
/// row (`row` holds `n` one-based symbols).
///
/// # Safety
/// `lambda` must be a live handle of `n` coordinates; `row` must point to
/// `n` readable entries; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rzl_rauzy_new(
    lambda: *const RzlVector,
    row: *const usize,
    n: usize,
    out: *mut *mut RzlRauzyState,
) -> RzlStatus {
    guarded(|| {
        if lambda.is_null() || row.is_null() || out.is_null() {
            set_error("null argument");
            return RzlStatus::NullArgument;
        }
        let row = std::slice::from_raw_parts(row, n);
        let perm = match Perm::from_bottom_row(row) {
            Ok(p) => p,
            Err(e) => {
                set_error(&e.to_string());
                return RzlStatus::Domain;
            }
        };
        match RauzyState::new((*lambda).0.clone(), perm) {
            Ok(state) => {
                *out = Box::into_raw(Box::new(RzlRauzyState(state)));
                RzlStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                RzlStatus::Domain
            }
        }
    })
}

/// Releases an induction state. Null is a no-op.
///
/// # Safety
/// `state` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rzl_rauzy_free(state: *mut RzlRauzyState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Advances the state by one induction step and writes the move taken (0
/// for the first move, 1 for the second). A boundary tie leaves the state
/// unchanged and returns `RZL_STATUS_DOMAIN`.
///
/// # Safety
/// `state` must be a live handle; `move_taken` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rzl_rauzy_step(
    state: *mut RzlRauzyState,
    move_taken: *mut i32,
) -> RzlStatus {
    guarded(|| {
        if state.is_null() || move_taken.is_null() {
            set_error("null argument");
            return RzlStatus::NullArgument;
        }
        match step(&(*state).0) {
            Ok((next, mv, _)) => {
                (*state).0 = next;
                *move_taken = match mv {
                    Move::A => 0,
                    Move::B => 1,
                };
                RzlStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                RzlStatus::Domain
            }
        }
    })
}

/// Copies the current lengths into a fresh vector handle.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rzl_rauzy_lambda(
    state: *const RzlRauzyState,
    out: *mut *mut RzlVector,
) -> RzlStatus {
    guarded(|| {
        if state.is_null() || out.is_null() {
            set_error("null argument");
            return RzlStatus::NullArgument;
        }
        *out = Box::into_raw(Box::new(RzlVector((*state).0.lambda.clone())));
        RzlStatus::Ok
    })
}

/// Writes the current permutation bottom row into `buffer` (capacity
/// `buffer_len`); `written` receives the row length.
///
/// # Safety
/// `state` must be a live handle; `buffer` must hold `buffer_len` writable
/// entries; `written` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rzl_rauzy_perm_row(
    state: *const RzlRauzyState,
    buffer: *mut usize,
    buffer_len: usize,
    written: *mut usize,
) -> RzlStatus {
    guarded(|| {
        if state.is_null() || buffer.is_null() || written.is_null() {
            set_error("null argument");
            return RzlStatus::NullArgument;
        }
        let row = (*state).0.perm.bottom_row();
        if row.len() > buffer_len {
            set_error("buffer too small for permutation row");
            return RzlStatus::Domain;
        }
        let target = std::slice::from_raw_parts_mut(buffer, row.len());
        target.copy_from_slice(&row);
        *written = row.len();
        RzlStatus::Ok
    })
}

/// Size of the move-graph class generated by a permutation bottom row.
///
/// # Safety
/// `row` must point to `n` readable entries; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rzl_class_size(
    row: *const usize,
    n: usize,
    out: *mut usize,
) -> RzlStatus {
    guarded(|| {
        if row.is_null() || out.is_null() {
            set_error("null argument");
            return RzlStatus::NullArgument;
        }
        let row = std::slice::from_raw_parts(row, n);
        let perm = match Perm::from_bottom_row(row) {
            Ok(p) => p,
            Err(e) => {
                set_error(&e.to_string());
                return RzlStatus::Domain;
            }
        };
        match rauzy_class(&perm) {
            Ok(graph) => {
                *out = graph.size();
                RzlStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                RzlStatus::Domain
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Verification

/// Runs a named verification suite and returns its JSON report. `pass`
/// receives 1 when every gating assertion passed, else 0; an unknown suite
/// name is a domain error.
///
/// # Safety
/// `suite` must be NUL-terminated; `json_out` and `pass` must be valid.
/// Free the report with `rzl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rzl_verify(
    suite: *const c_char,
    seed: u64,
    samples: u64,
    depth: usize,
    n: usize,
    threshold: u64,
    workers: u64,
    json_out: *mut *mut c_char,
    pass: *mut i32,
) -> RzlStatus {
    guarded(|| {
        if json_out.is_null() || pass.is_null() {
            set_error("null out-parameter");
            return RzlStatus::NullArgument;
        }
        let suite = match read_str(suite) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let config = RunConfig {
            seed,
            samples,
            depth,
            n,
            threshold,
            workers,
            format: "json".to_string(),
        };
        match run_suite(suite, &config) {
            Ok(report) => {
                *pass = i32::from(report.pass);
                give_string(
                    serde_json::to_string(&report).expect("serializable"),
                    json_out,
                )
            }
            Err(e) => {
                set_error(&e.to_string());
                RzlStatus::Domain
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn make_vector(text: &str) -> *mut RzlVector {
        let c = CString::new(text).unwrap();
        let mut out: *mut RzlVector = ptr::null_mut();
        let status = unsafe { rzl_vector_parse(c.as_ptr(), &mut out) };
        assert_eq!(status, RzlStatus::Ok);
        assert!(!out.is_null());
        out
    }

    fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
        unsafe { rzl_string_free(ptr) };
        text
    }

    #[test]
    fn vector_round_trip() {
        let v = make_vector(" 5 , 3 ");
        let mut len = 0usize;
        assert_eq!(unsafe { rzl_vector_len(v, &mut len) }, RzlStatus::Ok);
        assert_eq!(len, 2);
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { rzl_vector_to_string(v, &mut text) }, RzlStatus::Ok);
        assert_eq!(take_string(text), "5,3");
        unsafe { rzl_vector_free(v) };
    }

    #[test]
    fn parse_rejects_garbage_and_null() {
        let c = CString::new("1,phi").unwrap();
        let mut out: *mut RzlVector = ptr::null_mut();
        assert_eq!(
            unsafe { rzl_vector_parse(c.as_ptr(), &mut out) },
            RzlStatus::Parse
        );
        assert!(out.is_null());
        let message = unsafe { CStr::from_ptr(rzl_last_error()) }
            .to_str()
            .unwrap();
        assert!(!message.is_empty());
        assert_eq!(
            unsafe { rzl_vector_parse(ptr::null(), &mut out) },
            RzlStatus::NullArgument
        );
    }

    #[test]
    fn euclid_step_and_expansion() {
        let v = make_vector("5,3");
        let mut image: *mut RzlVector = ptr::null_mut();
        let mut letter = 0i32;
        assert_eq!(
            unsafe { rzl_euclid_step(v, &mut image, &mut letter) },
            RzlStatus::Ok
        );
        assert_eq!(letter, 1);
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(
            unsafe { rzl_vector_to_string(image, &mut text) },
            RzlStatus::Ok
        );
        assert_eq!(take_string(text), "2,3");

        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { rzl_expand_json(v, 64, &mut json) }, RzlStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(doc["cf_digits"], serde_json::json!([1, 1, 2]));
        assert_eq!(doc["terminated"], serde_json::json!(true));
        unsafe { rzl_vector_free(image) };
        unsafe { rzl_vector_free(v) };
    }

    #[test]
    fn induction_round_trip_and_tie() {
        let lambda = make_vector("1,2,4");
        let row = [2usize, 3, 1];
        let mut state: *mut RzlRauzyState = ptr::null_mut();
        assert_eq!(
            unsafe { rzl_rauzy_new(lambda, row.as_ptr(), row.len(), &mut state) },
            RzlStatus::Ok
        );
        let mut mv = -1i32;
        assert_eq!(unsafe { rzl_rauzy_step(state, &mut mv) }, RzlStatus::Ok);
        assert_eq!(mv, 0);
        let mut current: *mut RzlVector = ptr::null_mut();
        assert_eq!(
            unsafe { rzl_rauzy_lambda(state, &mut current) },
            RzlStatus::Ok
        );
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(
            unsafe { rzl_vector_to_string(current, &mut text) },
            RzlStatus::Ok
        );
        assert_eq!(take_string(text), "1,2,3");
        let mut buffer = [0usize; 8];
        let mut written = 0usize;
        assert_eq!(
            unsafe { rzl_rauzy_perm_row(state, buffer.as_mut_ptr(), buffer.len(), &mut written) },
            RzlStatus::Ok
        );
        assert_eq!(&buffer[..written], &[2, 3, 1]);

        // Two more steps reach the boundary tie; the state must survive.
        assert_eq!(unsafe { rzl_rauzy_step(state, &mut mv) }, RzlStatus::Ok);
        assert_eq!(unsafe { rzl_rauzy_step(state, &mut mv) }, RzlStatus::Ok);
        assert_eq!(unsafe { rzl_rauzy_step(state, &mut mv) }, RzlStatus::Domain);
        assert_eq!(
            unsafe { rzl_rauzy_lambda(state, &mut current) },
            RzlStatus::Ok
        );
        unsafe { rzl_vector_free(current) };
        unsafe { rzl_rauzy_free(state) };
        unsafe { rzl_vector_free(lambda) };
    }

    #[test]
    fn class_size_matches_known_values() {
        let mut size = 0usize;
        let row = [3usize, 2, 1];
        assert_eq!(
            unsafe { rzl_class_size(row.as_ptr(), row.len(), &mut size) },
            RzlStatus::Ok
        );
        assert_eq!(size, 3);
        let reducible = [1usize, 2, 3];
        assert_eq!(
            unsafe { rzl_class_size(reducible.as_ptr(), reducible.len(), &mut size) },
            RzlStatus::Domain
        );
    }

    #[test]
    fn verify_runs_a_small_suite() {
        let suite = CString::new("euclid").unwrap();
        let mut json: *mut c_char = ptr::null_mut();
        let mut pass = 0i32;
        let status = unsafe {
            rzl_verify(
                suite.as_ptr(),
                11,
                150,
                6,
                4,
                4,
                4,
                &mut json,
                &mut pass,
            )
        };
        assert_eq!(status, RzlStatus::Ok);
        assert_eq!(pass, 1);
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(doc["suite"], serde_json::json!("euclid"));
        assert_eq!(doc["pass"], serde_json::json!(true));

        let typo = CString::new("typo").unwrap();
        assert_eq!(
            unsafe { rzl_verify(typo.as_ptr(), 1, 1, 1, 2, 1, 1, &mut json, &mut pass) },
            RzlStatus::Domain
        );
    }

    #[test]
    fn committed_header_covers_every_export() {
        let header = std::fs::read_to_string(
            std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/rauzylab.h"),
        )
        .expect("committed header");
        for symbol in [
            "rzl_last_error",
            "rzl_version",
            "rzl_string_free",
            "rzl_vector_parse",
            "rzl_vector_free",
            "rzl_vector_len",
            "rzl_vector_to_string",
            "rzl_euclid_step",
            "rzl_expand_json",
            "rzl_rauzy_new",
            "rzl_rauzy_free",
            "rzl_rauzy_step",
            "rzl_rauzy_lambda",
            "rzl_rauzy_perm_row",
            "rzl_class_size",
            "rzl_verify",
            "RZL_STATUS_OK",
            "RZL_STATUS_PANIC",
        ] {
            assert!(header.contains(symbol), "header is missing `{symbol}`");
        }
    }

    #[test]
    fn version_is_static_and_free_tolerates_null() {
        let version = unsafe { CStr::from_ptr(rzl_version()) }.to_str().unwrap();
        assert!(!version.is_empty());
        unsafe { rzl_string_free(ptr::null_mut()) };
        unsafe { rzl_vector_free(ptr::null_mut()) };
        unsafe { rzl_rauzy_free(ptr::null_mut()) };
    }
}
