//! C interface to `valinf`.
//!
//! Objects are opaque handles created by `*_new` / `*_from_json` and
//! released with the matching `*_free`. Every fallible call returns a
//! [`ValinfStatus`]; the message of the last failure on the calling thread
//! is available through [`valinf_last_error`]. Variable-length results are
//! written into caller-owned buffers: on `VALINF_STATUS_BUFFER_TOO_SMALL`
//! the required length is still stored in `written`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use valinf::cli::{SequenceDocument, EXIT_BUDGET, EXIT_INVALID};
use valinf::delta::{build_type_a, DeltaCore, DeltaError, DeltaSequence};
use valinf::proximity::noether_residual;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValinfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidSequence = 3,
    BudgetExhausted = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// A validated integer δ-sequence.
pub struct ValinfCore(DeltaCore);

/// A sequence of any of the five types.
pub struct ValinfSequence(DeltaSequence);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

type Failure = (ValinfStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ValinfStatus {
    let (status, message) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => (ValinfStatus::Ok, String::new()),
        Ok(Err(e)) => e,
        Err(_) => (ValinfStatus::Panic, "internal panic".to_string()),
    };
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
    status
}

fn null() -> Failure {
    (ValinfStatus::NullPointer, "null pointer argument".into())
}

fn delta_failure(e: DeltaError) -> Failure {
    let status = match e {
        DeltaError::TooShort(_) | DeltaError::NonPositive { .. } | DeltaError::NotPrime(_) => {
            ValinfStatus::InvalidArgument
        }
        _ => ValinfStatus::InvalidSequence,
    };
    (status, e.to_string())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

/// Copies `values` into `buf` when it fits; always reports the length.
unsafe fn write_slice<T: Copy>(values: &[T], buf: *mut T, cap: usize, written: *mut usize) -> Result<(), Failure> {
    let written = written.as_mut().ok_or_else(null)?;
    *written = values.len();
    if values.len() > cap {
        return Err((ValinfStatus::BufferTooSmall, format!("need room for {} values", values.len())));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Copies `text` plus a terminating NUL; `written` excludes the NUL.
unsafe fn write_str(text: &str, buf: *mut c_char, cap: usize, written: *mut usize) -> Result<(), Failure> {
    let written = written.as_mut().ok_or_else(null)?;
    *written = text.len();
    if text.len() + 1 > cap {
        return Err((ValinfStatus::BufferTooSmall, format!("need {} bytes", text.len() + 1)));
    }
    if buf.is_null() {
        return Err(null());
    }
    ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
    *buf.add(text.len()) = 0;
    Ok(())
}

/// Validates `entries[0..len]` and stores a new handle in `*out`.
///
/// # Safety
/// `entries` must point to `len` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn valinf_core_new(entries: *const i64, len: usize, out: *mut *mut ValinfCore) -> ValinfStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(null)?;
        *out = ptr::null_mut();
        if entries.is_null() && len > 0 {
            return Err(null());
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(entries, len) };
        let core = DeltaCore::new(slice).map_err(delta_failure)?;
        *out = Box::into_raw(Box::new(ValinfCore(core)));
        Ok(())
    })
}

/// # Safety
/// `core` must be null or a handle from [`valinf_core_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn valinf_core_free(core: *mut ValinfCore) {
    if !core.is_null() {
        drop(Box::from_raw(core));
    }
}

/// Number of entries `g + 1`.
///
/// # Safety
/// `core` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn valinf_core_len(core: *const ValinfCore, out: *mut usize) -> ValinfStatus {
    guard(|| {
        let core = deref(core)?;
        *out.as_mut().ok_or_else(null)? = core.0.entries().len();
        Ok(())
    })
}

/// The e/m pairs flattened as `m_0, e_0, m_1, e_1, …`.
///
/// # Safety
/// `core` must be a live handle, `buf` must have room for `cap` values and
/// `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn valinf_core_em_pairs(
    core: *const ValinfCore,
    buf: *mut i64,
    cap: usize,
    written: *mut usize,
) -> ValinfStatus {
    guard(|| {
        let flat: Vec<i64> = deref(core)?.0.em_pairs().into_iter().flat_map(|(m, e)| [m, e]).collect();
        write_slice(&flat, buf, cap, written)
    })
}

/// Maximal contact values.
///
/// # Safety
/// As for [`valinf_core_em_pairs`].
#[no_mangle]
pub unsafe extern "C" fn valinf_core_beta(
    core: *const ValinfCore,
    buf: *mut i64,
    cap: usize,
    written: *mut usize,
) -> ValinfStatus {
    guard(|| write_slice(&deref(core)?.0.beta(), buf, cap, written))
}

/// Whether `value` lies in the numerical semigroup spanned by the core.
///
/// # Safety
/// `core` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn valinf_core_contains(core: *const ValinfCore, value: i64, out: *mut bool) -> ValinfStatus {
    guard(|| {
        let core = deref(core)?;
        *out.as_mut().ok_or_else(null)? = core.0.numerical_semigroup().contains(value);
        Ok(())
    })
}

/// Largest integer outside the semigroup spanned by the core.
///
/// # Safety
/// `core` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn valinf_core_frobenius(core: *const ValinfCore, out: *mut i64) -> ValinfStatus {
    guard(|| {
        let core = deref(core)?;
        let f = core.0.numerical_semigroup().frobenius().ok_or((
            ValinfStatus::InvalidSequence,
            "generators are not coprime".to_string(),
        ))?;
        *out.as_mut().ok_or_else(null)? = f;
        Ok(())
    })
}

/// `δ0² − Σ m²` over the cluster of the type A sequence `core ∪ {last}`.
///
/// # Safety
/// `core` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn valinf_noether_residual(core: *const ValinfCore, last: i64, out: *mut i64) -> ValinfStatus {
    guard(|| {
        let core = deref(core)?;
        let seq = build_type_a(core.0.clone(), last).map_err(delta_failure)?;
        let r = noether_residual(&seq).map_err(|e| (ValinfStatus::InvalidSequence, e.to_string()))?;
        *out.as_mut().ok_or_else(null)? =
            i64::try_from(r).map_err(|_| (ValinfStatus::InvalidArgument, "residual overflows i64".to_string()))?;
        Ok(())
    })
}

/// Builds a sequence from a JSON document (NUL-terminated UTF-8).
///
/// # Safety
/// `json` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn valinf_sequence_from_json(json: *const c_char, out: *mut *mut ValinfSequence) -> ValinfStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(null)?;
        *out = ptr::null_mut();
        if json.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| (ValinfStatus::InvalidArgument, "document is not UTF-8".to_string()))?;
        let cli = |e: valinf::cli::CliError| {
            let status = match e.code {
                EXIT_INVALID => ValinfStatus::InvalidSequence,
                EXIT_BUDGET => ValinfStatus::BudgetExhausted,
                _ => ValinfStatus::InvalidArgument,
            };
            (status, e.message)
        };
        let seq = SequenceDocument::parse(text).and_then(|d| d.build()).map_err(cli)?;
        *out = Box::into_raw(Box::new(ValinfSequence(seq)));
        Ok(())
    })
}

/// # Safety
/// `seq` must be null or a handle from [`valinf_sequence_from_json`].
#[no_mangle]
pub unsafe extern "C" fn valinf_sequence_free(seq: *mut ValinfSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Type letter `'A'` … `'E'`.
///
/// # Safety
/// `seq` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn valinf_sequence_type(seq: *const ValinfSequence, out: *mut c_char) -> ValinfStatus {
    guard(|| {
        let seq = deref(seq)?;
        let letter = seq.0.tag().to_string().as_bytes()[0];
        *out.as_mut().ok_or_else(null)? = letter as c_char;
        Ok(())
    })
}

/// Text form of the sequence, e.g. `{18,12,33,4,-5}`.
///
/// # Safety
/// `seq` must be a live handle, `buf` must have room for `cap` bytes and
/// `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn valinf_sequence_describe(
    seq: *const ValinfSequence,
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> ValinfStatus {
    guard(|| {
        let text = deref(seq)?.0.to_string();
        write_str(&text, buf, cap, written)
    })
}

/// Message of the last failed call on this thread (empty after a success).
/// Does not itself reset the message.
///
/// # Safety
/// `buf` must have room for `cap` bytes and `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn valinf_last_error(buf: *mut c_char, cap: usize, written: *mut usize) -> ValinfStatus {
    let text = LAST_ERROR.with(|e| e.borrow().clone());
    match write_str(&text, buf, cap, written) {
        Ok(()) => ValinfStatus::Ok,
        Err((status, _)) => status,
    }
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn valinf_status_name(status: ValinfStatus) -> *const c_char {
    let name: &'static CStr = match status {
        ValinfStatus::Ok => c"ok",
        ValinfStatus::NullPointer => c"null pointer",
        ValinfStatus::InvalidArgument => c"invalid argument",
        ValinfStatus::InvalidSequence => c"invalid sequence",
        ValinfStatus::BudgetExhausted => c"budget exhausted",
        ValinfStatus::BufferTooSmall => c"buffer too small",
        ValinfStatus::Panic => c"panic",
    };
    name.as_ptr()
}
