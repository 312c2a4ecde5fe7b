//! C ABI for saw-lab.
//!
//! Walks cross the boundary as opaque [`SawWalk`] handles; big integers and
//! rationals as NUL-terminated decimal strings owned by the caller, released
//! with [`sawlab_string_free`]. Every function returns a [`SawStatus`]; on
//! failure [`sawlab_last_error`] describes the problem.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};


use saw_lab::counting::{self, EnumConfig};
use saw_lab::lattice::{codec, ExactProb, Walk};
use saw_lab::{resampler, two_part, Error};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SawStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Guardrail = 4,
    NotSelfAvoiding = 5,
    Internal = 6,
}

/// Opaque walk handle.
pub struct SawWalk(Walk);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> SawStatus {
    match e {
        Error::Parse(_) => SawStatus::Parse,
        Error::Guardrail { .. } | Error::SlotBudget { .. } => SawStatus::Guardrail,
        Error::NotSelfAvoiding => SawStatus::NotSelfAvoiding,
        _ => SawStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), SawStatus>) -> SawStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SawStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            SawStatus::Internal
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, SawStatus>;
}

impl<T> OrStatus<T> for saw_lab::Result<T> {
    fn or_status(self) -> Result<T, SawStatus> {
        self.map_err(|e| {
            set_error(&e.to_string());
            status_of(&e)
        })
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), SawStatus> {
    if p.is_null() {
        set_error(&format!("{what} is null"));
        return Err(SawStatus::NullPointer);
    }
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("decimal strings contain no NUL").into_raw()
}

unsafe fn write_prob(q: &ExactProb, num: *mut *mut c_char, den: *mut *mut c_char) {
    *num = to_c_string(q.numer().to_string());
    *den = to_c_string(q.denom().to_string());
}

fn config() -> Result<EnumConfig, SawStatus> {
    EnumConfig::from_env().or_status()
}

/// Message for the last failure on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sawlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sawlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `d=<d>;origin=<c,...>;steps=<steps>` into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sawlab_walk_parse(text: *const c_char, out: *mut *mut SawWalk) -> SawStatus {
    guard(|| {
        non_null(text, "text")?;
        non_null(out, "out")?;
        let text = CStr::from_ptr(text).to_str().map_err(|_| {
            set_error("text is not UTF-8");
            SawStatus::Parse
        })?;
        let w = codec::parse(text).or_status()?;
        *out = Box::into_raw(Box::new(SawWalk(w)));
        Ok(())
    })
}

/// Releases a walk handle. Null is ignored.
///
/// # Safety
/// `w` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sawlab_walk_free(w: *mut SawWalk) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Number of steps of `w`.
///
/// # Safety
/// `w` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sawlab_walk_len(w: *const SawWalk, out: *mut usize) -> SawStatus {
    guard(|| {
        non_null(w, "walk")?;
        non_null(out, "out")?;
        *out = (*w).0.len();
        Ok(())
    })
}

/// Text form of `w`, in the syntax accepted by [`sawlab_walk_parse`].
///
/// # Safety
/// `w` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sawlab_walk_serialize(w: *const SawWalk, out: *mut *mut c_char) -> SawStatus {
    guard(|| {
        non_null(w, "walk")?;
        non_null(out, "out")?;
        *out = to_c_string(codec::serialize(&(*w).0));
        Ok(())
    })
}

/// c_n, the number of n-step self-avoiding walks in Z^d, as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sawlab_count_walks(n: usize, d: usize, out: *mut *mut c_char) -> SawStatus {
    guard(|| {
        non_null(out, "out")?;
        let c = counting::count_walks(n, d, &config()?).or_status()?;
        *out = to_c_string(c.to_string());
        Ok(())
    })
}

/// p_n, the number of n-edge polygons up to translation, as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sawlab_count_polygons(n: usize, d: usize, out: *mut *mut c_char) -> SawStatus {
    guard(|| {
        non_null(out, "out")?;
        let p = counting::count_polygons(n, d, &config()?).or_status()?;
        *out = to_c_string(p.to_string());
        Ok(())
    })
}

/// Probability that a uniform n-step walk closes, as a reduced fraction.
///
/// # Safety
/// `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sawlab_closing_probability(
    n: usize,
    d: usize,
    num: *mut *mut c_char,
    den: *mut *mut c_char,
) -> SawStatus {
    guard(|| {
        non_null(num, "num")?;
        non_null(den, "den")?;
        let cfg = config()?;
        let closing = counting::count_closing_walks(n, d, &cfg).or_status()?;
        let all = counting::count_walks(n, d, &cfg).or_status()?;
        let q = ExactProb::new(closing, all).or_status()?;
        write_prob(&q, num, den);
        Ok(())
    })
}

/// Splits `w` at its NE vertex into first and second parts, both starting at
/// the NE vertex. `origin_in_first` receives 1 when the first part holds the
/// walk's start.
///
/// # Safety
/// `w` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn sawlab_decompose(
    w: *const SawWalk,
    first: *mut *mut SawWalk,
    second: *mut *mut SawWalk,
    origin_in_first: *mut i32,
) -> SawStatus {
    guard(|| {
        non_null(w, "walk")?;
        non_null(first, "first")?;
        non_null(second, "second")?;
        non_null(origin_in_first, "origin_in_first")?;
        let dec = two_part::decompose(&(*w).0).or_status()?;
        *first = Box::into_raw(Box::new(SawWalk(dec.first().clone())));
        *second = Box::into_raw(Box::new(SawWalk(dec.second().clone())));
        *origin_in_first = (dec.origin_part() == two_part::Part::First) as i32;
        Ok(())
    })
}

/// `C(s1,k) C(s2,n_i-k) / C(s1+s2,n_i)` as a reduced fraction.
///
/// # Safety
/// `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sawlab_hypergeometric_pmf(
    s1: u64,
    s2: u64,
    n_i: u64,
    k: u64,
    num: *mut *mut c_char,
    den: *mut *mut c_char,
) -> SawStatus {
    guard(|| {
        non_null(num, "num")?;
        non_null(den, "den")?;
        let q = resampler::hypergeometric_pmf(s1, s2, n_i, k).or_status()?;
        write_prob(&q, num, den);
        Ok(())
    })
}

