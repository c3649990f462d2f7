//! C interface to the learner.
//!
//! Objects are opaque handles created by `sprout_*` constructors and
//! released with the matching `*_free` function. Every fallible function
//! returns a [`SproutStatus`]; on failure `sprout_last_error` describes the
//! problem. Strings returned to the caller are released with
//! `sprout_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sprout_core::io::{emit_hoa, parse_hoa, parse_sample};
use sprout_core::oracle::equivalence;
use sprout_core::sprout::{sprout, LearnerConfig};
use sprout_core::{AccType, Automaton, Error, Sample};

/// Result of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SproutStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    Unsupported = 5,
    TooLarge = 6,
    Internal = 7,
    Panic = 8,
}

/// Acceptance condition type of a learned automaton.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SproutAccType {
    Buchi = 0,
    GenBuchi = 1,
    Parity = 2,
    Rabin = 3,
}

impl From<SproutAccType> for AccType {
    fn from(t: SproutAccType) -> AccType {
        match t {
            SproutAccType::Buchi => AccType::Buchi,
            SproutAccType::GenBuchi => AccType::GenBuchi,
            SproutAccType::Parity => AccType::Parity,
            SproutAccType::Rabin => AccType::Rabin,
        }
    }
}

/// A labeled sample of ultimately periodic words.
pub struct SproutSample(Sample);

/// A deterministic automaton with a transition-based condition.
pub struct SproutAutomaton(Automaton);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> SproutStatus {
    match e {
        Error::Parse { .. } | Error::SymbolNotInAlphabet(_) => SproutStatus::ParseError,
        Error::UnsupportedType(_) | Error::UnsupportedFeature(_) | Error::NotIrc(..) => SproutStatus::Unsupported,
        Error::UniverseTooLarge(_) => SproutStatus::TooLarge,
        Error::InternalInconsistency(_) => SproutStatus::Internal,
        _ => SproutStatus::InvalidInput,
    }
}

fn fail(status: SproutStatus, msg: &str) -> SproutStatus {
    set_error(msg);
    status
}

/// Runs `f`, recording errors and containing panics.
fn guard(f: impl FnOnce() -> Result<(), SproutStatus>) -> SproutStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SproutStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(SproutStatus::Panic, "panic inside the library"),
    }
}

fn core(e: Error) -> SproutStatus {
    fail(status_of(&e), &e.to_string())
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, SproutStatus> {
    if s.is_null() {
        return Err(fail(SproutStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(SproutStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

/// # Safety
/// `p` is null or points to a live value of type `T`.
unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, SproutStatus> {
    p.as_ref().ok_or_else(|| fail(SproutStatus::NullPointer, "null handle"))
}

fn out_ptr<T>(out: *mut T) -> Result<(), SproutStatus> {
    if out.is_null() {
        Err(fail(SproutStatus::NullPointer, "null output pointer"))
    } else {
        Ok(())
    }
}

fn c_string(s: String) -> Result<*mut c_char, SproutStatus> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| fail(SproutStatus::Internal, "output contains a NUL byte"))
}

/// Message describing the last failed call on this thread, or an empty
/// string. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn sprout_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a sample file.
///
/// # Safety
/// `text` is a NUL-terminated string and `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sprout_sample_parse(text: *const c_char, out: *mut *mut SproutSample) -> SproutStatus {
    guard(|| {
        out_ptr(out)?;
        let s = parse_sample(unsafe { str_arg(text)? }).map_err(core)?;
        unsafe { *out = Box::into_raw(Box::new(SproutSample(s))) };
        Ok(())
    })
}

/// Number of words in a sample.
///
/// # Safety
/// `sample` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sprout_sample_len(sample: *const SproutSample) -> usize {
    sample.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `sample` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sprout_sample_free(sample: *mut SproutSample) {
    if !sample.is_null() {
        drop(Box::from_raw(sample));
    }
}

/// Learns an automaton of the given type consistent with the sample.
///
/// # Safety
/// `sample` is a live handle and `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sprout_learn(
    sample: *const SproutSample,
    acc_type: SproutAccType,
    out: *mut *mut SproutAutomaton,
) -> SproutStatus {
    guard(|| {
        out_ptr(out)?;
        let s = unsafe { handle(sample)? };
        let a = sprout(&s.0, &LearnerConfig::new(acc_type.into())).map_err(core)?;
        unsafe { *out = Box::into_raw(Box::new(SproutAutomaton(a))) };
        Ok(())
    })
}

/// Reads an automaton from a HOA document.
///
/// # Safety
/// `text` is a NUL-terminated string and `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sprout_automaton_from_hoa(
    text: *const c_char,
    out: *mut *mut SproutAutomaton,
) -> SproutStatus {
    guard(|| {
        out_ptr(out)?;
        let a = parse_hoa(unsafe { str_arg(text)? }).map_err(core)?;
        unsafe { *out = Box::into_raw(Box::new(SproutAutomaton(a))) };
        Ok(())
    })
}

/// Renders an automaton as a HOA document; free it with
/// `sprout_string_free`.
///
/// # Safety
/// `automaton` is a live handle and `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sprout_automaton_to_hoa(
    automaton: *const SproutAutomaton,
    out: *mut *mut c_char,
) -> SproutStatus {
    guard(|| {
        out_ptr(out)?;
        let a = unsafe { handle(automaton)? };
        let s = c_string(emit_hoa(&a.0))?;
        unsafe { *out = s };
        Ok(())
    })
}

/// Number of states; 0 for a null handle.
///
/// # Safety
/// `automaton` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sprout_automaton_num_states(automaton: *const SproutAutomaton) -> usize {
    automaton.as_ref().map_or(0, |a| a.0.num_states())
}

/// Decides membership of a word written `u(v)`.
///
/// # Safety
/// `automaton` is a live handle, `word` a NUL-terminated string and
/// `accepted` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sprout_automaton_accepts(
    automaton: *const SproutAutomaton,
    word: *const c_char,
    accepted: *mut bool,
) -> SproutStatus {
    guard(|| {
        out_ptr(accepted)?;
        let a = unsafe { handle(automaton)? };
        let w = a.0.ts.alphabet().parse_word(unsafe { str_arg(word)? }).map_err(core)?;
        let r = a.0.accepts(&w).map_err(core)?;
        unsafe { *accepted = r };
        Ok(())
    })
}

/// Decides language equivalence. When the automata differ and
/// `counterexample` is not null, it receives a separating word that must be
/// freed with `sprout_string_free`; otherwise it is set to null.
///
/// # Safety
/// Both handles are live, `equivalent` is a valid pointer and
/// `counterexample` is null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sprout_automaton_equivalent(
    a: *const SproutAutomaton,
    b: *const SproutAutomaton,
    equivalent: *mut bool,
    counterexample: *mut *mut c_char,
) -> SproutStatus {
    guard(|| {
        out_ptr(equivalent)?;
        let (a, b) = unsafe { (handle(a)?, handle(b)?) };
        let witness = equivalence(&a.0, &b.0).map_err(core)?;
        let shown = match &witness {
            Some(w) => c_string(w.display(a.0.ts.alphabet()).to_string())?,
            None => ptr::null_mut(),
        };
        unsafe {
            *equivalent = witness.is_none();
            if counterexample.is_null() {
                if !shown.is_null() {
                    drop(CString::from_raw(shown));
                }
            } else {
                *counterexample = shown;
            }
        }
        Ok(())
    })
}

/// # Safety
/// `automaton` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sprout_automaton_free(automaton: *mut SproutAutomaton) {
    if !automaton.is_null() {
        drop(Box::from_raw(automaton));
    }
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sprout_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
