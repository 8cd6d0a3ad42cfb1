//! C interface to `checkdigit`.
//!
//! Every fallible function returns a [`CdStatus`] and writes its result
//! through an out-pointer. Objects handed back to C are opaque handles that
//! must be released with the matching `*_free` function. Strings returned by
//! the library are NUL-terminated and released with [`cd_string_free`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use checkdigit::digits::DigitString;
use checkdigit::engine::{format_summary, Runner, SummaryStyle, TestSummary};
use checkdigit::postnet::{decode_message, detect_and_correct, encode_message, BitString, CorrectionStatus};
use checkdigit::properties::find;
use checkdigit::schemes::{complete_check_digit, SchemeId};
use checkdigit::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    EmptyInput = 3,
    NonDigitCharacter = 4,
    DigitOutOfRange = 5,
    WrongLength = 6,
    IndexOutOfRange = 7,
    NumberTooLarge = 8,
    NonBitCharacter = 9,
    BadLength = 10,
    InvalidCodeword = 11,
    ChecksumMismatch = 12,
    DomainTooLarge = 13,
    InvalidType = 14,
    PredicateFailure = 15,
    UnknownScheme = 16,
    UnknownProperty = 17,
    InvalidArgument = 18,
    Panic = 99,
}

impl From<&Error> for CdStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::EmptyInput => CdStatus::EmptyInput,
            Error::NonDigitCharacter { .. } => CdStatus::NonDigitCharacter,
            Error::DigitOutOfRange(_) | Error::IsbnCheckOutOfRange(_) => CdStatus::DigitOutOfRange,
            Error::WrongLength { .. } => CdStatus::WrongLength,
            Error::IndexOutOfRange { .. } => CdStatus::IndexOutOfRange,
            Error::NumberTooLarge { .. } => CdStatus::NumberTooLarge,
            Error::NonBitCharacter { .. } => CdStatus::NonBitCharacter,
            Error::BadLength(_) => CdStatus::BadLength,
            Error::InvalidCodeword { .. } => CdStatus::InvalidCodeword,
            Error::ChecksumMismatch { .. } => CdStatus::ChecksumMismatch,
            Error::DomainTooLarge { .. } => CdStatus::DomainTooLarge,
            Error::InvalidType(_) => CdStatus::InvalidType,
            Error::PredicateFailure { .. } => CdStatus::PredicateFailure,
            Error::UnknownScheme(_) => CdStatus::UnknownScheme,
            Error::UnknownProperty(_) => CdStatus::UnknownProperty,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdScheme {
    Airline = 0,
    Routing = 1,
    Luhn = 2,
    Isbn10 = 3,
}

impl From<CdScheme> for SchemeId {
    fn from(s: CdScheme) -> Self {
        match s {
            CdScheme::Airline => SchemeId::Airline,
            CdScheme::Routing => SchemeId::Routing,
            CdScheme::Luhn => SchemeId::Luhn,
            CdScheme::Isbn10 => SchemeId::Isbn10,
        }
    }
}

/// Outcome of [`cd_postnet_correct`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdCorrection {
    Clean = 0,
    Corrected = 1,
    Uncorrectable = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdFormat {
    Cgen = 0,
    Json = 1,
}

/// Opaque digit sequence.
pub struct CdDigits(DigitString);

/// Opaque result of a property run.
pub struct CdSummary(TestSummary);

fn guard(f: impl FnOnce() -> Result<(), CdStatus>) -> CdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CdStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => CdStatus::Panic,
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, CdStatus> {
    if p.is_null() {
        return Err(CdStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| CdStatus::InvalidUtf8)
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, CdStatus> {
    p.as_ref().ok_or(CdStatus::NullPointer)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), CdStatus> {
    if out.is_null() {
        return Err(CdStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    // library output never contains NUL
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn lift<T>(r: checkdigit::Result<T>) -> Result<T, CdStatus> {
    r.map_err(|e| CdStatus::from(&e))
}

/// Static description of a status code. Never free the result.
#[no_mangle]
pub extern "C" fn cd_status_name(status: CdStatus) -> *const c_char {
    let s: &'static CStr = match status {
        CdStatus::Ok => c"Ok",
        CdStatus::NullPointer => c"NullPointer",
        CdStatus::InvalidUtf8 => c"InvalidUtf8",
        CdStatus::EmptyInput => c"EmptyInput",
        CdStatus::NonDigitCharacter => c"NonDigitCharacter",
        CdStatus::DigitOutOfRange => c"DigitOutOfRange",
        CdStatus::WrongLength => c"WrongLength",
        CdStatus::IndexOutOfRange => c"IndexOutOfRange",
        CdStatus::NumberTooLarge => c"NumberTooLarge",
        CdStatus::NonBitCharacter => c"NonBitCharacter",
        CdStatus::BadLength => c"BadLength",
        CdStatus::InvalidCodeword => c"InvalidCodeword",
        CdStatus::ChecksumMismatch => c"ChecksumMismatch",
        CdStatus::DomainTooLarge => c"DomainTooLarge",
        CdStatus::InvalidType => c"InvalidType",
        CdStatus::PredicateFailure => c"PredicateFailure",
        CdStatus::UnknownScheme => c"UnknownScheme",
        CdStatus::UnknownProperty => c"UnknownProperty",
        CdStatus::InvalidArgument => c"InvalidArgument",
        CdStatus::Panic => c"Panic",
    };
    s.as_ptr()
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses decimal text (spaces, `-` and `|` are skipped).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_digits_parse(text: *const c_char, out: *mut *mut CdDigits) -> CdStatus {
    guard(|| {
        let ds = lift(checkdigit::digits::parse_digit_string(self::text(text)?))?;
        put(out, Box::into_raw(Box::new(CdDigits(ds))))
    })
}

/// Builds a handle from `len` raw values, each in `0..=9`.
///
/// # Safety
/// `values` must point to `len` bytes (it may be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn cd_digits_from_values(values: *const u8, len: usize, out: *mut *mut CdDigits) -> CdStatus {
    guard(|| {
        let slice = if len == 0 {
            &[][..]
        } else if values.is_null() {
            return Err(CdStatus::NullPointer);
        } else {
            std::slice::from_raw_parts(values, len)
        };
        let ds = lift(DigitString::from_values(slice))?;
        put(out, Box::into_raw(Box::new(CdDigits(ds))))
    })
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cd_digits_len(d: *const CdDigits) -> usize {
    d.as_ref().map_or(0, |d| d.0.len())
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_digits_get(d: *const CdDigits, index: usize, out: *mut u8) -> CdStatus {
    guard(|| {
        let d = deref(d)?;
        let v = d.0.get(index).ok_or(CdStatus::IndexOutOfRange)?;
        put(out, v.value())
    })
}

/// Renders the digits; free the result with [`cd_string_free`].
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cd_digits_to_string(d: *const CdDigits) -> *mut c_char {
    match d.as_ref() {
        Some(d) => c_string(d.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `d` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cd_digits_free(d: *mut CdDigits) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Checks a complete number written as text. ISBN input may end in `X`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `valid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_verify(scheme: CdScheme, text: *const c_char, valid: *mut bool) -> CdStatus {
    guard(|| {
        let ok = lift(SchemeId::from(scheme).verify_text(self::text(text)?))?;
        put(valid, ok)
    })
}

/// Appends the check digit to `body` and writes the full number as text.
///
/// # Safety
/// `body` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_complete(scheme: CdScheme, body: *const CdDigits, out: *mut *mut c_char) -> CdStatus {
    guard(|| {
        let done = lift(complete_check_digit(scheme.into(), &deref(body)?.0))?;
        put(out, c_string(done.to_string()))
    })
}

/// Encodes a message as a `0`/`1` string, check block included.
///
/// # Safety
/// `message` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_postnet_encode(message: *const CdDigits, out: *mut *mut c_char) -> CdStatus {
    guard(|| {
        let bits = lift(encode_message(&deref(message)?.0))?;
        put(out, c_string(bits.to_string()))
    })
}

/// Decodes a `0`/`1` string. Any corruption is reported as a status.
///
/// # Safety
/// `bits` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_postnet_decode(bits: *const c_char, out: *mut *mut CdDigits) -> CdStatus {
    guard(|| {
        let b = lift(BitString::parse(text(bits)?))?;
        let ds = lift(decode_message(&b))?;
        put(out, Box::into_raw(Box::new(CdDigits(ds))))
    })
}

/// Repairs at most one damaged block. `message` receives the recovered
/// digits, or null when the input is uncorrectable.
///
/// # Safety
/// `bits` must be a NUL-terminated string; `outcome` and `message` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cd_postnet_correct(
    bits: *const c_char,
    outcome: *mut CdCorrection,
    message: *mut *mut CdDigits,
) -> CdStatus {
    guard(|| {
        if outcome.is_null() || message.is_null() {
            return Err(CdStatus::NullPointer);
        }
        let b = lift(BitString::parse(text(bits)?))?;
        let report = lift(detect_and_correct(&b))?;
        let kind = match report.status {
            CorrectionStatus::Clean => CdCorrection::Clean,
            CorrectionStatus::CorrectedDigit { .. } => CdCorrection::Corrected,
            CorrectionStatus::Uncorrectable(_) => CdCorrection::Uncorrectable,
        };
        put(outcome, kind)?;
        let handle = report.recovered.map_or(ptr::null_mut(), |ds| Box::into_raw(Box::new(CdDigits(ds))));
        put(message, handle)
    })
}

/// Runs a catalog property on `trials` random cases. `workers` of 0 uses
/// every available core.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_property_run(
    name: *const c_char,
    trials: u64,
    seed: u64,
    workers: usize,
    out: *mut *mut CdSummary,
) -> CdStatus {
    guard(|| {
        let entry = lift(find(text(name)?))?;
        if trials == 0 {
            return Err(CdStatus::InvalidArgument);
        }
        let summary = lift(runner(workers).run_property(&entry.property, trials, seed))?;
        put(out, Box::into_raw(Box::new(CdSummary(summary))))
    })
}

/// Enumerates a catalog property over `sample_size` sampled valid instances.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_property_exhaustive(
    name: *const c_char,
    sample_size: usize,
    seed: u64,
    workers: usize,
    out: *mut *mut CdSummary,
) -> CdStatus {
    guard(|| {
        let entry = lift(find(text(name)?))?;
        let p = lift(entry.exhaustive_property(sample_size, seed))?;
        let summary = lift(runner(workers).run_exhaustive(&p))?;
        put(out, Box::into_raw(Box::new(CdSummary(summary))))
    })
}

fn runner(workers: usize) -> Runner {
    match workers {
        0 => Runner::new(),
        n => Runner::new().workers(n),
    }
}

/// Plain counts from a summary.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CdCounts {
    pub tested: u64,
    pub satisfied: u64,
    pub satisfied_unique: u64,
    pub counterexamples: u64,
    pub witnesses: u64,
    pub vacuous: bool,
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_summary_counts(s: *const CdSummary, out: *mut CdCounts) -> CdStatus {
    guard(|| {
        let s = &deref(s)?.0;
        put(
            out,
            CdCounts {
                tested: s.tested,
                satisfied: s.satisfied,
                satisfied_unique: s.satisfied_unique,
                counterexamples: s.counterexamples.len() as u64,
                witnesses: s.witnesses_count,
                vacuous: s.vacuous,
            },
        )
    })
}

/// Renders a summary; free the result with [`cd_string_free`].
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cd_summary_format(s: *const CdSummary, format: CdFormat) -> *mut c_char {
    let style = match format {
        CdFormat::Cgen => SummaryStyle::CgenText,
        CdFormat::Json => SummaryStyle::Json,
    };
    match s.as_ref() {
        Some(s) => c_string(format_summary(&s.0, style)),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cd_summary_free(s: *mut CdSummary) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
