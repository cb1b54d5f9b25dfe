//! C ABI for `symnabla`.
//!
//! Every fallible function returns a [`SymnablaStatus`]; on failure a
//! description is available from [`symnabla_last_error`] on the same thread.
//! Strings returned through out-pointers are owned by the caller and must be
//! released with [`symnabla_string_free`]. Sets and b-files are opaque
//! handles released with their own `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use symnabla::oeis::{crosscheck, parse_bfile, BFile};
use symnabla::recurrence::{
    a_with, reduce_a8_with, sparse_theta, structure_a8, Method, ReduceOptions,
};
use symnabla::symmetric::{sym_diff, sym_power_with, sym_prod_with, Limits, SymSet};
use symnabla::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymnablaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Domain = 3,
    SizeLimit = 4,
    Parse = 5,
    Format = 6,
    Coverage = 7,
    Transport = 8,
    Verification = 9,
    Io = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymnablaMethod {
    Auto = 0,
    Brute = 1,
    Fast = 2,
    Matrix = 3,
    Reduce = 4,
}

impl From<SymnablaMethod> for Method {
    fn from(m: SymnablaMethod) -> Self {
        match m {
            SymnablaMethod::Auto => Method::Auto,
            SymnablaMethod::Brute => Method::Brute,
            SymnablaMethod::Fast => Method::Fast,
            SymnablaMethod::Matrix => Method::Matrix,
            SymnablaMethod::Reduce => Method::Reduce,
        }
    }
}

/// Opaque handle to a set of `k`-smooth numbers.
pub struct SymnablaSet(SymSet);

/// Opaque handle to a parsed b-file.
pub struct SymnablaBFile(BFile);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> SymnablaStatus {
    match e {
        Error::Domain(_) => SymnablaStatus::Domain,
        Error::SizeLimit(_) => SymnablaStatus::SizeLimit,
        Error::Parse { .. } => SymnablaStatus::Parse,
        Error::Format(_) => SymnablaStatus::Format,
        Error::Coverage(_) => SymnablaStatus::Coverage,
        Error::Transport(_) => SymnablaStatus::Transport,
        Error::Verification(_) => SymnablaStatus::Verification,
        Error::Io(_) => SymnablaStatus::Io,
    }
}

/// Run `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (SymnablaStatus, String)>) -> SymnablaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SymnablaStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".to_string());
            SymnablaStatus::Panic
        }
    }
}

trait IntoFfi<T> {
    fn ffi(self) -> Result<T, (SymnablaStatus, String)>;
}

impl<T> IntoFfi<T> for symnabla::Result<T> {
    fn ffi(self) -> Result<T, (SymnablaStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null(what: &str) -> (SymnablaStatus, String) {
    (SymnablaStatus::NullPointer, format!("{what} is NULL"))
}

fn limits(element_cap: usize) -> Limits {
    if element_cap == 0 {
        Limits::default()
    } else {
        Limits { element_cap }
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (SymnablaStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).expect("decimal and JSON text has no NUL");
    *out = c.into_raw();
    Ok(())
}

/// The message of the last failed call on this thread, or NULL.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn symnabla_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn symnabla_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `a_k(n)` as a decimal string in `*out`. `element_cap` bounds the brute-force
/// oracle; 0 selects the default.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn symnabla_term(
    k: u32,
    n: u64,
    method: SymnablaMethod,
    element_cap: usize,
    out: *mut *mut c_char,
) -> SymnablaStatus {
    guard(|| {
        let v = a_with(k, n, method.into(), &limits(element_cap)).ffi()?;
        write_string(out, v.to_string())
    })
}

/// `theta_t = a_k(2^t - 1)` for `k` in `2..=8` as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn symnabla_sparse_theta(
    k: u32,
    t: u32,
    out: *mut *mut c_char,
) -> SymnablaStatus {
    guard(|| {
        let v = sparse_theta(k, t).ffi()?;
        write_string(out, v.to_string())
    })
}

/// The structural vector `(b,c,u,v,r)` of `H_8^∇n`, from the matrix word.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn symnabla_structure_a8(n: u64, out: *mut *mut c_char) -> SymnablaStatus {
    guard(|| {
        let v = structure_a8(n).map(|x| x.to_string());
        write_string(out, format!("({})", v.join(",")))
    })
}

/// `a_8(n)` by the reduction rules. When `trace_json` is not NULL it receives
/// the derivation tree as JSON.
///
/// # Safety
/// `value` must be valid for one pointer write; `trace_json` must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn symnabla_reduce(
    n: u64,
    optional_rules: bool,
    value: *mut *mut c_char,
    trace_json: *mut *mut c_char,
) -> SymnablaStatus {
    guard(|| {
        if value.is_null() {
            return Err(null("value"));
        }
        let opts = ReduceOptions { optional_rules };
        let (v, trace) = reduce_a8_with(n, !trace_json.is_null(), opts);
        if let Some(trace) = trace {
            let json = serde_json::to_string(&trace).expect("trace serializes");
            write_string(trace_json, json)?;
        }
        write_string(value, v.to_string())
    })
}

/// `H_k^∇n` as a new handle in `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn symnabla_set_power(
    k: u32,
    n: u64,
    element_cap: usize,
    out: *mut *mut SymnablaSet,
) -> SymnablaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = sym_power_with(k, n, &limits(element_cap)).ffi()?;
        *out = Box::into_raw(Box::new(SymnablaSet(s)));
        Ok(())
    })
}

/// `a ∇ b` as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn symnabla_set_product(
    a: *const SymnablaSet,
    b: *const SymnablaSet,
    element_cap: usize,
    out: *mut *mut SymnablaSet,
) -> SymnablaStatus {
    guard(|| {
        let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
            return Err(null("set handle"));
        };
        if out.is_null() {
            return Err(null("out"));
        }
        let s = sym_prod_with(&a.0, &b.0, &limits(element_cap)).ffi()?;
        *out = Box::into_raw(Box::new(SymnablaSet(s)));
        Ok(())
    })
}

/// `a △ b` as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn symnabla_set_difference(
    a: *const SymnablaSet,
    b: *const SymnablaSet,
    out: *mut *mut SymnablaSet,
) -> SymnablaStatus {
    guard(|| {
        let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
            return Err(null("set handle"));
        };
        if out.is_null() {
            return Err(null("out"));
        }
        let s = sym_diff(&a.0, &b.0).ffi()?;
        *out = Box::into_raw(Box::new(SymnablaSet(s)));
        Ok(())
    })
}

/// Number of elements; 0 for NULL.
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn symnabla_set_len(set: *const SymnablaSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// Whether the natural number `value` is a member; false for NULL.
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn symnabla_set_contains(set: *const SymnablaSet, value: u64) -> bool {
    set.as_ref().is_some_and(|s| s.0.contains_natural(value))
}

/// The members in increasing order, space separated.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn symnabla_set_to_string(
    set: *const SymnablaSet,
    out: *mut *mut c_char,
) -> SymnablaStatus {
    guard(|| {
        let s = set.as_ref().ok_or_else(|| null("set"))?;
        let members: Vec<String> = s.0.naturals().iter().map(|v| v.to_string()).collect();
        write_string(out, members.join(" "))
    })
}

/// # Safety
/// `set` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn symnabla_set_free(set: *mut SymnablaSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Parse NUL-terminated b-file text into a new handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn symnabla_bfile_parse(
    text: *const c_char,
    out: *mut *mut SymnablaBFile,
) -> SymnablaStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let bytes = CStr::from_ptr(text).to_bytes();
        if std::str::from_utf8(bytes).is_err() {
            return Err((
                SymnablaStatus::InvalidUtf8,
                "b-file text is not UTF-8".into(),
            ));
        }
        let b = parse_bfile(bytes).ffi()?;
        *out = Box::into_raw(Box::new(SymnablaBFile(b)));
        Ok(())
    })
}

/// Number of entries; 0 for NULL.
///
/// # Safety
/// `bfile` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn symnabla_bfile_len(bfile: *const SymnablaBFile) -> usize {
    bfile.as_ref().map_or(0, |b| b.0.len())
}

/// Compare `a_k(0..=limit)` with the b-file. `*agrees` is set; on disagreement
/// `*first_mismatch` (if not NULL) receives the first differing index.
///
/// # Safety
/// `bfile` must be a live handle; `agrees` must be valid; `first_mismatch` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn symnabla_bfile_crosscheck(
    bfile: *const SymnablaBFile,
    k: u32,
    limit: u64,
    agrees: *mut bool,
    first_mismatch: *mut u64,
) -> SymnablaStatus {
    guard(|| {
        let b = bfile.as_ref().ok_or_else(|| null("bfile"))?;
        if agrees.is_null() {
            return Err(null("agrees"));
        }
        let report = crosscheck(k, &b.0, limit).ffi()?;
        *agrees = report.agrees();
        if let (Some(m), false) = (&report.first_mismatch, first_mismatch.is_null()) {
            *first_mismatch = m.n;
        }
        Ok(())
    })
}

/// # Safety
/// `bfile` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn symnabla_bfile_free(bfile: *mut SymnablaBFile) {
    if !bfile.is_null() {
        drop(Box::from_raw(bfile));
    }
}
