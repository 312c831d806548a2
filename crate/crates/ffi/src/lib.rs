//! C ABI over `roundfold`.
//!
//! Objects are opaque handles created by the `rf_*_parse`, `rf_*_catalog`
//! and `rf_check` calls and released by the matching `rf_*_free`. Every fallible call returns an
//! [`RfStatus`] and writes its result through an out-pointer; on failure the
//! message is available from [`rf_last_error`] on the same thread. Strings
//! handed out by the library are released with [`rf_string_free`].

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use roundfold::abelian::Ring;
use roundfold::bundles::{self, ApplicabilityReport, BundleDescriptor, RuleChoice};
use roundfold::foldmap::{self, FoldMapDescriptor};
use roundfold::graphs;
use roundfold::gysin;
use roundfold::homology::parse_manifold;
use roundfold::pop::{apply_p_operation, Justification};
use roundfold::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidDescriptor = 4,
    Incomplete = 5,
    Parameter = 6,
    Precondition = 7,
    MissingBundleData = 8,
    NotApplicable = 9,
    /// Overflow, dimension mismatch, ill-defined map or unsupported Tor term.
    Algebra = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfRing {
    Integers = 0,
    ModTwo = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfRule {
    Auto = 0,
    Thm1 = 1,
    Thm2 = 2,
    Thm3 = 3,
    Thm4 = 4,
    Prop34 = 5,
}

/// A round fold map descriptor.
pub struct RfDescriptor {
    inner: FoldMapDescriptor,
}

/// A circle-bundle descriptor.
pub struct RfBundle {
    inner: BundleDescriptor,
}

/// The outcome of an applicability check.
pub struct RfReport {
    inner: ApplicabilityReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RfStatus {
    match e {
        Error::Parse { .. } => RfStatus::Parse,
        Error::InvalidDescriptor(_) => RfStatus::InvalidDescriptor,
        Error::Incomplete(_) => RfStatus::Incomplete,
        Error::Parameter(_) | Error::InvalidGroup(_) => RfStatus::Parameter,
        Error::Precondition(_) => RfStatus::Precondition,
        Error::MissingBundleData(_) => RfStatus::MissingBundleData,
        Error::NotApplicable(_) => RfStatus::NotApplicable,
        Error::Overflow(_) | Error::Dimension(_) | Error::IllDefinedHom { .. } | Error::UnsupportedTor(_) => {
            RfStatus::Algebra
        }
    }
}

enum Fail {
    Status(RfStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            RfStatus::Ok
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            RfStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(RfStatus::NullArgument, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(RfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Status(RfStatus::InvalidUtf8, "output contains NUL".into()))?;
    put(out, c.into_raw(), "out")
}

unsafe fn put_box<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(value)), "out")
}

unsafe fn index_set(p: *const usize, len: usize) -> Result<BTreeSet<usize>, Fail> {
    if len == 0 {
        return Ok(BTreeSet::new());
    }
    if p.is_null() {
        return Err(null("start"));
    }
    Ok(std::slice::from_raw_parts(p, len).iter().copied().collect())
}

fn ring(r: RfRing) -> Ring {
    match r {
        RfRing::Integers => Ring::Integers,
        RfRing::ModTwo => Ring::ModTwo,
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn rf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn rf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rf_descriptor_parse(src: *const c_char, out: *mut *mut RfDescriptor) -> RfStatus {
    guard(|| {
        let d = foldmap::parse_descriptor(text(src, "src")?)?;
        put_box(out, RfDescriptor { inner: d })
    })
}

/// Builds a catalog item; `params` holds `count` NUL-terminated strings.
///
/// # Safety
/// Pointers must be valid for the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn rf_descriptor_catalog(
    name: *const c_char,
    params: *const *const c_char,
    count: usize,
    out: *mut *mut RfDescriptor,
) -> RfStatus {
    guard(|| {
        let name = text(name, "name")?;
        let mut owned = Vec::with_capacity(count);
        if count > 0 {
            if params.is_null() {
                return Err(null("params"));
            }
            for &p in std::slice::from_raw_parts(params, count) {
                owned.push(text(p, "params[i]")?.to_string());
            }
        }
        let d = foldmap::catalog(name, &owned)?;
        put_box(out, RfDescriptor { inner: d })
    })
}

/// # Safety
/// `d` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn rf_descriptor_free(d: *mut RfDescriptor) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rf_descriptor_serialize(d: *const RfDescriptor, out: *mut *mut c_char) -> RfStatus {
    guard(|| put_string(out, foldmap::serialize_descriptor(&handle(d, "d")?.inner)))
}

/// Writes the number of validation diagnostics; zero means valid.
///
/// # Safety
/// `d` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rf_descriptor_diagnostics(d: *const RfDescriptor, out: *mut usize) -> RfStatus {
    guard(|| put(out, foldmap::validate(&handle(d, "d")?.inner).len(), "out"))
}

/// Source dimension, target dimension and number of singular components.
///
/// # Safety
/// `d` is a live handle; out-pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn rf_descriptor_dims(
    d: *const RfDescriptor,
    m: *mut usize,
    n: *mut usize,
    l: *mut usize,
) -> RfStatus {
    guard(|| {
        let d = &handle(d, "d")?.inner;
        put(m, d.m, "m")?;
        put(n, d.n, "n")?;
        put(l, d.l, "l")
    })
}

/// # Safety
/// `d` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rf_graph_dot(
    d: *const RfDescriptor,
    degree: usize,
    r: RfRing,
    out: *mut *mut c_char,
) -> RfStatus {
    guard(|| {
        let g = graphs::build_graph(&handle(d, "d")?.inner, degree, ring(r))?;
        put_string(out, graphs::export_dot(&g))
    })
}

/// # Safety
/// `d` is a live handle; `set` holds `len` region indices; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rf_graph_is_starting_set(
    d: *const RfDescriptor,
    degree: usize,
    r: RfRing,
    set: *const usize,
    len: usize,
    out: *mut bool,
) -> RfStatus {
    guard(|| {
        let g = graphs::build_graph(&handle(d, "d")?.inner, degree, ring(r))?;
        let s = index_set(set, len)?;
        put(out, graphs::is_starting_set(&g, &s)?, "out")
    })
}

/// The product circle bundle.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rf_bundle_trivial(out: *mut *mut RfBundle) -> RfStatus {
    guard(|| put_box(out, RfBundle { inner: BundleDescriptor::trivial() }))
}

/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rf_bundle_parse(src: *const c_char, out: *mut *mut RfBundle) -> RfStatus {
    guard(|| {
        let b = bundles::parse_bundle(text(src, "src")?)?;
        put_box(out, RfBundle { inner: b })
    })
}

/// # Safety
/// `b` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn rf_bundle_free(b: *mut RfBundle) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Runs a criterion. With `start_len == 0` a starting set is searched.
///
/// # Safety
/// Handles are live; `start` holds `start_len` indices; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rf_check(
    d: *const RfDescriptor,
    b: *const RfBundle,
    rule: RfRule,
    start: *const usize,
    start_len: usize,
    out: *mut *mut RfReport,
) -> RfStatus {
    guard(|| {
        let d = &handle(d, "d")?.inner;
        let b = &handle(b, "b")?.inner;
        let s = index_set(start, start_len)?;
        let rule = match rule {
            RfRule::Auto => RuleChoice::Auto,
            RfRule::Thm1 => RuleChoice::Thm1,
            RfRule::Thm2 => RuleChoice::Thm2,
            RfRule::Thm3 => RuleChoice::Thm3,
            RfRule::Thm4 => RuleChoice::Thm4,
            RfRule::Prop34 => RuleChoice::Prop34,
        };
        let report = bundles::check(d, b, rule, (start_len > 0).then_some(&s))?;
        put_box(out, RfReport { inner: report })
    })
}

/// # Safety
/// `r` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rf_report_applicable(r: *const RfReport, out: *mut bool) -> RfStatus {
    guard(|| put(out, handle(r, "r")?.inner.applicable, "out"))
}

/// # Safety
/// `r` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rf_report_text(r: *const RfReport, out: *mut *mut c_char) -> RfStatus {
    guard(|| put_string(out, handle(r, "r")?.inner.to_text()))
}

/// # Safety
/// `r` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn rf_report_free(r: *mut RfReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// P-operation by the fiber `fiber` (an expression such as `sphere(1)`).
/// A null `report` declares the bundle a global product.
///
/// # Safety
/// `d` is a live handle, `report` is a live handle or null, `fiber` is a
/// NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rf_apply_p_operation(
    d: *const RfDescriptor,
    fiber: *const c_char,
    report: *const RfReport,
    out: *mut *mut RfDescriptor,
) -> RfStatus {
    guard(|| {
        let d = &handle(d, "d")?.inner;
        let f = parse_manifold(text(fiber, "fiber")?)?;
        let why = match report.as_ref() {
            Some(r) => Justification::Report { report: r.inner.clone() },
            None => Justification::ProductBundle,
        };
        let r = apply_p_operation(d, &f, why)?;
        put_box(out, RfDescriptor { inner: r.result })
    })
}

/// Text report for `thm6` (k[, m]), `thm7` (k) or `thm8` (k1, k2).
///
/// # Safety
/// `family` is a NUL-terminated string, `params` holds `count` values and
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rf_family_report(
    family: *const c_char,
    params: *const i64,
    count: usize,
    out: *mut *mut c_char,
) -> RfStatus {
    guard(|| {
        let family = text(family, "family")?;
        let p: &[i64] = if count == 0 {
            &[]
        } else if params.is_null() {
            return Err(null("params"));
        } else {
            std::slice::from_raw_parts(params, count)
        };
        let arity = |lo: usize, hi: usize| {
            if (lo..=hi).contains(&p.len()) {
                Ok(())
            } else {
                Err(Fail::Status(
                    RfStatus::Parameter,
                    format!("{family} takes {lo} to {hi} parameters, got {}", p.len()),
                ))
            }
        };
        let report = match family {
            "thm6" => {
                arity(1, 2)?;
                let m = p.get(1).map_or(Ok(5), |&m| {
                    usize::try_from(m).map_err(|_| Fail::Status(RfStatus::Parameter, format!("bad dimension {m}")))
                })?;
                gysin::family_h1_theorem6(p[0], m)?
            }
            "thm7" => {
                arity(1, 1)?;
                gysin::family_h1_theorem7(p[0])
            }
            "thm8" => {
                arity(2, 2)?;
                gysin::family_h1_theorem8(p[0], p[1])?
            }
            other => {
                return Err(Fail::Status(RfStatus::Parameter, format!("unknown family `{other}`")));
            }
        };
        put_string(out, report.to_text())
    })
}
