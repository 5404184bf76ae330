//! C ABI over `sftkit`.
//!
//! Every handle is opaque and owned by the caller once returned; release it
//! with the matching `*_free`. Functions return an [`SftkitStatus`]; on
//! failure [`sftkit_last_error`] describes the problem for the calling
//! thread. Strings handed out by the library are freed with
//! [`sftkit_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sftkit::period::{self, CountMode, PeriodError, SearchBudget, Verdict, Witness, WitnessReport};
use sftkit::sft::{self, SftError, SftSpec, TorusConfig};

/// Parsed SFT or Wang tileset.
pub struct SftkitSpec(SftSpec);

/// Torus configuration tied to the spec it was parsed against.
pub struct SftkitTorus(TorusConfig);

/// Result of a period decision.
pub struct SftkitReport {
    report: WitnessReport,
    text: CString,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SftkitStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    BudgetExhausted = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SftkitVerdict {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SftkitCountMode {
    Stabilizer = 0,
    LexMin = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SftkitBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    pub max_vertical: u64,
}

impl From<SftkitBudget> for SearchBudget {
    fn from(b: SftkitBudget) -> Self {
        SearchBudget { max_nodes: b.max_nodes, max_seconds: b.max_seconds, max_vertical: b.max_vertical }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(SftkitStatus, String);

impl From<SftError> for Fail {
    fn from(e: SftError) -> Self {
        let status = match e {
            SftError::Parse { .. } => SftkitStatus::Parse,
            _ => SftkitStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

impl From<PeriodError> for Fail {
    fn from(e: PeriodError) -> Self {
        match e {
            PeriodError::Sft(e) => e.into(),
            PeriodError::InvalidArgument(m) => Fail(SftkitStatus::InvalidArgument, m),
            e @ PeriodError::BudgetExhausted { .. } => Fail(SftkitStatus::BudgetExhausted, e.to_string()),
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(SftkitStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SftkitStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SftkitStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SftkitStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null("text"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(SftkitStatus::InvalidUtf8, "text is not UTF-8".into()))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn budget_or_default(b: *const SftkitBudget) -> SearchBudget {
    // SAFETY: callers pass either null or a valid pointer
    unsafe { b.as_ref() }.map(|b| (*b).into()).unwrap_or_default()
}

/// Message of the last failed call on this thread; empty if none. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sftkit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn sftkit_budget_default() -> SftkitBudget {
    let b = SearchBudget::default();
    SftkitBudget { max_nodes: b.max_nodes, max_seconds: b.max_seconds, max_vertical: b.max_vertical }
}

#[no_mangle]
pub unsafe extern "C" fn sftkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse `%sft` or `%wang` text.
#[no_mangle]
pub unsafe extern "C" fn sftkit_spec_parse(src: *const c_char, out: *mut *mut SftkitSpec) -> SftkitStatus {
    guard(|| {
        let spec = sft::parse_any(text(src)?)?.into_sft()?;
        put(out, SftkitSpec(spec))
    })
}

#[no_mangle]
pub unsafe extern "C" fn sftkit_spec_free(spec: *mut SftkitSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Dimension of the spec, 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sftkit_spec_dim(spec: *const SftkitSpec) -> usize {
    spec.as_ref().map_or(0, |s| s.0.dim())
}

/// Canonical `%sft` text of the spec.
#[no_mangle]
pub unsafe extern "C" fn sftkit_spec_text(spec: *const SftkitSpec, out: *mut *mut c_char) -> SftkitStatus {
    guard(|| {
        let s = get(spec, "spec")?;
        string_out(out, sft::write_sft(&s.0))
    })
}

unsafe fn string_out(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).map_err(|_| Fail(SftkitStatus::InvalidArgument, "interior NUL".into()))?.into_raw();
    Ok(())
}

unsafe fn decide(
    spec: *const SftkitSpec,
    out: *mut *mut SftkitReport,
    f: impl FnOnce(&SftSpec) -> Result<WitnessReport, PeriodError>,
) -> SftkitStatus {
    guard(|| {
        let s = &get(spec, "spec")?.0;
        let report = f(s)?;
        let text = CString::new(report.render(s, false)).unwrap_or_default();
        put(out, SftkitReport { report, text })
    })
}

/// Is there a configuration whose period group is exactly `p`ℤ^d? A null
/// budget means the defaults.
#[no_mangle]
pub unsafe extern "C" fn sftkit_strong_period(
    spec: *const SftkitSpec,
    p: usize,
    budget: *const SftkitBudget,
    out: *mut *mut SftkitReport,
) -> SftkitStatus {
    let b = budget_or_default(budget);
    decide(spec, out, |s| period::strong_period_exists(s, p, &b))
}

/// Is there a configuration of least horizontal period `n`?
#[no_mangle]
pub unsafe extern "C" fn sftkit_horizontal_period(
    spec: *const SftkitSpec,
    n: i64,
    budget: *const SftkitBudget,
    out: *mut *mut SftkitReport,
) -> SftkitStatus {
    let b = budget_or_default(budget);
    decide(spec, out, |s| period::horizontal_period(s, n, &b))
}

/// Is there a configuration whose period group is exactly ℤ·(m, n)?
#[no_mangle]
pub unsafe extern "C" fn sftkit_one_period(
    spec: *const SftkitSpec,
    m: i64,
    n: i64,
    budget: *const SftkitBudget,
    out: *mut *mut SftkitReport,
) -> SftkitStatus {
    let b = budget_or_default(budget);
    decide(spec, out, |s| period::one_period(s, m, n, &b))
}

/// Number of orbits with period group exactly `p`ℤ^d.
#[no_mangle]
pub unsafe extern "C" fn sftkit_count_strong(
    spec: *const SftkitSpec,
    p: usize,
    mode: SftkitCountMode,
    budget: *const SftkitBudget,
    out: *mut u64,
) -> SftkitStatus {
    let b = budget_or_default(budget);
    guard(|| {
        let s = &get(spec, "spec")?.0;
        let mode = match mode {
            SftkitCountMode::Stabilizer => CountMode::Stabilizer,
            SftkitCountMode::LexMin => CountMode::LexMin,
        };
        let n = period::count_strong_with(s, p, mode, &b)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = n;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sftkit_report_free(report: *mut SftkitReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Verdict of a report; `Unknown` for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sftkit_report_verdict(report: *const SftkitReport) -> SftkitVerdict {
    match report.as_ref().map(|r| r.report.verdict) {
        Some(Verdict::Yes) => SftkitVerdict::Yes,
        Some(Verdict::No) => SftkitVerdict::No,
        _ => SftkitVerdict::Unknown,
    }
}

#[no_mangle]
pub unsafe extern "C" fn sftkit_report_nodes(report: *const SftkitReport) -> u64 {
    report.as_ref().map_or(0, |r| r.report.nodes)
}

/// Human-readable report, owned by the report handle.
#[no_mangle]
pub unsafe extern "C" fn sftkit_report_text(report: *const SftkitReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.text.as_ptr())
}

/// Copy of the torus witness; `*out` is set to null when the report has no
/// torus witness.
#[no_mangle]
pub unsafe extern "C" fn sftkit_report_torus(report: *const SftkitReport, out: *mut *mut SftkitTorus) -> SftkitStatus {
    guard(|| {
        let r = get(report, "report")?;
        if out.is_null() {
            return Err(null("out"));
        }
        match &r.report.witness {
            Some(Witness::Torus(t)) => put(out, SftkitTorus(t.clone())),
            _ => {
                *out = ptr::null_mut();
                Ok(())
            }
        }
    })
}

/// Parse `%torus` text against `spec`.
#[no_mangle]
pub unsafe extern "C" fn sftkit_torus_parse(spec: *const SftkitSpec, src: *const c_char, out: *mut *mut SftkitTorus) -> SftkitStatus {
    guard(|| {
        let s = &get(spec, "spec")?.0;
        put(out, SftkitTorus(sft::parse_torus(text(src)?, s)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn sftkit_torus_free(torus: *mut SftkitTorus) {
    if !torus.is_null() {
        drop(Box::from_raw(torus));
    }
}

/// Writes up to `cap` side lengths into `dims` and returns the dimension.
#[no_mangle]
pub unsafe extern "C" fn sftkit_torus_dims(torus: *const SftkitTorus, dims: *mut usize, cap: usize) -> usize {
    let Some(t) = torus.as_ref() else { return 0 };
    if !dims.is_null() {
        for (i, &d) in t.0.dims().iter().take(cap).enumerate() {
            *dims.add(i) = d;
        }
    }
    t.0.dim()
}

/// `%torus` text of a configuration.
#[no_mangle]
pub unsafe extern "C" fn sftkit_torus_text(torus: *const SftkitTorus, spec: *const SftkitSpec, out: *mut *mut c_char) -> SftkitStatus {
    guard(|| {
        let t = &get(torus, "torus")?.0;
        let s = &get(spec, "spec")?.0;
        string_out(out, sft::write_torus(t, s))
    })
}

/// Sets `*valid` when no forbidden pattern occurs in the torus.
#[no_mangle]
pub unsafe extern "C" fn sftkit_torus_is_valid(torus: *const SftkitTorus, spec: *const SftkitSpec, valid: *mut bool) -> SftkitStatus {
    guard(|| {
        let t = &get(torus, "torus")?.0;
        let s = &get(spec, "spec")?.0;
        let v = sft::is_locally_valid(t, s)?;
        if valid.is_null() {
            return Err(null("valid"));
        }
        *valid = v.is_empty();
        Ok(())
    })
}
