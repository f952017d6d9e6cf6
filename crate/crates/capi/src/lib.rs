//! C ABI for the phasetype classifier.
//!
//! The surface is a thin, panic-safe wrapper around the core pipeline: an
//! expression string goes in, an opaque report handle comes out, and typed
//! accessors read the invariants off the handle.  All strings returned from
//! accessors are borrowed from the handle and stay valid until
//! [`pt_report_free`]; error text is kept in thread-local storage and stays
//! valid until the next failing call on the same thread.
//!
//! Exact values (the Newton distance, the height, the weights) travel as
//! decimal strings inside the JSON document; the `double` accessors are
//! rounded conveniences for callers that do not parse JSON.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use phasetype::cli::parse::parse_polynomial;
use phasetype::cli::report::{
    build_report, classify_error_document, parse_error_document, predicted_gamma, to_json_string,
};
use phasetype::normalform::{classify, classify_with_order, ClassifyError, ExponentStatus};
use phasetype::poly::rational_to_f64;

/// Version of this C interface; bump on any incompatible change.
pub const PT_ABI_VERSION: u32 = 1;

/// Result of a call into the library.
///
/// `PT_STATUS_ERR_OUT_OF_SCOPE` mirrors the CLI's exit code 2: the phase was
/// understood but falls outside the classified range, and
/// [`pt_last_error_json`] carries a full document saying why.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtStatus {
    Ok = 0,
    /// The expression did not parse.
    ErrParse = 1,
    /// The phase violates a precondition (zero phase, nonzero value or
    /// gradient at the origin, or a phase depending on one variable only).
    ErrPrecondition = 2,
    /// Recognised but outside the classified range.
    ErrOutOfScope = 3,
    /// The requested jet order is too small to resolve the branch data.
    ErrJetOrder = 4,
    /// The request needs data this singularity type does not carry.
    ErrNotApplicable = 5,
    /// A required pointer argument was null.
    ErrNullArgument = 6,
    /// The expression was not valid UTF-8.
    ErrUtf8 = 7,
    /// Unexpected internal failure.
    ErrInternal = 8,
}

/// Opaque handle to a classification result.
pub struct PtReport {
    json: CString,
    label: CString,
    exponent_status: CString,
    distance: f64,
    height: f64,
    critical_exponent: Option<f64>,
    predicted_gamma: Option<f64>,
    hessian_rank: u32,
    series_index: Option<u32>,
    adapted: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<(CString, Option<CString>)>> =
        const { RefCell::new(None) };
}

fn cstr(s: String) -> CString {
    CString::new(s.replace('\0', " ")).expect("NUL bytes removed above")
}

fn set_error(message: String, document: Option<String>) {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some((cstr(message), document.map(cstr)));
    });
}

fn status_for(e: &ClassifyError) -> PtStatus {
    match e {
        ClassifyError::OutOfScope(_) => PtStatus::ErrOutOfScope,
        ClassifyError::ZeroPhase
        | ClassifyError::NonzeroValueAtOrigin
        | ClassifyError::NonzeroGradientAtOrigin
        | ClassifyError::UnivariatePhase { .. }
        | ClassifyError::Newton(_) => PtStatus::ErrPrecondition,
        ClassifyError::JetOrderInsufficient { .. } => PtStatus::ErrJetOrder,
        ClassifyError::TypeHasNoRootJet => PtStatus::ErrNotApplicable,
        ClassifyError::Homog(_) | ClassifyError::Poly(_) => PtStatus::ErrInternal,
    }
}

fn do_classify(expression: &str, jet_order: Option<u32>) -> Result<Box<PtReport>, PtStatus> {
    let expression = expression.trim();
    let phi = match parse_polynomial(expression) {
        Ok(p) => p,
        Err(e) => {
            let doc = parse_error_document(expression, &e);
            set_error(e.to_string(), Some(to_json_string(&doc)));
            return Err(PtStatus::ErrParse);
        }
    };
    let rep = match jet_order {
        Some(order) => classify_with_order(&phi, order),
        None => classify(&phi),
    };
    let rep = match rep {
        Ok(r) => r,
        Err(e) => {
            let (doc, _) = classify_error_document(expression, &e);
            set_error(e.to_string(), Some(to_json_string(&doc)));
            return Err(status_for(&e));
        }
    };

    let doc = build_report(expression, &phi, &rep);
    let status = match rep.exponent_status {
        ExponentStatus::Applicable => "applicable",
        ExponentStatus::Classical => "classical",
        ExponentStatus::Deferred => "deferred",
    };
    Ok(Box::new(PtReport {
        json: cstr(to_json_string(&doc)),
        label: cstr(rep.class.to_string()),
        exponent_status: cstr(status.to_string()),
        distance: rational_to_f64(&rep.distance),
        height: rational_to_f64(&rep.height),
        critical_exponent: rep.critical_exponent.as_ref().map(rational_to_f64),
        predicted_gamma: predicted_gamma(rep.class, rep.series_index)
            .as_ref()
            .map(rational_to_f64),
        hessian_rank: u32::from(rep.hessian_rank),
        series_index: rep.series_index,
        adapted: rep.adapted,
    }))
}

fn classify_entry(
    expression: *const c_char,
    jet_order: Option<u32>,
    out: *mut *mut PtReport,
) -> PtStatus {
    if expression.is_null() || out.is_null() {
        set_error("null pointer argument".to_string(), None);
        return PtStatus::ErrNullArgument;
    }
    // Clear the slot first so a failing call never leaves a stale handle.
    unsafe { *out = std::ptr::null_mut() };
    let bytes = unsafe { CStr::from_ptr(expression) };
    let expression = match bytes.to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("expression is not valid UTF-8".to_string(), None);
            return PtStatus::ErrUtf8;
        }
    };
    match catch_unwind(AssertUnwindSafe(|| do_classify(expression, jet_order))) {
        Ok(Ok(report)) => {
            unsafe { *out = Box::into_raw(report) };
            PtStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".to_string(), None);
            PtStatus::ErrInternal
        }
    }
}

/// Returns the ABI version of the loaded library.
#[no_mangle]
pub extern "C" fn pt_abi_version() -> u32 {
    PT_ABI_VERSION
}

/// Classifies the phase written in `expression` (for example
/// `"x1*x2^2 - x1^3"`) and stores a fresh handle in `*out`.
///
/// On success returns `PT_STATUS_OK`; the handle must be released with
/// [`pt_report_free`].  On failure `*out` is set to null, the status says
/// what went wrong, and [`pt_last_error`] / [`pt_last_error_json`] describe
/// the failure.
#[no_mangle]
pub extern "C" fn pt_classify(expression: *const c_char, out: *mut *mut PtReport) -> PtStatus {
    classify_entry(expression, None, out)
}

/// Like [`pt_classify`], but computes series data at the fixed jet order
/// instead of letting the library raise it as needed.
#[no_mangle]
pub extern "C" fn pt_classify_jet(
    expression: *const c_char,
    jet_order: u32,
    out: *mut *mut PtReport,
) -> PtStatus {
    classify_entry(expression, Some(jet_order), out)
}

/// Releases a handle returned by [`pt_classify`].  Passing null is a no-op.
#[no_mangle]
pub extern "C" fn pt_report_free(report: *mut PtReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Message for the most recent failing call on this thread, or null.
/// Borrowed; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pt_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |(msg, _)| msg.as_ptr())
    })
}

/// JSON error document for the most recent failing call on this thread, or
/// null when the failure produced none (null arguments, invalid UTF-8,
/// internal errors).  Borrowed; same lifetime as [`pt_last_error`].
#[no_mangle]
pub extern "C" fn pt_last_error_json() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow().as_ref().map_or(std::ptr::null(), |(_, doc)| {
            doc.as_ref().map_or(std::ptr::null(), |d| d.as_ptr())
        })
    })
}

/// Full report document as JSON, identical to the CLI output for the same
/// expression.  Borrowed from the handle.
#[no_mangle]
pub extern "C" fn pt_report_json(report: *const PtReport) -> *const c_char {
    match unsafe { report.as_ref() } {
        Some(r) => r.json.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Singularity class label (`"A2"`, `"D4+"`, `"E6"`, `"nondegenerate"`,
/// ...).  Borrowed from the handle.
#[no_mangle]
pub extern "C" fn pt_report_label(report: *const PtReport) -> *const c_char {
    match unsafe { report.as_ref() } {
        Some(r) => r.label.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Rank of the Hessian of the phase at the origin (0, 1, or 2).
#[no_mangle]
pub extern "C" fn pt_report_hessian_rank(report: *const PtReport) -> u32 {
    unsafe { report.as_ref() }.map_or(0, |r| r.hessian_rank)
}

/// Series index `n` for the A and D series (3 for the two `D4` forms, 2 at
/// a Morse point), or -1 when the class carries none.
#[no_mangle]
pub extern "C" fn pt_report_series_index(report: *const PtReport) -> i32 {
    unsafe { report.as_ref() }
        .and_then(|r| r.series_index)
        .map_or(-1, |n| n as i32)
}

/// Whether the input coordinates are already adapted.
#[no_mangle]
pub extern "C" fn pt_report_adapted(report: *const PtReport) -> bool {
    unsafe { report.as_ref() }.is_some_and(|r| r.adapted)
}

/// Newton distance in the input coordinates, rounded to double.
#[no_mangle]
pub extern "C" fn pt_report_distance(report: *const PtReport) -> f64 {
    unsafe { report.as_ref() }.map_or(f64::NAN, |r| r.distance)
}

/// Height of the phase (the Newton distance in adapted coordinates),
/// rounded to double.
#[no_mangle]
pub extern "C" fn pt_report_height(report: *const PtReport) -> f64 {
    unsafe { report.as_ref() }.map_or(f64::NAN, |r| r.height)
}

/// Exponent status: `"applicable"`, `"classical"`, or `"deferred"`.
/// Borrowed from the handle.
#[no_mangle]
pub extern "C" fn pt_report_exponent_status(report: *const PtReport) -> *const c_char {
    match unsafe { report.as_ref() } {
        Some(r) => r.exponent_status.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Critical integrability exponent, when one is claimed.  Returns
/// `PT_STATUS_OK` and writes the rounded value, or
/// `PT_STATUS_ERR_NOT_APPLICABLE` when the report defers.
#[no_mangle]
pub extern "C" fn pt_report_critical_exponent(
    report: *const PtReport,
    out: *mut f64,
) -> PtStatus {
    let Some(r) = (unsafe { report.as_ref() }) else {
        return PtStatus::ErrNullArgument;
    };
    if out.is_null() {
        return PtStatus::ErrNullArgument;
    }
    match r.critical_exponent {
        Some(v) => {
            unsafe { *out = v };
            PtStatus::Ok
        }
        None => PtStatus::ErrNotApplicable,
    }
}

/// Predicted oscillatory decay exponent for the class, rounded to double.
/// Returns `PT_STATUS_ERR_NOT_APPLICABLE` when no prediction is tabulated.
#[no_mangle]
pub extern "C" fn pt_report_predicted_gamma(report: *const PtReport, out: *mut f64) -> PtStatus {
    let Some(r) = (unsafe { report.as_ref() }) else {
        return PtStatus::ErrNullArgument;
    };
    if out.is_null() {
        return PtStatus::ErrNullArgument;
    }
    match r.predicted_gamma {
        Some(v) => {
            unsafe { *out = v };
            PtStatus::Ok
        }
        None => PtStatus::ErrNotApplicable,
    }
}
