//! Round-trip tests of the C surface, driven from Rust through the same
//! `extern "C"` entry points a C caller would use.

use std::ffi::{CStr, CString};
use std::ptr;

use phasetype_capi::*;

fn classify(expr: &str) -> (PtStatus, *mut PtReport) {
    let c = CString::new(expr).unwrap();
    let mut out: *mut PtReport = ptr::null_mut();
    let status = pt_classify(c.as_ptr(), &mut out);
    (status, out)
}

fn borrowed<'a>(p: *const std::ffi::c_char) -> &'a str {
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap()
}

#[test]
fn classify_and_read_accessors() {
    let (status, report) = classify("x1*x2^2 - x1^3");
    assert_eq!(status, PtStatus::Ok);

    assert_eq!(borrowed(pt_report_label(report)), "D4-");
    assert_eq!(pt_report_hessian_rank(report), 0);
    assert_eq!(pt_report_series_index(report), 3);
    assert!(pt_report_adapted(report));
    assert!((pt_report_distance(report) - 1.5).abs() < 1e-15);
    assert!((pt_report_height(report) - 1.5).abs() < 1e-15);
    assert_eq!(borrowed(pt_report_exponent_status(report)), "applicable");

    let mut pc = 0.0;
    assert_eq!(pt_report_critical_exponent(report, &mut pc), PtStatus::Ok);
    assert!((pc - 1.5).abs() < 1e-15);

    let mut gamma = 0.0;
    assert_eq!(pt_report_predicted_gamma(report, &mut gamma), PtStatus::Ok);
    assert!((gamma - 1.0).abs() < 1e-15);

    // The JSON document matches the CLI byte for byte.
    let json = borrowed(pt_report_json(report));
    let cli = phasetype::cli::classify_command(
        "x1*x2^2 - x1^3",
        &phasetype::cli::config::RunConfig::default(),
    );
    assert_eq!(json, cli.json);

    pt_report_free(report);
}

#[test]
fn error_statuses_and_messages() {
    let (status, report) = classify("x1^2");
    assert_eq!(status, PtStatus::ErrPrecondition);
    assert!(report.is_null());
    assert!(borrowed(pt_last_error()).contains("x1 only"));
    let doc: serde_json::Value = serde_json::from_str(borrowed(pt_last_error_json())).unwrap();
    assert_eq!(doc["error"]["kind"], "precondition");

    let (status, report) = classify("x1^4 + x2^4");
    assert_eq!(status, PtStatus::ErrOutOfScope);
    assert!(report.is_null());
    let doc: serde_json::Value = serde_json::from_str(borrowed(pt_last_error_json())).unwrap();
    assert_eq!(doc["error"]["kind"], "out-of-scope");

    let (status, _) = classify("0.5*x1");
    assert_eq!(status, PtStatus::ErrParse);
    assert!(borrowed(pt_last_error()).contains("rational"));
}

#[test]
fn fixed_jet_order() {
    let expr = CString::new("x2^2 - 2*x1^2*x2 + x1^4 + x1^9").unwrap();
    let mut out: *mut PtReport = ptr::null_mut();

    assert_eq!(pt_classify_jet(expr.as_ptr(), 5, &mut out), PtStatus::ErrJetOrder);
    assert!(out.is_null());
    assert!(borrowed(pt_last_error()).contains("jet order 5"));

    assert_eq!(pt_classify_jet(expr.as_ptr(), 12, &mut out), PtStatus::Ok);
    assert_eq!(borrowed(pt_report_label(out)), "A8");
    pt_report_free(out);
}

#[test]
fn null_and_invalid_arguments() {
    assert_eq!(pt_abi_version(), 1);

    let mut out: *mut PtReport = ptr::null_mut();
    assert_eq!(pt_classify(ptr::null(), &mut out), PtStatus::ErrNullArgument);
    let c = CString::new("x1*x2").unwrap();
    assert_eq!(pt_classify(c.as_ptr(), ptr::null_mut()), PtStatus::ErrNullArgument);

    // Invalid UTF-8 in the expression.
    let bad = CString::new(vec![0x66, 0xff, 0x67]).unwrap();
    assert_eq!(pt_classify(bad.as_ptr(), &mut out), PtStatus::ErrUtf8);
    assert!(out.is_null());

    // Null handles are tolerated by every accessor.
    pt_report_free(ptr::null_mut());
    assert!(pt_report_json(ptr::null()).is_null());
    assert!(pt_report_label(ptr::null()).is_null());
    assert!(pt_report_distance(ptr::null()).is_nan());
    assert_eq!(pt_report_series_index(ptr::null()), -1);
    let mut v = 0.0;
    assert_eq!(
        pt_report_critical_exponent(ptr::null(), &mut v),
        PtStatus::ErrNullArgument
    );
}

#[test]
fn deferred_exponent_reports_not_applicable() {
    // Hessian rank 1 defers the critical exponent.
    let (status, report) = classify("x2^2 + x1^3");
    assert_eq!(status, PtStatus::Ok);
    assert_eq!(borrowed(pt_report_exponent_status(report)), "deferred");
    let mut v = 0.0;
    assert_eq!(
        pt_report_critical_exponent(report, &mut v),
        PtStatus::ErrNotApplicable
    );
    // A decay prediction still exists for the cusp.
    assert_eq!(pt_report_predicted_gamma(report, &mut v), PtStatus::Ok);
    assert!((v - (0.5 + 1.0 / 3.0)).abs() < 1e-15);
    pt_report_free(report);
}
