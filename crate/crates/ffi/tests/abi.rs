use std::ffi::{CStr, CString};
use std::ptr;

use coxinv_ffi::*;

fn from_name(name: &str) -> *mut CoxinvDiagram {
    let c = CString::new(name).unwrap();
    let mut d = ptr::null_mut();
    let s = unsafe { coxinv_diagram_from_name(c.as_ptr(), &mut d) };
    assert_eq!(s, CoxinvStatus::Ok, "{name}");
    assert!(!d.is_null());
    d
}

fn last_error() -> String {
    let p = coxinv_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn counts_by_name() {
    let d = from_name("~E7");
    unsafe {
        let mut rank = 0;
        assert_eq!(coxinv_diagram_rank(d, &mut rank), CoxinvStatus::Ok);
        assert_eq!(rank, 8);

        let mut total = 0;
        assert_eq!(coxinv_cc2_total(d, &mut total), CoxinvStatus::Ok);
        assert_eq!(total, 19);

        let mut buf = [0u64; 8];
        let mut len = 0;
        assert_eq!(
            coxinv_cc2_per_rank(d, buf.as_mut_ptr(), buf.len(), &mut len),
            CoxinvStatus::Ok
        );
        assert_eq!(len, 8);
        assert_eq!(buf, [1, 1, 3, 4, 3, 3, 4, 0]);
        coxinv_diagram_free(d);
    }
}

#[test]
fn per_rank_reports_needed_length() {
    let d = from_name("A4");
    unsafe {
        let mut buf = [7u64; 2];
        let mut len = 0;
        let s = coxinv_cc2_per_rank(d, buf.as_mut_ptr(), buf.len(), &mut len);
        assert_eq!(s, CoxinvStatus::BufferTooSmall);
        assert_eq!(len, 4);
        assert_eq!(buf, [7, 7]);
        let s = coxinv_cc2_per_rank(d, ptr::null_mut(), 0, &mut len);
        assert_eq!(s, CoxinvStatus::BufferTooSmall);
        coxinv_diagram_free(d);
    }
}

#[test]
fn null_arguments() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(
            coxinv_diagram_from_name(ptr::null(), &mut d),
            CoxinvStatus::NullPointer
        );
        let mut total = 0;
        assert_eq!(
            coxinv_cc2_total(ptr::null(), &mut total),
            CoxinvStatus::NullPointer
        );
        assert!(last_error().contains("null"));

        let d = from_name("A2");
        assert_eq!(
            coxinv_cc2_total(d, ptr::null_mut()),
            CoxinvStatus::NullPointer
        );
        coxinv_diagram_free(d);
        coxinv_diagram_free(ptr::null_mut());
        coxinv_string_free(ptr::null_mut());
    }
}

#[test]
fn parse_and_validation_errors() {
    unsafe {
        let mut d = ptr::null_mut();
        let bad = CString::new("Q7").unwrap();
        assert_eq!(
            coxinv_diagram_from_name(bad.as_ptr(), &mut d),
            CoxinvStatus::ParseError
        );
        assert!(d.is_null());
        assert!(last_error().contains("Q7"));

        let asym = CString::new(r#"{"matrix":[[1,2],[3,1]]}"#).unwrap();
        let s = coxinv_diagram_from_text(asym.as_ptr(), &mut d);
        assert_ne!(s, CoxinvStatus::Ok);

        let invalid = [0xffu8, 0];
        let s = coxinv_diagram_from_name(invalid.as_ptr().cast(), &mut d);
        assert_eq!(s, CoxinvStatus::InvalidUtf8);
    }
}

#[test]
fn text_constructor() {
    unsafe {
        let mut d = ptr::null_mut();
        let doc = CString::new(r#"{"matrix":[[1,6,2],[6,1,3],[2,3,1]]}"#).unwrap();
        assert_eq!(
            coxinv_diagram_from_text(doc.as_ptr(), &mut d),
            CoxinvStatus::Ok
        );
        let mut total = 0;
        assert_eq!(coxinv_cc2_total(d, &mut total), CoxinvStatus::Ok);
        assert_eq!(total, 4);
        coxinv_diagram_free(d);

        let edges = CString::new("rank 4\n0 1 3\n1 2 3\n2 3 3\n").unwrap();
        assert_eq!(
            coxinv_diagram_from_text(edges.as_ptr(), &mut d),
            CoxinvStatus::Ok
        );
        assert_eq!(coxinv_cc2_total(d, &mut total), CoxinvStatus::Ok);
        assert_eq!(total, 2);
        coxinv_diagram_free(d);
    }
}

#[test]
fn strings_and_bounds() {
    let d = from_name("~C2");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(coxinv_cc2_report_json(d, &mut s), CoxinvStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        coxinv_string_free(s);
        assert!(text.contains("\"total\":6"), "{text}");

        assert_eq!(coxinv_graph_dot(d, 2, true, &mut s), CoxinvStatus::Ok);
        let dot = CStr::from_ptr(s).to_str().unwrap().to_owned();
        coxinv_string_free(s);
        assert!(dot.starts_with("graph Omega2 {"), "{dot}");

        let mut b = CoxinvBounds::default();
        assert_eq!(coxinv_bounds(d, &mut b), CoxinvStatus::Ok);
        assert_eq!(b.numeric_upper, 6);
        assert!(!b.is_finite);
        coxinv_diagram_free(d);
    }
}

#[test]
fn verify_against_enumeration() {
    unsafe {
        let d = from_name("B4");
        let mut ok = false;
        assert_eq!(coxinv_verify(d, 1_000_000, &mut ok), CoxinvStatus::Ok);
        assert!(ok);
        assert_eq!(coxinv_verify(d, 10, &mut ok), CoxinvStatus::CapExceeded);
        coxinv_diagram_free(d);

        let d = from_name("~A3");
        assert_eq!(
            coxinv_verify(d, 1000, &mut ok),
            CoxinvStatus::ValidationError
        );
        coxinv_diagram_free(d);
    }
}

#[test]
fn header_is_generated() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/coxinv.h")).unwrap();
    assert!(header.contains("#ifndef COXINV_H"));
    for f in [
        "coxinv_diagram_from_name",
        "coxinv_diagram_from_text",
        "coxinv_diagram_free",
        "coxinv_cc2_total",
        "coxinv_cc2_per_rank",
        "coxinv_verify",
        "coxinv_string_free",
        "coxinv_last_error_message",
    ] {
        assert!(header.contains(f), "{f}");
    }
    assert!(header.contains("COXINV_STATUS_BUFFER_TOO_SMALL"));
    assert!(header.contains("typedef struct CoxinvDiagram CoxinvDiagram;"));
}
