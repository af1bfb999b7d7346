use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qonsager_ffi::*;

unsafe fn take_string(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    qonsager_string_free(s);
    out
}

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(qonsager_last_error_message())
            .to_str()
            .unwrap()
            .to_owned()
    }
}

#[test]
fn coefficient_table_round_trip() {
    let route = CString::new("recursion").unwrap();
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(qonsager_coeffs_new(2, route.as_ptr(), &mut t), QonsagerStatus::Ok);
        assert_eq!(qonsager_coeffs_r(t), 2);
        let mut s = ptr::null_mut();
        assert_eq!(qonsager_coeffs_entry(t, 1, 0, &mut s), QonsagerStatus::Ok);
        assert_eq!(take_string(s), "q^4+3+q^-4");
        assert_eq!(qonsager_coeffs_entry(t, 3, 0, &mut s), QonsagerStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));
        qonsager_coeffs_free(t);
    }
}

#[test]
fn bad_arguments_are_reported() {
    let bogus = CString::new("bogus").unwrap();
    let genfun = CString::new("genfun").unwrap();
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(
            qonsager_coeffs_new(2, bogus.as_ptr(), &mut t),
            QonsagerStatus::InvalidArgument
        );
        assert!(last_error().contains("bogus"));
        assert_eq!(
            qonsager_coeffs_new(0, genfun.as_ptr(), &mut t),
            QonsagerStatus::InvalidArgument
        );
        assert_eq!(qonsager_coeffs_new(2, ptr::null(), &mut t), QonsagerStatus::NullPointer);
        assert_eq!(
            qonsager_coeffs_new(2, genfun.as_ptr(), ptr::null_mut()),
            QonsagerStatus::NullPointer
        );
        assert_eq!(qonsager_coeffs_r(ptr::null()), 0);
        qonsager_coeffs_free(ptr::null_mut());
        qonsager_string_free(ptr::null_mut());
    }
}

#[test]
fn reduce_through_handles() {
    let text = CString::new("A^3 A*").unwrap();
    let mut x = ptr::null_mut();
    let mut nf = ptr::null_mut();
    unsafe {
        assert_eq!(qonsager_poly_parse(text.as_ptr(), &mut x), QonsagerStatus::Ok);
        assert_eq!(qonsager_poly_normal_form(x, &mut nf), QonsagerStatus::Ok);
        assert_eq!(qonsager_poly_term_count(nf), 5);
        let mut s = ptr::null_mut();
        assert_eq!(qonsager_poly_to_string(nf, &mut s), QonsagerStatus::Ok);
        assert_eq!(
            take_string(s),
            "rho0 A A* - rho0 A* A + (q^2+1+q^-2) A^2 A* A - (q^2+1+q^-2) A A* A^2 + A* A^3"
        );
        assert_eq!(
            qonsager_poly_normal_form(ptr::null(), &mut nf),
            QonsagerStatus::NullPointer
        );
        qonsager_poly_free(x);
        qonsager_poly_free(nf);
        let bad = CString::new("A ? A*").unwrap();
        assert_eq!(qonsager_poly_parse(bad.as_ptr(), &mut x), QonsagerStatus::Parse);
        assert!(last_error().contains("position"));
    }
}

#[test]
fn verification_report() {
    let route = CString::new("genfun").unwrap();
    let mut rep = ptr::null_mut();
    unsafe {
        assert_eq!(qonsager_verify(3, route.as_ptr(), &mut rep), QonsagerStatus::Ok);
        assert_eq!(qonsager_report_is_zero(rep), 1);
        assert_eq!(qonsager_report_residual_terms(rep), 0);
        let mut s = ptr::null_mut();
        assert_eq!(qonsager_report_to_json(rep, &mut s), QonsagerStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(json["r"], 3);
        assert_eq!(json["result"], "zero");
        qonsager_report_free(rep);
        assert_eq!(last_error(), "");
    }
}

#[test]
fn literal_route_leaves_a_residual() {
    let route = CString::new("closed-literal").unwrap();
    let mut rep = ptr::null_mut();
    unsafe {
        assert_eq!(qonsager_verify(3, route.as_ptr(), &mut rep), QonsagerStatus::Ok);
        assert_eq!(qonsager_report_is_zero(rep), 0);
        assert!(qonsager_report_residual_terms(rep) > 0);
        qonsager_report_free(rep);
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/qonsager.h");
    let text = std::fs::read_to_string(header).unwrap();
    for sym in [
        "qonsager_coeffs_new",
        "qonsager_verify",
        "QONSAGER_STATUS_PARSE",
        "typedef struct QonsagerPoly QonsagerPoly",
    ] {
        assert!(text.contains(sym), "header lacks {sym}");
    }
    let Ok(out) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", header])
        .output()
    else {
        eprintln!("no C compiler available; skipped syntax check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
