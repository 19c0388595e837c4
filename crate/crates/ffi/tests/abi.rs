use std::ffi::{c_char, CStr, CString};
use std::ptr;

use coxtor_ffi::*;

fn take(s: *mut c_char) -> serde_json::Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { ct_string_free(s) };
    v
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ct_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn symbol_round_trip() {
    let json = CString::new(r#"{"nodes":["a","b","c"],"edges":[["a","b",3],["b","c",4]]}"#).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ct_symbol_parse(json.as_ptr(), &mut g) }, CtStatus::Ok);
    assert_eq!(unsafe { ct_symbol_len(g) }, 3);

    let mut chi = ptr::null_mut();
    assert_eq!(unsafe { ct_symbol_euler(g, &mut chi) }, CtStatus::Ok);
    // B3 has order 48
    assert_eq!(take(chi), serde_json::json!({"num": 1, "den": 48}));

    let (mut p, mut n, mut z) = (0, 0, 0);
    assert_eq!(unsafe { ct_symbol_signature(g, -1.0, &mut p, &mut n, &mut z) }, CtStatus::Ok);
    assert_eq!((p, n, z), (3, 0, 0));
    unsafe { ct_symbol_free(g) };
}

#[test]
fn bad_input_sets_status_and_message() {
    let mut g = ptr::null_mut();
    let bad = CString::new("{nope").unwrap();
    assert_eq!(unsafe { ct_symbol_parse(bad.as_ptr(), &mut g) }, CtStatus::InvalidInput);
    assert!(g.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { ct_symbol_parse(ptr::null(), &mut g) }, CtStatus::NullPointer);
    let invalid = [0xffu8 as c_char, 0];
    assert_eq!(unsafe { ct_symbol_parse(invalid.as_ptr(), &mut g) }, CtStatus::InvalidUtf8);

    let mut d = ptr::null_mut();
    let psi = CString::new("Z9").unwrap();
    let nodes = [1u32];
    assert_eq!(unsafe { ct_dagger_build(psi.as_ptr(), nodes.as_ptr(), 1, &mut d) }, CtStatus::InvalidArgument);
    let psi = CString::new("B2").unwrap();
    assert_eq!(unsafe { ct_dagger_build(psi.as_ptr(), nodes.as_ptr(), 1, &mut d) }, CtStatus::InvalidArgument);
    let zero = [0u32];
    assert_eq!(unsafe { ct_dagger_build(psi.as_ptr(), zero.as_ptr(), 1, &mut d) }, CtStatus::InvalidArgument);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ct_manifold_volume(5, &mut out) }, CtStatus::InvalidArgument);
    assert!(out.is_null());
    assert_eq!(unsafe { ct_manifold_volume(4, &mut out) }, CtStatus::Ok);
    assert_eq!(last_error(), "");
    take(out);
}

#[test]
fn dagger_certify_and_extend() {
    let psi = CString::new("E6").unwrap();
    let nodes = [1u32];
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { ct_dagger_build(psi.as_ptr(), nodes.as_ptr(), 1, &mut d) }, CtStatus::Ok);

    let mut gamma = ptr::null_mut();
    assert_eq!(unsafe { ct_dagger_gamma(d, &mut gamma) }, CtStatus::Ok);
    assert_eq!(take(gamma)["nodes"].as_array().unwrap().len(), 7);

    let (mut out, mut ok) = (ptr::null_mut(), false);
    assert_eq!(unsafe { ct_dagger_certify(d, CT_MODE_HAT, &mut out, &mut ok) }, CtStatus::Ok);
    assert!(ok);
    let cert = take(out);
    assert_eq!(cert["kind"], "torsion-free");
    assert_eq!(cert["index"], 6635520);

    assert_eq!(unsafe { ct_dagger_certify(d, 7, &mut out, &mut ok) }, CtStatus::InvalidArgument);

    let mut ext = ptr::null_mut();
    assert_eq!(unsafe { ct_dagger_extend(d, &mut ext) }, CtStatus::Ok);
    let ext = take(ext);
    assert_eq!(ext["p"], 3);
    assert_eq!(ext["index"], 829440);
    unsafe { ct_dagger_free(d) };
}

#[test]
fn refused_extension_is_a_precondition() {
    let psi = CString::new("A4").unwrap();
    let nodes = [2u32];
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { ct_dagger_build(psi.as_ptr(), nodes.as_ptr(), 1, &mut d) }, CtStatus::Ok);
    let mut ext = ptr::null_mut();
    assert_eq!(unsafe { ct_dagger_extend(d, &mut ext) }, CtStatus::Precondition);
    assert!(ext.is_null());
    unsafe { ct_dagger_free(d) };
}

#[test]
fn frees_accept_null() {
    unsafe {
        ct_string_free(ptr::null_mut());
        ct_symbol_free(ptr::null_mut());
        ct_dagger_free(ptr::null_mut());
        assert_eq!(ct_symbol_len(ptr::null()), 0);
    }
    let m = unsafe { CStr::from_ptr(ct_status_message(99)) };
    assert_eq!(m.to_str().unwrap(), "unknown status");
}
