use std::ffi::{CStr, CString};
use std::ptr;

use repcheck_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { rc_string_free(p) };
    s
}

fn last_error() -> String {
    let p = rc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn group_handle_lifecycle() {
    let name = CString::new("D8").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { rc_group_new(name.as_ptr(), &mut g) }, RcStatus::Ok);
    let mut n = 0usize;
    assert_eq!(unsafe { rc_group_order(g, &mut n) }, RcStatus::Ok);
    assert_eq!(n, 16);
    assert_eq!(unsafe { rc_group_class_count(g, &mut n) }, RcStatus::Ok);
    assert_eq!(n, 7);
    assert_eq!(unsafe { rc_group_mul(g, 0, 3, &mut n) }, RcStatus::Ok);
    assert_eq!(n, 3);
    assert_eq!(
        unsafe { rc_group_mul(g, 16, 0, &mut n) },
        RcStatus::InvalidArgument
    );
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rc_group_dump(g, &mut s) }, RcStatus::Ok);
    assert!(take_string(s).starts_with("group D8 order 16"));
    unsafe { rc_group_free(g) };
}

#[test]
fn error_codes() {
    let bad = CString::new("S3").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { rc_group_new(bad.as_ptr(), &mut g) },
        RcStatus::UnknownGroup
    );
    assert!(g.is_null());
    assert!(last_error().contains("S3"));
    assert_eq!(
        unsafe { rc_group_new(ptr::null(), &mut g) },
        RcStatus::NullPointer
    );
    let mut n = 0usize;
    assert_eq!(
        unsafe { rc_group_order(ptr::null(), &mut n) },
        RcStatus::NullPointer
    );
    let not_utf8 = [0xffu8, 0];
    assert_eq!(
        unsafe { rc_group_new(not_utf8.as_ptr().cast(), &mut g) },
        RcStatus::InvalidUtf8
    );
    let ok = CString::new("K4").unwrap();
    assert_eq!(unsafe { rc_group_new(ok.as_ptr(), &mut g) }, RcStatus::Ok);
    assert!(rc_last_error().is_null());
    unsafe { rc_group_free(g) };
    unsafe { rc_group_free(ptr::null_mut()) };
    unsafe { rc_string_free(ptr::null_mut()) };
}

#[test]
fn char_table_json() {
    let name = CString::new("d4").unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { rc_char_table_new(name.as_ptr(), &mut t) },
        RcStatus::Ok
    );
    let mut n = 0usize;
    assert_eq!(unsafe { rc_char_table_len(t, &mut n) }, RcStatus::Ok);
    assert_eq!(n, 5);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rc_char_table_json(t, &mut s) }, RcStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["class_sizes"], serde_json::json!([1, 2, 1, 2, 2]));
    unsafe { rc_char_table_free(t) };
}

#[test]
fn report_over_abi() {
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { rc_report_new(&mut r) }, RcStatus::Ok);
    let mut n = 0usize;
    assert_eq!(unsafe { rc_report_family_count(r, &mut n) }, RcStatus::Ok);
    assert_eq!(n, 7);
    let mut realizable = Vec::new();
    for i in 0..n {
        let mut flag = -1;
        assert_eq!(
            unsafe { rc_report_is_realizable(r, i, &mut flag) },
            RcStatus::Ok
        );
        if flag == 1 {
            let mut s = ptr::null_mut();
            assert_eq!(unsafe { rc_report_family_name(r, i, &mut s) }, RcStatus::Ok);
            realizable.push(take_string(s));
        }
    }
    assert_eq!(realizable, ["K4_1234", "D4_125"]);
    let mut flag = 0;
    assert_eq!(
        unsafe { rc_report_is_realizable(r, 7, &mut flag) },
        RcStatus::InvalidArgument
    );
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rc_report_text(r, &mut s) }, RcStatus::Ok);
    assert!(take_string(s).ends_with("realizable: K4_1234, D4_125\n"));
    assert_eq!(unsafe { rc_report_json(r, &mut s) }, RcStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["families"].as_array().unwrap().len(), 7);
    unsafe { rc_report_free(r) };
}

#[test]
fn verify_and_swap() {
    let mut failed = 99usize;
    assert_eq!(unsafe { rc_verify_all(&mut failed) }, RcStatus::Ok);
    assert_eq!(failed, 0);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rc_swap_chain_json(4, 3, &mut s) }, RcStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["chsh"].as_array().unwrap().len(), 4);
    assert_eq!(v["chsh"][0]["coeffs"][1]["num"], "2");
    assert_eq!(
        unsafe { rc_swap_chain_json(0, 3, &mut s) },
        RcStatus::InvalidArgument
    );
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(rc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
