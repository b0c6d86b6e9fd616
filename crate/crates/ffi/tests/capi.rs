use std::ffi::{CStr, CString};
use std::ptr;

use cyclic_wonderful_ffi::*;

fn take(s: *mut libc::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { cw_string_free(s) };
    out
}

fn last_error() -> String {
    let p = cw_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn fan_counts_and_json_round_trip() {
    let mut fan = ptr::null_mut();
    assert_eq!(unsafe { cw_fan_build(2, 2, 0, &mut fan) }, CwStatus::Ok);
    let mut rays = 0;
    let mut cones = 0;
    unsafe {
        assert_eq!(cw_fan_ray_count(fan, &mut rays), CwStatus::Ok);
        assert_eq!(cw_fan_maximal_cone_count(fan, &mut cones), CwStatus::Ok);
    }
    assert_eq!((rays, cones), (8, 8));

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { cw_fan_to_json(fan, &mut json) }, CwStatus::Ok);
    let text = take(json);
    let c = CString::new(text.clone()).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { cw_fan_from_json(c.as_ptr(), &mut back) }, CwStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { cw_fan_to_json(back, &mut again) }, CwStatus::Ok);
    assert_eq!(take(again), text);
    unsafe {
        cw_fan_free(back);
        cw_fan_free(fan);
    }
}

#[test]
fn stellar_build_matches_direct_counts() {
    let mut fan = ptr::null_mut();
    assert_eq!(unsafe { cw_fan_build(3, 2, 1, &mut fan) }, CwStatus::Ok);
    let mut cones = 0;
    assert_eq!(unsafe { cw_fan_maximal_cone_count(fan, &mut cones) }, CwStatus::Ok);
    assert_eq!(cones, 18);
    unsafe { cw_fan_free(fan) };
}

#[test]
fn locate_point_and_outside_support() {
    let mut fan = ptr::null_mut();
    assert_eq!(unsafe { cw_fan_build(2, 2, 0, &mut fan) }, CwStatus::Ok);
    let p = CString::new("(0,0)").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cw_fan_locate_point(fan, p.as_ptr(), &mut out) }, CwStatus::Ok);
    assert_eq!(take(out), "");
    let bad = CString::new("(1,2,3)").unwrap();
    assert_eq!(
        unsafe { cw_fan_locate_point(fan, bad.as_ptr(), &mut out) },
        CwStatus::InvalidArgument
    );
    assert!(out.is_null());
    assert!(last_error().contains("expected 2"));
    unsafe { cw_fan_free(fan) };

    let mut fan = ptr::null_mut();
    assert_eq!(unsafe { cw_fan_build(3, 2, 0, &mut fan) }, CwStatus::Ok);
    let off = CString::new("(1,1,0,0)").unwrap();
    let status = unsafe { cw_fan_locate_point(fan, off.as_ptr(), &mut out) };
    assert_eq!(status, CwStatus::NotFound);
    unsafe { cw_fan_free(fan) };
}

#[test]
fn betti_buffers() {
    let mut buf = [0u64; 8];
    let mut len = 0;
    assert_eq!(
        unsafe { cw_betti_closed_form(2, 3, buf.as_mut_ptr(), buf.len(), &mut len) },
        CwStatus::Ok
    );
    assert_eq!(&buf[..len], &[1, 23, 23, 1]);
    let mut oracle = [0u64; 8];
    assert_eq!(
        unsafe { cw_betti_oracle(2, 3, oracle.as_mut_ptr(), oracle.len(), &mut len) },
        CwStatus::Ok
    );
    assert_eq!(&oracle[..len], &buf[..len]);

    let mut small = [0u64; 2];
    assert_eq!(
        unsafe { cw_betti_closed_form(2, 3, small.as_mut_ptr(), small.len(), &mut len) },
        CwStatus::BufferTooSmall
    );
    assert_eq!(len, 4);
}

#[test]
fn oracle_guard_reports_feasibility() {
    let mut buf = [0u64; 16];
    let mut len = 0;
    let status = unsafe { cw_betti_oracle(9, 5, buf.as_mut_ptr(), buf.len(), &mut len) };
    assert_eq!(status, CwStatus::Feasibility);
    assert!(last_error().contains("bound is 1000"));
}

#[test]
fn invalid_order_is_rejected() {
    let mut fan = ptr::null_mut();
    assert_eq!(unsafe { cw_fan_build(1, 2, 0, &mut fan) }, CwStatus::InvalidArgument);
    assert!(fan.is_null());
    assert!(last_error().contains("r must be at least 2"));
}

#[test]
fn null_pointers_are_reported() {
    assert_eq!(unsafe { cw_fan_build(2, 2, 0, ptr::null_mut()) }, CwStatus::NullPointer);
    let mut n = 0;
    assert_eq!(unsafe { cw_fan_ray_count(ptr::null(), &mut n) }, CwStatus::NullPointer);
    let mut len = 0;
    assert_eq!(
        unsafe { cw_betti_closed_form(2, 2, ptr::null_mut(), 8, &mut len) },
        CwStatus::NullPointer
    );
    unsafe {
        cw_fan_free(ptr::null_mut());
        cw_string_free(ptr::null_mut());
    }
}

#[test]
fn curve_type_and_in_delta() {
    let curve = CString::new("1:0:2,2:1:1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cw_locate_curve(2, 2, curve.as_ptr(), &mut out) }, CwStatus::Ok);
    assert_eq!(take(out), "{1:0}<{1:0,2:1}");

    let bad = CString::new("1:x:2").unwrap();
    assert_eq!(
        unsafe { cw_locate_curve(2, 2, bad.as_ptr(), &mut out) },
        CwStatus::Parse
    );

    let mut inside = -1;
    let p = CString::new("(3/2,3/2)").unwrap();
    assert_eq!(unsafe { cw_in_delta(2, 2, p.as_ptr(), &mut inside) }, CwStatus::Ok);
    assert_eq!(inside, 1);
    let q = CString::new("(2,2)").unwrap();
    assert_eq!(unsafe { cw_in_delta(2, 2, q.as_ptr(), &mut inside) }, CwStatus::Ok);
    assert_eq!(inside, 0);
}

#[test]
fn normal_complex_handle() {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { cw_normal_complex_build(2, 2, &mut c) }, CwStatus::Ok);
    let mut cells = 0;
    assert_eq!(unsafe { cw_normal_complex_cell_count(c, &mut cells) }, CwStatus::Ok);
    assert_eq!(cells, 8);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { cw_normal_complex_to_json(c, &mut json) }, CwStatus::Ok);
    let text = take(json);
    assert!(text.contains("\"3/2\""));
    unsafe { cw_normal_complex_free(c) };

    assert_eq!(unsafe { cw_normal_complex_build(2, 4, &mut c) }, CwStatus::Feasibility);
    assert!(c.is_null());
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(cw_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
