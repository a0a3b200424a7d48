use std::ffi::{CStr, CString};
use std::ptr;

use simplex_orbits_ffi::*;

struct Ctx(*mut SoContext);

impl Ctx {
    fn new(bits: u32) -> Ctx {
        let mut ctx = ptr::null_mut();
        assert_eq!(unsafe { so_context_new(bits, &mut ctx) }, SoStatus::Ok);
        Ctx(ctx)
    }
}

impl Drop for Ctx {
    fn drop(&mut self) {
        unsafe { so_context_free(self.0) }
    }
}

fn last_error() -> String {
    unsafe {
        let msg = so_last_error_message();
        assert!(!msg.is_null());
        let s = CStr::from_ptr(msg).to_string_lossy().into_owned();
        so_string_free(msg);
        s
    }
}

fn params(ctx: &Ctx, values: [&str; 6]) -> Result<*mut SoParams, SoStatus> {
    let owned: Vec<CString> = values.iter().map(|v| CString::new(*v).unwrap()).collect();
    let ptrs: Vec<*const std::ffi::c_char> = owned.iter().map(|c| c.as_ptr()).collect();
    let mut out = ptr::null_mut();
    match unsafe { so_params_from_strings(ctx.0, ptrs.as_ptr(), &mut out) } {
        SoStatus::Ok => Ok(out),
        status => Err(status),
    }
}

#[test]
fn tetra_limit_and_quantities() {
    let ctx = Ctx::new(256);
    let p = params(&ctx, ["2", "2", "4", "2", "2", "2"]).unwrap();
    let (mut og2, mut gamma, mut pt) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(so_params_quantities(p, &mut og2, &mut gamma, &mut pt), SoStatus::Ok);
    }
    assert!((og2 - 0.125).abs() < 1e-15);
    assert!((gamma - 32.0).abs() < 1e-12);
    assert!((pt - 64.0).abs() < 1e-12);

    let mut lim = SoLimit::default();
    unsafe { assert_eq!(so_tetra_limit(ctx.0, p, &mut lim), SoStatus::Ok) };
    assert_eq!(lim.regime, 0);
    // 8 sqrt(2) - 8
    assert!((lim.d14_inf - 3.313708498984761).abs() < 1e-12, "{lim:?}");

    let mut iso = -1;
    unsafe { assert_eq!(so_is_isodynamic(ctx.0, p, &mut iso), SoStatus::Ok) };
    assert_eq!(iso, 0);

    let mut quad = SoLimit::default();
    unsafe { assert_eq!(so_quad_limit(ctx.0, p, &mut quad), SoStatus::NonPlanarInput) };
    assert!(last_error().contains("planar"));
    unsafe { so_params_free(p) };
}

#[test]
fn invalid_params_report_status_and_message() {
    let ctx = Ctx::new(128);
    assert_eq!(params(&ctx, ["-1", "2", "4", "2", "2", "2"]).unwrap_err(), SoStatus::InvalidInput);
    assert!(!last_error().is_empty());
    assert_eq!(params(&ctx, ["x", "2", "4", "2", "2", "2"]).unwrap_err(), SoStatus::InvalidInput);

    let mut out = ptr::null_mut();
    let status = unsafe { so_params_from_strings(ptr::null(), ptr::null(), &mut out) };
    assert_eq!(status, SoStatus::NullArgument);
    assert!(out.is_null());

    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { so_context_new(1, &mut bad) }, SoStatus::InvalidInput);
}

#[test]
fn doubles_match_strings() {
    let ctx = Ctx::new(128);
    let values = [2.0, 2.0, 4.0, 2.0, 2.0, 2.0];
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(so_params_from_doubles(ctx.0, values.as_ptr(), &mut p), SoStatus::Ok);
        let mut x = 0.0;
        assert_eq!(so_params_get(p, 2, &mut x), SoStatus::Ok);
        assert_eq!(x, 4.0);
        assert_eq!(so_params_get(p, 6, &mut x), SoStatus::IndexOutOfRange);
        so_params_free(p);
    }
}

#[test]
fn triangle_orbit_and_order() {
    let ctx = Ctx::new(512);
    let (s, t) = (CString::new("8").unwrap(), CString::new("20").unwrap());
    let mut orbit = ptr::null_mut();
    unsafe {
        assert_eq!(so_orbit_run_triangle(ctx.0, s.as_ptr(), t.as_ptr(), 15, 0, &mut orbit), SoStatus::Ok);
        assert_eq!(so_orbit_len(orbit), 16);
        let mut og2 = 0.0;
        assert_eq!(so_orbit_record(orbit, 0, &mut og2, ptr::null_mut()), SoStatus::Ok);
        assert!((og2 - 1.0 / 9.0).abs() < 1e-15);

        let mut est = SoOrderEstimate::default();
        assert_eq!(so_orbit_estimate_order(ctx.0, orbit, &mut est), SoStatus::Ok);
        assert!((est.order - 2.0).abs() < 0.05, "{est:?}");

        let mut doc = ptr::null_mut();
        assert_eq!(so_orbit_document(ctx.0, orbit, 0, &mut doc), SoStatus::Ok);
        let csv = CStr::from_ptr(doc).to_str().unwrap().to_owned();
        so_string_free(doc);
        assert!(csv.starts_with("step,og2,p,pt,"));
        assert_eq!(csv.lines().count(), 17);
        so_orbit_free(orbit);
    }
}

#[test]
fn trapezoid_orbit_json() {
    let ctx = Ctx::new(256);
    let (a, b) = (CString::new("0.955").unwrap(), CString::new("0.12237784429").unwrap());
    let mut orbit = ptr::null_mut();
    unsafe {
        assert_eq!(so_orbit_run_trapezoid(ctx.0, a.as_ptr(), b.as_ptr(), 3, 0, &mut orbit), SoStatus::Ok);
        let mut doc = ptr::null_mut();
        assert_eq!(so_orbit_document(ctx.0, orbit, 1, &mut doc), SoStatus::Ok);
        let json = CStr::from_ptr(doc).to_str().unwrap().to_owned();
        so_string_free(doc);
        assert!(json.contains("\"regime\": \"trapezoid\""));
        so_orbit_free(orbit);

        let same = CString::new("0.5").unwrap();
        let status = so_orbit_run_trapezoid(ctx.0, same.as_ptr(), same.as_ptr(), 3, 0, &mut orbit);
        assert_eq!(status, SoStatus::InvalidInput);
    }
}

#[test]
fn params_orbit_runs() {
    let ctx = Ctx::new(256);
    let p = params(&ctx, ["2", "2", "4", "2", "2", "2"]).unwrap();
    let mut orbit = ptr::null_mut();
    unsafe {
        assert_eq!(so_orbit_run_params(ctx.0, p, 10, 0, &mut orbit), SoStatus::Ok);
        assert_eq!(so_orbit_len(orbit), 11);
        let (mut first, mut last) = (0.0, 0.0);
        so_orbit_record(orbit, 0, &mut first, ptr::null_mut());
        so_orbit_record(orbit, 10, &mut last, ptr::null_mut());
        assert!(last < first);
        assert_eq!(so_orbit_record(orbit, 11, &mut last, ptr::null_mut()), SoStatus::IndexOutOfRange);
        so_orbit_free(orbit);
        so_params_free(p);
    }
}

#[test]
fn frees_accept_null() {
    unsafe {
        so_context_free(ptr::null_mut());
        so_params_free(ptr::null_mut());
        so_orbit_free(ptr::null_mut());
        so_string_free(ptr::null_mut());
        assert_eq!(so_orbit_len(ptr::null()), 0);
    }
    let v = unsafe { CStr::from_ptr(so_version()) };
    assert!(!v.to_str().unwrap().is_empty());
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/simplex_orbits.h")).unwrap();
    for name in [
        "so_context_new",
        "so_context_free",
        "so_params_from_strings",
        "so_params_from_doubles",
        "so_params_get",
        "so_params_quantities",
        "so_tetra_limit",
        "so_quad_limit",
        "so_is_isodynamic",
        "so_orbit_run_params",
        "so_orbit_run_triangle",
        "so_orbit_run_trapezoid",
        "so_orbit_len",
        "so_orbit_record",
        "so_orbit_document",
        "so_orbit_estimate_order",
        "so_orbit_free",
        "so_last_error_message",
        "so_string_free",
        "SO_STATUS_OK",
        "typedef struct SoContext SoContext;",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
