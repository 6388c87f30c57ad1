use std::f64::consts::PI;
use std::ffi::{CStr, CString};
use std::ptr;

use riesz_ffi::*;

fn shape(spec: &str) -> *mut RieszShape {
    let text = CString::new(spec).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { riesz_shape_new(text.as_ptr(), &mut out) }, RieszStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(riesz_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(riesz_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn shape_lifecycle_and_dim() {
    for (spec, dim) in [("circle(r=1)", 1), ("torus(R=2,r=0.5)", 2), ("ball(n=3,r=1)", 3)] {
        let s = shape(spec);
        let mut d = 0;
        assert_eq!(unsafe { riesz_shape_dim(s, &mut d) }, RieszStatus::Ok);
        assert_eq!(d, dim);
        unsafe { riesz_shape_free(s) };
    }
    unsafe { riesz_shape_free(ptr::null_mut()) };
}

#[test]
fn bad_input_sets_codes_and_messages() {
    let text = CString::new("blob(r=1)").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { riesz_shape_new(text.as_ptr(), &mut out) }, RieszStatus::InvalidArgument);
    assert!(out.is_null());
    assert!(last_error().contains("blob"));

    assert_eq!(unsafe { riesz_shape_new(ptr::null(), &mut out) }, RieszStatus::NullPointer);
    let mut d = 0;
    assert_eq!(unsafe { riesz_shape_dim(ptr::null(), &mut d) }, RieszStatus::NullPointer);

    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { riesz_beta_ball(3, -3.0, 0.0, &mut re, &mut im) }, RieszStatus::Pole);
    assert_eq!(unsafe { riesz_beta_ball(1, 0.5, 0.0, &mut re, &mut im) }, RieszStatus::Unsupported);
    let c = [1.0];
    assert_eq!(unsafe { riesz_finite_part(c.as_ptr(), 1, 7, 1.0, 0.0, 0.0, &mut re, &mut im) }, RieszStatus::InvalidArgument);
}

#[test]
fn circle_energy_and_residues() {
    let s = shape("circle(r=1)");
    let (mut re, mut im, mut rre, mut rim) = (0.0, 0.0, 0.0, 0.0);
    // E(0) = L² for a curve
    assert_eq!(unsafe { riesz_energy(s, 0.0, 0.0, &mut re, &mut im, &mut rre, &mut rim) }, RieszStatus::Ok);
    assert!((re - 4.0 * PI * PI).abs() < 1e-9 && im == 0.0 && rre == 0.0);
    assert_eq!(unsafe { riesz_energy(s, -1.0, 0.0, &mut re, &mut im, &mut rre, &mut rim) }, RieszStatus::Ok);
    assert!((rre - 4.0 * PI).abs() < 1e-9);

    let mut r = 0.0;
    assert_eq!(unsafe { riesz_residue(s, 1, &mut r) }, RieszStatus::Ok);
    assert!((r - 4.0 * PI).abs() < 1e-9);
    assert_eq!(unsafe { riesz_residue(s, 2, &mut r) }, RieszStatus::Ok);
    assert_eq!(r, 0.0);
    unsafe { riesz_shape_free(s) };
}

#[test]
fn closed_forms() {
    let (mut re, mut im) = (0.0, 0.0);
    // S²: B(0) = area² = 16π²
    assert_eq!(unsafe { riesz_beta_sphere(2, 0.0, 0.0, &mut re, &mut im) }, RieszStatus::Ok);
    assert!((re - 16.0 * PI * PI).abs() < 1e-9 && im.abs() < 1e-12);
    // unit disk: B(0) = π²
    assert_eq!(unsafe { riesz_beta_ball(2, 0.0, 0.0, &mut re, &mut im) }, RieszStatus::Ok);
    assert!((re - PI * PI).abs() < 1e-10);
}

#[test]
fn finite_part_of_monomials() {
    let (mut re, mut im) = (0.0, 0.0);
    // Pf ∫₀² t^{-2.5}(1 + t) dt = 2^{-1.5}/(-1.5) + 2^{-0.5}/(-0.5)
    let c = [1.0, 1.0];
    assert_eq!(unsafe { riesz_finite_part(c.as_ptr(), 2, 0, 2.0, -2.5, 0.0, &mut re, &mut im) }, RieszStatus::Ok);
    let want = 2f64.powf(-1.5) / -1.5 + 2f64.powf(-0.5) / -0.5;
    assert!((re - want).abs() < 1e-14);
    // at z = −1 the 1/t term gives log d
    assert_eq!(unsafe { riesz_finite_part(c.as_ptr(), 2, 0, 2.0, -1.0, 0.0, &mut re, &mut im) }, RieszStatus::Ok);
    assert!((re - (2f64.ln() + 2.0)).abs() < 1e-14);
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/riesz.h");
    for name in [
        "riesz_last_error",
        "riesz_version",
        "riesz_shape_new",
        "riesz_shape_free",
        "riesz_shape_dim",
        "riesz_energy",
        "riesz_residue",
        "riesz_beta_sphere",
        "riesz_beta_ball",
        "riesz_finite_part",
        "RIESZ_STATUS_PANIC = 6",
    ] {
        assert!(header.contains(name), "riesz.h lacks {name}");
    }
}
