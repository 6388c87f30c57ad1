//! C ABI over `riesz-core`.
//!
//! Every function returns a [`RieszStatus`]; results go through out-pointers.
//! On failure the message is kept per thread and read with
//! [`riesz_last_error`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use riesz_core::closed_energy::{beta_sphere_closed_form, EnergyOptions};
use riesz_core::domain_energy::{beta_ball_closed_form, domain_residues};
use riesz_core::regularize::{finite_part_jet, Parity, TaylorJet};
use riesz_core::shapes::{parse_shape, Shape};
use riesz_core::{Complex64, RieszError};

/// Status codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RieszStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// Bad shape text, parameters or exponent.
    InvalidArgument = 2,
    /// The numerics failed (fit conditioning, quadrature, disagreement).
    Numerical = 3,
    /// The exponent is a pole of the requested quantity.
    Pole = 4,
    /// Dimension or shape kind not supported by this call.
    Unsupported = 5,
    /// A Rust panic was caught.
    Panic = 6,
}

/// Opaque parsed shape.
pub struct RieszShape {
    shape: Shape,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &RieszError) -> RieszStatus {
    match e {
        RieszError::PoleAt(_) => RieszStatus::Pole,
        RieszError::UnsupportedDimension(_) => RieszStatus::Unsupported,
        e if e.is_config_error() => RieszStatus::InvalidArgument,
        _ => RieszStatus::Numerical,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), (RieszStatus, String)>) -> RieszStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RieszStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            RieszStatus::Panic
        }
    }
}

fn core<T>(r: riesz_core::Result<T>) -> Result<T, (RieszStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (RieszStatus, String) {
    (RieszStatus::NullPointer, format!("{what} is null"))
}

fn write_complex(re: *mut f64, im: *mut f64, v: Complex64) {
    // SAFETY: callers checked both pointers.
    unsafe {
        *re = v.re;
        *im = v.im;
    }
}

/// Message of the last failed call on this thread; empty after success is
/// not guaranteed. The pointer stays valid until the next failing call.
#[no_mangle]
pub extern "C" fn riesz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn riesz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse a shape such as `"ellipse(a=2,b=1)"` into `*out`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn riesz_shape_new(spec: *const c_char, out: *mut *mut RieszShape) -> RieszStatus {
    guard(|| {
        if spec.is_null() {
            return Err(null("spec"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(spec)
            .to_str()
            .map_err(|_| (RieszStatus::InvalidArgument, "shape text is not UTF-8".to_string()))?;
        let shape = core(parse_shape(text))?;
        *out = Box::into_raw(Box::new(RieszShape { shape }));
        Ok(())
    })
}

/// Release a shape. Null is ignored.
///
/// # Safety
/// `shape` must come from [`riesz_shape_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn riesz_shape_free(shape: *mut RieszShape) {
    if !shape.is_null() {
        drop(Box::from_raw(shape));
    }
}

/// Intrinsic dimension: 1 for curves, 2 for surfaces, n for domains in Rⁿ.
///
/// # Safety
/// `shape` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn riesz_shape_dim(shape: *const RieszShape, out: *mut u32) -> RieszStatus {
    guard(|| {
        let s = shape.as_ref().ok_or_else(|| null("shape"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = s.shape.dim() as u32;
        Ok(())
    })
}

/// Regularized energy E(z), pole-removed at poles. `residue_*` may be null;
/// otherwise they receive the residue at z (zero off the pole set).
///
/// # Safety
/// `shape` must be a live handle; non-null pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn riesz_energy(
    shape: *const RieszShape,
    z_re: f64,
    z_im: f64,
    value_re: *mut f64,
    value_im: *mut f64,
    residue_re: *mut f64,
    residue_im: *mut f64,
) -> RieszStatus {
    guard(|| {
        let s = shape.as_ref().ok_or_else(|| null("shape"))?;
        if value_re.is_null() || value_im.is_null() {
            return Err(null("value"));
        }
        let opts = EnergyOptions { cross_check: false, ..EnergyOptions::default() };
        let r = core(riesz_core::energy(&s.shape, Complex64::new(z_re, z_im), &opts))?;
        write_complex(value_re, value_im, r.value);
        if !residue_re.is_null() && !residue_im.is_null() {
            write_complex(residue_re, residue_im, r.residue_at_z);
        }
        Ok(())
    })
}

/// Residue at z = −k from curvature integrals. Writes 0 when −k is not a pole.
///
/// # Safety
/// `shape` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn riesz_residue(shape: *const RieszShape, k: u32, out: *mut f64) -> RieszStatus {
    guard(|| {
        let s = shape.as_ref().ok_or_else(|| null("shape"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let list = match &s.shape {
            Shape::Domain(d) => core(domain_residues(d))?,
            other => core(riesz_core::closed_energy::residues(other))?,
        };
        *out = list.iter().find(|r| r.k == k).map_or(0.0, |r| r.value);
        Ok(())
    })
}

/// Closed-form beta function of the unit sphere Sⁿ ⊂ Rⁿ⁺¹.
///
/// # Safety
/// `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn riesz_beta_sphere(n: u32, z_re: f64, z_im: f64, out_re: *mut f64, out_im: *mut f64) -> RieszStatus {
    guard(|| {
        if out_re.is_null() || out_im.is_null() {
            return Err(null("out"));
        }
        let v = core(beta_sphere_closed_form(n, Complex64::new(z_re, z_im)))?;
        write_complex(out_re, out_im, v);
        Ok(())
    })
}

/// Closed-form beta function of the unit ball Bⁿ.
///
/// # Safety
/// `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn riesz_beta_ball(n: u32, z_re: f64, z_im: f64, out_re: *mut f64, out_im: *mut f64) -> RieszStatus {
    guard(|| {
        if out_re.is_null() || out_im.is_null() {
            return Err(null("out"));
        }
        let v = core(beta_ball_closed_form(n, Complex64::new(z_re, z_im)))?;
        write_complex(out_re, out_im, v);
        Ok(())
    })
}

/// Hadamard finite part of ∫₀^d t^z φ(t) dt for the polynomial
/// φ(t) = Σ coeffs[i]·tⁱ. `parity`: 0 none, 1 even, 2 odd.
///
/// # Safety
/// `coeffs` must point at `len` doubles; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn riesz_finite_part(
    coeffs: *const f64,
    len: usize,
    parity: u32,
    d: f64,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> RieszStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        if out_re.is_null() || out_im.is_null() {
            return Err(null("out"));
        }
        let parity = match parity {
            0 => Parity::None,
            1 => Parity::Even,
            2 => Parity::Odd,
            p => return Err((RieszStatus::InvalidArgument, format!("parity must be 0, 1 or 2, got {p}"))),
        };
        if !(d > 0.0) {
            return Err((RieszStatus::InvalidArgument, format!("d must be positive, got {d}")));
        }
        let jet = core(TaylorJet::new(std::slice::from_raw_parts(coeffs, len).to_vec(), parity))?;
        let v = finite_part_jet(&jet, d, Complex64::new(z_re, z_im));
        write_complex(out_re, out_im, v.finite_part);
        Ok(())
    })
}
