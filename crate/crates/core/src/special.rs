//! Gamma-function helpers for the closed forms. `statrs` only covers real
//! arguments, so the complex Lanczos evaluation lives here.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Result, RieszError};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Some(k)` when `z` is exactly the non-positive integer `-k`.
pub fn nonpositive_integer(z: C64) -> Option<u32> {
    (z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 && z.re > -1e9).then(|| (-z.re) as u32)
}

/// Γ(z) for complex z. Errors at the poles 0, -1, -2, ...
pub fn gamma(z: C64) -> Result<C64> {
    if nonpositive_integer(z).is_some() {
        return Err(RieszError::PoleAt(z.re));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: C64) -> C64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return C64::new(PI, 0.0) / (s * gamma_unchecked(1.0 - z));
    }
    if z.im == 0.0 && z.re.fract() == 0.0 && z.re <= 24.0 {
        // Exact factorial for small positive integers.
        let mut f = 1.0;
        let mut k = 2.0;
        while k < z.re {
            f *= k;
            k += 1.0;
        }
        return C64::new(f, 0.0);
    }
    let z = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// 1/Γ(z), entire.
pub fn rgamma(z: C64) -> C64 {
    match nonpositive_integer(z) {
        Some(_) => C64::new(0.0, 0.0),
        None => 1.0 / gamma_unchecked(z),
    }
}

/// Γ(a)/Γ(a+s). For integer `s` this is the reciprocal Pochhammer symbol,
/// which stays finite where both Gammas have poles.
pub fn gamma_ratio(a: C64, s: f64) -> Result<C64> {
    if s.fract() == 0.0 && s >= 0.0 {
        let mut p = C64::new(1.0, 0.0);
        for i in 0..s as u32 {
            p *= a + i as f64;
        }
        if p == C64::new(0.0, 0.0) {
            return Err(RieszError::PoleAt(a.re));
        }
        return Ok(1.0 / p);
    }
    Ok(gamma(a)? * rgamma(a + s))
}

/// Surface area of the unit k-sphere: o_0 = 2, o_1 = 2π, o_2 = 4π, …
pub fn sphere_area(k: u32) -> f64 {
    let h = (k as f64 + 1.0) / 2.0;
    2.0 * PI.powf(h) / gamma_unchecked(C64::new(h, 0.0)).re
}

/// Volume of the unit k-ball.
pub fn ball_volume(k: u32) -> f64 {
    if k == 0 {
        1.0
    } else {
        sphere_area(k - 1) / k as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_matches_statrs_on_real_line() {
        for &x in &[0.1, 0.5, 1.0, 1.5, 2.25, 3.0, 7.5, 12.3, -0.5, -1.5, -2.7, -5.2] {
            let got = gamma(C64::new(x, 0.0)).unwrap().re;
            let want = statrs::function::gamma::gamma(x);
            assert!(((got - want) / want).abs() < 1e-13, "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn reflection_and_recurrence_in_the_plane() {
        let z = C64::new(0.3, 1.7);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        assert!((lhs - rhs).norm() / lhs.norm() < 1e-13);
        let refl = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * (z * PI).sin();
        assert!((refl - PI).norm() < 1e-12);
    }

    #[test]
    fn poles_and_areas() {
        assert!(gamma(C64::new(-3.0, 0.0)).is_err());
        assert_eq!(rgamma(C64::new(-2.0, 0.0)), C64::new(0.0, 0.0));
        assert!((sphere_area(0) - 2.0).abs() < 1e-15);
        assert!((sphere_area(1) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_area(2) - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn pochhammer_ratio_crosses_double_poles() {
        // Γ(-3)/Γ(-1) = 1/((-3)(-2)) = 1/6
        let r = gamma_ratio(C64::new(-3.0, 0.0), 2.0).unwrap();
        assert!((r.re - 1.0 / 6.0).abs() < 1e-15);
        assert!(gamma_ratio(C64::new(-1.0, 0.0), 2.0).is_err());
    }
}
