use std::f64::consts::PI;

use proptest::prelude::*;
use riesz_core::closed_energy::{ClosedEnergy, EnergyOptions};
use riesz_core::extrinsic::psi_numeric;
use riesz_core::geometry::{MoebiusMap, V3};
use riesz_core::moebius::transform_shape;
use riesz_core::quad::composite;
use riesz_core::regularize::{finite_part_jet, laurent_fit, Parity, TaylorJet};
use riesz_core::shapes::parse_shape;
use riesz_core::special::gamma;
use riesz_core::Complex64 as C;

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd), Just(Parity::None)]
}

fn point(r: f64) -> impl Strategy<Value = V3> {
    (-r..r, -r..r, -r..r).prop_map(|(x, y, z)| V3::new(x, y, z))
}

/// Exponents kept a safe distance from the poles −1, −2, …
fn off_pole(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo..hi).prop_filter("near a pole", |z: &f64| (z - z.round()).abs() > 0.05 || z.round() >= 0.0)
}

proptest! {
    #[test]
    fn jet_respects_parity(coeffs in prop::collection::vec(-5.0..5.0f64, 1..10), p in parity()) {
        let jet = TaylorJet::new(coeffs, p).unwrap();
        for (i, c) in jet.coeffs().iter().enumerate() {
            prop_assert!(p.allows(i) || *c == 0.0);
        }
        prop_assert_eq!(jet.derivative().parity(), p.flip());
        let back = jet.antiderivative().derivative();
        for (a, b) in back.coeffs().iter().zip(jet.coeffs()) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }

    /// Moving the cut point d changes Pf ∫₀^d t^z φ by the ordinary integral
    /// over the gap, for every non-pole z.
    #[test]
    fn finite_part_is_additive_in_d(
        coeffs in prop::collection::vec(-3.0..3.0f64, 1..7),
        z in off_pole(-6.5, 2.0),
        zi in -1.0..1.0f64,
        d1 in 0.2..1.0f64,
        gap in 0.1..1.5f64,
    ) {
        let jet = TaylorJet::new(coeffs, Parity::None).unwrap();
        let z = C::new(z, zi);
        let d2 = d1 + gap;
        let diff = finite_part_jet(&jet, d2, z).finite_part - finite_part_jet(&jet, d1, z).finite_part;
        let exact = composite(d1, d2, 8, 20).integrate_c(|t| C::new(t, 0.0).powc(z) * jet.eval(t));
        prop_assert!((diff - exact).norm() <= 1e-10 * exact.norm().max(1.0), "{diff} vs {exact}");
    }

    /// For Re z > −1 the finite part is the convergent integral.
    #[test]
    fn finite_part_agrees_with_convergent_integral(
        coeffs in prop::collection::vec(-3.0..3.0f64, 1..7),
        z in -0.6..2.0f64,
        d in 0.3..2.0f64,
    ) {
        let jet = TaylorJet::new(coeffs, Parity::None).unwrap();
        let z = C::new(z, 0.0);
        let pf = finite_part_jet(&jet, d, z).finite_part;
        // t = d·s^q removes the endpoint singularity for the numeric check
        let q = 8.0;
        let exact = composite(0.0, 1.0, 16, 20)
            .integrate_c(|s| {
                let t = d * s.powf(q);
                C::new(t, 0.0).powc(z) * jet.eval(t) * d * q * s.powf(q - 1.0)
            });
        prop_assert!((pf - exact).norm() <= 1e-9 * exact.norm().max(1.0), "{pf} vs {exact}");
    }

    #[test]
    fn laurent_fit_recovers_exact_counterterms(
        a in prop::collection::vec(-2.0..2.0f64, 4),
        z in off_pole(-4.5, -0.2),
    ) {
        let z = C::new(z, 0.0);
        let f = |e: f64| a[0] + (1..4).map(|j| a[j] * e.powf(z.re + j as f64)).sum::<f64>();
        let samples: Vec<(f64, C)> = (0..12).map(|i| {
            let e = 0.2 * 0.7f64.powi(i);
            (e, C::new(f(e), 0.0))
        }).collect();
        let fit = laurent_fit(&samples, z, 3).unwrap();
        prop_assert!((fit.constant - a[0]).norm() < 1e-7 * (1.0 + a.iter().map(|x| x.abs()).sum::<f64>()));
        for j in 1..4 {
            prop_assert!((fit.coeff(j).unwrap().re - a[j]).abs() < 1e-6);
        }
    }

    #[test]
    fn gamma_recurrence_and_reflection(re in -6.0..6.0f64, im in -3.0..3.0f64) {
        let z = C::new(re, im);
        prop_assume!((z - C::new(re.round(), 0.0)).norm() > 1e-3);
        let g = gamma(z).unwrap();
        let g1 = gamma(z + 1.0).unwrap();
        prop_assert!((g1 - z * g).norm() <= 1e-11 * g1.norm().max(1e-300));
        let refl = g * gamma(1.0 - z).unwrap() * (z * PI).sin();
        prop_assert!((refl - PI).norm() < 1e-10 * PI);
    }

    #[test]
    fn inversion_is_conformal_and_involutive(
        center in point(2.0),
        radius in 0.3..3.0f64,
        p in point(3.0),
        v in point(1.0),
    ) {
        prop_assume!((p - center).norm() > 0.1 && v.norm() > 1e-3);
        let m = MoebiusMap::inversion(center, radius);
        let back = m.apply(&m.apply(&p));
        prop_assert!((back - p).norm() < 1e-9 * p.norm().max(1.0));
        let pushed = m.push(&p, &v);
        let expect = m.stretch(&p) * v.norm();
        prop_assert!((pushed.norm() - expect).abs() < 1e-9 * expect);
        let round_trip = m.then(&m.inverse()).apply(&p);
        prop_assert!((round_trip - p).norm() < 1e-9 * p.norm().max(1.0));
    }

    /// Chord-ball measure on a circle: ψ(t) = 4r·asin(t/2r).
    #[test]
    fn circle_psi_is_arc_length(r in 0.2..5.0f64, s in 0.01..0.99f64, theta in 0.0..6.2f64) {
        let shape = parse_shape(&format!("circle(r={r})")).unwrap();
        let t = 2.0 * r * s;
        let psi = psi_numeric(&shape, theta, 0.0, t).unwrap();
        let exact = 4.0 * r * (t / (2.0 * r)).asin();
        prop_assert!((psi - exact).abs() < 1e-9 * exact);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn curve_energy_is_translation_invariant(shift in point(3.0), z in off_pole(-2.8, 1.0)) {
        let base = parse_shape("ellipse(a=2,b=1)").unwrap();
        let moved = transform_shape(&MoebiusMap::translation(shift), &base).unwrap();
        let opts = EnergyOptions { cross_check: false, ..EnergyOptions::default() };
        let z = C::new(z, 0.0);
        let a = riesz_core::energy(&base, z, &opts).unwrap().value;
        let b = riesz_core::energy(&moved, z, &opts).unwrap().value;
        prop_assert!((a - b).norm() < 1e-8 * a.norm().max(1.0), "{a} vs {b}");
    }

    /// Away from the poles E(c·C, z) = c^{z+2} E(C, z) for a curve.
    #[test]
    fn curve_energy_scales(c in 0.3..3.0f64, z in off_pole(-2.8, 1.0)) {
        let z = C::new(z, 0.0);
        let opts = EnergyOptions { cross_check: false, ..EnergyOptions::default() };
        let small = parse_shape("superellipse(a=1,b=0.8,p=4)").unwrap();
        let big = parse_shape(&format!("superellipse(a={},b={},p=4)", c, 0.8 * c)).unwrap();
        let a = riesz_core::energy(&small, z, &opts).unwrap().value;
        let b = riesz_core::energy(&big, z, &opts).unwrap().value;
        let predicted = a * C::new(c, 0.0).powc(z + 2.0);
        prop_assert!((b - predicted).norm() < 1e-7 * predicted.norm().max(1e-3), "{b} vs {predicted}");
    }

    #[test]
    fn direct_and_profile_agree_for_convergent_exponents(z in -0.9..1.5f64) {
        let shape = parse_shape("trefoil(scale=1)").unwrap();
        let ctx = ClosedEnergy::new(&shape, &EnergyOptions::default()).unwrap();
        let z = C::new(z, 0.0);
        let direct = ctx.direct(z).unwrap();
        let profile = ctx.profile(z).unwrap().0;
        prop_assert!((direct - profile).norm() < 1e-7 * direct.norm());
    }
}
