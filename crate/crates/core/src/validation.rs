//! The acceptance suite: twelve numbered checks with pinned tolerances,
//! shared by `riesz validate` and the integration tests.

use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;

use crate::closed_energy::{
    beta_sphere_closed_form, beta_sphere_closed_form_literal, ClosedEnergy, EnergyOptions,
};
use crate::domain_energy::{
    beta_ball_closed_form, fractional_perimeter, DomainEnergy,
};
use crate::error::{Result, RieszError};
use crate::extrinsic::b_jet_numeric;
use crate::geometry::{MoebiusMap, V3};
use crate::moebius::invariance_check;
use crate::regularize::{finite_part_jet, laurent_fit_with, LaurentBasis, DEFAULT_COND_BOUND, finite_part_profile, residue_estimate, Parity, PsiProfile, TaylorJet, Tail};
use crate::shapes::{curvature_integrals, parse_shape, Domain, Shape};

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// How a criterion came out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// The literal statement does not hold for a documented reason; the
    /// numerics behind it were verified instead.
    Deviation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub outcome: Outcome,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Deviation => "FAIL (documented)",
        };
        write!(f, "[{tag}] {:>2}. {} ({:.1}s): {}", self.id, self.title, self.elapsed.as_secs_f64(), self.detail)
    }
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "finite-part engine exactness"),
    (2, "residue formula"),
    (3, "circle profile jet"),
    (4, "circle Möbius energy"),
    (5, "knot residues"),
    (6, "surface residues"),
    (7, "sphere and ball closed forms"),
    (8, "boundary-integral identity"),
    (9, "domain residues"),
    (10, "Möbius invariance"),
    (11, "scaling law"),
    (12, "parity of Laurent coefficients"),
];

/// Collects sub-checks of one criterion.
struct Checks {
    ok: bool,
    lines: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Self { ok: true, lines: Vec::new() }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.ok &= ok;
        self.lines.push(if ok { line } else { format!("{line} !!") });
    }

    fn rel(&mut self, what: &str, got: C64, want: C64, tol: f64) {
        let e = rel(got, want);
        self.check(e < tol, format!("{what}: {:.10e} vs {:.10e} (rel {e:.1e} < {tol:.0e})", got.re, want.re));
    }

    fn abs(&mut self, what: &str, got: C64, want: C64, tol: f64) {
        let e = (got - want).norm();
        self.check(e < tol, format!("{what}: {:.10e} vs {:.10e} (abs {e:.1e} < {tol:.0e})", got.re, want.re));
    }

    fn fail(&mut self, what: &str, e: RieszError) {
        self.check(false, format!("{what}: error: {e}"));
    }

    fn finish(self) -> (Outcome, String) {
        (if self.ok { Outcome::Pass } else { Outcome::Fail }, self.lines.join("; "))
    }
}

fn shape(s: &str) -> Shape {
    parse_shape(s).expect("builtin shape spec")
}

fn domain(s: &str) -> Domain {
    match shape(s) {
        Shape::Domain(d) => d,
        _ => unreachable!("not a domain: {s}"),
    }
}

fn criterion_1() -> (Outcome, String) {
    let mut ch = Checks::new();
    let one = TaylorJet::new(vec![1.0], Parity::None).expect("jet");
    let mut worst: f64 = 0.0;
    for d in [0.5, 1.0, 2.0] {
        for z in [-0.5, -2.5] {
            let got = finite_part_jet(&one, d, c(z)).finite_part;
            worst = worst.max((got - c(d.powf(z + 1.0) / (z + 1.0))).norm());
        }
        worst = worst.max((finite_part_jet(&one, d, c(-1.0)).finite_part - c(d.ln())).norm());
    }
    ch.check(worst < 1e-12, format!("max error {worst:.1e} < 1e-12"));
    ch.finish()
}

fn criterion_2() -> (Outcome, String) {
    let mut ch = Checks::new();
    let n = crate::regularize::PROFILE_ORDER;
    let mut fact = vec![1.0; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i as f64;
    }
    type Case = (&'static str, fn(f64) -> f64, Vec<f64>);
    let cases: Vec<Case> = vec![
        ("exp", f64::exp, (0..=n).map(|i| 1.0 / fact[i]).collect()),
        (
            "cos",
            f64::cos,
            (0..=n).map(|i| if i % 2 == 1 { 0.0 } else if i % 4 == 0 { 1.0 / fact[i] } else { -1.0 / fact[i] }).collect(),
        ),
        ("1/(1+t)", |t| 1.0 / (1.0 + t), (0..=n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect()),
    ];
    let mut worst: f64 = 0.0;
    for (name, f, coeffs) in cases {
        let jet = TaylorJet::new(coeffs.clone(), Parity::None).expect("jet");
        let profile = PsiProfile::from_fn(1.0, 1.0, jet, f, Tail::Zero);
        let cont = |z: C64| finite_part_profile(&profile, z).map(|v| v.finite_part);
        for k in 1..=3u32 {
            match residue_estimate(cont, k) {
                Ok(r) => worst = worst.max((r - c(coeffs[k as usize - 1])).norm()),
                Err(e) => ch.fail(&format!("{name}, k = {k}"), e),
            }
        }
    }
    ch.check(worst < 1e-8, format!("max residue error {worst:.1e} < 1e-8 over exp, cos, 1/(1+t) and k = 1, 2, 3"));
    ch.finish()
}

fn criterion_3() -> (Outcome, String) {
    let mut ch = Checks::new();
    match b_jet_numeric(&shape("circle(r=1)"), 0.0, 0.0, 5) {
        Ok(fit) => {
            ch.rel("t coefficient", c(fit.jet.coeff(1)), c(2.0), 1e-4);
            ch.rel("t³ coefficient", c(fit.jet.coeff(3)), c(1.0 / 12.0), 1e-4);
        }
        Err(e) => ch.fail("jet fit", e),
    }
    ch.finish()
}

/// The cutoff definition with −2L/ε gives E(−2) = 0 for the unit circle;
/// the value 4 belongs to the normalization that adds 4 to it.
fn criterion_4() -> (Outcome, String) {
    let mut ch = Checks::new();
    let s = shape("circle(r=1)");
    let z = c(-2.0);
    let values = ClosedEnergy::new(&s, &EnergyOptions::default()).and_then(|ctx| {
        let cut = ctx.counterterm_cutoff(z)?.constant;
        let prof = ctx.profile(z)?.0;
        Ok((cut, prof))
    });
    match values {
        Ok((cut, prof)) => {
            ch.abs("counterterm-cutoff E(−2)", cut, c(0.0), 1e-4);
            ch.abs("profile-continuation E(−2)", prof, c(0.0), 1e-4);
            ch.abs("methods agree", cut, prof, 1e-4);
            ch.abs("closed form B(−2)", beta_sphere_closed_form(1, z).unwrap_or(c(f64::NAN)), c(0.0), 1e-12);
            let (outcome, detail) = ch.finish();
            if outcome != Outcome::Pass {
                return (outcome, detail);
            }
            let literal = (cut - c(4.0)).norm() < 1e-4;
            if literal {
                return (Outcome::Pass, detail);
            }
            (
                Outcome::Deviation,
                format!(
                    "{detail}; the literal target 4 is the +4-normalized Möbius energy (E(−2) + 4 = {:.8}); \
                     with the −2L/ε counterterm the unit circle has E(−2) = 0",
                    (cut + 4.0).re
                ),
            )
        }
        Err(e) => {
            ch.fail("energy", e);
            ch.finish()
        }
    }
}

fn criterion_5() -> (Outcome, String) {
    let mut ch = Checks::new();
    let s = shape("ellipse(a=2,b=1)");
    let mut run = || -> Result<()> {
        let ci = curvature_integrals(&s)?;
        let ctx = ClosedEnergy::new(&s, &EnergyOptions::default())?;
        let r1 = ctx.cutoff_laurent(c(-1.0), 6, true)?.residue();
        let r3 = ctx.cutoff_laurent(c(-3.0), 6, true)?.residue();
        ch.rel("R(−1) vs 2L", r1, c(2.0 * ci.measure), 1e-3);
        ch.rel("R(−3) vs ¼∫κ²", r3, c(0.25 * ci.integral_kappa_sq.unwrap_or(f64::NAN)), 1e-3);
        Ok(())
    };
    if let Err(e) = run() {
        ch.fail("ellipse", e);
    }
    ch.finish()
}

fn criterion_6() -> (Outcome, String) {
    let mut ch = Checks::new();
    let s = shape("torus(R=2,r=0.5)");
    let mut run = || -> Result<()> {
        let ci = curvature_integrals(&s)?;
        let ctx = ClosedEnergy::new(&s, &EnergyOptions::default())?;
        let r2 = ctx.cutoff_laurent(c(-2.0), 6, true)?.residue();
        let r4 = ctx.cutoff_laurent(c(-4.0), 6, true)?.residue();
        ch.rel("R(−2) vs 2πA", r2, c(2.0 * PI * ci.measure), 1e-3);
        ch.rel("R(−4) vs (π/8)∫(κ₁−κ₂)²", r4, c(PI / 8.0 * ci.integral_umbilic_defect.unwrap_or(f64::NAN)), 1e-3);
        Ok(())
    };
    if let Err(e) = run() {
        ch.fail("torus", e);
    }
    ch.finish()
}

/// Number of k ≤ k_max with a nonzero residue of `f` at −k.
fn count_poles(f: impl Fn(C64) -> Result<C64> + Copy, k_max: u32) -> Result<usize> {
    let mut count = 0;
    for k in 1..=k_max {
        let r = residue_estimate(f, k)?;
        let scale = f(c(-(k as f64) + 0.5))?.norm().max(1.0);
        if r.norm() > 1e-8 * scale {
            count += 1;
        }
    }
    Ok(count)
}

fn criterion_7() -> (Outcome, String) {
    let mut ch = Checks::new();
    // Sphere: calibrate the printed closed form against quadrature at z = 0,
    // then test at five more exponents.
    let run_sphere = |ch: &mut Checks| -> Result<()> {
        let s = shape("sphere(r=1)");
        let ctx = ClosedEnergy::new(&s, &EnergyOptions::default())?;
        let factor = ctx.direct(c(0.0))? / beta_sphere_closed_form_literal(2, c(0.0))?;
        ch.check(
            (factor - c(0.5)).norm() < 1e-9,
            format!("sphere calibration factor at z = 0: {:.12}", factor.re),
        );
        let zs = [-1.5, -1.0, -0.5, 0.5, 1.0].map(c);
        let direct = ctx.direct_many(&zs)?;
        for (&z, &d) in zs.iter().zip(&direct) {
            ch.rel(&format!("S² at z = {}", z.re), factor * beta_sphere_closed_form_literal(2, z)?, d, 1e-6);
        }
        Ok(())
    };
    if let Err(e) = run_sphere(&mut ch) {
        ch.fail("sphere", e);
    }
    let run_ball = |ch: &mut Checks, spec: &str, n: u32, zs: [f64; 5]| -> Result<()> {
        let d = domain(spec);
        let ctx = DomainEnergy::new(&d, &EnergyOptions::default())?;
        let factor = ctx.boundary_integral(c(0.0))? / beta_ball_closed_form(n, c(0.0))?;
        ch.check((factor - c(1.0)).norm() < 1e-9, format!("{spec} calibration factor at z = 0: {:.12}", factor.re));
        let zs = zs.map(c);
        let vals = ctx.boundary_integral_many(&zs)?;
        for (&z, &v) in zs.iter().zip(&vals) {
            ch.rel(&format!("{spec} at z = {}", z.re), factor * beta_ball_closed_form(n, z)?, v, 1e-6);
        }
        Ok(())
    };
    if let Err(e) = run_ball(&mut ch, "disk(r=1)", 2, [-2.5, -1.5, -1.0, -0.5, 1.0]) {
        ch.fail("disk", e);
    }
    if let Err(e) = run_ball(&mut ch, "ball(n=3,r=1)", 3, [-3.5, -2.5, -1.5, -0.5, 1.0]) {
        ch.fail("ball", e);
    }
    let mut counts = || -> Result<()> {
        for n in [2u32, 4, 6] {
            let got = count_poles(move |z| beta_sphere_closed_form(n, z), 4 * n)?;
            ch.check(got == n as usize / 2, format!("S^{n}: {got} poles (expected {})", n / 2));
        }
        for n in [3u32, 5] {
            let got = count_poles(move |z| beta_ball_closed_form(n, z), 4 * n)?;
            ch.check(got == (n as usize + 3) / 2, format!("B^{n}: {got} poles (expected {})", (n + 3) / 2));
        }
        Ok(())
    };
    if let Err(e) = counts() {
        ch.fail("pole counts", e);
    }
    ch.finish()
}

fn criterion_8() -> (Outcome, String) {
    let mut ch = Checks::new();
    for spec in ["disk(r=1)", "ball(n=3,r=1)"] {
        let run = |ch: &mut Checks| -> Result<()> {
            let d = domain(spec);
            let ctx = DomainEnergy::new(&d, &EnergyOptions::default())?;
            let zs = [0.0, -0.5, -1.0].map(c);
            let b = ctx.boundary_integral_many(&zs)?;
            let v = ctx.volume_direct_many(&zs)?;
            for i in 0..zs.len() {
                ch.rel(&format!("{spec} z = {}", zs[i].re), b[i], v[i], 1e-6);
            }
            Ok(())
        };
        if let Err(e) = run(&mut ch) {
            ch.fail(spec, e);
        }
    }
    match fractional_perimeter(&domain("disk(r=1)"), c(-2.5)) {
        Ok(p) => {
            ch.check(p.value.re > 0.0, format!("P(−2.5) = {:.10e} > 0", p.value.re));
            ch.rel("−B(−2.5) vs P(−2.5) by volume quadrature", p.value, p.direct, 1e-5);
        }
        Err(e) => ch.fail("fractional perimeter", e),
    }
    ch.finish()
}

fn criterion_9() -> (Outcome, String) {
    let mut ch = Checks::new();
    let cases: [(&str, [(u32, f64); 3]); 2] = [
        ("disk(r=1)", [(2, 2.0 * PI * PI), (3, -4.0 * PI), (5, PI / 6.0)]),
        ("ball(n=3,r=1)", [(3, 16.0 * PI * PI / 3.0), (4, -4.0 * PI * PI), (6, PI * PI / 3.0)]),
    ];
    for (spec, expect) in cases {
        let run = |ch: &mut Checks| -> Result<()> {
            let d = domain(spec);
            let formula = crate::domain_energy::domain_residues(&d)?;
            let ctx = DomainEnergy::new(&d, &EnergyOptions::default())?;
            for ((k, want), f) in expect.iter().zip(&formula) {
                ch.rel(&format!("{spec} curvature R(−{k})"), c(f.value), c(*want), 1e-3);
                let fit = ctx.cutoff_laurent(c(-(*k as f64)), 7, true)?.residue();
                ch.rel(&format!("{spec} cutoff-fit R(−{k})"), fit, c(f.value), 1e-3);
            }
            Ok(())
        };
        if let Err(e) = run(&mut ch) {
            ch.fail(spec, e);
        }
    }
    ch.finish()
}

fn criterion_10() -> (Outcome, String) {
    let mut ch = Checks::new();
    let invariance = |ch: &mut Checks, label: &str, s: &Shape, z: f64, map: MoebiusMap| match invariance_check(s, c(z), &map) {
        Ok(r) => ch.check(
            r.pass,
            format!("{label}: defect {:.2e} < tolerance {:.2e} (E = {:.10e})", r.defect, r.tolerance, r.before.value.re),
        ),
        Err(e) => ch.fail(label, e),
    };
    let ellipse = shape("ellipse(a=2,b=1)");
    invariance(&mut ch, "ellipse, inversion about (0,2.5,0)", &ellipse, -2.0, MoebiusMap::inversion(V3::new(0.0, 2.5, 0.0), 2.0));
    invariance(&mut ch, "ellipse, inversion about (1,0.5,2)", &ellipse, -2.0, MoebiusMap::inversion(V3::new(1.0, 0.5, 2.0), 1.5));
    invariance(
        &mut ch,
        "superellipse domain, inversion about (2.2,0.4,0)",
        &shape("superellipse-domain(a=1,b=0.8,p=4)"),
        -4.0,
        MoebiusMap::inversion(V3::new(2.2, 0.4, 0.0), 1.6),
    );
    let ell = shape("ellipsoid(a=1.5,b=1,c=0.8)");
    match invariance_check(&ell, c(-4.0), &MoebiusMap::homothety(V3::zeros(), 2.0)) {
        Ok(r) => {
            let ci = curvature_integrals(&ell).map(|ci| ci.integral_umbilic_defect.unwrap_or(f64::NAN));
            let want = c(PI * 2f64.ln() / 8.0 * ci.unwrap_or(f64::NAN));
            ch.rel("ellipsoid, homothety c = 2: E(2M) − E(M) vs (π log 2/8)∫(κ₁−κ₂)²", r.after.value - r.before.value, want, 1e-3);
        }
        Err(e) => ch.fail("ellipsoid homothety", e),
    }
    ch.finish()
}

fn criterion_11() -> (Outcome, String) {
    let mut ch = Checks::new();
    for spec in ["ellipse(a=2,b=1)", "ellipsoid(a=1.5,b=1,c=0.8)", "superellipse-domain(a=1,b=0.8,p=4)", "ball(n=3,r=1)"] {
        let s = shape(spec);
        for (cc, z) in [(2.0, -1.5), (0.5, -3.0)] {
            match crate::closed_energy::scaling_law_check(&s, c(z), cc) {
                Ok(r) => ch.rel(&format!("{spec} c = {cc}, z = {z}"), r.scaled_energy, r.predicted, 1e-4),
                Err(e) => ch.fail(spec, e),
            }
        }
    }
    ch.finish()
}

fn criterion_12() -> (Outcome, String) {
    let mut ch = Checks::new();
    let specs = [
        "circle(r=1)",
        "ellipse(a=2,b=1)",
        "trefoil(scale=1)",
        "superellipse(a=1,b=0.8,p=4)",
        "torus(R=2,r=0.5)",
        "sphere(r=1)",
        "ellipsoid(a=1.5,b=1,c=0.8)",
        "disk(r=1)",
        "ball(n=3,r=1)",
        "superellipse-domain(a=1,b=0.8,p=4)",
    ];
    // All powers j = 1..=6 are fitted on ε ∈ [2⁻⁸·d/4, d/4]; each coefficient
    // is measured by its contribution |a_j|·ε_max^{Re z + j} at the top of the
    // window, so that the comparison does not depend on the length scale.
    const J_MAX: usize = 6;
    const SAMPLES: usize = 24;
    for spec in specs {
        let s = shape(spec);
        let run = || -> Result<f64> {
            let (cut, d, allowed): (Box<dyn Fn(C64, f64) -> Result<C64>>, f64, Box<dyn Fn(usize) -> bool>) = match &s {
                Shape::Domain(dom) => {
                    let n = dom.dim();
                    let ctx = DomainEnergy::new(dom, &EnergyOptions::default())?;
                    let d = ctx.smoothness_radius();
                    (Box::new(move |z, e| ctx.cutoff(z, e)), d, Box::new(move |j| crate::domain_energy::domain_allows(n, j - 1)))
                }
                _ => {
                    let ctx = ClosedEnergy::new(&s, &EnergyOptions::default())?;
                    let parity = ctx.profile_jet().parity();
                    let d = ctx.smoothness_radius();
                    (Box::new(move |z, e| ctx.cutoff(z, e)), d, Box::new(move |j| parity.allows(j - 1)))
                }
            };
            let z = c(-(s.dim() as f64) - 1.5);
            let e_max = d / 4.0;
            let samples = (0..SAMPLES)
                .map(|i| {
                    let e = e_max * 2f64.powf(-8.0 * i as f64 / (SAMPLES - 1) as f64);
                    cut(z, e).map(|v| (e, v))
                })
                .collect::<Result<Vec<_>>>()?;
            let fit = laurent_fit_with(&samples, z, &LaurentBasis::up_to(J_MAX), DEFAULT_COND_BOUND)?;
            let size = |j: usize, a: C64| a.norm() * e_max.powf(z.re + j as f64);
            let lead = fit.terms.iter().map(|t| size(t.0, t.1)).fold(0.0, f64::max);
            let worst = fit.terms.iter().filter(|t| !allowed(t.0)).map(|t| size(t.0, t.1)).fold(0.0, f64::max);
            Ok(worst / lead)
        };
        match run() {
            Ok(ratio) => ch.check(ratio < 1e-6, format!("{spec}: forbidden/leading {ratio:.1e} < 1e-6")),
            Err(e) => ch.fail(spec, e),
        }
    }
    ch.finish()
}

/// Run one criterion by number (1–12).
pub fn run_criterion(id: u8) -> Result<CriterionResult> {
    let title = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .ok_or_else(|| RieszError::InvalidArgument(format!("no acceptance criterion {id}")))?;
    let start = Instant::now();
    let (outcome, detail) = match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => criterion_12(),
    };
    Ok(CriterionResult { id, title, outcome, detail, elapsed: start.elapsed() })
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id).expect("known criterion")).collect()
}
