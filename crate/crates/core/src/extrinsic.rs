//! Extrinsic-ball profiles ψ_{M,x}(t) = vol(M ∩ B_t(x)), the weighted
//! boundary profiles ψ_{ρ,x} with ρ(y) = ⟨n_x, n_y⟩, domain profiles ψ_Ω and
//! their Taylor jets.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Result, RieszError};
use crate::manifold::{Manifold, Resolution, Weight};
use crate::quad::Rule;
use crate::regularize::{Parity, PsiProfile, TaylorJet, Tail};
use crate::shapes::{curvature_integrals, Boundary, CurvatureIntegrals, Domain, Shape};
use crate::special::sphere_area;

/// Borrow the closed manifold behind a shape (the boundary for domains).
pub(crate) fn with_manifold<T>(shape: &Shape, f: impl FnOnce(Manifold<'_>) -> Result<T>) -> Result<T> {
    match shape {
        Shape::Curve(c) => f(Manifold::Curve(c)),
        Shape::Surface(s) => f(Manifold::Surface(s)),
        Shape::Domain(d) => match d.boundary()? {
            Boundary::Curve(c) => f(Manifold::Curve(&c)),
            Boundary::Surface(s) => f(Manifold::Surface(&s)),
        },
    }
}

/// ψ_{M,x}(t) at the point with parameters (u, v) (v is ignored for curves).
pub fn psi_numeric(shape: &Shape, u: f64, v: f64, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(RieszError::InvalidArgument(format!("radius must be nonnegative, got {t}")));
    }
    with_manifold(shape, |m| {
        let res = m.default_resolution();
        Ok(m.ball_measure(&m.anchor_at(u, v), t, Weight::Unit, &res))
    })
}

/// Local curvature data at a parameter point.
fn local_curvatures(shape: &Shape, u: f64, v: f64) -> Result<(f64, f64)> {
    match shape {
        Shape::Curve(c) => Ok((c.curvature(u)?, 0.0)),
        Shape::Surface(s) => s.principal_curvatures(u, v),
        Shape::Domain(d) => match d.boundary()? {
            Boundary::Curve(c) => Ok((c.curvature(u)?, 0.0)),
            Boundary::Surface(s) => s.principal_curvatures(u, v),
        },
    }
}

/// Taylor jet of ψ_{M,x} from curvature: curves 2t + κ²t³/12,
/// surfaces πt² + π(κ₁−κ₂)²t⁴/32.
pub fn b_jet_analytic(shape: &Shape, u: f64, v: f64) -> Result<TaylorJet> {
    let (k1, k2) = local_curvatures(shape, u, v)?;
    match shape {
        Shape::Curve(_) => TaylorJet::new(vec![0.0, 2.0, 0.0, k1 * k1 / 12.0, 0.0], Parity::Odd),
        Shape::Surface(_) => {
            TaylorJet::new(vec![0.0, 0.0, PI, 0.0, PI * (k1 - k2).powi(2) / 32.0, 0.0], Parity::Even)
        }
        Shape::Domain(_) => Err(RieszError::InvalidArgument("b_jet_analytic needs a closed curve or surface".into())),
    }
}

/// A parity-constrained least-squares jet with per-coefficient standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct JetFit {
    pub jet: TaylorJet,
    pub std_errors: Vec<f64>,
    pub condition_number: f64,
}

/// Number of samples and their geometric range in the jet fit.
pub const JET_FIT_SAMPLES: usize = 40;

/// Fit ψ_{M,x} samples on t ∈ [t_max·10⁻³, d/4] by a polynomial whose
/// parity-forbidden coefficients are hard zeros.
pub fn b_jet_numeric(shape: &Shape, u: f64, v: f64, order: usize) -> Result<JetFit> {
    if order > 6 {
        return Err(RieszError::InvalidArgument(format!("jet order {order} exceeds 6")));
    }
    let parity = match shape {
        Shape::Curve(_) => Parity::Odd,
        Shape::Surface(_) => Parity::Even,
        Shape::Domain(_) => return Err(RieszError::InvalidArgument("b_jet_numeric needs a closed manifold".into())),
    };
    let t_max = shape.diameter_bound()?;
    with_manifold(shape, |m| {
        let res = m.default_resolution();
        let d = m.smoothness_radius(&res);
        let (lo, hi) = (t_max * 1e-3, d / 4.0);
        if !(hi > lo) {
            return Err(RieszError::FitUnstable(format!("empty fit window [{lo}, {hi}]")));
        }
        let a = m.anchor_at(u, v);
        let ts: Vec<f64> = (0..JET_FIT_SAMPLES)
            .map(|i| lo * (hi / lo).powf(i as f64 / (JET_FIT_SAMPLES - 1) as f64))
            .collect();
        let ys: Vec<f64> = ts.iter().map(|&t| m.ball_measure(&a, t, Weight::Unit, &res)).collect();
        fit_parity_polynomial(&ts, &ys, order, parity)
    })
}

pub(crate) fn fit_parity_polynomial(ts: &[f64], ys: &[f64], order: usize, parity: Parity) -> Result<JetFit> {
    let powers: Vec<usize> = (1..=order).filter(|&i| parity.allows(i)).collect();
    if powers.is_empty() || ts.len() <= powers.len() {
        return Err(RieszError::FitUnstable("not enough samples for the requested order".into()));
    }
    let hi = ts.iter().cloned().fold(0.0, f64::max);
    let mut a = DMatrix::<f64>::zeros(ts.len(), powers.len());
    for (r, &t) in ts.iter().enumerate() {
        for (c, &p) in powers.iter().enumerate() {
            a[(r, c)] = (t / hi).powi(p as i32);
        }
    }
    let b = DVector::from_column_slice(ys);
    let svd = a.clone().svd(true, true);
    let cond = svd.singular_values.max() / svd.singular_values.min();
    if !(cond < 1e14) {
        return Err(RieszError::FitUnstable(format!("condition number {cond:e}")));
    }
    let x = svd.solve(&b, 0.0).map_err(|e| RieszError::FitUnstable(e.to_string()))?;
    let resid = &a * &x - &b;
    let dof = (ts.len() - powers.len()) as f64;
    let sigma2 = resid.norm_squared() / dof;
    let cov = (a.transpose() * &a).try_inverse().ok_or_else(|| RieszError::FitUnstable("singular normal matrix".into()))?;
    let mut coeffs = vec![0.0; order + 1];
    let mut errs = vec![0.0; order + 1];
    for (c, &p) in powers.iter().enumerate() {
        let s = hi.powi(-(p as i32));
        coeffs[p] = x[c] * s;
        errs[p] = (sigma2 * cov[(c, c)]).max(0.0).sqrt() * s;
    }
    Ok(JetFit { jet: TaylorJet::new(coeffs, parity)?, std_errors: errs, condition_number: cond })
}

/// Integrated Taylor coefficients ∫_M b_{M,k}(x) dx.
#[derive(Debug, Clone, PartialEq)]
pub struct BCoefficients {
    /// Dimension m of M.
    pub m: usize,
    /// `integrated[k]` = ∫_M b_{M,k}.
    pub integrated: Vec<f64>,
}

pub fn b_coefficients(shape: &Shape) -> Result<BCoefficients> {
    let ci = curvature_integrals(shape)?;
    b_coefficients_from(shape, &ci)
}

pub fn b_coefficients_from(shape: &Shape, ci: &CurvatureIntegrals) -> Result<BCoefficients> {
    match shape {
        Shape::Curve(_) => Ok(BCoefficients {
            m: 1,
            integrated: vec![0.0, 2.0 * ci.measure, 0.0, ci.integral_kappa_sq.unwrap_or(0.0) / 12.0, 0.0],
        }),
        Shape::Surface(_) => Ok(BCoefficients {
            m: 2,
            integrated: vec![0.0, 0.0, PI * ci.measure, 0.0, PI / 32.0 * ci.integral_umbilic_defect.unwrap_or(0.0), 0.0],
        }),
        Shape::Domain(_) => Err(RieszError::InvalidArgument("b coefficients are defined for closed manifolds".into())),
    }
}

/// Jet of Ψ′(t) = d/dt ∫_M ψ_{M,x}(t) dx: coefficient i is (i+1)∫b_{M,i+1}.
pub fn energy_profile_jet(b: &BCoefficients) -> Result<TaylorJet> {
    let parity = if b.m % 2 == 1 { Parity::Even } else { Parity::Odd };
    let coeffs = b.integrated.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect();
    TaylorJet::new(coeffs, parity)
}

/// Jet of ψ_Ω(t) = vol(Ω ∩ (Ω + B_t)) pairs: orders n and n+1, with the
/// order n+2 coefficient zero.
pub fn psi_domain_jet(domain: &Domain) -> Result<TaylorJet> {
    let ci = curvature_integrals(&Shape::Domain(domain.clone()))?;
    let n = domain.dim();
    let v = ci.volume.unwrap_or(f64::NAN);
    let mut c = vec![0.0; n + 3];
    c[n] = sphere_area(n as u32 - 1) / n as f64 * v;
    c[n + 1] = -sphere_area(n as u32 - 2) / ((n + 1) * (n - 1)) as f64 * ci.measure;
    TaylorJet::new(c, Parity::None)
}

/// Jet of ψ′_Ω through order n+3, from the residue formulas: coefficient
/// i is the residue of the domain beta function at −(i+1).
pub fn psi_domain_derivative_jet(n: usize, ci: &CurvatureIntegrals) -> Result<TaylorJet> {
    let v = ci.volume.ok_or_else(|| RieszError::InvalidArgument("domain volume missing".into()))?;
    let on1 = sphere_area(n as u32 - 1);
    let on2 = sphere_area(n as u32 - 2);
    let curv = match n {
        2 => 3.0 * ci.integral_kappa_sq.unwrap_or(f64::NAN),
        3 => 4.0 * ci.integral_3h2_minus_k.unwrap_or(f64::NAN),
        4 => ci.integral_27h2_minus_4k.unwrap_or(f64::NAN),
        _ => return Err(RieszError::UnsupportedDimension(n)),
    };
    let mut c = vec![0.0; n + 4];
    c[n - 1] = on1 * v;
    c[n] = -on2 / (n - 1) as f64 * ci.measure;
    c[n + 2] = on2 / (24.0 * (n * n - 1) as f64) * curv;
    TaylorJet::new(c, Parity::None)
}

/// Jet of ψ_{ρ,x}(t) from the local mean and scalar curvature.
pub fn psi_rho_jet(n: usize, k1: f64, k2: f64) -> Result<TaylorJet> {
    let (h, k) = match n {
        2 => (k1, 0.0),
        3 => (0.5 * (k1 + k2), k1 * k2),
        _ => return Err(RieszError::UnsupportedDimension(n)),
    };
    let lead = sphere_area(n as u32 - 2) / (n - 1) as f64;
    let corr = (3.0 * ((n - 1) * (n - 1)) as f64 * h * h - 4.0 * k) / (8.0 * (n + 1) as f64);
    let mut c = vec![0.0; n + 3];
    c[n - 1] = lead;
    c[n + 1] = -lead * corr;
    let parity = if (n - 1) % 2 == 0 { Parity::Even } else { Parity::Odd };
    TaylorJet::new(c, parity)
}

/// Jet of Σ′(t) = d/dt ∫_{∂Ω} ψ_{ρ,x}(t) dx.
pub fn sigma_derivative_jet(n: usize, ci: &CurvatureIntegrals) -> Result<TaylorJet> {
    let lead = sphere_area(n as u32 - 2) / (n - 1) as f64;
    let integral = match n {
        2 => 3.0 * ci.integral_kappa_sq.unwrap_or(f64::NAN),
        3 => 4.0 * ci.integral_3h2_minus_k.unwrap_or(f64::NAN),
        _ => return Err(RieszError::UnsupportedDimension(n)),
    };
    let mut c = vec![0.0; n + 2];
    c[n - 2] = (n - 1) as f64 * lead * ci.measure;
    c[n] = -((n + 1) as f64) * lead * integral / (8.0 * (n + 1) as f64);
    let parity = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
    TaylorJet::new(c, parity)
}

/// ψ_{ρ,x} sampled on `t_grid` at a boundary point, with its analytic jet.
pub fn psi_rho_profile(domain: &Domain, u: f64, v: f64, t_grid: &[f64]) -> Result<PsiProfile> {
    let n = domain.dim();
    let shape = Shape::Domain(domain.clone());
    let (k1, k2) = local_curvatures(&shape, u, v)?;
    let jet = psi_rho_jet(n, k1, k2)?;
    let t_max = shape.diameter_bound()?;
    with_manifold(&shape, |m| {
        let res = m.default_resolution();
        let d = m.smoothness_radius(&res);
        let a = m.anchor_at(u, v);
        let values: Vec<f64> = t_grid.iter().map(|&t| m.ball_measure(&a, t, Weight::NormalDot, &res)).collect();
        let rule = Rule { nodes: t_grid.to_vec(), weights: trapezoid_weights(t_grid) };
        Ok(PsiProfile::from_values(d, t_max, jet, &rule, values, Tail::Zero))
    })
}

/// ψ_{M,x} sampled on `t_grid` (the `psi` command); for domains the
/// boundary profile ψ_{ρ,x}.
pub fn psi_profile(shape: &Shape, u: f64, v: f64, t_grid: &[f64]) -> Result<PsiProfile> {
    psi_profile_with(shape, u, v, t_grid, None)
}

/// [`psi_profile`] at an explicit resolution.
pub fn psi_profile_with(shape: &Shape, u: f64, v: f64, t_grid: &[f64], res: Option<Resolution>) -> Result<PsiProfile> {
    let (jet, weight) = match shape {
        Shape::Domain(d) => {
            let (k1, k2) = local_curvatures(shape, u, v)?;
            (psi_rho_jet(d.dim(), k1, k2)?, Weight::NormalDot)
        }
        _ => (b_jet_analytic(shape, u, v)?, Weight::Unit),
    };
    let t_max = shape.diameter_bound()?;
    with_manifold(shape, |m| {
        let res = res.unwrap_or_else(|| m.default_resolution());
        let d = m.smoothness_radius(&res);
        let a = m.anchor_at(u, v);
        let values: Vec<f64> = t_grid.iter().map(|&t| m.ball_measure(&a, t, weight, &res)).collect();
        let rule = Rule { nodes: t_grid.to_vec(), weights: trapezoid_weights(t_grid) };
        Ok(PsiProfile::from_values(d, t_max, jet, &rule, values, Tail::Zero))
    })
}

fn trapezoid_weights(t: &[f64]) -> Vec<f64> {
    let n = t.len();
    (0..n)
        .map(|i| {
            let l = if i > 0 { t[i] - t[i - 1] } else { 0.0 };
            let r = if i + 1 < n { t[i + 1] - t[i] } else { 0.0 };
            0.5 * (l + r)
        })
        .collect()
}

/// Default resolution for a shape's underlying manifold.
pub fn default_resolution(shape: &Shape) -> Result<Resolution> {
    with_manifold(shape, |m| Ok(m.default_resolution()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::parse_shape;

    #[test]
    fn circle_profile_small_t() {
        let c = parse_shape("circle(r=1)").unwrap();
        let t = 0.05;
        let got = psi_numeric(&c, 0.3, 0.0, t).unwrap();
        // Exact: 4 arcsin(t/2)
        assert!((got - 4.0 * (t / 2.0).asin()).abs() < 1e-14);
        assert!((psi_numeric(&c, 0.3, 0.0, 2.0).unwrap() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn numeric_jet_matches_curvature() {
        let c = parse_shape("circle(r=1)").unwrap();
        let fit = b_jet_numeric(&c, 0.0, 0.0, 6).unwrap();
        assert!((fit.jet.coeff(1) - 2.0).abs() < 1e-8, "{:?} {:?}", fit.jet, fit.std_errors);
        assert!((fit.jet.coeff(3) - 1.0 / 12.0).abs() < 1e-4 / 12.0);
        let e = parse_shape("ellipse(a=2,b=1)").unwrap();
        let fit = b_jet_numeric(&e, 0.0, 0.0, 6).unwrap();
        assert!((fit.jet.coeff(3) - 4.0 / 12.0).abs() < 1e-4 * 4.0 / 12.0, "{:?}", fit.jet);
    }

    #[test]
    fn domain_jets() {
        let d = match parse_shape("disk(r=1)").unwrap() {
            Shape::Domain(d) => d,
            _ => unreachable!(),
        };
        let j = psi_domain_jet(&d).unwrap();
        assert!((j.coeff(2) - PI * PI).abs() < 1e-12);
        assert!((j.coeff(3) + 2.0 / 3.0 * 2.0 * PI).abs() < 1e-12);
        assert_eq!(j.coeff(4), 0.0);
        let s = psi_rho_jet(3, 1.0, 1.0).unwrap();
        assert!((s.coeff(2) - PI).abs() < 1e-15 && (s.coeff(4) + PI / 4.0).abs() < 1e-15);
    }
}
