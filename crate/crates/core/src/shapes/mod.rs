//! Parametric closed curves, closed surfaces and compact domains.

mod curve;
mod domain;
mod grammar;
mod surface;

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt;

pub use curve::{curvature_from_derivatives, Curve, CurveJet, CurveKind};
pub use domain::{Boundary, Domain, DomainKind};
pub use grammar::{parse_shape, parse_spec, ShapeSpec};
pub use surface::{FundamentalForms, Surface, SurfaceJet, SurfaceKind};

use crate::error::{Result, RieszError};
use crate::geometry::{MoebiusMap, V3};
use crate::quad;

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Curve(Curve),
    Surface(Surface),
    Domain(Domain),
}

impl Shape {
    /// Dimension m of the shape itself (n for domains).
    pub fn dim(&self) -> usize {
        match self {
            Shape::Curve(_) => 1,
            Shape::Surface(_) => 2,
            Shape::Domain(d) => d.dim(),
        }
    }

    pub fn map(&self) -> &MoebiusMap {
        match self {
            Shape::Curve(c) => c.map(),
            Shape::Surface(s) => s.map(),
            Shape::Domain(d) => d.map(),
        }
    }

    pub fn transformed(&self, m: &MoebiusMap) -> Shape {
        match self {
            Shape::Curve(c) => Shape::Curve(c.transformed(m)),
            Shape::Surface(s) => Shape::Surface(s.transformed(m)),
            Shape::Domain(d) => Shape::Domain(d.transformed(m)),
        }
    }

    pub fn is_closed_manifold(&self) -> bool {
        !matches!(self, Shape::Domain(_))
    }

    /// Points covering the shape (the boundary for domains).
    pub fn sample_points(&self) -> Result<Vec<V3>> {
        Ok(match self {
            Shape::Curve(c) => c.sample_points(512),
            Shape::Surface(s) => s.sample_points(48),
            Shape::Domain(d) => match d.boundary()? {
                Boundary::Curve(c) => c.sample_points(512),
                Boundary::Surface(s) => s.sample_points(48),
            },
        })
    }

    /// Upper bound on the diameter: the sampled diameter plus a margin.
    pub fn diameter_bound(&self) -> Result<f64> {
        if let Shape::Domain(d) = self {
            if d.dim() == 4 {
                return Ok(2.0 * d.ball_radius().unwrap_or(f64::NAN));
            }
        }
        let pts = self.sample_points()?;
        let mut best: f64 = 0.0;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                best = best.max((a - b).norm_squared());
            }
        }
        Ok(best.sqrt() * 1.02)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self {
            Shape::Curve(c) => match c.kind() {
                CurveKind::Circle { r } => format!("circle(r={r})"),
                CurveKind::Ellipse { a, b } => format!("ellipse(a={a},b={b})"),
                CurveKind::Trefoil { scale } => format!("trefoil(scale={scale})"),
                CurveKind::Superellipse { a, b, p } => format!("superellipse(a={a},b={b},p={p})"),
            },
            Shape::Surface(s) => match s.kind() {
                SurfaceKind::Torus { major, minor } => format!("torus(R={major},r={minor})"),
                SurfaceKind::Ellipsoid { a, b, c } if a == b && b == c => format!("sphere(r={a})"),
                SurfaceKind::Ellipsoid { a, b, c } => format!("ellipsoid(a={a},b={b},c={c})"),
            },
            Shape::Domain(d) => match d.kind() {
                DomainKind::Disk { r } => format!("disk(r={r})"),
                DomainKind::Ball { n, r } => format!("ball(n={n},r={r})"),
                DomainKind::Superellipse { a, b, p } => format!("superellipse-domain(a={a},b={b},p={p})"),
            },
        };
        write!(f, "{base}")?;
        if !self.map().is_identity() {
            write!(f, " mapped by {} step(s)", self.map().steps().len())?;
        }
        Ok(())
    }
}

/// Names accepted by [`builtin_shape`].
pub const BUILTIN_NAMES: [&str; 10] = [
    "circle",
    "ellipse",
    "trefoil",
    "torus",
    "sphere",
    "ellipsoid",
    "disk",
    "ball",
    "superellipse-domain",
    "superellipse",
];

fn take(params: &BTreeMap<String, f64>, allowed: &[(&str, f64)]) -> Result<Vec<f64>> {
    for k in params.keys() {
        if !allowed.iter().any(|(a, _)| a == k) {
            let names: Vec<&str> = allowed.iter().map(|a| a.0).collect();
            return Err(RieszError::InvalidParams(format!("unknown parameter '{k}' (expected one of {names:?})")));
        }
    }
    Ok(allowed.iter().map(|(k, d)| params.get(*k).copied().unwrap_or(*d)).collect())
}

fn as_even(p: f64) -> Result<u32> {
    if p.fract() != 0.0 || p < 2.0 || p as u32 % 2 != 0 {
        return Err(RieszError::InvalidParams(format!("exponent p must be an even integer >= 2, got {p}")));
    }
    Ok(p as u32)
}

/// Construct a built-in shape; missing parameters take documented defaults.
pub fn builtin_shape(name: &str, params: &BTreeMap<String, f64>) -> Result<Shape> {
    Ok(match name {
        "circle" => {
            let v = take(params, &[("r", 1.0)])?;
            Shape::Curve(Curve::new(CurveKind::Circle { r: v[0] })?)
        }
        "ellipse" => {
            let v = take(params, &[("a", 2.0), ("b", 1.0)])?;
            Shape::Curve(Curve::new(CurveKind::Ellipse { a: v[0], b: v[1] })?)
        }
        "trefoil" => {
            let v = take(params, &[("scale", 1.0)])?;
            Shape::Curve(Curve::new(CurveKind::Trefoil { scale: v[0] })?)
        }
        "superellipse" => {
            let v = take(params, &[("a", 1.0), ("b", 1.0), ("p", 4.0)])?;
            Shape::Curve(Curve::new(CurveKind::Superellipse { a: v[0], b: v[1], p: as_even(v[2])? })?)
        }
        "torus" => {
            let v = take(params, &[("R", 2.0), ("r", 0.5)])?;
            Shape::Surface(Surface::new(SurfaceKind::Torus { major: v[0], minor: v[1] })?)
        }
        "sphere" => {
            let v = take(params, &[("r", 1.0)])?;
            Shape::Surface(Surface::new(SurfaceKind::Ellipsoid { a: v[0], b: v[0], c: v[0] })?)
        }
        "ellipsoid" => {
            let v = take(params, &[("a", 1.0), ("b", 1.0), ("c", 1.0)])?;
            Shape::Surface(Surface::new(SurfaceKind::Ellipsoid { a: v[0], b: v[1], c: v[2] })?)
        }
        "disk" => {
            let v = take(params, &[("r", 1.0)])?;
            Shape::Domain(Domain::new(DomainKind::Disk { r: v[0] })?)
        }
        "ball" => {
            let v = take(params, &[("n", 3.0), ("r", 1.0)])?;
            if v[0].fract() != 0.0 || !(2.0..=4.0).contains(&v[0]) {
                return Err(RieszError::InvalidParams(format!("ball dimension n must be 2, 3 or 4, got {}", v[0])));
            }
            let n = v[0] as u32;
            if n == 2 {
                Shape::Domain(Domain::new(DomainKind::Disk { r: v[1] })?)
            } else {
                Shape::Domain(Domain::new(DomainKind::Ball { n, r: v[1] })?)
            }
        }
        "superellipse-domain" => {
            let v = take(params, &[("a", 1.0), ("b", 1.0), ("p", 4.0)])?;
            Shape::Domain(Domain::new(DomainKind::Superellipse { a: v[0], b: v[1], p: as_even(v[2])? })?)
        }
        other => return Err(RieszError::UnknownShape(other.to_string())),
    })
}

/// Quadrature nodes (θ, weight) for a closed curve.
pub fn curve_rule(n: usize) -> Vec<(f64, f64)> {
    let r = quad::periodic_trapezoid(n, 0.0, TAU);
    r.nodes.into_iter().zip(r.weights).collect()
}

/// Quadrature nodes (u, v, parameter weight) for a closed surface; the
/// area element is not included.
pub fn surface_rule(s: &Surface, n: usize) -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    if s.is_torus() {
        let r = quad::periodic_trapezoid(n, 0.0, TAU);
        for (&u, &wu) in r.nodes.iter().zip(&r.weights) {
            for (&v, &wv) in r.nodes.iter().zip(&r.weights) {
                out.push((u, v, wu * wv));
            }
        }
    } else {
        let th = quad::composite(0.0, PI, n.div_ceil(16).max(1), n.min(16).max(1));
        let ph = quad::periodic_trapezoid(2 * n, 0.0, TAU);
        for (&u, &wu) in th.nodes.iter().zip(&th.weights) {
            for (&v, &wv) in ph.nodes.iter().zip(&ph.weights) {
                out.push((u, v, wu * wv));
            }
        }
    }
    out
}

/// Integrated curvature quantities entering the residue formulas.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CurvatureIntegrals {
    /// Length (curves), area (surfaces) or boundary measure (domains).
    pub measure: f64,
    /// Enclosed volume (domains).
    pub volume: Option<f64>,
    /// ∫κ² (curves and planar boundaries).
    pub integral_kappa_sq: Option<f64>,
    /// ∫(κ₁ − κ₂)² (surfaces).
    pub integral_umbilic_defect: Option<f64>,
    /// ∫(3H² − K), H = (κ₁ + κ₂)/2, K = κ₁κ₂ (boundaries of 3-domains).
    pub integral_3h2_minus_k: Option<f64>,
    /// ∫(27H² − 4K) for the boundary of the 4-ball.
    pub integral_27h2_minus_4k: Option<f64>,
    /// ∫ Gauss curvature (surfaces), for the Gauss–Bonnet check.
    pub integral_gauss: Option<f64>,
    /// Largest change observed under grid doubling.
    pub error_estimate: f64,
}

#[derive(Default, Clone, Copy)]
struct Raw {
    measure: f64,
    vol: f64,
    k2: f64,
    umb: f64,
    h3k: f64,
    gauss: f64,
}

fn raw_curve(c: &Curve, n: usize) -> Result<Raw> {
    let mut r = Raw::default();
    for (t, w) in curve_rule(n) {
        let j = c.jet(t);
        let ds = j.d1.norm() * w;
        let k = curvature_from_derivatives(&j.d1, &j.d2)?;
        r.measure += ds;
        r.k2 += k * k * ds;
        if c.is_planar_base() {
            r.vol += 0.5 * j.p.dot(&c.normal(t)) * ds;
        }
    }
    Ok(r)
}

fn raw_surface(s: &Surface, n: usize) -> Result<Raw> {
    let mut r = Raw::default();
    for (u, v, w) in surface_rule(s, n) {
        let j = s.jet(u, v);
        let nrm = s.normal(u, v);
        let da = j.du.cross(&j.dv).norm() * w;
        if da == 0.0 {
            continue;
        }
        let (k1, k2) = FundamentalForms::from_jet(&j, &nrm).principal_curvatures()?;
        let h = 0.5 * (k1 + k2);
        r.measure += da;
        r.vol += j.p.dot(&nrm) * da / 3.0;
        r.umb += (k1 - k2).powi(2) * da;
        r.h3k += (3.0 * h * h - k1 * k2) * da;
        r.gauss += k1 * k2 * da;
    }
    Ok(r)
}

fn converge(base: usize, f: impl Fn(usize) -> Result<Raw>) -> Result<(Raw, f64)> {
    let mut n = base;
    let mut prev = f(n)?;
    for _ in 0..4 {
        n *= 2;
        let cur = f(n)?;
        let pairs = [
            (cur.measure, prev.measure),
            (cur.vol, prev.vol),
            (cur.k2, prev.k2),
            (cur.umb, prev.umb),
            (cur.h3k, prev.h3k),
            (cur.gauss, prev.gauss),
        ];
        let scale = cur.measure.abs().max(cur.k2.abs()).max(cur.h3k.abs()).max(1e-300);
        let change = pairs.iter().map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / scale;
        if change < 1e-11 {
            return Ok((cur, change * scale));
        }
        prev = cur;
    }
    Err(RieszError::QuadratureNotConverged { what: "curvature integrals".into(), change: f64::NAN, tol: 1e-11 })
}

/// Curvature integrals by periodic trapezoid / Gauss–Legendre quadrature,
/// doubled until stable.
pub fn curvature_integrals(shape: &Shape) -> Result<CurvatureIntegrals> {
    match shape {
        Shape::Curve(c) => {
            let (r, err) = converge(256, |n| raw_curve(c, n))?;
            Ok(CurvatureIntegrals {
                measure: r.measure,
                integral_kappa_sq: Some(r.k2),
                error_estimate: err,
                ..Default::default()
            })
        }
        Shape::Surface(s) => {
            let (r, err) = converge(32, |n| raw_surface(s, n))?;
            Ok(CurvatureIntegrals {
                measure: r.measure,
                integral_umbilic_defect: Some(r.umb),
                integral_gauss: Some(r.gauss),
                error_estimate: err,
                ..Default::default()
            })
        }
        Shape::Domain(d) if d.dim() == 4 => {
            let r = d.ball_radius().ok_or(RieszError::UnsupportedDimension(4))?;
            Ok(CurvatureIntegrals {
                measure: 2.0 * PI * PI * r.powi(3),
                volume: Some(0.5 * PI * PI * r.powi(4)),
                integral_27h2_minus_4k: Some(30.0 * PI * PI * r),
                ..Default::default()
            })
        }
        Shape::Domain(d) => match d.boundary()? {
            Boundary::Curve(c) => {
                let (r, err) = converge(256, |n| raw_curve(&c, n))?;
                Ok(CurvatureIntegrals {
                    measure: r.measure,
                    volume: Some(r.vol),
                    integral_kappa_sq: Some(r.k2),
                    error_estimate: err,
                    ..Default::default()
                })
            }
            Boundary::Surface(s) => {
                let (r, err) = converge(32, |n| raw_surface(&s, n))?;
                Ok(CurvatureIntegrals {
                    measure: r.measure,
                    volume: Some(r.vol),
                    integral_3h2_minus_k: Some(r.h3k),
                    integral_gauss: Some(r.gauss),
                    error_estimate: err,
                    ..Default::default()
                })
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: &str) -> Shape {
        parse_shape(s).unwrap()
    }

    #[test]
    fn closed_form_measures() {
        let c = curvature_integrals(&shape("circle(r=1.5)")).unwrap();
        assert!((c.measure - 3.0 * PI).abs() < 1e-12);
        assert!((c.integral_kappa_sq.unwrap() - TAU / 1.5).abs() < 1e-12);
        let s = curvature_integrals(&shape("sphere(r=2)")).unwrap();
        assert!((s.measure - 16.0 * PI).abs() < 1e-10 * 16.0 * PI);
        assert!(s.integral_umbilic_defect.unwrap().abs() < 1e-10);
        let b = curvature_integrals(&shape("ball(n=3,r=1)")).unwrap();
        assert!((b.integral_3h2_minus_k.unwrap() - 8.0 * PI).abs() < 1e-10);
        assert!((b.volume.unwrap() - 4.0 * PI / 3.0).abs() < 1e-10);
        let d = curvature_integrals(&shape("disk(r=1)")).unwrap();
        assert!((d.volume.unwrap() - PI).abs() < 1e-12);
    }

    #[test]
    fn gauss_bonnet() {
        for (s, chi) in [("torus(R=2,r=0.5)", 0.0), ("ellipsoid(a=1.2,b=1,c=0.7)", 2.0), ("sphere(r=1)", 2.0)] {
            let g = curvature_integrals(&shape(s)).unwrap().integral_gauss.unwrap();
            assert!((g - TAU * chi).abs() < 1e-6 * TAU.max(g.abs()), "{s}: {g}");
        }
    }

    #[test]
    fn unknown_names_and_params() {
        assert_eq!(builtin_shape("cube", &BTreeMap::new()), Err(RieszError::UnknownShape("cube".into())));
        assert!(matches!(parse_shape("circle(q=1)"), Err(RieszError::InvalidParams(_))));
        assert!(matches!(parse_shape("circle(r=-1)"), Err(RieszError::InvalidParams(_))));
        assert!(matches!(parse_shape("ball(n=3.5)"), Err(RieszError::InvalidParams(_))));
    }
}
