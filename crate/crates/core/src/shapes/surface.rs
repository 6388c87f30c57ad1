use std::f64::consts::{PI, TAU};

use crate::error::{Result, RieszError};
use crate::geometry::{Jet2, MoebiusMap, V3};

/// Built-in closed surfaces.
///
/// Torus: (u, v) ↦ ((R + r cos v) cos u, (R + r cos v) sin u, r sin v).
/// Ellipsoid: (θ, φ) ↦ (a sin θ cos φ, b sin θ sin φ, c cos θ), poles at θ ∈ {0, π}.
#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceKind {
    Torus { major: f64, minor: f64 },
    Ellipsoid { a: f64, b: f64, c: f64 },
}

/// Point with first and second partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet {
    pub p: V3,
    pub du: V3,
    pub dv: V3,
    pub duu: V3,
    pub duv: V3,
    pub dvv: V3,
}

impl SurfaceJet {
    fn to_jet2(self) -> Jet2 {
        Jet2 { p: self.p, d: [self.du, self.dv], dd: [self.duu, self.duv, self.dvv] }
    }

    fn from_jet2(j: Jet2) -> Self {
        Self { p: j.p, du: j.d[0], dv: j.d[1], duu: j.dd[0], duv: j.dd[1], dvv: j.dd[2] }
    }
}

/// First (E, F, G) and second (L, M, N) fundamental forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl FundamentalForms {
    /// II is taken against the given unit normal with sign convention
    /// L = −⟨x_uu, n⟩, so convex surfaces with outward n have positive curvature.
    pub fn from_jet(j: &SurfaceJet, n: &V3) -> Self {
        Self {
            e: j.du.dot(&j.du),
            f: j.du.dot(&j.dv),
            g: j.dv.dot(&j.dv),
            l: -j.duu.dot(n),
            m: -j.duv.dot(n),
            n: -j.dvv.dot(n),
        }
    }

    pub fn metric_det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    /// Principal curvatures, sorted descending.
    pub fn principal_curvatures(&self) -> Result<(f64, f64)> {
        let det = self.metric_det();
        if !(det > 1e-24) {
            return Err(RieszError::DegenerateParameterization(format!("metric determinant {det:e}")));
        }
        let k = (self.l * self.n - self.m * self.m) / det;
        let h = (self.e * self.n - 2.0 * self.f * self.m + self.g * self.l) / (2.0 * det);
        let disc = (h * h - k).max(0.0).sqrt();
        Ok((h + disc, h - disc))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    kind: SurfaceKind,
    map: MoebiusMap,
}

impl Surface {
    pub fn new(kind: SurfaceKind) -> Result<Self> {
        let ok = match &kind {
            SurfaceKind::Torus { major, minor } => *minor > 0.0 && *major > *minor,
            SurfaceKind::Ellipsoid { a, b, c } => *a > 0.0 && *b > 0.0 && *c > 0.0,
        };
        if !ok {
            return Err(RieszError::InvalidParams(format!("{kind:?}")));
        }
        Ok(Self { kind, map: MoebiusMap::identity() })
    }

    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    pub fn map(&self) -> &MoebiusMap {
        &self.map
    }

    pub fn transformed(&self, m: &MoebiusMap) -> Self {
        Self { kind: self.kind.clone(), map: self.map.then(m) }
    }

    pub fn is_torus(&self) -> bool {
        matches!(self.kind, SurfaceKind::Torus { .. })
    }

    /// Parameter rectangle: torus [0,2π)², ellipsoid [0,π]×[0,2π).
    pub fn param_box(&self) -> ((f64, f64), (f64, f64)) {
        match self.kind {
            SurfaceKind::Torus { .. } => ((0.0, TAU), (0.0, TAU)),
            SurfaceKind::Ellipsoid { .. } => ((0.0, PI), (0.0, TAU)),
        }
    }

    pub fn base_jet(&self, u: f64, v: f64) -> SurfaceJet {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        match self.kind {
            SurfaceKind::Torus { major: rr, minor: r } => {
                let w = rr + r * cv;
                SurfaceJet {
                    p: V3::new(w * cu, w * su, r * sv),
                    du: V3::new(-w * su, w * cu, 0.0),
                    dv: V3::new(-r * sv * cu, -r * sv * su, r * cv),
                    duu: V3::new(-w * cu, -w * su, 0.0),
                    duv: V3::new(r * sv * su, -r * sv * cu, 0.0),
                    dvv: V3::new(-r * cv * cu, -r * cv * su, -r * sv),
                }
            }
            SurfaceKind::Ellipsoid { a, b, c } => SurfaceJet {
                p: V3::new(a * su * cv, b * su * sv, c * cu),
                du: V3::new(a * cu * cv, b * cu * sv, -c * su),
                dv: V3::new(-a * su * sv, b * su * cv, 0.0),
                duu: V3::new(-a * su * cv, -b * su * sv, -c * cu),
                duv: V3::new(-a * cu * sv, b * cu * cv, 0.0),
                dvv: V3::new(-a * su * cv, -b * su * sv, 0.0),
            },
        }
    }

    pub fn jet(&self, u: f64, v: f64) -> SurfaceJet {
        let b = self.base_jet(u, v);
        if self.map.is_identity() {
            b
        } else {
            SurfaceJet::from_jet2(self.map.push_jet(&b.to_jet2()))
        }
    }

    pub fn point(&self, u: f64, v: f64) -> V3 {
        self.map.apply(&self.base_jet(u, v).p)
    }

    /// Outward unit normal of the base surface at a base point.
    pub fn base_normal_at(&self, p: &V3) -> V3 {
        match self.kind {
            SurfaceKind::Torus { major, .. } => {
                let rho = (p.x * p.x + p.y * p.y).sqrt();
                let axis = V3::new(p.x / rho * major, p.y / rho * major, 0.0);
                (p - axis).normalize()
            }
            SurfaceKind::Ellipsoid { a, b, c } => V3::new(p.x / (a * a), p.y / (b * b), p.z / (c * c)).normalize(),
        }
    }

    pub fn normal(&self, u: f64, v: f64) -> V3 {
        let p = self.base_jet(u, v).p;
        self.map.push_normal(&p, &self.base_normal_at(&p))
    }

    pub fn fundamental_forms(&self, u: f64, v: f64) -> FundamentalForms {
        FundamentalForms::from_jet(&self.jet(u, v), &self.normal(u, v))
    }

    pub fn principal_curvatures(&self, u: f64, v: f64) -> Result<(f64, f64)> {
        self.fundamental_forms(u, v).principal_curvatures()
    }

    /// Area element |x_u × x_v|.
    pub fn area_element(&self, u: f64, v: f64) -> f64 {
        let j = self.jet(u, v);
        j.du.cross(&j.dv).norm()
    }

    /// For ellipsoids: the base point a unit vector `q` maps to, i.e. diag(a,b,c)·q.
    pub fn ellipsoid_point(&self, q: &V3) -> Option<V3> {
        match self.kind {
            SurfaceKind::Ellipsoid { a, b, c } => Some(V3::new(a * q.x, b * q.y, c * q.z)),
            _ => None,
        }
    }

    /// Area distortion of q ↦ diag(a,b,c)·q on the unit sphere.
    pub fn ellipsoid_jacobian(&self, q: &V3) -> f64 {
        match self.kind {
            SurfaceKind::Ellipsoid { a, b, c } => {
                a * b * c * ((q.x / a).powi(2) + (q.y / b).powi(2) + (q.z / c).powi(2)).sqrt()
            }
            _ => 1.0,
        }
    }

    pub fn ellipsoid_axes(&self) -> Option<V3> {
        match self.kind {
            SurfaceKind::Ellipsoid { a, b, c } => Some(V3::new(a, b, c)),
            _ => None,
        }
    }

    pub fn sample_points(&self, n: usize) -> Vec<V3> {
        let ((u0, u1), (v0, v1)) = self.param_box();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let u = u0 + (u1 - u0) * (i as f64 + 0.5) / n as f64;
                let v = v0 + (v1 - v0) * j as f64 / n as f64;
                out.push(self.point(u, v));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_is_umbilic() {
        let s = Surface::new(SurfaceKind::Ellipsoid { a: 1.0, b: 1.0, c: 1.0 }).unwrap();
        let (k1, k2) = s.principal_curvatures(0.7, 2.1).unwrap();
        assert!((k1 - 1.0).abs() < 1e-13 && (k2 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn torus_outer_equator() {
        let t = Surface::new(SurfaceKind::Torus { major: 2.0, minor: 1.0 }).unwrap();
        let (k1, k2) = t.principal_curvatures(0.3, 0.0).unwrap();
        assert!((k1 - 1.0).abs() < 1e-13 && (k2 - 1.0 / 3.0).abs() < 1e-13);
        // Inner equator is saddle-shaped: 1/r and −1/(R − r).
        let (k1, k2) = t.principal_curvatures(0.3, PI).unwrap();
        assert!((k1 - 1.0).abs() < 1e-13 && (k2 + 1.0).abs() < 1e-13);
    }

    #[test]
    fn cylinder_patch() {
        // x(u, v) = (r cos u, r sin u, v) with outward normal.
        let r = 0.8;
        let (u, v) = (0.4f64, 1.0);
        let j = SurfaceJet {
            p: V3::new(r * u.cos(), r * u.sin(), v),
            du: V3::new(-r * u.sin(), r * u.cos(), 0.0),
            dv: V3::z(),
            duu: V3::new(-r * u.cos(), -r * u.sin(), 0.0),
            duv: V3::zeros(),
            dvv: V3::zeros(),
        };
        let n = V3::new(u.cos(), u.sin(), 0.0);
        let (k1, k2) = FundamentalForms::from_jet(&j, &n).principal_curvatures().unwrap();
        assert!((k1 - 1.0 / r).abs() < 1e-14 && k2.abs() < 1e-14);
    }

    #[test]
    fn normals_point_outward() {
        let e = Surface::new(SurfaceKind::Ellipsoid { a: 1.2, b: 0.9, c: 0.6 }).unwrap();
        let j = e.jet(1.0, 2.0);
        let n = e.normal(1.0, 2.0);
        assert!(n.dot(&j.du).abs() < 1e-14 && n.dot(&j.dv).abs() < 1e-14);
        assert!(n.dot(&j.p) > 0.0);
    }
}
