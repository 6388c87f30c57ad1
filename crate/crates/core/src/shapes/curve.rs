use std::f64::consts::TAU;

use crate::error::{Result, RieszError};
use crate::geometry::{Jet2, MoebiusMap, V3};

/// Built-in closed curves, parameterized by θ ∈ [0, 2π).
#[derive(Debug, Clone, PartialEq)]
pub enum CurveKind {
    Circle { r: f64 },
    Ellipse { a: f64, b: f64 },
    /// (sin t + 2 sin 2t, cos t − 2 cos 2t, −sin 3t), scaled.
    Trefoil { scale: f64 },
    /// |x/a|^p + |y/b|^p = 1 for even p, in polar form.
    Superellipse { a: f64, b: f64, p: u32 },
}

/// Point and first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub p: V3,
    pub d1: V3,
    pub d2: V3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    kind: CurveKind,
    map: MoebiusMap,
}

const MIN_SPEED: f64 = 1e-12;

/// κ = |c′ × c″| / |c′|³
pub fn curvature_from_derivatives(d1: &V3, d2: &V3) -> Result<f64> {
    let s = d1.norm();
    if s < MIN_SPEED {
        return Err(RieszError::DegenerateParameterization(format!("|c'| = {s:e}")));
    }
    Ok(d1.cross(d2).norm() / (s * s * s))
}

impl Curve {
    pub fn new(kind: CurveKind) -> Result<Self> {
        let ok = match &kind {
            CurveKind::Circle { r } => *r > 0.0,
            CurveKind::Ellipse { a, b } => *a > 0.0 && *b > 0.0,
            CurveKind::Trefoil { scale } => *scale > 0.0,
            CurveKind::Superellipse { a, b, p } => *a > 0.0 && *b > 0.0 && *p >= 2 && p % 2 == 0,
        };
        if !ok {
            return Err(RieszError::InvalidParams(format!("{kind:?}")));
        }
        Ok(Self { kind, map: MoebiusMap::identity() })
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn map(&self) -> &MoebiusMap {
        &self.map
    }

    /// The image of this curve under `m` (applied after the current map).
    pub fn transformed(&self, m: &MoebiusMap) -> Self {
        Self { kind: self.kind.clone(), map: self.map.then(m) }
    }

    pub fn ambient_dim(&self) -> usize {
        let planar = !matches!(self.kind, CurveKind::Trefoil { .. });
        if planar && self.map.is_planar() {
            2
        } else {
            3
        }
    }

    /// Whether the base parameterization runs counterclockwise in the plane.
    pub fn is_planar_base(&self) -> bool {
        !matches!(self.kind, CurveKind::Trefoil { .. })
    }

    pub fn base_jet(&self, t: f64) -> CurveJet {
        let (s, c) = t.sin_cos();
        match self.kind {
            CurveKind::Circle { r } => CurveJet {
                p: V3::new(r * c, r * s, 0.0),
                d1: V3::new(-r * s, r * c, 0.0),
                d2: V3::new(-r * c, -r * s, 0.0),
            },
            CurveKind::Ellipse { a, b } => CurveJet {
                p: V3::new(a * c, b * s, 0.0),
                d1: V3::new(-a * s, b * c, 0.0),
                d2: V3::new(-a * c, -b * s, 0.0),
            },
            CurveKind::Trefoil { scale: k } => {
                let (s2, c2) = (2.0 * t).sin_cos();
                let (s3, c3) = (3.0 * t).sin_cos();
                CurveJet {
                    p: V3::new(s + 2.0 * s2, c - 2.0 * c2, -s3) * k,
                    d1: V3::new(c + 4.0 * c2, -s + 4.0 * s2, -3.0 * c3) * k,
                    d2: V3::new(-s - 8.0 * s2, -c + 8.0 * c2, 9.0 * s3) * k,
                }
            }
            CurveKind::Superellipse { a, b, p } => {
                let pf = p as f64;
                let pi = p as i32;
                let (ap, bp) = (a.powi(pi), b.powi(pi));
                let g = c.powi(pi) / ap + s.powi(pi) / bp;
                let g1 = pf * (-c.powi(pi - 1) * s / ap + s.powi(pi - 1) * c / bp);
                let g2 = pf
                    * (((pf - 1.0) * c.powi(pi - 2) * s * s - c.powi(pi)) / ap
                        + ((pf - 1.0) * s.powi(pi - 2) * c * c - s.powi(pi)) / bp);
                let e = -1.0 / pf;
                let r = g.powf(e);
                let r1 = e * g.powf(e - 1.0) * g1;
                let r2 = e * ((e - 1.0) * g.powf(e - 2.0) * g1 * g1 + g.powf(e - 1.0) * g2);
                CurveJet {
                    p: V3::new(r * c, r * s, 0.0),
                    d1: V3::new(r1 * c - r * s, r1 * s + r * c, 0.0),
                    d2: V3::new(r2 * c - 2.0 * r1 * s - r * c, r2 * s + 2.0 * r1 * c - r * s, 0.0),
                }
            }
        }
    }

    pub fn jet(&self, t: f64) -> CurveJet {
        let b = self.base_jet(t);
        if self.map.is_identity() {
            return b;
        }
        let j = self.map.push_jet(&Jet2 { p: b.p, d: [b.d1, V3::zeros()], dd: [b.d2, V3::zeros(), V3::zeros()] });
        CurveJet { p: j.p, d1: j.d[0], d2: j.dd[0] }
    }

    pub fn point(&self, t: f64) -> V3 {
        let p = self.base_jet(t).p;
        self.map.apply(&p)
    }

    /// Derivative of the given order (1..=3); the third is a fourth-order
    /// central difference of the analytic second derivative.
    pub fn derivative(&self, t: f64, order: usize) -> V3 {
        match order {
            0 => self.point(t),
            1 => self.jet(t).d1,
            2 => self.jet(t).d2,
            3 => {
                let h = 1e-3;
                let f = |s: f64| self.jet(t + s).d2;
                (f(-2.0 * h) - f(-h) * 8.0 + f(h) * 8.0 - f(2.0 * h)) / (12.0 * h)
            }
            _ => panic!("derivative order {order} not available"),
        }
    }

    pub fn speed(&self, t: f64) -> f64 {
        self.jet(t).d1.norm()
    }

    pub fn curvature(&self, t: f64) -> Result<f64> {
        let j = self.jet(t);
        curvature_from_derivatives(&j.d1, &j.d2)
    }

    /// Outward unit normal in the plane (for boundaries of planar domains).
    pub fn normal(&self, t: f64) -> V3 {
        let b = self.base_jet(t);
        let n = V3::new(b.d1.y, -b.d1.x, 0.0).normalize();
        self.map.push_normal(&b.p, &n)
    }

    /// Conformal factor of the map at the base point θ.
    pub fn stretch(&self, t: f64) -> f64 {
        self.map.stretch(&self.base_jet(t).p)
    }

    pub fn sample_points(&self, n: usize) -> Vec<V3> {
        (0..n).map(|i| self.point(TAU * i as f64 / n as f64)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_and_ellipse_curvature() {
        let c = Curve::new(CurveKind::Circle { r: 2.5 }).unwrap();
        for t in [0.0, 0.7, 3.0] {
            assert!((c.curvature(t).unwrap() - 0.4).abs() < 1e-14);
        }
        let e = Curve::new(CurveKind::Ellipse { a: 2.0, b: 1.0 }).unwrap();
        assert!((e.curvature(0.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((e.curvature(std::f64::consts::FRAC_PI_2).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn straight_segment_has_zero_curvature() {
        let k = curvature_from_derivatives(&V3::new(1.0, 2.0, 0.5), &V3::new(2.0, 4.0, 1.0)).unwrap();
        assert!(k.abs() < 1e-15);
        assert!(curvature_from_derivatives(&V3::zeros(), &V3::x()).is_err());
    }

    #[test]
    fn superellipse_p2_is_an_ellipse() {
        let s = Curve::new(CurveKind::Superellipse { a: 2.0, b: 1.0, p: 2 }).unwrap();
        let p = s.point(0.0);
        assert!((p - V3::new(2.0, 0.0, 0.0)).norm() < 1e-14);
        assert!((s.curvature(0.0).unwrap() - 2.0).abs() < 1e-12);
        assert!(Curve::new(CurveKind::Superellipse { a: 1.0, b: 1.0, p: 3 }).is_err());
    }

    #[test]
    fn normals_point_outward() {
        let e = Curve::new(CurveKind::Superellipse { a: 1.0, b: 0.7, p: 4 }).unwrap();
        for i in 0..16 {
            let t = 0.39 * i as f64;
            assert!(e.normal(t).dot(&e.point(t)) > 0.0);
        }
    }
}
