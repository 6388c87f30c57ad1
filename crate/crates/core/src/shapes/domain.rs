use crate::error::{Result, RieszError};
use crate::geometry::{MoebiusMap, V3};

use super::curve::{Curve, CurveKind};
use super::surface::{Surface, SurfaceKind};

/// Built-in compact domains.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainKind {
    Disk { r: f64 },
    /// Ball of radius r in Rⁿ; n = 4 is supported through closed forms only.
    Ball { n: u32, r: f64 },
    /// {|x/a|^p + |y/b|^p ≤ 1}, p even.
    Superellipse { a: f64, b: f64, p: u32 },
}

/// Boundary of a domain as a closed manifold.
#[derive(Debug, Clone, PartialEq)]
pub enum Boundary {
    Curve(Curve),
    Surface(Surface),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    kind: DomainKind,
    map: MoebiusMap,
}

impl Domain {
    pub fn new(kind: DomainKind) -> Result<Self> {
        let ok = match &kind {
            DomainKind::Disk { r } => *r > 0.0,
            DomainKind::Ball { n, r } => (2..=4).contains(n) && *r > 0.0,
            DomainKind::Superellipse { a, b, p } => *a > 0.0 && *b > 0.0 && *p >= 2 && p % 2 == 0,
        };
        if !ok {
            return Err(RieszError::InvalidParams(format!("{kind:?}")));
        }
        Ok(Self { kind, map: MoebiusMap::identity() })
    }

    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }

    pub fn map(&self) -> &MoebiusMap {
        &self.map
    }

    pub fn transformed(&self, m: &MoebiusMap) -> Self {
        Self { kind: self.kind.clone(), map: self.map.then(m) }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            DomainKind::Disk { .. } | DomainKind::Superellipse { .. } => 2,
            DomainKind::Ball { n, .. } => n as usize,
        }
    }

    /// Radius if this is an untransformed (or only translated) round ball.
    pub fn ball_radius(&self) -> Option<f64> {
        let rigid = self.map.steps().iter().all(|s| matches!(s, crate::geometry::Elementary::Translation(_)));
        match self.kind {
            DomainKind::Disk { r } | DomainKind::Ball { r, .. } if rigid => Some(r),
            _ => None,
        }
    }

    pub fn boundary(&self) -> Result<Boundary> {
        let b = match self.kind {
            DomainKind::Disk { r } | DomainKind::Ball { n: 2, r } => Boundary::Curve(Curve::new(CurveKind::Circle { r })?),
            DomainKind::Ball { n: 3, r } => Boundary::Surface(Surface::new(SurfaceKind::Ellipsoid { a: r, b: r, c: r })?),
            DomainKind::Superellipse { a, b, p } => Boundary::Curve(Curve::new(CurveKind::Superellipse { a, b, p })?),
            DomainKind::Ball { n, .. } => return Err(RieszError::UnsupportedDimension(n as usize)),
        };
        Ok(match b {
            Boundary::Curve(c) => Boundary::Curve(c.transformed(&self.map)),
            Boundary::Surface(s) => Boundary::Surface(s.transformed(&self.map)),
        })
    }

    /// Negative inside the untransformed domain, zero on its boundary.
    pub fn base_level(&self, x: &V3) -> f64 {
        match self.kind {
            DomainKind::Disk { r } | DomainKind::Ball { r, .. } => x.norm_squared() / (r * r) - 1.0,
            DomainKind::Superellipse { a, b, p } => {
                (x.x / a).powi(p as i32) + (x.y / b).powi(p as i32) - 1.0
            }
        }
    }

    /// Level function of the (possibly transformed) domain.
    pub fn level(&self, x: &V3) -> f64 {
        if self.map.is_identity() {
            self.base_level(x)
        } else {
            self.base_level(&self.map.inverse().apply(x))
        }
    }

    pub fn contains(&self, x: &V3) -> bool {
        self.level(x) < 0.0
    }

    /// Convexity is known for the built-ins and preserved by similarities.
    pub fn is_convex(&self) -> bool {
        self.map.steps().iter().all(|s| !matches!(s, crate::geometry::Elementary::Inversion { .. }))
    }

    /// Base boundary point in direction `u` (unit) from the origin, for
    /// star-shaped parameterization of the untransformed domain.
    pub fn base_radial(&self, u: &V3) -> f64 {
        match self.kind {
            DomainKind::Disk { r } | DomainKind::Ball { r, .. } => r,
            DomainKind::Superellipse { a, b, p } => {
                let pi = p as i32;
                ((u.x / a).powi(pi) + (u.y / b).powi(pi)).powf(-1.0 / p as f64)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_normals_are_outward() {
        let d = Domain::new(DomainKind::Superellipse { a: 1.0, b: 0.6, p: 4 }).unwrap();
        let Boundary::Curve(c) = d.boundary().unwrap() else { panic!() };
        for i in 0..24 {
            let t = 0.26 * i as f64;
            let x = c.point(t) + c.normal(t) * 1e-6;
            assert!(!d.contains(&x));
            assert!(d.contains(&(c.point(t) - c.normal(t) * 1e-6)));
        }
        let inv = MoebiusMap::inversion(V3::new(2.5, 0.3, 0.0), 1.5);
        let d = d.transformed(&inv);
        let Boundary::Curve(c) = d.boundary().unwrap() else { panic!() };
        for i in 0..24 {
            let t = 0.26 * i as f64;
            assert!(!d.contains(&(c.point(t) + c.normal(t) * 1e-6)));
            assert!(d.contains(&(c.point(t) - c.normal(t) * 1e-6)));
        }
    }

    #[test]
    fn ball4_has_no_boundary_chart() {
        let d = Domain::new(DomainKind::Ball { n: 4, r: 1.0 }).unwrap();
        assert_eq!(d.boundary(), Err(RieszError::UnsupportedDimension(4)));
        assert!(Domain::new(DomainKind::Ball { n: 5, r: 1.0 }).is_err());
    }
}
