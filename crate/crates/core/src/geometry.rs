//! Möbius maps of R³ and their derivatives, used to push shapes forward.

use nalgebra::Vector3;

pub type V3 = Vector3<f64>;

/// One elementary conformal map.
#[derive(Debug, Clone, PartialEq)]
pub enum Elementary {
    Translation(V3),
    /// x ↦ c + ratio·(x − c), ratio > 0.
    Homothety { center: V3, ratio: f64 },
    /// x ↦ c + R²(x − c)/|x − c|².
    Inversion { center: V3, radius: f64 },
}

impl Elementary {
    pub fn apply(&self, p: &V3) -> V3 {
        match self {
            Elementary::Translation(v) => p + v,
            Elementary::Homothety { center, ratio } => center + (p - center) * *ratio,
            Elementary::Inversion { center, radius } => {
                let d = p - center;
                center + d * (radius * radius / d.norm_squared())
            }
        }
    }

    /// DT(p)·v
    pub fn push(&self, p: &V3, v: &V3) -> V3 {
        match self {
            Elementary::Translation(_) => *v,
            Elementary::Homothety { ratio, .. } => v * *ratio,
            Elementary::Inversion { center, radius } => {
                let d = p - center;
                let d2 = d.norm_squared();
                (v - d * (2.0 * d.dot(v) / d2)) * (radius * radius / d2)
            }
        }
    }

    /// D²T(p)[u, v]
    pub fn push2(&self, p: &V3, u: &V3, v: &V3) -> V3 {
        match self {
            Elementary::Inversion { center, radius } => {
                let d = p - center;
                let d2 = d.norm_squared();
                let (du, dv, uv) = (d.dot(u), d.dot(v), u.dot(v));
                let r2 = radius * radius;
                (u * (-2.0 * dv) + v * (-2.0 * du) + d * (-2.0 * uv + 8.0 * du * dv / d2)) * (r2 / (d2 * d2))
            }
            _ => V3::zeros(),
        }
    }

    /// Conformal factor λ with |DT v| = λ|v|.
    pub fn stretch(&self, p: &V3) -> f64 {
        match self {
            Elementary::Translation(_) => 1.0,
            Elementary::Homothety { ratio, .. } => *ratio,
            Elementary::Inversion { center, radius } => radius * radius / (p - center).norm_squared(),
        }
    }

    /// Image of a unit normal at p (the differential is a scaled reflection).
    pub fn push_normal(&self, p: &V3, n: &V3) -> V3 {
        match self {
            Elementary::Inversion { center, .. } => {
                let d = (p - center).normalize();
                n - d * (2.0 * n.dot(&d))
            }
            _ => *n,
        }
    }

    pub fn inverse(&self) -> Elementary {
        match self {
            Elementary::Translation(v) => Elementary::Translation(-v),
            Elementary::Homothety { center, ratio } => Elementary::Homothety { center: *center, ratio: 1.0 / ratio },
            inv @ Elementary::Inversion { .. } => inv.clone(),
        }
    }

    pub fn center(&self) -> Option<V3> {
        match self {
            Elementary::Inversion { center, .. } => Some(*center),
            _ => None,
        }
    }

    fn planar(&self) -> bool {
        match self {
            Elementary::Translation(v) => v.z == 0.0,
            Elementary::Homothety { center, .. } | Elementary::Inversion { center, .. } => center.z == 0.0,
        }
    }
}

/// What kind of map a [`MoebiusMap`] is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Identity,
    Translation,
    Homothety,
    Inversion,
    Composition,
}

/// A composition of elementary maps, applied left to right.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MoebiusMap {
    steps: Vec<Elementary>,
}

/// Second-order jet of a point along up to two parameter directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub p: V3,
    pub d: [V3; 2],
    /// d²/dsᵢdsⱼ for (i, j) = (0,0), (0,1), (1,1).
    pub dd: [V3; 3],
}

impl MoebiusMap {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn translation(v: V3) -> Self {
        Self { steps: vec![Elementary::Translation(v)] }
    }

    pub fn homothety(center: V3, ratio: f64) -> Self {
        assert!(ratio > 0.0, "homothety ratio must be positive");
        Self { steps: vec![Elementary::Homothety { center, ratio }] }
    }

    pub fn inversion(center: V3, radius: f64) -> Self {
        assert!(radius > 0.0, "inversion radius must be positive");
        Self { steps: vec![Elementary::Inversion { center, radius }] }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &MoebiusMap) -> Self {
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        Self { steps }
    }

    pub fn steps(&self) -> &[Elementary] {
        &self.steps
    }

    pub fn kind(&self) -> MapKind {
        match self.steps.as_slice() {
            [] => MapKind::Identity,
            [Elementary::Translation(_)] => MapKind::Translation,
            [Elementary::Homothety { .. }] => MapKind::Homothety,
            [Elementary::Inversion { .. }] => MapKind::Inversion,
            _ => MapKind::Composition,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    /// Whether the map sends the plane z = 0 to itself.
    pub fn is_planar(&self) -> bool {
        self.steps.iter().all(Elementary::planar)
    }

    pub fn inverse(&self) -> Self {
        Self { steps: self.steps.iter().rev().map(Elementary::inverse).collect() }
    }

    pub fn apply(&self, p: &V3) -> V3 {
        self.steps.iter().fold(*p, |q, s| s.apply(&q))
    }

    /// Product of the conformal factors along the composition.
    pub fn stretch(&self, p: &V3) -> f64 {
        let mut q = *p;
        let mut lam = 1.0;
        for s in &self.steps {
            lam *= s.stretch(&q);
            q = s.apply(&q);
        }
        lam
    }

    pub fn push(&self, p: &V3, v: &V3) -> V3 {
        let mut q = *p;
        let mut w = *v;
        for s in &self.steps {
            w = s.push(&q, &w);
            q = s.apply(&q);
        }
        w
    }

    pub fn push_normal(&self, p: &V3, n: &V3) -> V3 {
        let mut q = *p;
        let mut m = *n;
        for s in &self.steps {
            m = s.push_normal(&q, &m);
            q = s.apply(&q);
        }
        m
    }

    /// Push a second-order jet forward by the chain rule.
    pub fn push_jet(&self, jet: &Jet2) -> Jet2 {
        let mut j = *jet;
        for s in &self.steps {
            if let Elementary::Translation(v) = s {
                j.p += v;
                continue;
            }
            let p = j.p;
            let d = [s.push(&p, &j.d[0]), s.push(&p, &j.d[1])];
            let dd = [
                s.push2(&p, &j.d[0], &j.d[0]) + s.push(&p, &j.dd[0]),
                s.push2(&p, &j.d[0], &j.d[1]) + s.push(&p, &j.dd[1]),
                s.push2(&p, &j.d[1], &j.d[1]) + s.push(&p, &j.dd[2]),
            ];
            j = Jet2 { p: s.apply(&p), d, dd };
        }
        j
    }

    /// Inversion centers of the composition, in the coordinates where each
    /// inversion acts.
    pub fn inversion_centers(&self) -> Vec<(usize, V3)> {
        self.steps.iter().enumerate().filter_map(|(i, s)| s.center().map(|c| (i, c))).collect()
    }

    /// The first `n` steps as a map.
    pub fn prefix(&self, n: usize) -> Self {
        Self { steps: self.steps[..n].to_vec() }
    }

    /// Apply only the first `n` steps.
    pub fn apply_prefix(&self, n: usize, p: &V3) -> V3 {
        self.steps[..n].iter().fold(*p, |q, s| s.apply(&q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(m: &MoebiusMap, p: V3, u: V3, v: V3) {
        let h = 1e-4;
        let dt = (m.apply(&(p + u * h)) - m.apply(&(p - u * h))) / (2.0 * h);
        assert!((dt - m.push(&p, &u)).norm() < 1e-7);
        let jet = Jet2 { p, d: [u, v], dd: [V3::zeros(); 3] };
        let out = m.push_jet(&jet);
        let f = |a: f64, b: f64| m.apply(&(p + u * a + v * b));
        let fuv = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
        let fuu = (f(h, 0.0) - 2.0 * f(0.0, 0.0) + f(-h, 0.0)) / (h * h);
        assert!((out.dd[1] - fuv).norm() < 1e-5, "{:?} vs {:?}", out.dd[1], fuv);
        assert!((out.dd[0] - fuu).norm() < 1e-5);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let inv = MoebiusMap::inversion(V3::new(0.3, -2.0, 0.5), 1.3);
        let comp = inv.then(&MoebiusMap::homothety(V3::new(1.0, 0.0, 0.0), 0.7)).then(&MoebiusMap::translation(V3::new(0.0, 1.0, 2.0)));
        for m in [inv, comp] {
            fd_check(&m, V3::new(1.0, 0.5, -0.2), V3::new(0.3, 1.0, 0.1), V3::new(-0.5, 0.2, 0.9));
        }
    }

    #[test]
    fn inversion_is_an_involution_with_conformal_identity() {
        let m = MoebiusMap::inversion(V3::zeros(), 1.0);
        let x = V3::new(0.4, 1.2, -0.7);
        let y = V3::new(-1.1, 0.3, 0.8);
        assert!((m.apply(&m.apply(&x)) - x).norm() < 1e-15);
        let lhs = (m.apply(&x) - m.apply(&y)).norm() * x.norm() * y.norm();
        assert!((lhs - (x - y).norm()).abs() < 1e-14);
        let v = V3::new(0.2, -0.4, 1.0);
        assert!((m.push(&x, &v).norm() - m.stretch(&x) * v.norm()).abs() < 1e-14);
        assert_eq!(m.inverse(), m);
    }
}
