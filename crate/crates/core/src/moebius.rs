//! Möbius transformations acting on shapes, and the invariance harness.

use num_complex::Complex64 as C64;

use crate::closed_energy::{EnergyOptions, EnergyReport};
pub use crate::geometry::{Elementary, MapKind, MoebiusMap, V3};
use crate::error::{Result, RieszError};
use crate::regularize::cpow;
use crate::shapes::{parse_spec, Shape};

/// Inversion centers must stay this fraction of the shape's diameter away
/// from it.
pub const INVERSION_MARGIN: f64 = 0.3;

/// Defects below this multiple of the root-sum-square error estimate pass.
pub const INVARIANCE_FACTOR: f64 = 3.0;

/// Push a shape forward by `map`. Inversion centers must lie at distance
/// ≥ 0.3·diameter from the (intermediate image of the) shape, and outside
/// it for domains, so the image stays compact.
pub fn transform_shape(map: &MoebiusMap, shape: &Shape) -> Result<Shape> {
    if let Shape::Domain(d) = shape {
        if d.dim() == 2 && !map.is_planar() {
            return Err(RieszError::InvalidArgument("planar domains need maps that preserve the plane".into()));
        }
        if d.dim() == 4 && !map.steps().iter().all(|s| matches!(s, Elementary::Translation(_))) {
            return Err(RieszError::UnsupportedDimension(4));
        }
    }
    let centers = map.inversion_centers();
    if !centers.is_empty() {
        let pts = shape.sample_points()?;
        for (i, c) in centers {
            let img: Vec<V3> = pts.iter().map(|p| map.apply_prefix(i, p)).collect();
            let dist = img.iter().map(|p| (p - c).norm()).fold(f64::INFINITY, f64::min);
            let mut diam: f64 = 0.0;
            for (a, p) in img.iter().enumerate() {
                for q in &img[a + 1..] {
                    diam = diam.max((p - q).norm());
                }
            }
            let margin = INVERSION_MARGIN * diam;
            if dist < margin {
                return Err(RieszError::CenterTooClose { distance: dist, margin });
            }
            if let Shape::Domain(d) = shape {
                if d.transformed(&map.prefix(i)).contains(&c) {
                    return Err(RieszError::CenterTooClose { distance: 0.0, margin });
                }
            }
        }
    }
    Ok(shape.transformed(map))
}

/// Outcome of an invariance test.
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub z: C64,
    pub before: EnergyReport,
    pub after: EnergyReport,
    /// |E_S(z) − E_{T(S)}(z)|.
    pub defect: f64,
    /// 3 × RSS of the two error estimates.
    pub tolerance: f64,
    pub pass: bool,
    /// For a pure homothety with ratio c: c^{2m+z}(E + log c·R) − E.
    pub predicted_defect: Option<C64>,
}

pub fn invariance_check(shape: &Shape, z: C64, map: &MoebiusMap) -> Result<InvarianceReport> {
    invariance_check_with(shape, z, map, &EnergyOptions::default())
}

pub fn invariance_check_with(shape: &Shape, z: C64, map: &MoebiusMap, opts: &EnergyOptions) -> Result<InvarianceReport> {
    let image = transform_shape(map, shape)?;
    let before = crate::energy(shape, z, opts)?;
    let after = crate::energy(&image, z, opts)?;
    let defect = (after.value - before.value).norm();
    let tolerance = INVARIANCE_FACTOR * (before.error_estimate.powi(2) + after.error_estimate.powi(2)).sqrt();
    let predicted_defect = match map.steps() {
        [Elementary::Homothety { ratio, .. }] => {
            let m = shape.dim() as f64;
            let c = *ratio;
            Some(cpow(c, z + 2.0 * m) * (before.value + c.ln() * before.residue_at_z) - before.value)
        }
        _ => None,
    };
    Ok(InvarianceReport { z, pass: defect < tolerance, before, after, defect, tolerance, predicted_defect })
}

/// Parse `name(k=v,...)` steps separated by `;`, applied left to right:
/// `translation(x=,y=,z=)`, `homothety(c=,cx=,cy=,cz=)`,
/// `inversion(cx=,cy=,cz=,r=)`, `identity`. Missing keys default to 0
/// (c and r to 1).
pub fn parse_map(text: &str) -> Result<MoebiusMap> {
    let mut map = MoebiusMap::identity();
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let spec = parse_spec(part)?;
        let get = |k: &str, d: f64| spec.params.get(k).copied().unwrap_or(d);
        let known: &[&str] = match spec.name.as_str() {
            "translation" => &["x", "y", "z"],
            "homothety" => &["c", "cx", "cy", "cz"],
            "inversion" => &["cx", "cy", "cz", "r"],
            "identity" => &[],
            other => return Err(RieszError::InvalidArgument(format!("unknown map '{other}'"))),
        };
        if let Some(k) = spec.params.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(RieszError::InvalidParams(format!("{}: unknown parameter '{k}'", spec.name)));
        }
        let step = match spec.name.as_str() {
            "translation" => MoebiusMap::translation(V3::new(get("x", 0.0), get("y", 0.0), get("z", 0.0))),
            "homothety" => {
                let c = get("c", 1.0);
                if !(c > 0.0) {
                    return Err(RieszError::InvalidParams(format!("homothety ratio must be positive, got {c}")));
                }
                MoebiusMap::homothety(V3::new(get("cx", 0.0), get("cy", 0.0), get("cz", 0.0)), c)
            }
            "inversion" => {
                let r = get("r", 1.0);
                if !(r > 0.0) {
                    return Err(RieszError::InvalidParams(format!("inversion radius must be positive, got {r}")));
                }
                MoebiusMap::inversion(V3::new(get("cx", 0.0), get("cy", 0.0), get("cz", 0.0)), r)
            }
            _ => MoebiusMap::identity(),
        };
        map = map.then(&step);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::parse_shape;

    #[test]
    fn circle_inverts_to_circle() {
        let s = parse_shape("circle(r=1)").unwrap();
        // Inversion in the unit circle about (3,0): the image of the unit
        // circle is the circle through 3 − 1/2 and 3 − 1/4 on the axis.
        let m = MoebiusMap::inversion(V3::new(3.0, 0.0, 0.0), 1.0);
        let Shape::Curve(c) = transform_shape(&m, &s).unwrap() else { panic!() };
        let radius = 0.5 * (1.0 / 2.0 - 1.0 / 4.0);
        for i in 0..16 {
            let t = 0.39 * i as f64;
            assert!((c.curvature(t).unwrap() - 1.0 / radius).abs() < 1e-9);
        }
    }

    #[test]
    fn center_margin_enforced() {
        let s = parse_shape("circle(r=1)").unwrap();
        let m = MoebiusMap::inversion(V3::new(1.2, 0.0, 0.0), 1.0);
        assert!(matches!(transform_shape(&m, &s), Err(RieszError::CenterTooClose { .. })));
        let d = parse_shape("disk(r=1)").unwrap();
        let m = MoebiusMap::inversion(V3::new(0.0, 0.0, 0.0), 1.0);
        assert!(matches!(transform_shape(&m, &d), Err(RieszError::CenterTooClose { .. })));
    }

    #[test]
    fn map_grammar() {
        let m = parse_map("inversion(cx=3, r=2); homothety(c=0.5)").unwrap();
        assert_eq!(m.steps().len(), 2);
        assert!(parse_map("shear(a=1)").is_err());
        assert!(parse_map("homothety(c=-1)").is_err());
    }
}
