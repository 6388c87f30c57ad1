//! Pair-integral engine for closed curves and surfaces.
//!
//! Every double integral ∬ g(|x−y|) w(x,y) dx dy is written as an outer
//! quadrature over anchors x and, for each anchor, a family of rays in a chart
//! centred at x. Along a ray ρ ↦ y(ρ) the distance f(ρ) = |y(ρ) − x| grows
//! monotonically up to the first critical point, which is what makes cutoffs
//! `f > ε` and level sets `f = t` cheap to locate.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use num_complex::Complex64 as C64;

use crate::geometry::V3;
use crate::par;
use crate::quad;
use crate::shapes::{curve_rule, surface_rule, Curve, Surface};

#[derive(Debug, Clone, Copy)]
pub enum Manifold<'a> {
    Curve(&'a Curve),
    Surface(&'a Surface),
}

/// Discretization knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolution {
    /// Outer nodes: curve θ-points, or per-direction surface grid size.
    pub outer: usize,
    /// Rays per anchor on surfaces.
    pub angular: usize,
    /// Gauss–Legendre order per radial panel.
    pub radial: usize,
    /// Largest radial panel, in chart units.
    pub panel: f64,
}

impl Resolution {
    pub fn coarser(&self) -> Self {
        Self { outer: self.outer / 2, angular: (self.angular / 2).max(8), ..*self }
    }

    pub fn finer(&self) -> Self {
        Self { outer: self.outer * 2, angular: self.angular * 2, panel: self.panel / 2.0, ..*self }
    }
}

/// Extra factor on the pair integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Unit,
    /// ⟨n_x, n_y⟩ with outward unit normals.
    NormalDot,
}

#[derive(Debug, Clone, Copy)]
enum Chart {
    Curve(f64),
    Torus(f64, f64),
    Sphere { p0: V3, e1: V3, e2: V3 },
}

/// An outer quadrature node.
#[derive(Debug, Clone, Copy)]
pub struct Anchor {
    chart: Chart,
    pub x: V3,
    pub weight: f64,
    pub normal: V3,
}

#[derive(Debug, Clone, Copy)]
enum Dir {
    Curve(f64),
    Torus(f64, f64),
    Sphere(V3),
}

#[derive(Debug, Clone, Copy)]
pub struct Ray {
    dir: Dir,
    pub weight: f64,
    pub rho_max: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct RaySample {
    pub y: V3,
    pub dy: V3,
    pub density: f64,
}

const SMALL_RHO: f64 = 1e-3;

/// Inner end of the graded panels for singular integrals, relative to the ray
/// length; below it the integrand is modelled as C·ρ^s.
const SINGULAR_INNER: f64 = 1e-12;
const INNER_RATIO: f64 = 0.875;

/// ∫₀^b f for f(ρ) = C·ρ^s given f(b) and f(INNER_RATIO·b); falls back to
/// s = power − 1 if the samples do not determine an integrable power.
fn inner_tail(fb: C64, fq: C64, b: f64, power: f64) -> C64 {
    if fb == C64::new(0.0, 0.0) {
        return fb;
    }
    let s1 = (fq / fb).ln() / INNER_RATIO.ln() + 1.0;
    let s1 = if s1.re > 0.0 && s1.is_finite() { s1 } else { C64::new(power, 0.0) };
    fb * b / s1
}

/// Lower end of a radial integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cutoff {
    /// Integrate over |x − y| > ε.
    At(f64),
    /// Integrate everything; the integrand behaves like ρ^(power − 1) at 0.
    Singular { power: f64 },
}

impl<'a> Manifold<'a> {
    pub fn dim(&self) -> usize {
        match self {
            Manifold::Curve(_) => 1,
            Manifold::Surface(_) => 2,
        }
    }

    pub fn default_resolution(&self) -> Resolution {
        match self {
            Manifold::Curve(c) => {
                let outer = if c.map().is_identity() { 256 } else { 512 };
                Resolution { outer, angular: 2, radial: 10, panel: PI / 16.0 }
            }
            Manifold::Surface(_) => Resolution { outer: 32, angular: 64, radial: 10, panel: PI / 8.0 },
        }
    }

    pub fn anchors(&self, res: &Resolution) -> Vec<Anchor> {
        match *self {
            Manifold::Curve(c) => curve_rule(res.outer)
                .into_iter()
                .map(|(t, w)| {
                    let j = c.jet(t);
                    let normal = if c.is_planar_base() { c.normal(t) } else { V3::zeros() };
                    Anchor { chart: Chart::Curve(t), x: j.p, weight: w * j.d1.norm(), normal }
                })
                .collect(),
            Manifold::Surface(s) => surface_rule(s, res.outer)
                .into_iter()
                .filter_map(|(u, v, w)| {
                    let j = s.jet(u, v);
                    let da = j.du.cross(&j.dv).norm();
                    if da == 0.0 {
                        return None;
                    }
                    let chart = if s.is_torus() {
                        Chart::Torus(u, v)
                    } else {
                        let (st, ct) = u.sin_cos();
                        let (sp, cp) = v.sin_cos();
                        Chart::Sphere {
                            p0: V3::new(st * cp, st * sp, ct),
                            e1: V3::new(ct * cp, ct * sp, -st),
                            e2: V3::new(-sp, cp, 0.0),
                        }
                    };
                    Some(Anchor { chart, x: j.p, weight: w * da, normal: s.normal(u, v) })
                })
                .collect(),
        }
    }

    pub fn rays(&self, a: &Anchor, res: &Resolution) -> Vec<Ray> {
        match a.chart {
            Chart::Curve(_) => vec![
                Ray { dir: Dir::Curve(1.0), weight: 1.0, rho_max: PI },
                Ray { dir: Dir::Curve(-1.0), weight: 1.0, rho_max: PI },
            ],
            Chart::Torus(u0, v0) => {
                // The four sectors of the parameter square, each integrated in
                // the metric angle β with tan α = k·tan β, k = |∂u|/|∂v|: rays
                // then sit evenly in physical directions, where the integrand
                // is nearly isotropic.
                let k = match self {
                    Manifold::Surface(s) => {
                        let j = s.jet(u0, v0);
                        j.du.norm() / j.dv.norm()
                    }
                    Manifold::Curve(_) => 1.0,
                };
                let per = (res.angular / 4).max(2);
                let gl = quad::gauss_legendre(per.min(64));
                let mut out = Vec::with_capacity(4 * per);
                for q in 0..4 {
                    let mid = q as f64 * FRAC_PI_2;
                    let beta = |al: f64| al.sin().atan2(k * al.cos());
                    let lo = beta(mid - FRAC_PI_4);
                    let mut hi = beta(mid + FRAC_PI_4);
                    if hi < lo {
                        hi += TAU;
                    }
                    let half = 0.5 * (hi - lo);
                    for (x, w) in gl.nodes.iter().zip(&gl.weights) {
                        let b = lo + half * (x + 1.0);
                        let (sb, cb) = b.sin_cos();
                        let al = (k * sb).atan2(cb);
                        let dal = k / (cb * cb + k * k * sb * sb);
                        let (s, c) = al.sin_cos();
                        out.push(Ray { dir: Dir::Torus(c, s), weight: half * w * dal, rho_max: PI / c.abs().max(s.abs()) });
                    }
                }
                out
            }
            Chart::Sphere { e1, e2, .. } => {
                let n = res.angular.max(4);
                (0..n)
                    .map(|j| {
                        let (s, c) = (TAU * j as f64 / n as f64).sin_cos();
                        Ray { dir: Dir::Sphere(e1 * c + e2 * s), weight: TAU / n as f64, rho_max: PI }
                    })
                    .collect()
            }
        }
    }

    #[inline]
    pub fn sample(&self, a: &Anchor, r: &Ray, rho: f64) -> RaySample {
        match (*self, a.chart, r.dir) {
            (Manifold::Curve(c), Chart::Curve(t0), Dir::Curve(sg)) => {
                let j = c.jet(t0 + sg * rho);
                RaySample { y: j.p, dy: j.d1 * sg, density: j.d1.norm() }
            }
            (Manifold::Surface(s), Chart::Torus(u0, v0), Dir::Torus(co, si)) => {
                let j = s.jet(u0 + rho * co, v0 + rho * si);
                RaySample { y: j.p, dy: j.du * co + j.dv * si, density: rho * j.du.cross(&j.dv).norm() }
            }
            (Manifold::Surface(s), Chart::Sphere { p0, .. }, Dir::Sphere(e)) => {
                let (sb, cb) = rho.sin_cos();
                let q = p0 * cb + e * sb;
                let dq = e * cb - p0 * sb;
                let pb = s.ellipsoid_point(&q).expect("sphere chart on ellipsoid");
                let db = s.ellipsoid_point(&dq).expect("sphere chart on ellipsoid");
                let dens = s.ellipsoid_jacobian(&q) * sb;
                let m = s.map();
                if m.is_identity() {
                    RaySample { y: pb, dy: db, density: dens }
                } else {
                    let lam = m.stretch(&pb);
                    RaySample { y: m.apply(&pb), dy: m.push(&pb, &db), density: dens * lam * lam }
                }
            }
            _ => unreachable!("anchor and ray from different manifolds"),
        }
    }

    /// Tangent of a ray at its start.
    pub fn ray_tangent(&self, a: &Anchor, r: &Ray) -> V3 {
        self.sample(a, r, 0.0).dy
    }

    /// y − x for a sample at chart distance ρ. Below ρ = 10⁻³ the coordinate
    /// difference loses digits (and can round to nearly anything at ρ ≲ 10⁻¹⁶),
    /// so the tangent is integrated along the ray by Simpson's rule instead.
    pub fn displacement(&self, a: &Anchor, r: &Ray, rho: f64, s: &RaySample, tangent0: &V3) -> V3 {
        if rho >= SMALL_RHO {
            return s.y - a.x;
        }
        let mid = self.sample(a, r, 0.5 * rho).dy;
        (tangent0 + mid * 4.0 + s.dy) * (rho / 6.0)
    }

    /// Outward normal at the point reached along a ray.
    pub fn sample_normal(&self, a: &Anchor, r: &Ray, rho: f64) -> V3 {
        match (*self, a.chart, r.dir) {
            (Manifold::Curve(c), Chart::Curve(t0), Dir::Curve(sg)) => c.normal(t0 + sg * rho),
            (Manifold::Surface(s), Chart::Torus(u0, v0), Dir::Torus(co, si)) => s.normal(u0 + rho * co, v0 + rho * si),
            (Manifold::Surface(s), Chart::Sphere { p0, .. }, Dir::Sphere(e)) => {
                let (sb, cb) = rho.sin_cos();
                let pb = s.ellipsoid_point(&(p0 * cb + e * sb)).expect("ellipsoid");
                s.map().push_normal(&pb, &s.base_normal_at(&pb))
            }
            _ => unreachable!(),
        }
    }

    fn pair_weight(&self, w: Weight, a: &Anchor, r: &Ray, rho: f64) -> f64 {
        match w {
            Weight::Unit => 1.0,
            Weight::NormalDot => a.normal.dot(&self.sample_normal(a, r, rho)),
        }
    }

    /// Largest principal curvature magnitude over the anchors.
    fn max_curvature(&self, res: &Resolution) -> f64 {
        match *self {
            Manifold::Curve(c) => curve_rule(res.outer)
                .into_iter()
                .map(|(t, _)| c.curvature(t).unwrap_or(f64::INFINITY))
                .fold(0.0, f64::max),
            Manifold::Surface(s) => surface_rule(s, res.outer)
                .into_iter()
                .map(|(u, v, _)| match s.principal_curvatures(u, v) {
                    Ok((k1, k2)) => k1.abs().max(k2.abs()),
                    Err(_) => 0.0,
                })
                .fold(0.0, f64::max),
        }
    }

    /// A radius d on which every level set {f = t}, t ≤ d, is crossed exactly
    /// once along each ray: half the smallest distance reached past the first
    /// critical point of any ray, capped by the curvature radius.
    pub fn smoothness_radius(&self, res: &Resolution) -> f64 {
        let coarse = res.coarser();
        let anchors = self.anchors(&coarse);
        const M: usize = 128;
        let per_anchor = par::map(anchors.len(), |i| {
            let a = &anchors[i];
            let mut best = f64::INFINITY;
            for r in self.rays(a, &coarse) {
                let mut prev = 0.0;
                let mut past_critical = false;
                for k in 1..=M {
                    let f = (self.sample(a, &r, r.rho_max * k as f64 / M as f64).y - a.x).norm();
                    if f < prev {
                        past_critical = true;
                    }
                    if past_critical || k == M {
                        best = best.min(f);
                    }
                    prev = f;
                }
            }
            best
        });
        let chord = per_anchor.into_iter().fold(f64::INFINITY, f64::min);
        let kmax = self.max_curvature(res);
        0.5 * chord.min(if kmax > 0.0 { 1.0 / kmax } else { f64::INFINITY })
    }

    /// Solve f(ρ) = t on the monotone part of a ray, starting from `guess`.
    pub fn crossing(&self, a: &Anchor, r: &Ray, t: f64, guess: f64) -> f64 {
        let mut lo = 0.0;
        let mut hi = r.rho_max;
        let mut rho = guess.clamp(0.0, r.rho_max);
        if rho <= 0.0 {
            let s = self.sample(a, r, 1e-8 * r.rho_max);
            rho = (t / s.dy.norm().max(1e-300)).min(0.5 * r.rho_max);
        }
        let t0 = self.ray_tangent(a, r);
        for _ in 0..100 {
            let s = self.sample(a, r, rho);
            let d = self.displacement(a, r, rho, &s, &t0);
            let f = d.norm();
            let g = f - t;
            if g == 0.0 {
                return rho;
            }
            if g < 0.0 {
                lo = rho;
            } else {
                hi = rho;
            }
            let fp = d.dot(&s.dy) / f;
            let mut next = if fp > 0.0 { rho - g / fp } else { f64::NAN };
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - rho).abs() <= 4.0 * f64::EPSILON * rho.max(f64::MIN_POSITIVE) || hi - lo <= 4.0 * f64::EPSILON * hi {
                return next;
            }
            rho = next;
        }
        rho
    }

    /// `∬ kernel(|x−y|) w(x,y) dx dy` restricted by `cutoff`, for `nk`
    /// kernels at once. `kernel(r, out)` adds its values into `out`.
    pub fn pair_integrals(
        &self,
        cutoff: Cutoff,
        nk: usize,
        kernel: &(dyn Fn(f64, &mut [C64]) + Sync),
        weight: Weight,
        res: &Resolution,
    ) -> Vec<C64> {
        let anchors = self.anchors(res);
        let gl = quad::gauss_legendre(res.radial);
        let per_anchor = par::map(anchors.len(), |i| {
            let a = &anchors[i];
            let mut acc = vec![C64::new(0.0, 0.0); nk];
            let mut vals = vec![C64::new(0.0, 0.0); nk];
            for r in self.rays(a, res) {
                let breaks = match cutoff {
                    Cutoff::At(eps) => {
                        let r0 = self.crossing(a, &r, eps, 0.0);
                        quad::panels_away_from_zero(r0, r.rho_max, res.panel)
                    }
                    Cutoff::Singular { .. } => {
                        quad::panels_toward_zero(r.rho_max, res.panel, 0.25, SINGULAR_INNER * r.rho_max)
                    }
                };
                let t0 = self.ray_tangent(a, &r);
                // ρ-integrand at one point, into `out`.
                let integrand = |rho: f64, out: &mut [C64]| -> bool {
                    out.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
                    let s = self.sample(a, &r, rho);
                    let dist = self.displacement(a, &r, rho, &s, &t0).norm();
                    if dist == 0.0 {
                        return false;
                    }
                    kernel(dist, out);
                    let f = s.density * r.weight * self.pair_weight(weight, a, &r, rho);
                    out.iter_mut().for_each(|v| *v *= f);
                    true
                };
                let mut panels = breaks.windows(2);
                if let Cutoff::Singular { power } = cutoff {
                    // Innermost panel [0, b]: each integrand behaves like
                    // C·ρ^s there; s is read off from two samples.
                    panels.next();
                    let b = breaks[1];
                    let mut inner = vec![C64::new(0.0, 0.0); nk];
                    if integrand(b, &mut vals) && integrand(INNER_RATIO * b, &mut inner) {
                        for ((acc, f), g) in acc.iter_mut().zip(&vals).zip(&inner) {
                            *acc += inner_tail(*f, *g, b, power);
                        }
                    }
                }
                for w2 in panels {
                    let (p0, p1) = (w2[0], w2[1]);
                    let half = 0.5 * (p1 - p0);
                    let mid = 0.5 * (p0 + p1);
                    for (xg, wg) in gl.nodes.iter().zip(&gl.weights) {
                        if integrand(mid + half * xg, &mut vals) {
                            for (acc, v) in acc.iter_mut().zip(&vals) {
                                *acc += v * (half * wg);
                            }
                        }
                    }
                }
            }
            acc.into_iter().map(|v| v * a.weight).collect::<Vec<_>>()
        });
        let mut total = vec![C64::new(0.0, 0.0); nk];
        for v in per_anchor {
            for (t, x) in total.iter_mut().zip(v) {
                *t += x;
            }
        }
        total
    }

    pub fn pair_integral(&self, cutoff: Cutoff, kernel: impl Fn(f64) -> C64 + Sync, weight: Weight, res: &Resolution) -> C64 {
        self.pair_integrals(cutoff, 1, &|r, out: &mut [C64]| out[0] += kernel(r), weight, res)[0]
    }

    /// Level-set densities Ψ′_w(t) = d/dt ∬_{|x−y|≤t} w for ascending t ≤ d.
    pub fn level_densities(&self, ts: &[f64], weight: Weight, res: &Resolution) -> Vec<f64> {
        debug_assert!(ts.windows(2).all(|w| w[0] <= w[1]));
        let anchors = self.anchors(res);
        let per_anchor = par::map(anchors.len(), |i| {
            let a = &anchors[i];
            let mut acc = vec![0.0; ts.len()];
            for r in self.rays(a, res) {
                let t0 = self.ray_tangent(a, &r);
                let mut rho = 0.0;
                let mut t_prev = 0.0;
                for (k, &t) in ts.iter().enumerate() {
                    let guess = if t_prev > 0.0 { rho * t / t_prev } else { 0.0 };
                    rho = self.crossing(a, &r, t, guess);
                    t_prev = t;
                    let s = self.sample(a, &r, rho);
                    let d = self.displacement(a, &r, rho, &s, &t0);
                    let fp = d.dot(&s.dy) / d.norm();
                    acc[k] += r.weight * s.density / fp * self.pair_weight(weight, a, &r, rho);
                }
            }
            acc.into_iter().map(|v| v * a.weight).collect::<Vec<_>>()
        });
        let mut total = vec![0.0; ts.len()];
        for v in per_anchor {
            for (t, x) in total.iter_mut().zip(v) {
                *t += x;
            }
        }
        total
    }

    /// ψ_{w,x}(t) = ∫_{M ∩ B_t(x)} w(x, y) dy at one anchor, any t ≥ 0.
    pub fn ball_measure(&self, a: &Anchor, t: f64, weight: Weight, res: &Resolution) -> f64 {
        const M: usize = 256;
        let gl_order = res.radial;
        let mut total = 0.0;
        for r in self.rays(a, res) {
            let f = |rho: f64| (self.sample(a, &r, rho).y - a.x).norm() - t;
            // Intervals of [0, rho_max] where f ≤ 0.
            let mut intervals: Vec<(f64, f64)> = Vec::new();
            let mut start = Some(0.0);
            let mut prev_rho = 0.0;
            let mut prev_g = -t;
            for k in 1..=M {
                let rho = r.rho_max * k as f64 / M as f64;
                let g = f(rho);
                if (g <= 0.0) != (prev_g <= 0.0) {
                    let (mut lo, mut hi) = (prev_rho, rho);
                    for _ in 0..80 {
                        let mid = 0.5 * (lo + hi);
                        if (f(mid) <= 0.0) == (prev_g <= 0.0) {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    let root = 0.5 * (lo + hi);
                    match start.take() {
                        Some(s0) => intervals.push((s0, root)),
                        None => start = Some(root),
                    }
                }
                prev_rho = rho;
                prev_g = g;
            }
            if let Some(s0) = start {
                intervals.push((s0, r.rho_max));
            }
            for (lo, hi) in intervals {
                let n = ((hi - lo) / res.panel).ceil().max(1.0) as usize;
                let rule = quad::composite(lo, hi, n, gl_order);
                total += r.weight
                    * rule.integrate(|rho| self.sample(a, &r, rho).density * self.pair_weight(weight, a, &r, rho));
            }
        }
        total
    }

    /// Anchor nearest to the given chart coordinates (θ for curves,
    /// (u, v) for surfaces), built at full precision.
    pub fn anchor_at(&self, u: f64, v: f64) -> Anchor {
        match *self {
            Manifold::Curve(c) => {
                let j = c.jet(u);
                let normal = if c.is_planar_base() { c.normal(u) } else { V3::zeros() };
                Anchor { chart: Chart::Curve(u), x: j.p, weight: j.d1.norm(), normal }
            }
            Manifold::Surface(s) => {
                let j = s.jet(u, v);
                let chart = if s.is_torus() {
                    Chart::Torus(u, v)
                } else {
                    let (st, ct) = u.sin_cos();
                    let (sp, cp) = v.sin_cos();
                    Chart::Sphere {
                        p0: V3::new(st * cp, st * sp, ct),
                        e1: V3::new(ct * cp, ct * sp, -st),
                        e2: V3::new(-sp, cp, 0.0),
                    }
                };
                Anchor { chart, x: j.p, weight: j.du.cross(&j.dv).norm(), normal: s.normal(u, v) }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{CurveKind, SurfaceKind};

    #[test]
    fn total_measure_and_direct_integral_on_circle() {
        let c = Curve::new(CurveKind::Circle { r: 1.0 }).unwrap();
        let m = Manifold::Curve(&c);
        let res = m.default_resolution();
        let v = m.pair_integral(Cutoff::Singular { power: 1.0 }, |_| C64::new(1.0, 0.0), Weight::Unit, &res);
        assert!((v.re - TAU * TAU).abs() < 1e-10);
        // ∬|x−y| = 16π on the unit circle.
        let v = m.pair_integral(Cutoff::Singular { power: 2.0 }, |r| C64::new(r, 0.0), Weight::Unit, &res);
        assert!((v.re - 16.0 * PI).abs() < 1e-10, "{v}");
    }

    #[test]
    fn circle_cutoff_matches_cotangent_oracle() {
        let c = Curve::new(CurveKind::Circle { r: 1.0 }).unwrap();
        let m = Manifold::Curve(&c);
        let eps = 0.1;
        let v = m.pair_integral(Cutoff::At(eps), |r| C64::new(r.powi(-2), 0.0), Weight::Unit, &m.default_resolution());
        // From one point: ∫ ds/(4 sin²(s/2)) over the arc beyond the chord ε = cot(s_ε/2).
        let s_eps = 2.0 * (eps / 2.0).asin();
        let want = TAU * (s_eps / 2.0).tan().recip();
        assert!((v.re - want).abs() < 1e-10 * want, "{} vs {}", v.re, want);
    }

    #[test]
    fn level_density_of_sphere() {
        // For the unit sphere ψ_x(t) = πt² exactly, so Ψ′(t) = 2πt·4π.
        let s = Surface::new(SurfaceKind::Ellipsoid { a: 1.0, b: 1.0, c: 1.0 }).unwrap();
        let m = Manifold::Surface(&s);
        let res = m.default_resolution();
        let d = m.smoothness_radius(&res);
        assert!(d > 0.2 && d <= 0.5, "{d}");
        let ts = [0.01, 0.1, 0.3];
        let v = m.level_densities(&ts, Weight::Unit, &res);
        for (t, got) in ts.iter().zip(v) {
            let want = 8.0 * PI * PI * t;
            assert!((got - want).abs() < 1e-9 * want, "t={t}: {got} vs {want}");
        }
        let a = m.anchor_at(0.9, 0.4);
        assert!((m.ball_measure(&a, 0.7, Weight::Unit, &res) - PI * 0.49).abs() < 1e-10);
        assert!((m.ball_measure(&a, 2.5, Weight::Unit, &res) - 4.0 * PI).abs() < 1e-10);
    }
}
