//! Riesz energies, fractional perimeters, beta functions and residues of
//! compact domains Ω ⊂ Rⁿ, n = 2, 3 (and the 4-ball through closed forms).
//!
//! Routes:
//! * volume-direct: outer quadrature over Ω; the inner ∫_Ω|x−y|^z dy is
//!   moved to ∂Ω by the divergence theorem,
//! * boundary integral: E_Ω(z) = −1/((z+2)(z+n)) ∬_{∂Ω×∂Ω} r^{z+2}⟨n_x,n_y⟩,
//! * second approach: the same prefactor times Pf ∫ t^{z+2} Σ′(t) dt, where
//!   Σ′ is the ⟨n_x,n_y⟩-weighted level density on ∂Ω×∂Ω,
//! * ψ_Ω profile (n = 2) and counterterm cutoff, both built on the identity
//!   ψ′_Ω(t) = −∬_{r>t} t^{n−1}∫_t^r s^{1−n} ds ⟨n_x,n_y⟩.

use std::f64::consts::PI;
use std::sync::OnceLock;
use std::time::Instant;

use num_complex::Complex64 as C64;

use crate::closed_energy::{
    default_eps_schedule, profile_levels, CrossCheck, EnergyOptions, EnergyReport, Method, Residue,
};
use crate::error::{zfmt, Result, RieszError};
use crate::extrinsic::{psi_domain_derivative_jet, sigma_derivative_jet};
use crate::geometry::V3;
use crate::manifold::{Anchor, Cutoff, Manifold, Resolution, Weight};
use crate::par;
use crate::quad::{self, Rule};
use crate::regularize::{
    cpow, finite_part_jet, finite_part_sampled, laurent_fit_with, pole_index, pole_removed_value, residue_estimate, LaurentBasis,
    LaurentSeries, PsiProfile, TaylorJet, DEFAULT_COND_BOUND,
};
use crate::shapes::{curvature_integrals, Boundary, CurvatureIntegrals, Domain, DomainKind, Shape};
use crate::special::{gamma, gamma_ratio, nonpositive_integer, sphere_area};

const ZERO: C64 = C64::new(0.0, 0.0);

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Powers i of the ψ′_Ω jet that may be nonzero: i = n−1 and i = n + 2j.
pub fn domain_allows(n: usize, i: usize) -> bool {
    i + 1 == n || (i >= n && (i - n) % 2 == 0)
}

/// Discretization of the volume-direct quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeResolution {
    /// Outer directions: θ-points (n = 2) or polar Gauss nodes (n = 3,
    /// with twice as many azimuths).
    pub angular: usize,
    /// Gauss order per radial panel of the outer star parameterization.
    pub sigma_order: usize,
    /// Inner boundary quadrature.
    pub inner: Resolution,
}

impl VolumeResolution {
    pub fn coarser(&self) -> Self {
        Self { angular: (self.angular * 3 / 4).max(4), sigma_order: self.sigma_order - 2, inner: self.inner.coarser() }
    }
}

/// Precomputed geometry of a domain for repeated energy evaluations.
pub struct DomainEnergy<'a> {
    domain: &'a Domain,
    n: usize,
    boundary: Boundary,
    res: Resolution,
    vres: VolumeResolution,
    d: f64,
    diam: f64,
    ci: CurvatureIntegrals,
    psi_jet: TaylorJet,
    sigma_jet: TaylorJet,
    sigma: OnceLock<(Rule, Vec<f64>)>,
    psi: OnceLock<(Rule, Vec<f64>)>,
    eps: Vec<f64>,
}

impl<'a> DomainEnergy<'a> {
    pub fn new(domain: &'a Domain, opts: &EnergyOptions) -> Result<Self> {
        let n = domain.dim();
        if !(2..=3).contains(&n) {
            return Err(RieszError::UnsupportedDimension(n));
        }
        let boundary = domain.boundary()?;
        let man = match &boundary {
            Boundary::Curve(c) => Manifold::Curve(c),
            Boundary::Surface(s) => Manifold::Surface(s),
        };
        let res = opts.resolution.unwrap_or_else(|| man.default_resolution());
        let d = man.smoothness_radius(&res);
        let shape = Shape::Domain(domain.clone());
        let diam = shape.diameter_bound()?;
        let ci = curvature_integrals(&shape)?;
        let psi_jet = psi_domain_derivative_jet(n, &ci)?;
        let sigma_jet = sigma_derivative_jet(n, &ci)?;
        let vres = match n {
            2 => VolumeResolution { angular: 64, sigma_order: 8, inner: res },
            _ => VolumeResolution { angular: 8, sigma_order: 8, inner: Resolution { angular: 32, ..res } },
        };
        let eps = opts.eps_schedule.clone().unwrap_or_else(|| default_eps_schedule(d));
        Ok(Self {
            domain,
            n,
            boundary,
            res,
            vres,
            d,
            diam,
            ci,
            psi_jet,
            sigma_jet,
            sigma: OnceLock::new(),
            psi: OnceLock::new(),
            eps,
        })
    }

    fn man(&self) -> Manifold<'_> {
        match &self.boundary {
            Boundary::Curve(c) => Manifold::Curve(c),
            Boundary::Surface(s) => Manifold::Surface(s),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn curvature(&self) -> &CurvatureIntegrals {
        &self.ci
    }

    pub fn resolution(&self) -> Resolution {
        self.res
    }

    pub fn smoothness_radius(&self) -> f64 {
        self.d
    }

    pub fn eps_schedule(&self) -> &[f64] {
        &self.eps
    }

    /// Jet of ψ′_Ω at 0 (coefficient i is the residue at −(i+1)).
    pub fn psi_jet(&self) -> &TaylorJet {
        &self.psi_jet
    }

    pub fn sigma_jet(&self) -> &TaylorJet {
        &self.sigma_jet
    }

    fn prefactor(&self, z: C64) -> C64 {
        -1.0 / ((z + 2.0) * (z + self.n as f64))
    }

    fn prefactor_derivative(&self, z: C64) -> C64 {
        let (a, b) = (z + 2.0, z + self.n as f64);
        (a + b) / (a * a * b * b)
    }

    /// ∬ r^{w}⟨n_x,n_y⟩ over ∂Ω×∂Ω for several w (all with Re w > 1−n).
    fn normal_dot_moments(&self, ws: &[C64], cutoff: Cutoff) -> Vec<C64> {
        let kernel = |r: f64, out: &mut [C64]| {
            for (o, w) in out.iter_mut().zip(ws) {
                *o += cpow(r, *w);
            }
        };
        self.man().pair_integrals(cutoff, ws.len(), &kernel, Weight::NormalDot, &self.res)
    }

    /// Boundary-integral form of E_Ω(z), Re z > −n−1, z ∉ {−2, −n}.
    pub fn boundary_integral_many(&self, zs: &[C64]) -> Result<Vec<C64>> {
        let n = self.n as f64;
        for &z in zs {
            if z == c(-2.0) || z == c(-n) {
                return Err(RieszError::ExcludedExponent { z: zfmt(z) });
            }
            if !(z.re > -n - 1.0) {
                return Err(RieszError::ExponentNotConvergent { z: zfmt(z), bound: -n - 1.0 });
            }
        }
        let lowest = zs.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let ws: Vec<C64> = zs.iter().map(|z| z + 2.0).collect();
        let m = self.normal_dot_moments(&ws, Cutoff::Singular { power: lowest + 2.0 + n - 1.0 });
        Ok(zs.iter().zip(m).map(|(&z, v)| self.prefactor(z) * v).collect())
    }

    pub fn boundary_integral(&self, z: C64) -> Result<C64> {
        Ok(self.boundary_integral_many(&[z])?[0])
    }

    fn sigma_samples(&self) -> &(Rule, Vec<f64>) {
        self.sigma.get_or_init(|| {
            let rule = PsiProfile::standard_rule(self.d);
            let vals = self.man().level_densities(&rule.nodes, Weight::NormalDot, &self.res);
            (rule, vals)
        })
    }

    /// (finite part, residue) of Pf ∫ t^{w} Σ′(t) dt.
    fn sigma_moment(&self, w: C64) -> Result<(C64, C64)> {
        let (rule, vals) = self.sigma_samples();
        let v = finite_part_sampled(&self.sigma_jet, self.d, rule, vals, w, profile_levels(w - 2.0))
            .map_err(|e| shift_jet_error(e, w - 2.0))?;
        let tail = self.normal_dot_moments(&[w], Cutoff::At(self.d))[0];
        Ok((v.finite_part + tail, v.residue))
    }

    /// Second approach: value of E_Ω(z) (pole-removed at poles) and the
    /// residue of B_Ω at z. Undefined at z ∈ {−2, −n}.
    pub fn second_approach(&self, z: C64) -> Result<(C64, C64)> {
        if z == c(-2.0) || z == c(-(self.n as f64)) {
            return Err(RieszError::ExcludedExponent { z: zfmt(z) });
        }
        let (fp, rg) = self.sigma_moment(z + 2.0)?;
        let p = self.prefactor(z);
        Ok((p * fp + self.prefactor_derivative(z) * rg, p * rg))
    }

    /// I_Ω(ε) = ∫_ε^∞ t^z ψ′_Ω(t) dt via the boundary kernel.
    pub fn cutoff(&self, z: C64, eps: f64) -> Result<C64> {
        if !(eps > 0.0) {
            return Err(RieszError::InvalidArgument(format!("cutoff radius must be positive, got {eps}")));
        }
        Ok(self.cutoff_many(&[z], eps)[0])
    }

    pub fn cutoff_many(&self, zs: &[C64], eps: f64) -> Vec<C64> {
        let n = self.n;
        let kernel = |r: f64, out: &mut [C64]| {
            let l = (r / eps).ln();
            for (o, &z) in out.iter_mut().zip(zs) {
                *o -= cpow(r, z + 2.0) * q_kernel(n, z, l);
            }
        };
        self.man().pair_integrals(Cutoff::At(eps), zs.len(), &kernel, Weight::NormalDot, &self.res)
    }

    /// ψ′_Ω(t) at one t.
    pub fn psi_derivative(&self, t: f64) -> f64 {
        let n = self.n;
        let kernel = move |r: f64| -> C64 {
            let v = if n == 2 { t * (r / t).ln() } else { t - t * t / r };
            c(-v)
        };
        self.man().pair_integral(Cutoff::At(t), kernel, Weight::NormalDot, &self.res).re
    }

    fn psi_samples(&self) -> &(Rule, Vec<f64>) {
        self.psi.get_or_init(|| {
            let rule = PsiProfile::standard_rule(self.d);
            let vals = rule.nodes.iter().map(|&t| self.psi_derivative(t)).collect();
            (rule, vals)
        })
    }

    /// Pf ∫ t^z ψ′_Ω(t) dt from ψ′_Ω samples (planar domains only; the
    /// sampling costs one boundary pass per node).
    pub fn psi_profile(&self, z: C64) -> Result<(C64, C64)> {
        if self.n != 2 {
            return Err(RieszError::UnsupportedDimension(self.n));
        }
        let (rule, vals) = self.psi_samples();
        let v = finite_part_sampled(&self.psi_jet, self.d, rule, vals, z, profile_levels(z))?;
        let tail = self.cutoff_many(&[z], self.d)[0];
        Ok((v.finite_part + tail, v.residue))
    }

    /// Exact counterterms of the known ψ′_Ω jet.
    pub fn counterterms(&self, z: C64) -> Vec<(usize, C64)> {
        let pole = pole_index(z, self.psi_jet.order());
        self.psi_jet
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(i, &v)| if Some(i) == pole { (i + 1, c(v)) } else { (i + 1, v / (z + (i as f64 + 1.0))) })
            .collect()
    }

    /// Counterterm-corrected cutoff values fitted over the ε schedule.
    pub fn counterterm_cutoff(&self, z: C64) -> Result<LaurentSeries> {
        let samples: Vec<(f64, C64)> = self
            .eps
            .iter()
            .map(|&e| (e, self.cutoff_many(&[z], e)[0] + finite_part_jet(&self.psi_jet, e, z).finite_part))
            .collect();
        let first = self.psi_jet.order();
        let powers = (first..first + 8).filter(|&i| domain_allows(self.n, i)).take(3).map(|i| i + 1).collect();
        laurent_fit_with(&samples, z, &LaurentBasis { powers, constant: true }, DEFAULT_COND_BOUND)
    }

    pub fn cutoff_samples(&self, z: C64) -> Vec<(f64, C64)> {
        self.eps.iter().map(|&e| (e, self.cutoff_many(&[z], e)[0])).collect()
    }

    /// Laurent fit of raw cutoff samples with ε^{z+j}, j = 1..=j_max (only
    /// the allowed j when `parity_only`).
    pub fn cutoff_laurent(&self, z: C64, j_max: usize, parity_only: bool) -> Result<LaurentSeries> {
        let samples = self.cutoff_samples(z);
        let powers = (1..=j_max).filter(|&j| !parity_only || domain_allows(self.n, j - 1)).collect();
        laurent_fit_with(&samples, z, &LaurentBasis { powers, constant: true }, DEFAULT_COND_BOUND)
    }

    pub fn residue_at(&self, z: C64) -> C64 {
        match nonpositive_integer(z) {
            Some(k) if k >= 1 && ((k - 1) as usize) < self.psi_jet.order() => c(self.psi_jet.coeff((k - 1) as usize)),
            _ => ZERO,
        }
    }

    pub fn volume_resolution(&self) -> VolumeResolution {
        self.vres
    }

    /// Outer quadrature ∫_Ω F(x) dx with F(x) = (1/(z+n))∫_{∂Ω}|y−x|^z⟨y−x,n_y⟩dy.
    /// For Re z > −n this is ∬_{Ω×Ω}|x−y|^z; for −n−1 < Re z < −n it is
    /// −∫_Ω∫_{Ωᶜ}|x−y|^z, the negative fractional perimeter.
    pub fn volume_formula_many(&self, zs: &[C64], vres: &VolumeResolution) -> Result<Vec<C64>> {
        let n = self.n as f64;
        for &z in zs {
            if !(z.re > -n - 1.0) || z.re == -n {
                return Err(RieszError::ExponentNotConvergent { z: zfmt(z), bound: -n - 1.0 });
            }
        }
        let a_min = zs.iter().map(|z| z.re + n).fold(f64::INFINITY, f64::min);
        // Dyadic grading toward the boundary stops at 2⁻⁴⁴ (beyond that x is
        // not resolved in f64). When F blows up there, the sliver left over is
        // closed with F ≈ F(s_L)(δ/δ_L)^{z+n} in δ = 1 − s.
        let levels = ((36.0 / (a_min + 1.0)).ceil() as usize).clamp(12, 44);
        let mut breaks = vec![0.0];
        for l in 1..=levels {
            breaks.push(1.0 - 0.5f64.powi(l as i32));
        }
        let delta_l = 0.5f64.powi(levels as i32);
        if a_min >= 0.0 {
            // bounded integrand: the last panel reaches the boundary
            breaks.push(1.0);
        }
        let tail_w: Vec<C64> = zs.iter().map(|z| c(delta_l) / ((z + n).re + 1.0)).collect();
        let sigma = quad::rule_from_breaks(&breaks, vres.sigma_order);
        // (s, weight); weight None marks the tail node at s = 1 − δ_L
        let nodes: Vec<(f64, Option<f64>)> = sigma
            .nodes
            .iter()
            .zip(&sigma.weights)
            .map(|(&s, &w)| (s, Some(w)))
            .chain((a_min < 0.0).then_some((1.0 - delta_l, None)))
            .collect();
        let dirs = self.outer_directions(vres);
        let map = self.domain.map();
        let man = self.man();
        let per_dir = par::map(dirs.len(), |i| {
            let (w_hat, w_dir, guess) = dirs[i];
            let r_b = self.domain.base_radial(&w_hat);
            let mut acc = vec![ZERO; zs.len()];
            let mut inner = vec![ZERO; zs.len()];
            let mut foot = guess;
            for &(s, ws) in &nodes {
                let xb = w_hat * (s * r_b);
                let (x, jac) = if map.is_identity() {
                    (xb, 1.0)
                } else {
                    (map.apply(&xb), map.stretch(&xb).powi(self.n as i32))
                };
                let vol = s.powi(self.n as i32 - 1) * r_b.powi(self.n as i32) * w_dir * jac;
                foot = self.foot_point(&x, foot);
                let a = man.anchor_at(foot.0, foot.1);
                inner.iter_mut().for_each(|v| *v = ZERO);
                self.inner_boundary(&man, &a, &x, zs, &vres.inner, &mut inner);
                for ((acc, v), tw) in acc.iter_mut().zip(&inner).zip(&tail_w) {
                    *acc += v * vol * ws.map_or(*tw, c);
                }
            }
            acc
        });
        let mut total = vec![ZERO; zs.len()];
        for v in per_dir {
            for (t, x) in total.iter_mut().zip(v) {
                *t += x;
            }
        }
        Ok(total)
    }

    /// ∬_{Ω×Ω}|x−y|^z by volume quadrature, Re z > −n.
    pub fn volume_direct_many(&self, zs: &[C64]) -> Result<Vec<C64>> {
        let n = self.n as f64;
        if let Some(z) = zs.iter().find(|z| !(z.re > -n)) {
            return Err(RieszError::ExponentNotConvergent { z: zfmt(*z), bound: -n });
        }
        self.volume_formula_many(zs, &self.vres)
    }

    /// (unit direction, angular weight, boundary parameter guess).
    fn outer_directions(&self, vres: &VolumeResolution) -> Vec<(V3, f64, (f64, f64))> {
        if self.n == 2 {
            let m = vres.angular;
            (0..m)
                .map(|i| {
                    let th = 2.0 * PI * i as f64 / m as f64;
                    (V3::new(th.cos(), th.sin(), 0.0), 2.0 * PI / m as f64, (th, 0.0))
                })
                .collect()
        } else {
            let gl = quad::gauss_legendre(vres.angular);
            let nphi = 2 * vres.angular;
            let mut out = Vec::new();
            for (x, w) in gl.nodes.iter().zip(&gl.weights) {
                let th = 0.5 * PI * (x + 1.0);
                for j in 0..nphi {
                    let ph = 2.0 * PI * j as f64 / nphi as f64;
                    let (st, ct) = th.sin_cos();
                    let wt = 0.5 * PI * w * st * 2.0 * PI / nphi as f64;
                    out.push((V3::new(st * ph.cos(), st * ph.sin(), ct), wt, (th, ph)));
                }
            }
            out
        }
    }

    /// Boundary parameters of the point of ∂Ω nearest to x, by Newton
    /// iteration from `guess`.
    fn foot_point(&self, x: &V3, guess: (f64, f64)) -> (f64, f64) {
        match &self.boundary {
            Boundary::Curve(cv) => {
                let mut t = guess.0;
                for _ in 0..30 {
                    let j = cv.jet(t);
                    let d = j.p - x;
                    let g = d.dot(&j.d1);
                    let h = j.d1.norm_squared() + d.dot(&j.d2);
                    if !(h > 0.0) {
                        break;
                    }
                    let step = (g / h).clamp(-0.5, 0.5);
                    t -= step;
                    if step.abs() < 1e-15 {
                        break;
                    }
                }
                (t, 0.0)
            }
            Boundary::Surface(s) => {
                let (mut u, mut v) = guess;
                for _ in 0..30 {
                    let j = s.jet(u, v);
                    let d = j.p - x;
                    let g = [d.dot(&j.du), d.dot(&j.dv)];
                    let h11 = j.du.norm_squared() + d.dot(&j.duu);
                    let h12 = j.du.dot(&j.dv) + d.dot(&j.duv);
                    let h22 = j.dv.norm_squared() + d.dot(&j.dvv);
                    let det = h11 * h22 - h12 * h12;
                    if !(det > 1e-14 * (h11 * h22).abs()) || !(h11 > 0.0) {
                        break;
                    }
                    let du = ((h22 * g[0] - h12 * g[1]) / det).clamp(-0.3, 0.3);
                    let dv = ((h11 * g[1] - h12 * g[0]) / det).clamp(-0.3, 0.3);
                    u -= du;
                    v -= dv;
                    if du.abs().max(dv.abs()) < 1e-14 {
                        break;
                    }
                }
                (u.clamp(0.0, PI), v)
            }
        }
    }

    /// Adds (1/(z+n))∫_{∂Ω}|y−x|^z⟨y−x,n_y⟩dy for each z into `out`, with the
    /// boundary chart centred at the foot point of x.
    fn inner_boundary(&self, man: &Manifold<'_>, a: &Anchor, x: &V3, zs: &[C64], res: &Resolution, out: &mut [C64]) {
        let n = self.n as f64;
        let delta = (a.x - x).norm();
        let smallest = (1e-3 * delta / self.diam).max(1e-250);
        let gl = quad::gauss_legendre(res.radial);
        for r in man.rays(a, res) {
            let breaks = quad::panels_toward_zero(r.rho_max, res.panel, 0.3, smallest);
            for w2 in breaks.windows(2) {
                let half = 0.5 * (w2[1] - w2[0]);
                let mid = 0.5 * (w2[1] + w2[0]);
                for (xg, wg) in gl.nodes.iter().zip(&gl.weights) {
                    let rho = mid + half * xg;
                    let s = man.sample(a, &r, rho);
                    let ny = man.sample_normal(a, &r, rho);
                    let d = s.y - x;
                    let dist = d.norm();
                    let w = r.weight * s.density * half * wg * d.dot(&ny);
                    for (o, &z) in out.iter_mut().zip(zs) {
                        *o += cpow(dist, z) * w / (z + n);
                    }
                }
            }
        }
    }

    /// The primary value at z with its method and residue.
    pub fn primary(&self, z: C64) -> Result<(C64, Method, C64)> {
        let n = self.n as f64;
        let res_z = self.residue_at(z);
        if z == c(-n) {
            let v = pole_removed_value(|w| self.boundary_integral(w), self.n as u32, res_z)?;
            return Ok((v, Method::PoleRemoval, res_z));
        }
        if z == c(-2.0) {
            // Removable: the prefactor pole cancels against ∬⟨n_x,n_y⟩ = 0.
            let v = pole_removed_value(|w| self.boundary_integral(w), 2, ZERO)?;
            return Ok((v, Method::BoundaryIntegral, ZERO));
        }
        if z.re > -n - 1.0 {
            return Ok((self.boundary_integral(z)?, Method::BoundaryIntegral, res_z));
        }
        let (v, r) = self.second_approach(z)?;
        Ok((v, Method::ProfileContinuation, r))
    }
}

/// Q(L) with I_Ω(ε) = −∬_{r>ε} r^{z+2} Q(log(r/ε)) ⟨n_x,n_y⟩.
fn q_kernel(n: usize, z: C64, l: f64) -> C64 {
    if n == 2 {
        let a = z + 2.0;
        let x = a * l;
        if x.norm() < 0.1 {
            // L² Σ_{k≥2} (k−1)(−aL)^{k−2}/k!
            let mut q = c(0.5);
            let mut sum = q;
            for k in 3..24 {
                q *= -x / k as f64;
                let t = q * (k - 1) as f64;
                sum += t;
                if t.norm() < 1e-18 * sum.norm() {
                    break;
                }
            }
            sum * (l * l)
        } else {
            (1.0 - (-x).exp() * (1.0 + x)) / (a * a)
        }
    } else {
        (e_kernel(z + 2.0, l) - e_kernel(z + n as f64, l)) / (n as f64 - 2.0)
    }
}

/// (1 − e^{−aL})/a, stable near a = 0.
fn e_kernel(a: C64, l: f64) -> C64 {
    let x = a * l;
    if x.norm() < 0.1 {
        let mut term = c(l);
        let mut sum = term;
        for k in 2..20 {
            term *= -x / k as f64;
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        (1.0 - (-x).exp()) / a
    }
}

fn finish(mut rep: EnergyReport, domain: &Domain, start: Instant) -> Result<EnergyReport> {
    rep.residues = domain_residues(domain)?.into_iter().map(|r| (r.k, r.value)).collect();
    if domain.dim() == 2 {
        rep.euler_characteristic = Some(1);
    }
    rep.elapsed = start.elapsed();
    Ok(rep)
}

/// Report jet shortfalls at the energy exponent rather than the shifted one.
fn shift_jet_error(e: RieszError, z: C64) -> RieszError {
    match e {
        RieszError::InsufficientJetOrder { required, available, .. } => RieszError::InsufficientJetOrder { required, available, z: zfmt(z) },
        e => e,
    }
}

fn ball_closed(domain: &Domain, z: C64) -> Option<Result<C64>> {
    let r = domain.ball_radius()?;
    let n = domain.dim() as u32;
    let scale = |v: C64| v * cpow(r, z + 2.0 * n as f64);
    Some(match beta_ball_closed_form(n, z) {
        Ok(v) if r == 1.0 => Ok(v),
        Ok(v) => Ok(scale(v)),
        Err(RieszError::PoleAt(_)) => {
            // Pole-removed value, with the homothety log term for r ≠ 1.
            let k = (-z.re) as u32;
            let f = |w: C64| beta_ball_closed_form(n, w);
            match (crate::closed_energy::closed_form_pole_removed(f, k), residue_estimate(f, k)) {
                (Ok(v), Ok(res)) => Ok(cpow(r, z + 2.0 * n as f64) * (v + r.ln() * res)),
                (Err(e), _) | (_, Err(e)) => Err(e),
            }
        }
        Err(e) => Err(e),
    })
}

/// E_Ω(z) for any z covered by the jets (pole-removed at poles).
pub fn domain_energy(domain: &Domain, z: C64) -> Result<EnergyReport> {
    domain_energy_with(domain, z, &EnergyOptions::default())
}

pub fn domain_energy_with(domain: &Domain, z: C64, opts: &EnergyOptions) -> Result<EnergyReport> {
    let start = Instant::now();
    let label = Shape::Domain(domain.clone()).to_string();
    if domain.dim() == 4 {
        let v = ball_closed(domain, z).ok_or(RieszError::UnsupportedDimension(4))??;
        let mut rep = EnergyReport::new(label, z, v, Method::ClosedForm);
        rep.residue_at_z = ball_residue(domain, z)?;
        return finish(rep, domain, start);
    }
    let ctx = DomainEnergy::new(domain, opts)?;
    let (value, method, res_z) = ctx.primary(z)?;
    let mut rep = EnergyReport::new(label, z, value, method);
    rep.residue_at_z = res_z;
    rep.counterterms = ctx.counterterms(z);
    let n = ctx.n as f64;
    if opts.cross_check {
        if z.re > -n && z != c(-2.0) {
            rep.cross_checks.push(CrossCheck { method: Method::VolumeDirect, value: ctx.volume_direct_many(&[z])?[0] });
        }
        if method != Method::ProfileContinuation && z != c(-2.0) && z != c(-n) {
            if let Ok((v, _)) = ctx.second_approach(z) {
                rep.cross_checks.push(CrossCheck { method: Method::ProfileContinuation, value: v });
            }
        } else if method == Method::ProfileContinuation {
            let fit = ctx.counterterm_cutoff(z)?;
            rep.cross_checks.push(CrossCheck { method: Method::CountertermCutoff, value: fit.constant });
        } else if ctx.n == 2 {
            rep.cross_checks.push(CrossCheck { method: Method::ProfileContinuation, value: ctx.psi_profile(z)?.0 });
        }
        if let Some(Ok(v)) = ball_closed(domain, z) {
            rep.cross_checks.push(CrossCheck { method: Method::ClosedForm, value: v });
        }
    }
    if opts.error_estimate {
        let coarse = DomainEnergy::new(domain, &EnergyOptions { resolution: Some(ctx.res.coarser()), ..opts.clone() })?;
        let mut e = (coarse.primary(z)?.0 - value).norm();
        for cc in &rep.cross_checks {
            e = e.max((cc.value - value).norm());
        }
        rep.error_estimate = e;
    }
    check_agreement(&rep, opts, ctx.ci.volume.unwrap_or(1.0).powi(2))?;
    finish(rep, domain, start)
}

fn check_agreement(rep: &EnergyReport, opts: &EnergyOptions, size: f64) -> Result<()> {
    if !opts.cross_check {
        return Ok(());
    }
    let scale = rep.value.norm().max(size * 1e-3);
    for cc in &rep.cross_checks {
        if (cc.value - rep.value).norm() > opts.tol * scale {
            return Err(RieszError::MethodsDisagree {
                a: format!("{} = {}", rep.method, zfmt(rep.value)),
                b: format!("{} = {}", cc.method, zfmt(cc.value)),
                tol: opts.tol,
            });
        }
    }
    Ok(())
}

/// ∬_{Ω×Ω}|x−y|^z by volume quadrature (Re z > −n), cross-checked against
/// the boundary integral.
pub fn domain_energy_direct(domain: &Domain, z: C64) -> Result<EnergyReport> {
    let start = Instant::now();
    let n = domain.dim() as f64;
    if !(z.re > -n) {
        return Err(RieszError::ExponentNotConvergent { z: zfmt(z), bound: -n });
    }
    let opts = EnergyOptions::default();
    let ctx = DomainEnergy::new(domain, &opts)?;
    let value = ctx.volume_direct_many(&[z])?[0];
    let mut rep = EnergyReport::new(Shape::Domain(domain.clone()).to_string(), z, value, Method::VolumeDirect);
    let coarse = ctx.volume_formula_many(&[z], &ctx.vres.coarser())?[0];
    rep.error_estimate = (coarse - value).norm();
    if z != c(-2.0) {
        rep.cross_checks.push(CrossCheck { method: Method::BoundaryIntegral, value: ctx.boundary_integral(z)? });
    }
    finish(rep, domain, start)
}

/// E_Ω(z) from the boundary: the double boundary integral for
/// Re z > −n−1, the second approach below. z ∈ {−2, −n} is excluded.
pub fn domain_energy_boundary(domain: &Domain, z: C64) -> Result<EnergyReport> {
    let start = Instant::now();
    let n = domain.dim() as f64;
    if z == c(-2.0) || z == c(-n) {
        return Err(RieszError::ExcludedExponent { z: zfmt(z) });
    }
    let ctx = DomainEnergy::new(domain, &EnergyOptions::default())?;
    let label = Shape::Domain(domain.clone()).to_string();
    let mut rep = if z.re > -n - 1.0 {
        EnergyReport::new(label, z, ctx.boundary_integral(z)?, Method::BoundaryIntegral)
    } else {
        let (v, r) = ctx.second_approach(z)?;
        let mut rep = EnergyReport::new(label, z, v, Method::ProfileContinuation);
        rep.residue_at_z = r;
        rep
    };
    if rep.method == Method::BoundaryIntegral {
        if let Ok((v, _)) = ctx.second_approach(z) {
            rep.cross_checks.push(CrossCheck { method: Method::ProfileContinuation, value: v });
            rep.error_estimate = (v - rep.value).norm();
        }
    }
    finish(rep, domain, start)
}

/// Fractional perimeter P_Ω(z) = ∫_Ω∫_{Ωᶜ}|x−y|^z, −n−1 < Re z < −n.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalPerimeter {
    pub z: C64,
    /// −(boundary-integral value).
    pub value: C64,
    /// Outer volume quadrature over Ω with the exterior integral moved to ∂Ω.
    pub direct: C64,
}

pub fn fractional_perimeter(domain: &Domain, z: C64) -> Result<FractionalPerimeter> {
    let n = domain.dim() as f64;
    if !(z.re > -n - 1.0 && z.re < -n) {
        return Err(RieszError::ExponentOutOfRange { z: zfmt(z), lo: -n - 1.0, hi: -n });
    }
    let ctx = DomainEnergy::new(domain, &EnergyOptions::default())?;
    let value = -ctx.boundary_integral(z)?;
    let direct = -ctx.volume_formula_many(&[z], &ctx.vres)?[0];
    Ok(FractionalPerimeter { z, value, direct })
}

/// Residues of B_Ω at −n, −n−1 and −n−3 from volume and curvature integrals.
pub fn domain_residues(domain: &Domain) -> Result<Vec<Residue>> {
    let n = domain.dim();
    let ci = curvature_integrals(&Shape::Domain(domain.clone()))?;
    let jet = psi_domain_derivative_jet(n, &ci)?;
    let err = ci.error_estimate;
    Ok([n, n + 1, n + 3]
        .into_iter()
        .map(|k| Residue { k: k as u32, value: jet.coeff(k - 1), error_estimate: err * jet.coeff(k - 1).abs().max(1.0) })
        .collect())
}

/// The n = 4 residue formulas as a plain evaluator:
/// R(−4) = 2π²V₄, R(−5) = −(4π/3)V₃, R(−7) = (π/90)∫(27H²−4K).
pub fn residues_dim4(v4: f64, v3: f64, integral_27h2_minus_4k: f64) -> [(u32, f64); 3] {
    [(4, 2.0 * PI * PI * v4), (5, -4.0 * PI / 3.0 * v3), (7, PI / 90.0 * integral_27h2_minus_4k)]
}

/// Boundary double-integral forms of the first residues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueIdentity {
    pub k: u32,
    pub boundary_integral: f64,
    pub curvature_formula: f64,
}

/// n = 2: −∬log|x−y|⟨n_x,n_y⟩ = 2πA; n = 3: ∬|x−y|^{−1}⟨n_x,n_y⟩ = 4πV.
pub fn residue_identities(domain: &Domain) -> Result<Vec<ResidueIdentity>> {
    let ctx = DomainEnergy::new(domain, &EnergyOptions::default())?;
    let n = ctx.n;
    let v = ctx.ci.volume.unwrap_or(f64::NAN);
    let man = ctx.man();
    let val = if n == 2 {
        -man.pair_integral(Cutoff::Singular { power: 0.9 }, |r| c(r.ln()), Weight::NormalDot, &ctx.res).re
    } else {
        man.pair_integral(Cutoff::Singular { power: 1.0 }, |r| c(r.powf(2.0 - n as f64)), Weight::NormalDot, &ctx.res).re
            / (n as f64 - 2.0)
    };
    Ok(vec![ResidueIdentity { k: n as u32, boundary_integral: val, curvature_formula: sphere_area(n as u32 - 1) * v }])
}

fn ball_residue(domain: &Domain, z: C64) -> Result<C64> {
    match nonpositive_integer(z) {
        Some(k) if k >= 1 => {
            let n = domain.dim() as u32;
            let r = domain.ball_radius().unwrap_or(1.0);
            if ball_poles(n, -(k as f64)).contains(&k) {
                Ok(residue_estimate(|w| beta_ball_closed_form(n, w), k)? * r.powi(2 * n as i32 - k as i32))
            } else {
                Ok(ZERO)
            }
        }
        _ => Ok(ZERO),
    }
}

/// Regularized energy at z = −2n: counterterm cutoff as primary value,
/// cross-checked by the second approach, the ψ_Ω profile (n = 2) and, for
/// balls, the closed form.
pub fn regularized_minus2n_energy(domain: &Domain) -> Result<EnergyReport> {
    regularized_minus2n_energy_with(domain, &EnergyOptions::default())
}

pub fn regularized_minus2n_energy_with(domain: &Domain, opts: &EnergyOptions) -> Result<EnergyReport> {
    let start = Instant::now();
    let n = domain.dim();
    let z = c(-2.0 * n as f64);
    if n == 4 {
        return domain_energy_with(domain, z, opts);
    }
    let ctx = DomainEnergy::new(domain, opts)?;
    let fit = ctx.counterterm_cutoff(z)?;
    let mut rep =
        EnergyReport::new(Shape::Domain(domain.clone()).to_string(), z, fit.constant, Method::CountertermCutoff);
    rep.residue_at_z = ctx.residue_at(z);
    rep.counterterms = ctx.counterterms(z);
    if opts.cross_check {
        rep.cross_checks.push(CrossCheck { method: Method::ProfileContinuation, value: ctx.second_approach(z)?.0 });
        if n == 2 {
            rep.cross_checks.push(CrossCheck { method: Method::ProfileContinuation, value: ctx.psi_profile(z)?.0 });
        }
        if let Some(Ok(v)) = ball_closed(domain, z) {
            rep.cross_checks.push(CrossCheck { method: Method::ClosedForm, value: v });
        }
    }
    let mut e: f64 = 0.0;
    for cc in &rep.cross_checks {
        e = e.max((cc.value - rep.value).norm());
    }
    if opts.error_estimate {
        let coarse = DomainEnergy::new(domain, &EnergyOptions { resolution: Some(ctx.res.coarser()), ..opts.clone() })?;
        e = e.max((coarse.counterterm_cutoff(z)?.constant - rep.value).norm());
    }
    rep.error_estimate = e;
    check_agreement(&rep, opts, ctx.ci.volume.unwrap_or(1.0).powi(2))?;
    finish(rep, domain, start)
}

/// Planar energy E(Ω) = E_Ω(−4) + (π²/4)χ(Ω), with χ = 1 for the
/// simply connected built-ins.
pub fn planar_energy(domain: &Domain) -> Result<(C64, EnergyReport)> {
    if domain.dim() != 2 {
        return Err(RieszError::UnsupportedDimension(domain.dim()));
    }
    let rep = regularized_minus2n_energy(domain)?;
    let chi = rep.euler_characteristic.unwrap_or(1) as f64;
    Ok((rep.value + PI * PI / 4.0 * chi, rep))
}

/// B(z) of the unit n-ball: 2^{z+n} o_{n−1} o_{n−2}/((n−1)(z+n)) ·
/// B((z+n+1)/2, (n+1)/2).
pub fn beta_ball_closed_form(n: u32, z: C64) -> Result<C64> {
    if n < 2 {
        return Err(RieszError::UnsupportedDimension(n as usize));
    }
    let nf = n as f64;
    if z == c(-nf) {
        return Err(RieszError::PoleAt(z.re));
    }
    let a = (z + nf + 1.0) * 0.5;
    let b = 0.5 * (nf + 1.0);
    let ratio = gamma_ratio(a, b).map_err(|_| RieszError::PoleAt(z.re))?;
    let pre = cpow(2.0, z + nf) * sphere_area(n - 1) * sphere_area(n - 2) / ((nf - 1.0) * (z + nf));
    Ok(pre * gamma(c(b))? * ratio)
}

/// Poles of the unit n-ball beta function at or above `lowest`:
/// −n and −n−1−2j (finitely many, ending at −2n, for odd n).
pub fn ball_poles(n: u32, lowest: f64) -> Vec<u32> {
    let mut out = vec![n];
    let mut k = n + 1;
    while -(k as f64) >= lowest {
        if n % 2 == 0 || k <= 2 * n {
            out.push(k);
        }
        k += 2;
    }
    out.retain(|&k| -(k as f64) >= lowest);
    out
}

/// Which ball kinds have closed forms here.
pub fn is_round_ball(domain: &Domain) -> bool {
    matches!(domain.kind(), DomainKind::Disk { .. } | DomainKind::Ball { .. }) && domain.ball_radius().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_energy::is_close;
    use crate::shapes::parse_shape;

    fn close(a: C64, b: C64, rel: f64) -> bool {
        is_close(a, b, rel, 0.0)
    }

    fn dom(s: &str) -> Domain {
        match parse_shape(s).unwrap() {
            Shape::Domain(d) => d,
            _ => unreachable!(),
        }
    }

    #[test]
    fn ball_closed_form_basics() {
        assert!((beta_ball_closed_form(2, c(0.0)).unwrap().re - PI * PI).abs() < 1e-12);
        let v3 = 4.0 * PI / 3.0;
        assert!((beta_ball_closed_form(3, c(0.0)).unwrap().re - v3 * v3).abs() < 1e-12);
        assert_eq!(ball_poles(3, -20.0), vec![3, 4, 6]);
        assert_eq!(ball_poles(2, -7.0), vec![2, 3, 5, 7]);
        assert!(beta_ball_closed_form(3, c(-8.0)).is_ok());
        assert!(matches!(beta_ball_closed_form(3, c(-6.0)), Err(RieszError::PoleAt(_))));
    }

    #[test]
    fn q_kernel_series_matches_closed() {
        for n in [2usize, 3, 4] {
            for &z in &[c(-2.0 - 1e-9), c(-3.0), c(-5.5)] {
                for &l in &[1e-3, 0.01, 0.5, 2.0] {
                    // Direct quadrature of ∫_0^L e^{-(z+2)u}(1 − e^{−(n−2)u})/(n−2) du.
                    let rule = quad::composite(0.0, l, 8, 20);
                    let want = rule.integrate_c(|u| {
                        let g = if n == 2 { c(u) } else { c((1.0 - (-((n - 2) as f64) * u).exp()) / (n - 2) as f64) };
                        (-(z + 2.0) * u).exp() * g
                    });
                    let got = q_kernel(n, z, l);
                    assert!((got - want).norm() < 1e-12 * want.norm().max(1e-300) + 1e-15, "{n} {z} {l}: {got} {want}");
                }
            }
        }
    }

    #[test]
    fn disk_boundary_volume_and_closed_form() {
        let d = dom("disk(r=1)");
        let ctx = DomainEnergy::new(&d, &EnergyOptions::default()).unwrap();
        for z in [0.0, -0.5, -1.0] {
            let want = beta_ball_closed_form(2, c(z)).unwrap();
            let b = ctx.boundary_integral(c(z)).unwrap();
            let v = ctx.volume_direct_many(&[c(z)]).unwrap()[0];
            assert!(close(b, want, 1e-9), "z={z}: boundary {b} vs {want}");
            assert!(close(v, want, 1e-7), "z={z}: volume {v} vs {want}");
        }
    }
}
