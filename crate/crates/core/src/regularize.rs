//! One-dimensional regularization of `∫₀^∞ t^z φ(t) dt` for φ smooth near 0:
//! Hadamard finite parts, residues, Laurent fits of cutoff samples and
//! pole removal of meromorphic continuations.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{zfmt, Result, RieszError};
use crate::quad::{self, Rule};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Declared symmetry of φ under t ↦ −t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

impl Parity {
    /// Whether the coefficient of t^i may be nonzero.
    pub fn allows(self, i: usize) -> bool {
        match self {
            Parity::Even => i % 2 == 0,
            Parity::Odd => i % 2 == 1,
            Parity::None => true,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::None => Parity::None,
        }
    }
}

/// Truncated Taylor expansion at t = 0: `coeffs[i] = φ⁽ⁱ⁾(0)/i!`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorJet {
    coeffs: Vec<f64>,
    parity: Parity,
}

impl TaylorJet {
    /// Coefficients forbidden by `parity` are set to exactly zero.
    pub fn new(mut coeffs: Vec<f64>, parity: Parity) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(RieszError::InvalidArgument("a Taylor jet needs at least one coefficient".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(RieszError::InvalidArgument("non-finite jet coefficient".into()));
        }
        for (i, c) in coeffs.iter_mut().enumerate() {
            if !parity.allows(i) {
                *c = 0.0;
            }
        }
        Ok(Self { coeffs, parity })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn truncated(&self, k: usize) -> TaylorJet {
        TaylorJet { coeffs: self.coeffs[..k.clamp(1, self.coeffs.len())].to_vec(), parity: self.parity }
    }

    pub fn scaled(&self, s: f64) -> TaylorJet {
        TaylorJet { coeffs: self.coeffs.iter().map(|c| c * s).collect(), parity: self.parity }
    }

    /// Jet of φ′, one order shorter.
    pub fn derivative(&self) -> TaylorJet {
        let coeffs: Vec<f64> = if self.coeffs.len() <= 1 {
            vec![0.0]
        } else {
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect()
        };
        TaylorJet { coeffs, parity: self.parity.flip() }
    }

    /// Jet of ∫₀ᵗ φ, one order longer.
    pub fn antiderivative(&self) -> TaylorJet {
        let mut coeffs = vec![0.0];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(i, c)| c / (i as f64 + 1.0)));
        TaylorJet { coeffs, parity: self.parity.flip() }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FitDiagnostics {
    pub condition_number: f64,
    pub residual_norm: f64,
}

/// Finite part and residue of one regularized integral.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularizedValue {
    pub z: C64,
    pub finite_part: C64,
    pub residue: C64,
    pub has_log: bool,
    pub diagnostics: FitDiagnostics,
}

impl RegularizedValue {
    fn new(z: C64, finite_part: C64, residue: C64) -> Self {
        let scale = finite_part.norm().max(1.0);
        Self {
            z,
            finite_part,
            residue,
            has_log: residue.norm() >= RESIDUE_ZERO_TOL * scale,
            diagnostics: FitDiagnostics::default(),
        }
    }
}

/// Relative threshold below which a residue counts as zero.
pub const RESIDUE_ZERO_TOL: f64 = 1e-7;

/// Index j with z + j + 1 = 0, if any.
pub(crate) fn pole_index(z: C64, order: usize) -> Option<usize> {
    if z.im != 0.0 || z.re.fract() != 0.0 || z.re > -1.0 {
        return None;
    }
    let j = (-z.re - 1.0) as usize;
    (j < order).then_some(j)
}

#[inline]
pub(crate) fn cpow(t: f64, z: C64) -> C64 {
    if z.im == 0.0 {
        C64::new(t.powf(z.re), 0.0)
    } else {
        (z * t.ln()).exp()
    }
}

/// `Pf ∫₀^d t^z Σ c_j t^j dt`, evaluated term by term.
pub fn finite_part_jet(jet: &TaylorJet, d: f64, z: C64) -> RegularizedValue {
    assert!(d > 0.0, "finite_part_jet needs d > 0");
    let pole = pole_index(z, jet.order());
    let mut fp = ZERO;
    for (j, &c) in jet.coeffs().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        if Some(j) == pole {
            fp += c * d.ln();
        } else {
            let a = z + (j as f64 + 1.0);
            fp += c * cpow(d, a) / a;
        }
    }
    let residue = pole.map_or(ZERO, |j| C64::new(jet.coeff(j), 0.0));
    RegularizedValue::new(z, fp, residue)
}

/// The part of a profile beyond its smoothness radius.
#[derive(Clone)]
pub enum Tail {
    /// φ vanishes beyond d.
    Zero,
    /// Quadrature nodes `(t, weight, φ(t))` on (d, t_max].
    Samples(Vec<(f64, f64, f64)>),
    /// z ↦ ∫_d^∞ t^z φ(t) dt, for tails that are not smooth functions of t.
    Moment(Arc<dyn Fn(C64) -> Result<C64> + Send + Sync>),
}

impl fmt::Debug for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tail::Zero => write!(f, "Zero"),
            Tail::Samples(s) => write!(f, "Samples({})", s.len()),
            Tail::Moment(_) => write!(f, "Moment(..)"),
        }
    }
}

impl Tail {
    pub fn moment(&self, z: C64) -> Result<C64> {
        match self {
            Tail::Zero => Ok(ZERO),
            Tail::Samples(s) => Ok(s.iter().fold(ZERO, |acc, &(t, w, v)| acc + cpow(t, z) * (w * v))),
            Tail::Moment(f) => f(z),
        }
    }
}

/// A radial function sampled on quadrature nodes of [0, d], with its jet at 0
/// and the contribution beyond d.
#[derive(Debug, Clone)]
pub struct PsiProfile {
    pub d: f64,
    pub t_max: f64,
    pub jet: TaylorJet,
    /// `(t, φ(t))`, t in (0, d].
    pub samples: Vec<(f64, f64)>,
    /// Quadrature weights matching `samples`.
    pub weights: Vec<f64>,
    pub tail: Tail,
}

/// Number of dyadic levels toward 0 in the standard profile rule.
pub const PROFILE_LEVELS: usize = 8;
pub const PROFILE_ORDER: usize = 12;

impl PsiProfile {
    /// Dyadically graded Gauss–Legendre rule on [0, d].
    pub fn standard_rule(d: f64) -> Rule {
        let mut br: Vec<f64> = (0..=PROFILE_LEVELS).rev().map(|l| d * 0.5f64.powi(l as i32)).collect();
        br.insert(0, 0.0);
        quad::rule_from_breaks(&br, PROFILE_ORDER)
    }

    pub fn from_values(d: f64, t_max: f64, jet: TaylorJet, rule: &Rule, values: Vec<f64>, tail: Tail) -> Self {
        assert_eq!(rule.len(), values.len());
        Self {
            d,
            t_max,
            jet,
            samples: rule.nodes.iter().copied().zip(values).collect(),
            weights: rule.weights.clone(),
            tail,
        }
    }

    pub fn from_fn(d: f64, t_max: f64, jet: TaylorJet, f: impl Fn(f64) -> f64, tail: Tail) -> Self {
        let rule = Self::standard_rule(d);
        let values = rule.nodes.iter().map(|&t| f(t)).collect();
        Self::from_values(d, t_max, jet, &rule, values, tail)
    }

    /// Jet order used for exponent z: ⌈−Re z⌉ + 2, capped by what is known.
    pub fn jet_order_for(&self, z: C64) -> Result<usize> {
        let need = (-z.re).ceil().max(0.0) as usize;
        if self.jet.order() < need {
            return Err(RieszError::InsufficientJetOrder { required: need, available: self.jet.order(), z: zfmt(z) });
        }
        Ok((need + 2).min(self.jet.order()).max(1))
    }
}

/// `Pf ∫₀^d t^z φ(t) dt` from samples of φ on [`PsiProfile::standard_rule`].
///
/// The remainder φ − jet is integrated from the samples on the top `levels`
/// dyadic panels only; below t₀ = d·2^(−levels) it is replaced by a
/// least-squares model Σ aᵢtⁱ over the next jet orders, fitted on [t₀, 4t₀].
/// Sampling noise gets amplified by t^z near 0, so strongly negative
/// exponents want few levels.
pub fn finite_part_sampled(jet: &TaylorJet, d: f64, rule: &Rule, values: &[f64], z: C64, levels: usize) -> Result<RegularizedValue> {
    let need = (-z.re).ceil().max(0.0) as usize;
    if jet.order() < need {
        return Err(RieszError::InsufficientJetOrder { required: need, available: jet.order(), z: zfmt(z) });
    }
    let k = (need + 2).min(jet.order()).max(1);
    let tj = jet.truncated(k);
    let poly = finite_part_jet(&tj, d, z);
    let all = levels > PROFILE_LEVELS;
    let t0 = d * 0.5f64.powi(levels.min(PROFILE_LEVELS) as i32);
    let cut = t0 * (1.0 - 1e-12);
    let mut rem = ZERO;
    let mut fit_t = Vec::new();
    let mut fit_r = Vec::new();
    for ((&t, &w), &v) in rule.nodes.iter().zip(&rule.weights).zip(values) {
        let r = v - tj.eval(t);
        if all || t >= cut {
            rem += cpow(t, z) * (w * r);
        }
        if !all && t >= cut && t <= 4.0 * t0 {
            fit_t.push(t / t0);
            fit_r.push(r);
        }
    }
    if !all {
        let powers: Vec<usize> = (k..k + 8).filter(|&i| jet.parity().allows(i)).take(3).collect();
        let mut a = DMatrix::<f64>::zeros(fit_t.len(), powers.len());
        for (row, &t) in fit_t.iter().enumerate() {
            for (col, &p) in powers.iter().enumerate() {
                a[(row, col)] = t.powi(p as i32);
            }
        }
        let b = nalgebra::DVector::from_column_slice(&fit_r);
        let x = a.svd(true, true).solve(&b, 0.0).map_err(|e| RieszError::FitUnstable(e.to_string()))?;
        for (col, &p) in powers.iter().enumerate() {
            // a_p (t/t0)^p integrated against t^z over [0, t0].
            let e = z + (p as f64 + 1.0);
            rem += x[col] * cpow(t0, z + 1.0) / e;
        }
    }
    Ok(RegularizedValue::new(z, poly.finite_part + rem, poly.residue))
}

/// `Pf ∫₀^∞ t^z φ(t) dt` for a sampled profile.
pub fn finite_part_profile(profile: &PsiProfile, z: C64) -> Result<RegularizedValue> {
    let k = profile.jet_order_for(z)?;
    let jet = profile.jet.truncated(k);
    let mut rem = ZERO;
    for (&(t, v), &w) in profile.samples.iter().zip(&profile.weights) {
        rem += cpow(t, z) * (w * (v - jet.eval(t)));
    }
    let poly = finite_part_jet(&jet, profile.d, z);
    let tail = profile.tail.moment(z)?;
    Ok(RegularizedValue::new(z, poly.finite_part + rem + tail, poly.residue))
}

/// Which terms a Laurent fit uses: `ε^{z+j}` for each `j` in `powers`
/// (replaced by `log ε` when z + j = 0), plus an optional constant.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentBasis {
    pub powers: Vec<usize>,
    pub constant: bool,
}

impl LaurentBasis {
    pub fn up_to(k_max: usize) -> Self {
        Self { powers: (1..=k_max).collect(), constant: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    pub z: C64,
    /// `(j, a_j)` for the power terms `a_j ε^{z+j}`.
    pub terms: Vec<(usize, C64)>,
    /// Coefficient b of `log ε`.
    pub log_coeff: C64,
    /// Constant term c: the numerical finite part.
    pub constant: C64,
    pub diagnostics: FitDiagnostics,
}

impl LaurentSeries {
    /// Residue of the continuation at z. For `I(ε) = ∫_{t>ε}` the log term
    /// enters with the opposite sign of the pole.
    pub fn residue(&self) -> C64 {
        -self.log_coeff
    }

    pub fn coeff(&self, j: usize) -> Option<C64> {
        self.terms.iter().find(|t| t.0 == j).map(|t| t.1)
    }

    pub fn eval(&self, eps: f64) -> C64 {
        let mut v = self.constant + self.log_coeff * eps.ln();
        for &(j, a) in &self.terms {
            v += a * cpow(eps, self.z + j as f64);
        }
        v
    }
}

pub const DEFAULT_COND_BOUND: f64 = 1e14;

/// Least-squares fit over `LaurentBasis::up_to(k_max)`.
pub fn laurent_fit(samples: &[(f64, C64)], z: C64, k_max: usize) -> Result<LaurentSeries> {
    if samples.len() < k_max + 3 {
        return Err(RieszError::InvalidArgument(format!(
            "laurent_fit needs at least {} samples, got {}",
            k_max + 3,
            samples.len()
        )));
    }
    laurent_fit_with(samples, z, &LaurentBasis::up_to(k_max), DEFAULT_COND_BOUND)
}

pub fn laurent_fit_with(samples: &[(f64, C64)], z: C64, basis: &LaurentBasis, cond_bound: f64) -> Result<LaurentSeries> {
    let log_j = pole_index(z - 1.0, usize::MAX);
    let mut cols: Vec<Option<usize>> = basis.powers.iter().map(|&j| Some(j)).collect();
    if basis.constant {
        cols.push(None);
    }
    let (nr, nc) = (samples.len(), cols.len());
    if nc == 0 || nr < nc {
        return Err(RieszError::InvalidArgument("underdetermined Laurent fit".into()));
    }
    if samples.iter().any(|s| !(s.0 > 0.0) || !s.1.re.is_finite() || !s.1.im.is_finite()) {
        return Err(RieszError::InvalidArgument("Laurent samples need eps > 0 and finite values".into()));
    }
    let mut a = DMatrix::<C64>::zeros(nr, nc);
    for (r, &(eps, _)) in samples.iter().enumerate() {
        for (c, col) in cols.iter().enumerate() {
            a[(r, c)] = match *col {
                Some(j) if Some(j) == log_j => C64::new(eps.ln(), 0.0),
                Some(j) => cpow(eps, z + j as f64),
                None => C64::new(1.0, 0.0),
            };
        }
    }
    let mut scale = vec![1.0; nc];
    for (c, s) in scale.iter_mut().enumerate() {
        let m = (0..nr).map(|r| a[(r, c)].norm()).fold(0.0, f64::max);
        if m > 0.0 {
            *s = 1.0 / m;
            for r in 0..nr {
                a[(r, c)] *= *s;
            }
        }
    }
    let b = DMatrix::<C64>::from_iterator(nr, 1, samples.iter().map(|s| s.1));
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(cond <= cond_bound) {
        return Err(RieszError::IllConditionedFit { cond, bound: cond_bound });
    }
    let x = svd.solve(&b, 0.0).map_err(|e| RieszError::FitUnstable(e.to_string()))?;
    let resid = (&a * &x - &b).norm() / b.norm().max(f64::MIN_POSITIVE);
    let mut out = LaurentSeries {
        z,
        terms: Vec::new(),
        log_coeff: ZERO,
        constant: ZERO,
        diagnostics: FitDiagnostics { condition_number: cond, residual_norm: resid },
    };
    for (c, col) in cols.iter().enumerate() {
        let v = x[(c, 0)] * scale[c];
        match *col {
            Some(j) if Some(j) == log_j => out.log_coeff = v,
            Some(j) => out.terms.push((j, v)),
            None => out.constant = v,
        }
    }
    Ok(out)
}

/// Step sizes for symmetric evaluation around a pole.
pub const POLE_STEPS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

fn neville_at_zero(h: &[f64; 3], g: &[C64; 3]) -> C64 {
    // Quadratic in x = h², extrapolated to x = 0.
    let x: Vec<f64> = h.iter().map(|v| v * v).collect();
    let mut p = *g;
    for m in 1..3 {
        for i in 0..3 - m {
            p[i] = (p[i + 1] * x[i] - p[i] * x[i + m]) / (x[i] - x[i + m]);
        }
    }
    p[0]
}

/// `lim_{z→−k} (F(z) − residue/(z+k))` from symmetric samples at −k ± h,
/// Richardson-extrapolated in h².
pub fn pole_removed_value(f: impl Fn(C64) -> Result<C64>, k: u32, residue: C64) -> Result<C64> {
    let center = C64::new(-(k as f64), 0.0);
    let mut sym = [ZERO; 3];
    let mut anti = [ZERO; 3];
    for (i, &h) in POLE_STEPS.iter().enumerate() {
        let fp = f(center + h)?;
        let fm = f(center - h)?;
        sym[i] = 0.5 * (fp + fm);
        anti[i] = 0.5 * (fp - fm) * h;
    }
    let value = neville_at_zero(&POLE_STEPS, &sym);
    let res_est = neville_at_zero(&POLE_STEPS, &anti);
    let scale = value.norm().max(residue.norm()).max(1.0);
    if (res_est - residue).norm() > 1e-6 * scale {
        return Err(RieszError::NonSimplePole {
            k,
            detail: format!("residue estimate {} differs from {}", zfmt(res_est), zfmt(residue)),
        });
    }
    let d1 = sym[0] - sym[1];
    let d2 = sym[1] - sym[2];
    if d1.norm() > 1e-9 * scale && d2.norm() > 0.0 && (d1 / d2).norm() < 2.0 {
        return Err(RieszError::NonSimplePole { k, detail: "symmetric part does not converge like h²".into() });
    }
    Ok(value)
}

/// Numerical residue of F at −k (zero when F is analytic there).
pub fn residue_estimate(f: impl Fn(C64) -> Result<C64>, k: u32) -> Result<C64> {
    let center = C64::new(-(k as f64), 0.0);
    let mut anti = [ZERO; 3];
    for (i, &h) in POLE_STEPS.iter().enumerate() {
        anti[i] = 0.5 * (f(center + h)? - f(center - h)?) * h;
    }
    Ok(neville_at_zero(&POLE_STEPS, &anti))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn jet_enforces_parity() {
        let j = TaylorJet::new(vec![1.0, 2.0, 3.0, 4.0], Parity::Odd).unwrap();
        assert_eq!(j.coeffs(), &[0.0, 2.0, 0.0, 4.0]);
        assert!(TaylorJet::new(vec![], Parity::None).is_err());
        assert_eq!(j.derivative().coeffs(), &[2.0, 0.0, 12.0]);
        assert_eq!(j.derivative().parity(), Parity::Even);
    }

    #[test]
    fn monomial_finite_parts() {
        let one = TaylorJet::new(vec![1.0], Parity::Even).unwrap();
        let v = finite_part_jet(&one, 1.0, c(-1.0));
        assert_eq!(v.finite_part, c(0.0));
        assert_eq!(v.residue, c(1.0));
        assert!(v.has_log);
        let v = finite_part_jet(&one, 3.0, c(-0.5));
        assert!((v.finite_part.re - 2.0 * 3f64.sqrt()).abs() < 1e-14);
        assert!(!v.has_log);
        let zero = TaylorJet::new(vec![0.0; 4], Parity::None).unwrap();
        assert_eq!(finite_part_jet(&zero, 2.0, c(-2.0)).finite_part, c(0.0));
    }

    #[test]
    fn profile_exp_residue_and_value() {
        let jet = TaylorJet::new((0..8).map(|i| 1.0 / (1..=i).product::<usize>().max(1) as f64).collect(), Parity::None)
            .unwrap();
        let p = PsiProfile::from_fn(1.0, 1.0, jet, f64::exp, Tail::Zero);
        let v = finite_part_profile(&p, c(-1.0)).unwrap();
        assert!((v.residue.re - 1.0).abs() < 1e-15);
        // Pf ∫₀¹ e^t/t dt = Ein(1) ... = Ei(1) − γ
        let want = 1.895_117_816_355_936_8 - 0.577_215_664_901_532_9;
        assert!((v.finite_part.re - want).abs() < 1e-11, "{}", v.finite_part);
    }

    #[test]
    fn fit_recovers_exact_basis_members() {
        let eps: Vec<f64> = (3..=10).map(|i| 2f64.powi(-i)).collect();
        let s: Vec<(f64, C64)> = eps.iter().map(|&e| (e, c((1.0 / e).ln()))).collect();
        let f = laurent_fit(&s, c(-1.0), 1).unwrap();
        assert!((f.log_coeff.re + 1.0).abs() < 1e-10);
        assert!(f.constant.norm() < 1e-10);
        let s: Vec<(f64, C64)> = eps.iter().map(|&e| (e, c(1.0 / e + 5.0))).collect();
        let f = laurent_fit(&s, c(-2.0), 1).unwrap();
        assert!((f.coeff(1).unwrap().re - 1.0).abs() < 1e-10);
        assert!((f.constant.re - 5.0).abs() < 1e-10);
    }

    #[test]
    fn pole_removal_of_monomial() {
        let d = 1.7f64;
        let f = |z: C64| Ok(cpow(d, z + 1.0) / (z + 1.0));
        let v = pole_removed_value(f, 1, c(1.0)).unwrap();
        assert!((v.re - d.ln()).abs() < 1e-11);
        assert!(pole_removed_value(f, 1, c(2.0)).is_err());
        let g = |z: C64| Ok(1.0 / ((z + 2.0) * (z + 2.0)));
        assert!(pole_removed_value(g, 2, c(0.0)).is_err());
    }
}
