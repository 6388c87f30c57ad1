//! Quadrature rules: Gauss–Legendre panels, periodic trapezoid and graded
//! panel layouts for integrands with a power-type singularity at an endpoint.

use std::sync::OnceLock;

use num_complex::Complex64 as C64;

const MAX_GL: usize = 64;

/// Nodes and weights on [-1, 1], ascending.
#[derive(Debug, Clone)]
pub struct GlRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

static GL_CACHE: [OnceLock<GlRule>; MAX_GL + 1] = [const { OnceLock::new() }; MAX_GL + 1];

/// Cached `n`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> &'static GlRule {
    assert!((1..=MAX_GL).contains(&n), "Gauss-Legendre order {n} out of range");
    GL_CACHE[n].get_or_init(|| {
        if n == 1 {
            return GlRule { nodes: vec![0.0], weights: vec![2.0] };
        }
        let rule = gauss_quad::GaussLegendre::new(n.try_into().expect("nonzero order"))
            .expect("Gauss-Legendre construction");
        let mut pairs: Vec<(f64, f64)> = rule.nodes().copied().zip(rule.weights().copied()).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        // Symmetrize to kill the last-bit asymmetry of the eigen solver.
        let m = pairs.len();
        for i in 0..m / 2 {
            let x = 0.5 * (pairs[m - 1 - i].0 - pairs[i].0);
            let w = 0.5 * (pairs[m - 1 - i].1 + pairs[i].1);
            pairs[i] = (-x, w);
            pairs[m - 1 - i] = (x, w);
        }
        if m % 2 == 1 {
            pairs[m / 2].0 = 0.0;
        }
        GlRule {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        }
    })
}

/// A one-dimensional rule with absolute nodes and weights.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn push_panel(&mut self, a: f64, b: f64, order: usize) {
        let gl = gauss_legendre(order);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (x, w) in gl.nodes.iter().zip(&gl.weights) {
            self.nodes.push(mid + half * x);
            self.weights.push(half * w);
        }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn integrate_c(&self, f: impl Fn(f64) -> C64) -> C64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(C64::new(0.0, 0.0), |acc, (&x, &w)| acc + f(x) * w)
    }
}

/// Composite Gauss–Legendre with `panels` equal panels.
pub fn composite(a: f64, b: f64, panels: usize, order: usize) -> Rule {
    let mut r = Rule::default();
    let h = (b - a) / panels as f64;
    for i in 0..panels {
        r.push_panel(a + i as f64 * h, a + (i + 1) as f64 * h, order);
    }
    r
}

/// Trapezoid rule for a `period`-periodic integrand, `n` nodes starting at `offset`.
pub fn periodic_trapezoid(n: usize, offset: f64, period: f64) -> Rule {
    let h = period / n as f64;
    Rule {
        nodes: (0..n).map(|i| offset + i as f64 * h).collect(),
        weights: vec![h; n],
    }
}

/// Breakpoints for an integrand singular at the left end `0` of `[a, b]`,
/// `a > 0`: panel widths grow geometrically (width = distance to 0) until
/// they reach `h_max`, then stay uniform.
pub fn panels_away_from_zero(a: f64, b: f64, h_max: f64) -> Vec<f64> {
    let mut pts = vec![a];
    let mut x = a;
    while x < b {
        let w = x.min(h_max).max(1e-300);
        let next = x + w;
        // Avoid a sliver at the end.
        x = if next > b || b - next < 0.25 * w { b } else { next };
        pts.push(x);
    }
    pts
}

/// Breakpoints on `[0, b]` graded geometrically toward 0 by factor `ratio`,
/// down to `smallest`, then uniform panels of width at most `h_max`.
pub fn panels_toward_zero(b: f64, h_max: f64, ratio: f64, smallest: f64) -> Vec<f64> {
    let first = h_max.min(b);
    let mut inner = vec![0.0];
    let mut x = first;
    let mut grading = Vec::new();
    while x > smallest {
        grading.push(x);
        x *= ratio;
    }
    grading.reverse();
    inner.extend(grading);
    if inner.len() == 1 {
        inner.push(first);
    }
    let mut x = *inner.last().unwrap();
    while x < b {
        let next = (x + h_max).min(b);
        x = if b - next < 0.25 * h_max { b } else { next };
        inner.push(x);
    }
    inner
}

pub fn rule_from_breaks(breaks: &[f64], order: usize) -> Rule {
    let mut r = Rule::default();
    for w in breaks.windows(2) {
        r.push_panel(w[0], w[1], order);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_integrates_polynomials_exactly() {
        for n in [1usize, 2, 5, 10, 20, 40] {
            let r = gauss_legendre(n);
            for k in 0..2 * n {
                let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                let got: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(k as i32)).sum();
                assert!((got - exact).abs() < 1e-13, "n={n} k={k}: {got} vs {exact}");
            }
        }
    }

    #[test]
    fn trapezoid_is_spectral_for_periodic() {
        let r = periodic_trapezoid(32, 0.0, std::f64::consts::TAU);
        let got = r.integrate(|t| (t.cos()).exp());
        // 2π I0(1)
        let exact = std::f64::consts::TAU * 1.266_065_877_752_008_4;
        assert!((got - exact).abs() < 1e-13);
    }

    #[test]
    fn graded_panels_handle_power_singularity() {
        let br = panels_toward_zero(1.0, 0.25, 0.25, 1e-40);
        let r = rule_from_breaks(&br, 12);
        let got = r.integrate(|t| t.powf(-0.5));
        assert!((got - 2.0).abs() < 1e-12, "{got}");
        let br = panels_away_from_zero(1e-3, 1.0, 0.2);
        let got = rule_from_breaks(&br, 10).integrate(|t| t.powi(-3));
        let exact = 0.5 * (1e6 - 1.0);
        assert!(((got - exact) / exact).abs() < 1e-12);
    }
}
