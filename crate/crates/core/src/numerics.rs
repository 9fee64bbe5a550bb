//! Quadrature and small-argument helpers shared by the other modules.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Gauss–Legendre rule on [−1, 1], nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub const MIN_ORDER: usize = 2;
    pub const MAX_ORDER: usize = 4096;

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// ∫₋₁¹ f(u) du.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }
}

/// Legendre polynomial P_n(x) and its derivative, by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for j in 2..=n {
        let jf = j as f64;
        let p_next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = p_next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Builds the n-point Gauss–Legendre rule by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if !(QuadratureRule::MIN_ORDER..=QuadratureRule::MAX_ORDER).contains(&n) {
        return Err(Error::QuadratureOrder(n));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi-style starting guess for the i-th largest root.
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 * x.abs().max(1e-300) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Sphere integral of an axisymmetric integrand: 2π ∫₋₁¹ f(u) du.
pub fn integrate_axial<F: FnMut(f64) -> f64>(mut f: F, rule: &QuadratureRule) -> Result<f64> {
    let mut acc = 0.0;
    for (u, w) in rule.iter() {
        let v = f(u);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { node: u, value: v });
        }
        acc += w * v;
    }
    Ok(2.0 * PI * acc)
}

/// Result of a node-doubling integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Converged {
    pub value: f64,
    pub nodes: usize,
    /// |I(n) − I(n/2)| at the accepted n.
    pub change: f64,
}

/// Doubles the rule order from `start` until two successive axial integrals
/// differ by less than `tol` (relative to max(1, |I|)) or `max_nodes` is reached.
pub fn integrate_axial_converged<F: FnMut(f64) -> f64>(
    mut f: F,
    start: usize,
    tol: f64,
    max_nodes: usize,
) -> Result<Converged> {
    let mut n = start.max(QuadratureRule::MIN_ORDER);
    let mut prev = integrate_axial(&mut f, &gauss_legendre(n)?)?;
    loop {
        let next_n = (2 * n).min(max_nodes.min(QuadratureRule::MAX_ORDER));
        if next_n <= n {
            return Ok(Converged { value: prev, nodes: n, change: f64::NAN });
        }
        let next = integrate_axial(&mut f, &gauss_legendre(next_n)?)?;
        let change = (next - prev).abs();
        if change <= tol * next.abs().max(1.0) {
            return Ok(Converged { value: next, nodes: next_n, change });
        }
        prev = next;
        n = next_n;
    }
}

/// Polynomial (Neville) extrapolation of `samples` to h = 0.
///
/// Returns the extrapolant through all samples and the difference between it
/// and the extrapolant through all but the first (largest-h) sample.
pub fn richardson_limit(samples: &[(f64, f64)]) -> Result<(f64, f64)> {
    if samples.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "richardson_limit needs at least 3 samples, got {}",
            samples.len()
        )));
    }
    if samples.windows(2).any(|w| !(w[1].0 < w[0].0)) {
        return Err(Error::InvalidArgument(
            "richardson_limit needs strictly decreasing h".into(),
        ));
    }
    let full = neville_at_zero(samples);
    let tail = neville_at_zero(&samples[1..]);
    Ok((full, (full - tail).abs()))
}

fn neville_at_zero(samples: &[(f64, f64)]) -> f64 {
    let h: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let mut p: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
        }
    }
    p[0]
}

/// Below this argument the helpers switch to truncated Taylor series.
pub const SERIES_SWITCH: f64 = 0.5;

/// sin(z)/z, exact at 0.
pub fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// (1 − sin z / z) / z², accurate for small z.
pub fn one_minus_sinc_over_z2(z: f64) -> f64 {
    if z.abs() < SERIES_SWITCH {
        // Σ (−1)^(n+1) z^(2n−2) / (2n+1)!, n ≥ 1
        let z2 = z * z;
        let mut term = 1.0 / 6.0;
        let mut sum = term;
        for n in 2..=10u32 {
            let n = f64::from(n);
            term *= -z2 / ((2.0 * n) * (2.0 * n + 1.0));
            sum += term;
        }
        sum
    } else {
        (1.0 - z.sin() / z) / (z * z)
    }
}

/// 1 − sin z / z without cancellation near 0.
pub fn one_minus_sinc(z: f64) -> f64 {
    if z.abs() < SERIES_SWITCH {
        z * z * one_minus_sinc_over_z2(z)
    } else {
        1.0 - z.sin() / z
    }
}

/// z − sin z without cancellation near 0.
pub fn z_minus_sin_z(z: f64) -> f64 {
    z * one_minus_sinc(z)
}
