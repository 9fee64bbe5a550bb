//! Non-spherical angular basis of the two-center far field.
//!
//! ```text
//! Z₀(u) = cos(zu/2) / √(2π S₊),   Z₁(u) = sin(zu/2) / √(2π S₋),   S± = 1 ± sin z / z
//! ```
//!
//! with z = kR and u the cosine of the angle to the target axis. The pair is
//! orthonormal on the unit sphere and tends to Y₀₀, Y₁₀ as z → 0.

use std::f64::consts::PI;

use crate::error::{check_momentum, Error, Result};
use crate::numerics::{gauss_legendre, one_minus_sinc, one_minus_sinc_over_z2, sinc, SERIES_SWITCH};

/// Eigenchannel index λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    /// λ = 0, even in u.
    Even = 0,
    /// λ = 1, odd in u.
    Odd = 1,
}

impl Channel {
    pub const ALL: [Channel; 2] = [Channel::Even, Channel::Odd];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            0 => Ok(Channel::Even),
            1 => Ok(Channel::Odd),
            _ => Err(Error::InvalidArgument(format!("channel index {i} not in {{0, 1}}"))),
        }
    }
}

/// (S₊, S₋) at z = kR.
pub fn s_factors(z: f64) -> (f64, f64) {
    let minus = one_minus_sinc(z);
    (1.0 + sinc(z), minus)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularBasis {
    pub k: f64,
    pub separation: f64,
    pub s_plus: f64,
    pub s_minus: f64,
}

impl AngularBasis {
    pub fn new(k: f64, separation: f64) -> Result<Self> {
        check_momentum(k)?;
        if !(separation > 0.0 && separation.is_finite()) {
            return Err(Error::InvalidTarget(format!("R must be positive, got {separation}")));
        }
        let (s_plus, s_minus) = s_factors(k * separation);
        Ok(AngularBasis { k, separation, s_plus, s_minus })
    }

    /// Basis at a given z = kR, taking R = 1.
    pub fn at_z(z: f64) -> Result<Self> {
        Self::new(z, 1.0)
    }

    pub fn z(&self) -> f64 {
        self.k * self.separation
    }

    /// Z_λ at polar cosine `u`.
    pub fn eval(&self, channel: Channel, u: f64) -> f64 {
        let z = self.z();
        match channel {
            Channel::Even => (0.5 * z * u).cos() / (2.0 * PI * self.s_plus).sqrt(),
            Channel::Odd => {
                if z < SERIES_SWITCH {
                    // sin(zu/2)/z over √(2π S₋/z²), both finite as z → 0
                    let numer = 0.5 * u * sinc(0.5 * z * u);
                    numer / (2.0 * PI * one_minus_sinc_over_z2(z)).sqrt()
                } else {
                    (0.5 * z * u).sin() / (2.0 * PI * self.s_minus).sqrt()
                }
            }
        }
    }

    /// (Z₀, Z₁) at polar cosine `u`.
    pub fn eval_both(&self, u: f64) -> [f64; 2] {
        [self.eval(Channel::Even, u), self.eval(Channel::Odd, u)]
    }

    /// Pointwise bound 1/√(2π S±).
    pub fn bound(&self, channel: Channel) -> f64 {
        match channel {
            Channel::Even => 1.0 / (2.0 * PI * self.s_plus).sqrt(),
            Channel::Odd => 1.0 / (2.0 * PI * self.s_minus).sqrt(),
        }
    }
}

pub fn eval_z(channel: Channel, basis: &AngularBasis, cos_theta: f64) -> f64 {
    basis.eval(channel, cos_theta)
}

/// Spherical-harmonic limits Y₀₀ and Y₁₀ of the basis.
pub fn limit_y(channel: Channel, cos_theta: f64) -> f64 {
    match channel {
        Channel::Even => 1.0 / (4.0 * PI).sqrt(),
        Channel::Odd => (3.0 / (4.0 * PI)).sqrt() * cos_theta,
    }
}

/// Gram matrix ∫ Z_λ Z_μ dΩ by Gauss–Legendre quadrature in u.
pub fn orthonormality_matrix(basis: &AngularBasis, nodes: usize) -> Result<[[f64; 2]; 2]> {
    if nodes < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 nodes, got {nodes}")));
    }
    let rule = gauss_legendre(nodes)?;
    let mut g = [[0.0; 2]; 2];
    for (u, w) in rule.iter() {
        let z = basis.eval_both(u);
        for i in 0..2 {
            for j in 0..2 {
                g[i][j] += w * z[i] * z[j];
            }
        }
    }
    for row in &mut g {
        for v in row.iter_mut() {
            *v *= 2.0 * PI;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_identity_error(g: &[[f64; 2]; 2]) -> f64 {
        let mut e: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { 1.0 } else { 0.0 };
                e = e.max((g[i][j] - target).abs());
            }
        }
        e
    }

    #[test]
    fn s_factors_special_values() {
        let (p, m) = s_factors(PI);
        assert!((p - 1.0).abs() < 1e-15 && (m - 1.0).abs() < 1e-15);
        let z = 1e-5;
        let (p, m) = s_factors(z);
        assert!((p - 2.0).abs() < 1e-10);
        assert!((m / (z * z / 6.0) - 1.0).abs() < 1e-10);
        // reference_values.py
        let (p, m) = s_factors(2.0);
        assert!((p - 1.4546487134128408477).abs() < 1e-15);
        assert!((m - 0.5453512865871591523).abs() < 1e-15);
        assert_eq!(p + m, 2.0);
    }

    #[test]
    fn z_examples() {
        let b = AngularBasis::at_z(PI).unwrap();
        assert!((b.eval(Channel::Even, 0.0) - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
        for z in [1e-4, 0.3, 2.0, 7.0] {
            assert_eq!(AngularBasis::at_z(z).unwrap().eval(Channel::Odd, 0.0), 0.0);
        }
        let small = AngularBasis::at_z(1e-4).unwrap();
        assert!((small.eval(Channel::Odd, 1.0) - 0.4886025119029199).abs() < 1e-6);
    }

    #[test]
    fn odd_branch_continuous_across_series_switch() {
        let lo = AngularBasis::at_z(SERIES_SWITCH * (1.0 - 1e-12)).unwrap();
        let hi = AngularBasis::at_z(SERIES_SWITCH).unwrap();
        for u in [-1.0, -0.3, 0.5, 1.0] {
            assert!((lo.eval(Channel::Odd, u) - hi.eval(Channel::Odd, u)).abs() < 1e-12);
        }
    }

    #[test]
    fn limits() {
        assert!((limit_y(Channel::Even, 0.3) - 0.28209479177387814).abs() < 1e-15);
        assert!((limit_y(Channel::Odd, 1.0) - 0.4886025119029199).abs() < 1e-15);
        assert!((limit_y(Channel::Odd, -1.0) + 0.4886025119029199).abs() < 1e-15);
    }

    #[test]
    fn gram_identity() {
        let g = orthonormality_matrix(&AngularBasis::at_z(PI).unwrap(), 64).unwrap();
        assert!(max_identity_error(&g) < 1e-12);
        assert!(orthonormality_matrix(&AngularBasis::at_z(PI).unwrap(), 8).is_err());
    }

    #[test]
    fn gram_convergence_at_z8() {
        let b = AngularBasis::at_z(8.0).unwrap();
        let coarse = max_identity_error(&orthonormality_matrix(&b, 16).unwrap());
        let fine = max_identity_error(&orthonormality_matrix(&b, 128).unwrap());
        assert!(fine < 1e-13);
        // 16 nodes are already exact to roundoff for an integrand of frequency 8
        assert!(coarse < 1e-12, "{coarse}");
    }

    #[test]
    fn channel_index() {
        assert_eq!(Channel::from_index(1).unwrap(), Channel::Odd);
        assert!(Channel::from_index(2).is_err());
    }
}
