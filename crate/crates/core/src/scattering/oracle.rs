//! Closed-form solution: a plane wave plus one outgoing s-wave per center,
//!
//! ```text
//! ψ(r) = e^{ik·r} + D₁ e^{ik|r−R₁|}/|r−R₁| + D₂ e^{ik|r−R₂|}/|r−R₂|
//! ```
//!
//! Matching ψ ≈ C[1/ρ + k cot δⱼ] at each center gives
//!
//! ```text
//! (k cot δ₁ − ik) D₁ − a D₂ = e^{ik·R₁}
//! −a D₁ + (k cot δ₂ − ik) D₂ = e^{ik·R₂},     a = e^{ikR}/R
//! ```
//!
//! Each row is multiplied by sin δⱼ before solving, so the system stays
//! finite when a center passes through a cotangent pole.

use num_complex::Complex64;

use crate::error::{check_momentum, Error, Result};
use crate::model::{Direction, TwoCenterTarget};

use super::Amplitude;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSolution {
    pub k: f64,
    pub separation: f64,
    pub incident: Direction,
    pub d1: Complex64,
    pub d2: Complex64,
    /// ‖M D − b‖ / (‖M‖‖D‖ + ‖b‖) of the row-scaled system.
    pub residual: f64,
}

/// Row-scaled boundary-condition matrix [[k e^{−iδ₁}, −a sin δ₁], [−a sin δ₂, k e^{−iδ₂}]]
/// and the row scales (sin δ₁, sin δ₂).
pub(crate) fn scaled_system(target: &TwoCenterTarget, k: f64) -> ([[Complex64; 2]; 2], [f64; 2]) {
    let r = target.separation;
    let a = Complex64::from_polar(1.0 / r, k * r);
    let t1 = target.center1.polynomial_part(k);
    let t2 = target.center2.polynomial_part(k);
    let (s1, s2) = (t1.sin(), t2.sin());
    let m = [
        [Complex64::from_polar(k, -t1), -a * s1],
        [-a * s2, Complex64::from_polar(k, -t2)],
    ];
    (m, [s1, s2])
}

/// Inverse of a 2×2 complex matrix by cofactors; `None` when numerically singular.
pub(crate) fn inverse2(m: &[[Complex64; 2]; 2]) -> Option<[[Complex64; 2]; 2]> {
    let p = m[0][0] * m[1][1];
    let q = m[0][1] * m[1][0];
    let det = p - q;
    if det.norm() <= 8.0 * f64::EPSILON * (p.norm() + q.norm()) || !det.is_finite() {
        return None;
    }
    let inv = det.inv();
    Some([
        [m[1][1] * inv, -m[0][1] * inv],
        [-m[1][0] * inv, m[0][0] * inv],
    ])
}

/// Solves for the spherical-wave coefficients (D₁, D₂) for incidence along `incident`.
pub fn oracle_solve(target: &TwoCenterTarget, k: f64, incident: Direction) -> Result<OracleSolution> {
    check_momentum(k)?;
    let (m, s) = scaled_system(target, k);
    let (x1, x2) = target.center_positions();
    let u = incident.cos_polar();
    let b = [
        Complex64::from_polar(s[0], k * x1 * u),
        Complex64::from_polar(s[1], k * x2 * u),
    ];
    let inv = inverse2(&m).ok_or(Error::SingularSystem(k))?;
    let d1 = inv[0][0] * b[0] + inv[0][1] * b[1];
    let d2 = inv[1][0] * b[0] + inv[1][1] * b[1];

    let r0 = m[0][0] * d1 + m[0][1] * d2 - b[0];
    let r1 = m[1][0] * d1 + m[1][1] * d2 - b[1];
    let mnorm = m.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let dnorm = (d1.norm_sqr() + d2.norm_sqr()).sqrt();
    let bnorm = (b[0].norm_sqr() + b[1].norm_sqr()).sqrt();
    let residual = (r0.norm_sqr() + r1.norm_sqr()).sqrt() / (mnorm * dnorm + bnorm).max(f64::MIN_POSITIVE);

    Ok(OracleSolution { k, separation: target.separation, incident, d1, d2, residual })
}

impl OracleSolution {
    /// Far-field amplitude D₁ e^{−ik k̂′·R₁} + D₂ e^{−ik k̂′·R₂}.
    pub fn amplitude_value(&self, outgoing_cos: f64) -> Complex64 {
        let phase = 0.5 * self.k * self.separation * outgoing_cos;
        self.d1 * Complex64::from_polar(1.0, -phase) + self.d2 * Complex64::from_polar(1.0, phase)
    }

    /// The full wave function at a point (bohr, Cartesian, axis along z).
    pub fn wavefunction(&self, point: [f64; 3]) -> Complex64 {
        let n = self.incident.unit_vector();
        let k = self.k;
        let plane = Complex64::from_polar(1.0, k * (n[0] * point[0] + n[1] * point[1] + n[2] * point[2]));
        let half = 0.5 * self.separation;
        let spherical = |zc: f64, d: Complex64| {
            let rho = (point[0] * point[0] + point[1] * point[1] + (point[2] - zc).powi(2)).sqrt();
            d * Complex64::from_polar(1.0 / rho, k * rho)
        };
        plane + spherical(half, self.d1) + spherical(-half, self.d2)
    }
}

pub fn oracle_amplitude(sol: &OracleSolution, outgoing: Direction) -> Amplitude {
    Amplitude {
        value: sol.amplitude_value(outgoing.cos_polar()),
        k: sol.k,
        incident: sol.incident,
        outgoing,
    }
}

/// F(k̂, k̂).
pub fn oracle_forward_amplitude(target: &TwoCenterTarget, k: f64, incident: Direction) -> Result<Amplitude> {
    let sol = oracle_solve(target, k, incident)?;
    Ok(oracle_amplitude(&sol, incident))
}
