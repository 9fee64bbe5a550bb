//! Eigenchannel decomposition and the two partial-wave amplitude forms.
//!
//! In the basis ζ = (Z₀, iZ₁) the closed-form amplitude reads
//! F(k̂, k̂′) = ζ(k̂′)ᴴ T ζ(k̂) with T = 4π S^{1/2} N⁻¹ S^{1/2}, where N is the
//! boundary-condition matrix rotated to the symmetric/antisymmetric
//! combination of the two centers and S = diag(S₊, S₋). T is complex
//! symmetric and normal, T = O diag(t_λ) Oᵀ with O real orthogonal and
//! t_λ = (2π/ik)(e^{2iη_λ} − 1). For identical centers O is the identity.

use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;

use crate::angular::{AngularBasis, Channel};
use crate::error::{check_momentum, Error, Result};
use crate::model::{Direction, TwoCenterTarget};
use crate::phase_solver::{fold_half_turn, phase_gap, solve_phases, MolecularPhases};

use super::oracle::{inverse2, scaled_system};
use super::{channel_amplitude, Amplitude};

/// Eigenphases closer than this (mod π) are reported as degenerate.
pub const DEGENERATE_EIGENPHASES: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenchannelDecomposition {
    pub k: f64,
    /// Eigenphases of the channel T-matrix, labelled to match [`solve_phases`].
    pub eigenphases: [f64; 2],
    /// Column λ holds the components of eigenchannel λ along (Z₀, iZ₁).
    pub mixing: [[f64; 2]; 2],
    /// T-matrix in the (Z₀, iZ₁) basis, bohr.
    pub t_matrix: [[Complex64; 2]; 2],
    /// Eigenvalues t_λ = (2π/ik)(e^{2iη_λ} − 1), same order as `eigenphases`.
    pub t_eigenvalues: [Complex64; 2],
    /// Eigenphases from the quadratic, for reference.
    pub phases: MolecularPhases,
    pub degenerate: bool,
}

impl EigenchannelDecomposition {
    pub fn basis(&self, separation: f64) -> Result<AngularBasis> {
        AngularBasis::new(self.k, separation)
    }

    /// Eigenchannel angular function Z̃_λ(u) = O₀λ Z₀(u) + i O₁λ Z₁(u).
    pub fn channel_function(&self, basis: &AngularBasis, channel: Channel, u: f64) -> Complex64 {
        let [z0, z1] = basis.eval_both(u);
        let l = channel.index();
        Complex64::new(self.mixing[0][l] * z0, self.mixing[1][l] * z1)
    }

    /// max |OᵀO − I|.
    pub fn orthogonality_defect(&self) -> f64 {
        let o = &self.mixing;
        let mut e: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let dot = o[0][i] * o[0][j] + o[1][i] * o[1][j];
                e = e.max((dot - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        e
    }
}

/// T-matrix in the (Z₀, iZ₁) basis.
pub fn channel_t_matrix(target: &TwoCenterTarget, k: f64) -> Result<[[Complex64; 2]; 2]> {
    check_momentum(k)?;
    let (m, s) = scaled_system(target, k);
    let m_inv = inverse2(&m).ok_or(Error::SingularSystem(k))?;
    // M⁻¹ = M̃⁻¹ diag(sin δ₁, sin δ₂)
    let g = [
        [m_inv[0][0] * s[0], m_inv[0][1] * s[1]],
        [m_inv[1][0] * s[0], m_inv[1][1] * s[1]],
    ];
    let g01 = 0.5 * (g[0][1] + g[1][0]);
    let n_pp = 0.5 * (g[0][0] + g[1][1]) + g01;
    let n_mm = 0.5 * (g[0][0] + g[1][1]) - g01;
    let n_pm = 0.5 * (g[0][0] - g[1][1]);
    let basis = AngularBasis::new(k, target.separation)?;
    let (sp, sm) = (basis.s_plus.sqrt(), basis.s_minus.sqrt());
    let four_pi = 4.0 * PI;
    Ok([
        [n_pp * (four_pi * sp * sp), n_pm * (four_pi * sp * sm)],
        [n_pm * (four_pi * sp * sm), n_mm * (four_pi * sm * sm)],
    ])
}

/// Eigenphase from a T-matrix eigenvalue: e^{2iη} = 1 + (ik/2π) t.
fn eigenphase(k: f64, t: Complex64) -> f64 {
    let s = Complex64::new(1.0, 0.0) + Complex64::new(0.0, k / (2.0 * PI)) * t;
    fold_half_turn(0.5 * s.im.atan2(s.re))
}

/// Diagonalises the T-matrix and labels the channels consistently with the quadratic solver.
pub fn eigenchannels(target: &TwoCenterTarget, k: f64) -> Result<EigenchannelDecomposition> {
    let t = channel_t_matrix(target, k)?;
    let phases = solve_phases(target, k)?;

    // (T₀₀ − T₁₁, 2T₀₁) = (cos 2θ, sin 2θ)·(t_a − t_b)
    let diff = t[0][0] - t[1][1];
    let off = 2.0 * t[0][1];
    let scale = t.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
    let split = (diff.norm_sqr() + off.norm_sqr()).sqrt();
    let theta = if split <= 1e-14 * scale {
        0.0
    } else {
        let pivot = if diff.norm() >= off.norm() { diff } else { off };
        let unit = pivot.conj() / pivot.norm();
        0.5 * (off * unit).re.atan2((diff * unit).re)
    };
    let (sn, cs) = theta.sin_cos();
    let t_a = t[0][0] * (cs * cs) + t[0][1] * (2.0 * cs * sn) + t[1][1] * (sn * sn);
    let t_b = t[0][0] * (sn * sn) - t[0][1] * (2.0 * cs * sn) + t[1][1] * (cs * cs);
    let cols = [[cs, sn], [-sn, cs]];
    let etas = [eigenphase(k, t_a), eigenphase(k, t_b)];

    let keep = phase_gap(etas[0], phases.eta0).abs() + phase_gap(etas[1], phases.eta1).abs();
    let swap = phase_gap(etas[1], phases.eta0).abs() + phase_gap(etas[0], phases.eta1).abs();
    let (order, t_eigenvalues) = if keep <= swap { ([0, 1], [t_a, t_b]) } else { ([1, 0], [t_b, t_a]) };

    let mut mixing = [[0.0; 2]; 2];
    for (lambda, &src) in order.iter().enumerate() {
        let mut col = cols[src];
        if col[lambda] < 0.0 {
            col = [-col[0], -col[1]];
        }
        mixing[0][lambda] = col[0];
        mixing[1][lambda] = col[1];
    }
    let eigenphases = [etas[order[0]], etas[order[1]]];
    let degenerate = phase_gap(eigenphases[0], eigenphases[1]).abs() < DEGENERATE_EIGENPHASES;
    if degenerate {
        warn!("{}: eigenphases coincide at k = {k}", target.name);
    }
    Ok(EigenchannelDecomposition {
        k,
        eigenphases,
        mixing,
        t_matrix: t,
        t_eigenvalues,
        phases,
        degenerate,
    })
}

/// Partial-wave amplitude on the fixed basis (Z₀, Z₁):
/// F = (2π/ik) Σ_λ (e^{2iη_λ} − 1) Z_λ(k̂) Z_λ(k̂′).
///
/// Exact for identical centers; for unlike centers the eigenchannels mix
/// Z₀ and Z₁ and this form departs from the closed-form amplitude.
pub fn partial_amplitude_paper(
    target: &TwoCenterTarget,
    k: f64,
    incident: Direction,
    outgoing: Direction,
) -> Result<Amplitude> {
    let phases = solve_phases(target, k)?;
    let basis = AngularBasis::new(k, target.separation)?;
    let zi = basis.eval_both(incident.cos_polar());
    let zo = basis.eval_both(outgoing.cos_polar());
    let value = channel_amplitude(k, phases.eta0) * (zi[0] * zo[0])
        + channel_amplitude(k, phases.eta1) * (zi[1] * zo[1]);
    Ok(Amplitude { value, k, incident, outgoing })
}

/// Partial-wave amplitude on the eigenchannel functions:
/// F = (2π/ik) Σ_λ (e^{2iη_λ} − 1) Z̃_λ(k̂′)* Z̃_λ(k̂).
pub fn partial_amplitude_exact(
    target: &TwoCenterTarget,
    k: f64,
    incident: Direction,
    outgoing: Direction,
) -> Result<Amplitude> {
    let dec = eigenchannels(target, k)?;
    let basis = dec.basis(target.separation)?;
    Ok(Amplitude { value: exact_amplitude_value(&dec, &basis, incident.cos_polar(), outgoing.cos_polar()), k, incident, outgoing })
}

/// Amplitude from a precomputed decomposition; avoids re-solving on direction grids.
pub fn exact_amplitude_value(dec: &EigenchannelDecomposition, basis: &AngularBasis, u_in: f64, u_out: f64) -> Complex64 {
    Channel::ALL
        .iter()
        .map(|&ch| {
            let zin = dec.channel_function(basis, ch, u_in);
            let zout = dec.channel_function(basis, ch, u_out);
            channel_amplitude(dec.k, dec.eigenphases[ch.index()]) * zout.conj() * zin
        })
        .sum()
}
