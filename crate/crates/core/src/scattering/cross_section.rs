//! Direction-averaged and fixed-orientation elastic cross sections.

use std::f64::consts::PI;

use crate::error::Result;
use crate::model::{Direction, TwoCenterTarget};
use crate::numerics::{gauss_legendre, integrate_axial, integrate_axial_converged, Converged};
use crate::phase_solver::{solve_phases, MolecularPhases};

use super::oracle::{oracle_forward_amplitude, oracle_solve};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSectionRow {
    pub k: f64,
    pub sigma0: f64,
    pub sigma1: f64,
    pub sigma_total: f64,
}

impl CrossSectionRow {
    /// 4π/k², the ceiling on each partial cross section.
    pub fn unitarity_limit(&self) -> f64 {
        4.0 * PI / (self.k * self.k)
    }
}

/// σ_λ = (4π/k²) sin²η_λ.
pub fn sigma_from_phases(phases: &MolecularPhases) -> CrossSectionRow {
    let k = phases.k;
    let f = 4.0 * PI / (k * k);
    let sigma0 = f * phases.eta0.sin().powi(2);
    let sigma1 = f * phases.eta1.sin().powi(2);
    CrossSectionRow { k, sigma0, sigma1, sigma_total: sigma0 + sigma1 }
}

/// Cross section averaged over target orientations, from the eigenphases.
pub fn sigma_bar(target: &TwoCenterTarget, k: f64) -> Result<CrossSectionRow> {
    Ok(sigma_from_phases(&solve_phases(target, k)?))
}

/// Total cross section for one incidence direction via the optical theorem,
/// (4π/k) Im F(k̂, k̂).
pub fn optical_sigma(target: &TwoCenterTarget, k: f64, incident: Direction) -> Result<f64> {
    let f = oracle_forward_amplitude(target, k, incident)?;
    Ok(4.0 * PI / k * f.value.im)
}

/// Orientation average of the optical-theorem cross section,
/// (1/4π) ∫ (4π/k) Im F(k̂, k̂) dΩ, on a `nodes`-point rule in cos θ.
pub fn oracle_sigma_bar(target: &TwoCenterTarget, k: f64, nodes: usize) -> Result<f64> {
    let rule = gauss_legendre(nodes.max(16))?;
    let mut acc = 0.0;
    for (u, w) in rule.iter() {
        acc += w * optical_sigma(target, k, Direction::from_cos(u)?)?;
    }
    Ok(0.5 * acc)
}

/// [`oracle_sigma_bar`] with node doubling from 16 until the change is below `tol`.
pub fn oracle_sigma_bar_converged(target: &TwoCenterTarget, k: f64, tol: f64) -> Result<Converged> {
    let mut err = None;
    let c = integrate_axial_converged(
        |u| match optical_sigma(target, k, Direction::from_cos(u).expect("node in [-1, 1]")) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        },
        16,
        tol,
        2048,
    );
    if let Some(e) = err {
        return Err(e);
    }
    let c = c?;
    Ok(Converged { value: c.value / (4.0 * PI), change: c.change / (4.0 * PI), nodes: c.nodes })
}

/// ∫ |F(k̂, k̂′)|² dΩ′ over outgoing directions for a fixed incidence.
pub fn integrated_sigma(target: &TwoCenterTarget, k: f64, incident: Direction, nodes: usize) -> Result<f64> {
    let sol = oracle_solve(target, k, incident)?;
    integrate_axial(|u| sol.amplitude_value(u).norm_sqr(), &gauss_legendre(nodes.max(2))?)
}
