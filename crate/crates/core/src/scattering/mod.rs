//! Amplitudes, cross sections and asymptotic wave functions.
//!
//! Two independent routes are provided. The eigenphase route builds
//! everything from [`solve_phases`](crate::phase_solver::solve_phases) and the
//! angular basis. The closed-form route ([`oracle`]) solves the 2×2
//! boundary-condition system for a plane wave plus one outgoing s-wave per
//! center and needs neither.

pub mod asymptotic;
pub mod channels;
pub mod cross_section;
pub mod oracle;

use num_complex::Complex64;

use crate::model::Direction;

pub use asymptotic::{
    asymptotic_psi, asymptotic_radial, asymptotic_radial_unified, outgoing_scattered_coefficient,
    ChannelMeta,
};
pub use channels::{eigenchannels, partial_amplitude_exact, partial_amplitude_paper, EigenchannelDecomposition};
pub use cross_section::{
    integrated_sigma, optical_sigma, oracle_sigma_bar, oracle_sigma_bar_converged, sigma_bar,
    sigma_from_phases, CrossSectionRow,
};
pub use oracle::{oracle_amplitude, oracle_forward_amplitude, oracle_solve, OracleSolution};

/// Elastic scattering amplitude F(k̂, k̂′), bohr.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub value: Complex64,
    pub k: f64,
    pub incident: Direction,
    pub outgoing: Direction,
}

/// (2π/ik)(e^{2iη} − 1) written as (4π/k) e^{iη} sin η.
pub fn channel_amplitude(k: f64, eta: f64) -> Complex64 {
    Complex64::from_polar(4.0 * std::f64::consts::PI / k * eta.sin(), eta)
}
