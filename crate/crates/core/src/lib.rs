//! Slow-particle elastic scattering on a target made of two zero-range
//! potentials.
//!
//! The crate computes the two molecular eigenphases of the target, the
//! direction-averaged elastic cross section built from them, the
//! non-spherical angular basis of the far-field expansion, and scattering
//! amplitudes. A closed-form construction (plane wave plus two spherical
//! s-waves) is provided as an independent oracle for all of them.
//!
//! Hartree atomic units are used throughout: lengths in bohr, momenta in
//! inverse bohr, cross sections in bohr².
//!
//! ```
//! use zrp_core::{model::preset, phase_solver::solve_phases, scattering::sigma_bar};
//!
//! let ch = preset("CH", None).unwrap();
//! let phases = solve_phases(&ch, 0.5).unwrap();
//! let xs = sigma_bar(&ch, 0.5).unwrap();
//! assert!((xs.sigma_total - (xs.sigma0 + xs.sigma1)).abs() < 1e-12);
//! assert!(phases.eta0.abs() <= std::f64::consts::FRAC_PI_2);
//! ```

pub mod angular;
pub mod error;
pub mod model;
pub mod numerics;
pub mod phase_solver;
pub mod scattering;

pub use error::{Error, Result};
pub use model::{Direction, SPhaseModel, TwoCenterTarget};
