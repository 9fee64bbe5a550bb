//! Large-r form of the continuum wave function on the (Z₀, Z₁) basis.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::angular::{AngularBasis, Channel};
use crate::error::{check_momentum, Error, Result};
use crate::model::{Direction, TwoCenterTarget};
use crate::phase_solver::solve_phases;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelMeta {
    pub channel: Channel,
    /// Centrifugal-like index, 0 for the even channel and 1 for the odd one.
    pub omega: u32,
}

impl ChannelMeta {
    pub fn new(channel: Channel) -> Self {
        ChannelMeta { channel, omega: channel.index() as u32 }
    }
}

fn radial(omega: u32, prefactor_sign: f64, k: f64, r: f64, eta: f64) -> Complex64 {
    let shift = FRAC_PI_2 * f64::from(omega);
    let x = k * r;
    Complex64::from_polar((x - shift + eta).sin() / x, eta + prefactor_sign * shift)
}

/// R_{kλ}(r) ≈ e^{i(η − πω/2)} sin(kr − πω/2 + η)/(kr):
/// e^{iη} sin(kr + η)/(kr) for λ = 0 and e^{i(η−π/2)} sin(kr − π/2 + η)/(kr) for λ = 1.
pub fn asymptotic_radial(meta: ChannelMeta, k: f64, r: f64, eta: f64) -> Complex64 {
    radial(meta.omega, -1.0, k, r, eta)
}

/// R_{kλ}(r) ≈ e^{i(η + πω/2)} sin(kr − πω/2 + η)/(kr), the phase convention
/// under which the outgoing part of the expansion reproduces the
/// fixed-basis partial-wave amplitude. Differs from [`asymptotic_radial`]
/// by an overall sign when ω = 1.
pub fn asymptotic_radial_unified(meta: ChannelMeta, k: f64, r: f64, eta: f64) -> Complex64 {
    radial(meta.omega, 1.0, k, r, eta)
}

fn expansion(basis: &AngularBasis, k: f64, etas: [f64; 2], u_in: f64, r: f64, u_point: f64) -> Complex64 {
    let zi = basis.eval_both(u_in);
    let zp = basis.eval_both(u_point);
    Channel::ALL
        .iter()
        .map(|&ch| {
            let l = ch.index();
            asymptotic_radial_unified(ChannelMeta::new(ch), k, r, etas[l]) * (zi[l] * zp[l])
        })
        .sum::<Complex64>()
        * (4.0 * PI)
}

/// ψ(r) ≈ 4π Σ_λ R_{kλ}(r) Z_λ(r̂) Z_λ(k̂), intended for r ≫ R (r > 20R is a safe rule).
pub fn asymptotic_psi(
    target: &TwoCenterTarget,
    k: f64,
    incident: Direction,
    r: f64,
    point: Direction,
) -> Result<Complex64> {
    check_momentum(k)?;
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let phases = solve_phases(target, k)?;
    let basis = AngularBasis::new(k, target.separation)?;
    Ok(expansion(&basis, k, phases.etas(), incident.cos_polar(), r, point.cos_polar()))
}

/// Coefficient of e^{ikr}/r in ψ − ψ_free, extracted from two radii
/// r and r + π/(2k) of the asymptotic expansion.
pub fn outgoing_scattered_coefficient(
    target: &TwoCenterTarget,
    k: f64,
    incident: Direction,
    r: f64,
    point: Direction,
) -> Result<Complex64> {
    check_momentum(k)?;
    let phases = solve_phases(target, k)?;
    let basis = AngularBasis::new(k, target.separation)?;
    let (ui, up) = (incident.cos_polar(), point.cos_polar());
    let scattered = |rr: f64| {
        rr * (expansion(&basis, k, phases.etas(), ui, rr, up) - expansion(&basis, k, [0.0, 0.0], ui, rr, up))
    };
    // r·ψ_sc = A e^{ikr} + B e^{−ikr}
    let r2 = r + FRAC_PI_2 / k;
    let (y1, y2) = (scattered(r), scattered(r2));
    let (e1, e2) = (Complex64::from_polar(1.0, k * r), Complex64::from_polar(1.0, k * r2));
    let det = e1 / e2 - e2 / e1;
    Ok((y1 / e2 - y2 / e1) / det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::preset;
    use crate::scattering::partial_amplitude_paper;

    #[test]
    fn free_waves() {
        let (k, r) = (0.7, 13.0);
        let s = asymptotic_radial(ChannelMeta::new(Channel::Even), k, r, 0.0);
        assert!((s - Complex64::new((k * r).sin() / (k * r), 0.0)).norm() < 1e-15);
        let p = asymptotic_radial(ChannelMeta::new(Channel::Odd), k, r, 0.0);
        let expect = Complex64::from_polar(1.0, -FRAC_PI_2) * ((k * r - FRAC_PI_2).sin() / (k * r));
        assert!((p - expect).norm() < 1e-15);
    }

    #[test]
    fn radial_bound() {
        for eta in [-1.2, 0.0, 0.4, 1.5] {
            for r in [3.0, 40.0, 1e3] {
                for ch in Channel::ALL {
                    let v = asymptotic_radial(ChannelMeta::new(ch), 0.9, r, eta);
                    assert!(v.norm() <= 1.0 / (0.9 * r) + 1e-15);
                }
            }
        }
    }

    #[test]
    fn conventions_differ_by_sign_in_odd_channel() {
        let m = ChannelMeta::new(Channel::Odd);
        let a = asymptotic_radial(m, 0.4, 50.0, 0.3);
        let b = asymptotic_radial_unified(m, 0.4, 50.0, 0.3);
        assert!((a + b).norm() < 1e-15);
        let m0 = ChannelMeta::new(Channel::Even);
        assert_eq!(asymptotic_radial(m0, 0.4, 50.0, 0.3), asymptotic_radial_unified(m0, 0.4, 50.0, 0.3));
    }

    #[test]
    fn outgoing_part_is_partial_amplitude() {
        let t = preset("CH", None).unwrap();
        let (k, r) = (0.5, 1e3);
        let inc = Direction::from_cos(0.3).unwrap();
        let out = Direction::from_cos(-0.8).unwrap();
        let a = outgoing_scattered_coefficient(&t, k, inc, r, out).unwrap();
        let f = partial_amplitude_paper(&t, k, inc, out).unwrap().value;
        assert!((a - f).norm() < 1e-4 * f.norm() / r, "{a} vs {f}");
    }
}
