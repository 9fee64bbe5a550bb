//! The two molecular eigenphases of a two-center target.
//!
//! Imposing the zero-range boundary condition at both centers on a pair of
//! standing s-waves with a common phase η gives a 2×2 homogeneous system
//! whose determinant is a quadratic in x = cot η:
//!
//! ```text
//! α x² + β x + γ = 0,   z = kR
//! α = sin²z − z²
//! β = sin 2z + z² (cot δ₁ + cot δ₂)
//! γ = cos²z − z² cot δ₁ cot δ₂
//! ```
//!
//! Roots are labelled by their k → 0 behaviour: η₀ ∝ k (s-like) and
//! η₁ ∝ k³ (p-like).

use std::f64::consts::{FRAC_PI_2, PI};

use log::warn;

use crate::error::{check_momentum, Error, Result};
use crate::model::{SPhaseModel, TwoCenterTarget, DEFAULT_POLE_FLOOR};
use crate::numerics::{richardson_limit, z_minus_sin_z};

/// Below this |sin δⱼ| the coefficients are computed multiplied through by sin δ₁ sin δ₂.
pub const SCALING_THRESHOLD: f64 = 1e-6;

/// Relative width of the band of negative discriminants attributed to roundoff.
pub const DISCRIMINANT_CLAMP: f64 = 1e-12;

/// Below this, |γ| and |q| together signal a degenerate root pairing.
pub const DEGENERACY_FLOOR: f64 = 1e-12;

/// Lattice spacing in z = kR used when following the roots from k ≈ 0.
const TRACK_STEP: f64 = 0.01;

/// z below which the roots are labelled directly by magnitude.
const TRACK_START: f64 = 1e-3;

/// Largest z = kR for which unlike centers are labelled (10⁶ lattice steps).
pub const TRACK_MAX_Z: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticCoeffs {
    pub z: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Coefficients carry an overall factor sin δ₁ sin δ₂.
    pub scaled: bool,
    /// β² − 4αγ, evaluated as a sum of squares so it is never negative.
    pub discriminant: f64,
}

impl QuadraticCoeffs {
    /// β² − 4αγ straight from the coefficients.
    pub fn textbook_discriminant(&self) -> f64 {
        self.beta * self.beta - 4.0 * self.alpha * self.gamma
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.alpha * x + self.beta) * x + self.gamma
    }
}

/// Which sign of the square root in the textbook formula a root comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// (−β − √D) / 2α
    Minus,
    /// (−β + √D) / 2α
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MolecularPhases {
    pub k: f64,
    /// s-like eigenphase, principal value in (−π/2, π/2].
    pub eta0: f64,
    /// p-like eigenphase, principal value in (−π/2, π/2].
    pub eta1: f64,
    /// cot η₀; ±∞ when η₀ = 0.
    pub cot_eta0: f64,
    pub cot_eta1: f64,
    /// Relative determinant residual at η₀, see [`relative_determinant_residual`].
    pub residual0: f64,
    pub residual1: f64,
    /// Branch of the textbook formula that η₀ was taken from.
    pub eta0_branch: Branch,
    pub scaled: bool,
    pub degenerate: bool,
}

impl MolecularPhases {
    pub fn etas(&self) -> [f64; 2] {
        [self.eta0, self.eta1]
    }

    pub fn cots(&self) -> [f64; 2] {
        [self.cot_eta0, self.cot_eta1]
    }
}

/// Sines and cosines of the reduced phases of both centers.
#[derive(Debug, Clone, Copy)]
struct CenterTrig {
    s1: f64,
    c1: f64,
    s2: f64,
    c2: f64,
}

impl CenterTrig {
    fn of(target: &TwoCenterTarget, k: f64) -> Self {
        let (s1, c1) = target.center1.sin_cos(k);
        let (s2, c2) = target.center2.sin_cos(k);
        CenterTrig { s1, c1, s2, c2 }
    }
}

/// Coefficients of the quadratic in cot η at momentum k.
pub fn quadratic_coeffs(target: &TwoCenterTarget, k: f64) -> Result<QuadraticCoeffs> {
    check_momentum(k)?;
    Ok(coeffs_from_trig(CenterTrig::of(target, k), k * target.separation))
}

fn coeffs_from_trig(t: CenterTrig, z: f64) -> QuadraticCoeffs {
    let scaled = t.s1.abs() < SCALING_THRESHOLD || t.s2.abs() < SCALING_THRESHOLD;
    coeffs_in_form(t, z, scaled)
}

fn coeffs_in_form(t: CenterTrig, z: f64, scaled: bool) -> QuadraticCoeffs {
    let (sz, cz) = z.sin_cos();
    let z_minus = z_minus_sin_z(z);
    let z_plus = z + sz;
    let z2 = z * z;
    // sin²z − z², free of cancellation at small z
    let alpha = -z_minus * z_plus;
    let sin2z = 2.0 * sz * cz;

    if scaled {
        let ss = t.s1 * t.s2;
        let sin_sum = t.c1 * t.s2 + t.s1 * t.c2;
        let sin_diff = t.s2 * t.c1 - t.s1 * t.c2;
        let gamma = 0.5
            * ((cz * t.s1 - z * t.c1) * (cz * t.s2 + z * t.c2)
                + (cz * t.s2 - z * t.c2) * (cz * t.s1 + z * t.c1));
        let even = sz * 0.5 * sin_sum + cz * ss;
        let odd = 0.5 * sin_diff;
        QuadraticCoeffs {
            z,
            alpha: alpha * ss,
            beta: sin2z * ss + z2 * sin_sum,
            gamma,
            scaled: true,
            discriminant: 4.0 * z2 * (even * even + odd * odd * z_minus * z_plus),
        }
    } else {
        let cot1 = t.c1 / t.s1;
        let cot2 = t.c2 / t.s2;
        let mean = 0.5 * (cot1 + cot2);
        let half_diff = 0.5 * (cot1 - cot2);
        // cos²z − z² cot δ₁ cot δ₂, symmetrised product form (exact factorisation when δ₁ = δ₂)
        let gamma = 0.5
            * ((cz - z * cot1) * (cz + z * cot2) + (cz - z * cot2) * (cz + z * cot1));
        let even = sz * mean + cz;
        QuadraticCoeffs {
            z,
            alpha,
            beta: sin2z + z2 * (cot1 + cot2),
            gamma,
            scaled: false,
            discriminant: 4.0 * z2 * (even * even + half_diff * half_diff * z_minus * z_plus),
        }
    }
}

/// Folds an angle into (−π/2, π/2].
pub(crate) fn fold_half_turn(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(PI);
    if t > FRAC_PI_2 {
        t -= PI;
    }
    t
}

/// η with cot η = num/den, principal value.
fn eta_from_ratio(num: f64, den: f64) -> f64 {
    fold_half_turn(den.atan2(num))
}

/// cot η = num/den; 0/0 only arises when α vanishes and the root has moved to infinity.
fn cot_from_ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 && den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

/// Both roots of the quadratic, unlabelled.
#[derive(Debug, Clone, Copy)]
struct RawRoots {
    coeffs: QuadraticCoeffs,
    eta: [f64; 2],
    cot: [f64; 2],
    branch: [Branch; 2],
    degenerate: bool,
}

fn raw_roots(coeffs: QuadraticCoeffs, k: f64) -> Result<RawRoots> {
    let direct = coeffs.textbook_discriminant();
    let band = DISCRIMINANT_CLAMP
        * (coeffs.beta * coeffs.beta + (4.0 * coeffs.alpha * coeffs.gamma).abs());
    if direct < -band {
        return Err(Error::NegativeDiscriminant { k, discriminant: direct, band });
    }
    let sign = if coeffs.beta >= 0.0 { 1.0 } else { -1.0 };
    let q = -0.5 * (coeffs.beta + sign * coeffs.discriminant.sqrt());
    let degenerate = coeffs.gamma.abs() < DEGENERACY_FLOOR && q.abs() < DEGENERACY_FLOOR;
    if degenerate {
        warn!("degenerate root pairing at k = {k}: |gamma| = {:e}, |q| = {:e}", coeffs.gamma.abs(), q.abs());
    }
    // q/α takes the sign of √D opposite to sign(β)
    let branch = if sign > 0.0 { [Branch::Minus, Branch::Plus] } else { [Branch::Plus, Branch::Minus] };
    Ok(RawRoots {
        coeffs,
        eta: [eta_from_ratio(q, coeffs.alpha), eta_from_ratio(coeffs.gamma, q)],
        cot: [cot_from_ratio(q, coeffs.alpha), cot_from_ratio(coeffs.gamma, q)],
        branch,
        degenerate,
    })
}

/// Pole-free determinant of the standing-wave system, multiplied by
/// sin δ₁ sin δ₂: returns (k² sin(δ₁−η) sin(δ₂−η), sin²(z+η) sin δ₁ sin δ₂ / R²)
/// together with the magnitude scale the difference is measured against,
/// the sum of the absolute values of the individual products.
fn determinant_terms(t: CenterTrig, k: f64, separation: f64, eta: f64) -> (f64, f64, f64) {
    let (se, ce) = eta.sin_cos();
    let b1 = k * (t.s1 * ce - t.c1 * se);
    let b2 = k * (t.s2 * ce - t.c2 * se);
    let m1 = k * ((t.s1 * ce).abs() + (t.c1 * se).abs());
    let m2 = k * ((t.s2 * ce).abs() + (t.c2 * se).abs());
    let a = (k * separation + eta).sin() / separation;
    let ss = t.s1 * t.s2;
    (b1 * b2, a * a * ss, m1 * m2 + a * a * ss.abs())
}

fn relative_residual(t: CenterTrig, k: f64, separation: f64, eta: f64) -> f64 {
    let (p, q, scale) = determinant_terms(t, k, separation, eta);
    (p - q).abs() / scale.max(f64::MIN_POSITIVE)
}

/// B₁B₂ − A² with A = sin(kR + η)/R and Bⱼ = k(cos η − sin η cot δⱼ).
pub fn determinant_residual(target: &TwoCenterTarget, k: f64, eta: f64) -> Result<f64> {
    let kc1 = target.center1.kcot_delta(k)?;
    let kc2 = target.center2.kcot_delta(k)?;
    let (se, ce) = eta.sin_cos();
    let a = (k * target.separation + eta).sin() / target.separation;
    let b1 = k * ce - se * kc1;
    let b2 = k * ce - se * kc2;
    Ok(b1 * b2 - a * a)
}

/// |B₁B₂ − A²| relative to the term-by-term magnitude of the products, evaluated in the sin δ-scaled form
/// so it stays finite across cotangent poles.
pub fn relative_determinant_residual(target: &TwoCenterTarget, k: f64, eta: f64) -> Result<f64> {
    check_momentum(k)?;
    Ok(relative_residual(CenterTrig::of(target, k), k, target.separation, eta))
}

/// Eigenphases at momentum k.
pub fn solve_phases(target: &TwoCenterTarget, k: f64) -> Result<MolecularPhases> {
    check_momentum(k)?;
    let trig = CenterTrig::of(target, k);
    let roots = raw_roots(coeffs_from_trig(trig, k * target.separation), k)?;
    let order = if target.is_symmetric() {
        parity_order(&roots, trig, k, target.separation)
    } else {
        tracked_order(target, k, &roots)?
    };
    Ok(assemble(k, &roots, order, trig, target.separation))
}

fn assemble(k: f64, roots: &RawRoots, order: [usize; 2], trig: CenterTrig, separation: f64) -> MolecularPhases {
    let [i0, i1] = order;
    MolecularPhases {
        k,
        eta0: roots.eta[i0],
        eta1: roots.eta[i1],
        cot_eta0: roots.cot[i0],
        cot_eta1: roots.cot[i1],
        residual0: relative_residual(trig, k, separation, roots.eta[i0]),
        residual1: relative_residual(trig, k, separation, roots.eta[i1]),
        eta0_branch: roots.branch[i0],
        scaled: roots.coeffs.scaled,
        degenerate: roots.degenerate,
    }
}

/// Identical centers: η₀ is the root whose null vector is (1, 1).
fn parity_order(roots: &RawRoots, t: CenterTrig, k: f64, separation: f64) -> [usize; 2] {
    let gerade_mismatch = |eta: f64| {
        let (se, ce) = eta.sin_cos();
        let b = k * (t.s1 * ce - t.c1 * se);
        let a = (k * separation + eta).sin() * t.s1 / separation;
        (b + a).abs() / ((b + a).abs() + (b - a).abs()).max(f64::MIN_POSITIVE)
    };
    if gerade_mismatch(roots.eta[0]) <= gerade_mismatch(roots.eta[1]) {
        [0, 1]
    } else {
        [1, 0]
    }
}

/// Signed distance between two eigenphases modulo π.
pub(crate) fn phase_gap(a: f64, b: f64) -> f64 {
    fold_half_turn(a - b)
}

/// Orders roots at small z: the larger |η| is the s-like channel.
fn magnitude_order(roots: &RawRoots) -> [usize; 2] {
    if roots.eta[0].abs() >= roots.eta[1].abs() {
        [0, 1]
    } else {
        [1, 0]
    }
}

/// Follows both roots continuously in k from z = kR ≈ 0 up to the requested k.
///
/// The path visits a fixed lattice in z, so the labelling at a given k does
/// not depend on which other momenta are being evaluated.
fn tracked_order(target: &TwoCenterTarget, k: f64, roots_at_k: &RawRoots) -> Result<[usize; 2]> {
    let r = target.separation;
    let z_target = k * r;
    if z_target <= TRACK_START {
        return Ok(magnitude_order(roots_at_k));
    }
    if z_target > TRACK_MAX_Z {
        return Err(Error::InvalidArgument(format!(
            "kR = {z_target:e} at k = {k} is beyond the labelling range kR <= {TRACK_MAX_Z:e} for unlike centers"
        )));
    }
    let roots_at = |z: f64| -> Result<RawRoots> {
        let kk = z / r;
        raw_roots(coeffs_from_trig(CenterTrig::of(target, kk), z), kk)
    };
    let start = roots_at(TRACK_START)?;
    let o = magnitude_order(&start);
    // unwrapped (η₀, η₁) at the last two path points
    let mut prev = [start.eta[o[0]], start.eta[o[1]]];
    let mut prev_z = TRACK_START;
    let mut slope = [0.0, 0.0];

    let first = (TRACK_START / TRACK_STEP).floor() as u64 + 1;
    let mut j = first;
    loop {
        let lattice_z = j as f64 * TRACK_STEP;
        let (z, roots) = if lattice_z < z_target {
            (lattice_z, roots_at(lattice_z)?)
        } else {
            (z_target, *roots_at_k)
        };
        let dz = z - prev_z;
        let pred = [prev[0] + slope[0] * dz, prev[1] + slope[1] * dz];
        let keep = phase_gap(roots.eta[0], pred[0]).abs() + phase_gap(roots.eta[1], pred[1]).abs();
        let swap = phase_gap(roots.eta[1], pred[0]).abs() + phase_gap(roots.eta[0], pred[1]).abs();
        let order = if keep <= swap { [0, 1] } else { [1, 0] };
        if z >= z_target {
            return Ok(order);
        }
        let next = [
            pred[0] + phase_gap(roots.eta[order[0]], pred[0]),
            pred[1] + phase_gap(roots.eta[order[1]], pred[1]),
        ];
        if dz > 0.0 {
            slope = [(next[0] - prev[0]) / dz, (next[1] - prev[1]) / dz];
        }
        prev = next;
        prev_z = z;
        j += 1;
    }
}

/// Eigenphases for two identical centers of phase `delta`:
///
/// ```text
/// cot η₀ = (kR cot δ − cos kR) / (kR + sin kR)
/// cot η₁ = (kR cot δ + cos kR) / (kR − sin kR)
/// ```
pub fn solve_phases_identical(delta: f64, separation: f64, k: f64) -> Result<MolecularPhases> {
    check_momentum(k)?;
    if !(separation > 0.0 && separation.is_finite()) {
        return Err(Error::InvalidTarget(format!("R must be positive, got {separation}")));
    }
    let theta = delta.rem_euclid(PI);
    let (s, c) = theta.sin_cos();
    if s.abs() < DEFAULT_POLE_FLOOR {
        return Err(Error::CotangentPole { k, sin_delta: s.abs(), floor: DEFAULT_POLE_FLOOR });
    }
    let z = k * separation;
    let (sz, cz) = z.sin_cos();
    let zcot = z * c / s;
    let (num0, den0) = (zcot - cz, z + sz);
    let (num1, den1) = (zcot + cz, z_minus_sin_z(z));
    let eta0 = eta_from_ratio(num0, den0);
    let eta1 = eta_from_ratio(num1, den1);
    let trig = CenterTrig { s1: s, c1: c, s2: s, c2: c };
    Ok(MolecularPhases {
        k,
        eta0,
        eta1,
        cot_eta0: num0 / den0,
        cot_eta1: num1 / den1,
        residual0: relative_residual(trig, k, separation, eta0),
        residual1: relative_residual(trig, k, separation, eta1),
        eta0_branch: Branch::Minus,
        scaled: false,
        degenerate: false,
    })
}

/// Convenience wrapper: closed-form identical-center phases for a model evaluated at k.
pub fn solve_phases_identical_model(model: &SPhaseModel, separation: f64, k: f64) -> Result<MolecularPhases> {
    solve_phases_identical(model.eval_phase(k), separation, k)
}

/// Evaluates [`solve_phases`] at each momentum, in order.
pub fn solve_phases_grid(target: &TwoCenterTarget, ks: &[f64]) -> Vec<Result<MolecularPhases>> {
    ks.iter().map(|&k| solve_phases(target, k)).collect()
}

/// Molecular zero-energy scattering length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringLength {
    /// L = −lim η₀(k)/k, bohr.
    pub value: f64,
    /// Difference between the last two extrapolants.
    pub error_estimate: f64,
    /// 1 − R²/(a₁a₂) is within 10⁻⁶ of zero.
    pub near_resonance: bool,
}

/// Relative tolerance on the extrapolation error of [`scattering_length`].
pub const SCATTERING_LENGTH_TOL: f64 = 1e-4;

/// Step sizes h for the zero-energy extrapolation; the momenta used are h / max(1, R).
pub const SCATTERING_LENGTH_STEPS: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// Zero-energy limit of −η₀/k by polynomial extrapolation in k.
pub fn scattering_length(target: &TwoCenterTarget) -> Result<ScatteringLength> {
    let a1 = target.center1.scattering_length();
    let a2 = target.center2.scattering_length();
    let (a1, a2) = match (a1, a2) {
        (Some(a1), Some(a2)) => (a1, a2),
        _ => {
            return Err(Error::InvalidArgument(
                "scattering length needs a nonzero linear phase coefficient on both centers".into(),
            ))
        }
    };
    let r = target.separation;
    let near_resonance = (1.0 - r * r / (a1 * a2)).abs() < 1e-6;
    if near_resonance {
        warn!("{}: 1 - R^2/(a1 a2) vanishes, zero-energy resonance", target.name);
    }
    let scale = r.max(1.0);
    let samples = SCATTERING_LENGTH_STEPS
        .iter()
        .map(|&h| {
            let k = h / scale;
            solve_phases(target, k).map(|p| (k, -p.eta0 / k))
        })
        .collect::<Result<Vec<_>>>()?;
    let (value, error_estimate) = richardson_limit(&samples)?;
    let tol = SCATTERING_LENGTH_TOL * value.abs().max(f64::MIN_POSITIVE);
    if !(error_estimate <= tol) {
        return Err(Error::NotConverged { estimate: error_estimate, tolerance: tol });
    }
    Ok(ScatteringLength { value, error_estimate, near_resonance })
}
