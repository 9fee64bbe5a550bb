//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a flat `Float64Array` of fixed-width rows so the page
//! can plot without any decoding layer.

use std::f64::consts::PI;

use wasm_bindgen::prelude::*;
use zrp_core::angular::{limit_y, AngularBasis, Channel};
use zrp_core::model::{preset, Direction, TwoCenterTarget};
use zrp_core::scattering::{oracle_amplitude, oracle_solve, partial_amplitude_exact, partial_amplitude_paper, sigma_bar};

fn target(name: &str, separation: f64) -> Result<TwoCenterTarget, String> {
    let r = (separation > 0.0).then_some(separation);
    preset(name, r).map_err(|e| e.to_string())
}

fn grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>, String> {
    if !(min > 0.0 && min < max && steps >= 2) {
        return Err(format!("need 0 < min < max and at least 2 steps, got {min}, {max}, {steps}"));
    }
    Ok((0..steps).map(|i| min + (max - min) * i as f64 / (steps - 1) as f64).collect())
}

/// Rows of (k, σ₀, σ₁, σ_total, 4π/k²).
pub fn cross_section_rows(name: &str, separation: f64, k_min: f64, k_max: f64, steps: usize) -> Result<Vec<f64>, String> {
    let t = target(name, separation)?;
    let mut out = Vec::with_capacity(5 * steps);
    for k in grid(k_min, k_max, steps)? {
        let s = sigma_bar(&t, k).map_err(|e| e.to_string())?;
        out.extend([k, s.sigma0, s.sigma1, s.sigma_total, s.unitarity_limit()]);
    }
    Ok(out)
}

/// Rows of (θ in degrees, Z₀, Z₁, Y₀₀, Y₁₀) at z = kR.
pub fn angular_rows(z: f64, steps: usize) -> Result<Vec<f64>, String> {
    let basis = AngularBasis::at_z(z).map_err(|e| e.to_string())?;
    if steps < 2 {
        return Err("need at least 2 angles".into());
    }
    let mut out = Vec::with_capacity(5 * steps);
    for i in 0..steps {
        let deg = 180.0 * i as f64 / (steps - 1) as f64;
        let u = deg.to_radians().cos();
        let [z0, z1] = basis.eval_both(u);
        out.extend([deg, z0, z1, limit_y(Channel::Even, u), limit_y(Channel::Odd, u)]);
    }
    Ok(out)
}

/// Rows of (θ′ in degrees, |F|² closed form, |F|² channel expansion, |F|² fixed basis)
/// for outgoing directions in the plane of the molecular axis and the incident direction.
pub fn amplitude_rows(
    name: &str,
    separation: f64,
    k: f64,
    incident_deg: f64,
    steps: usize,
) -> Result<Vec<f64>, String> {
    let t = target(name, separation)?;
    let inc = Direction::from_polar_angle(incident_deg.to_radians()).map_err(|e| e.to_string())?;
    let sol = oracle_solve(&t, k, inc).map_err(|e| e.to_string())?;
    if steps < 2 {
        return Err("need at least 2 angles".into());
    }
    let mut out = Vec::with_capacity(4 * steps);
    for i in 0..steps {
        let deg = 180.0 * i as f64 / (steps - 1) as f64;
        let d = Direction::from_polar_angle(deg * PI / 180.0).map_err(|e| e.to_string())?;
        let f = oracle_amplitude(&sol, d).value;
        let e = partial_amplitude_exact(&t, k, inc, d).map_err(|e| e.to_string())?.value;
        let p = partial_amplitude_paper(&t, k, inc, d).map_err(|e| e.to_string())?.value;
        out.extend([deg, f.norm_sqr(), e.norm_sqr(), p.norm_sqr()]);
    }
    Ok(out)
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// `separation` ≤ 0 selects the preset default (CH only).
#[wasm_bindgen]
pub fn cross_sections(target: &str, separation: f64, k_min: f64, k_max: f64, steps: usize) -> Result<Vec<f64>, JsValue> {
    js(cross_section_rows(target, separation, k_min, k_max, steps))
}

#[wasm_bindgen]
pub fn angular_functions(z: f64, steps: usize) -> Result<Vec<f64>, JsValue> {
    js(angular_rows(z, steps))
}

#[wasm_bindgen]
pub fn amplitude_curve(
    target: &str,
    separation: f64,
    k: f64,
    incident_deg: f64,
    steps: usize,
) -> Result<Vec<f64>, JsValue> {
    js(amplitude_rows(target, separation, k, incident_deg, steps))
}
