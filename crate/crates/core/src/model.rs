//! Phase models, two-center targets, presets and the target JSON format.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{check_momentum, Error, Result};

/// Default floor on |sin δ| below which `k cot δ` is treated as a pole.
pub const DEFAULT_POLE_FLOOR: f64 = 1e-14;

/// Quadratic model of a single-center s-wave phase,
/// δ(k) = offset_half_turns·π + c1·k + c2·k².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SPhaseModel {
    pub offset_half_turns: i32,
    pub c1: f64,
    #[serde(default)]
    pub c2: f64,
}

impl SPhaseModel {
    /// Carbon atom: δ(k) = 2π − 1.912·k.
    pub const CARBON: SPhaseModel = SPhaseModel { offset_half_turns: 2, c1: -1.912, c2: 0.0 };

    /// Hydrogen atom, singlet: δ(k) = π − 5.72682·k + 3.62932·k².
    pub const HYDROGEN_SINGLET: SPhaseModel =
        SPhaseModel { offset_half_turns: 1, c1: -5.72682, c2: 3.62932 };

    pub fn new(offset_half_turns: i32, c1: f64, c2: f64) -> Result<Self> {
        let m = SPhaseModel { offset_half_turns, c1, c2 };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.offset_half_turns < 0 {
            return Err(Error::InvalidTarget(format!(
                "offset_half_turns must be non-negative, got {}",
                self.offset_half_turns
            )));
        }
        if !self.c1.is_finite() || !self.c2.is_finite() {
            return Err(Error::InvalidTarget("phase coefficients must be finite".into()));
        }
        Ok(())
    }

    /// δ(k) in radians.
    pub fn eval_phase(&self, k: f64) -> f64 {
        f64::from(self.offset_half_turns) * PI + self.polynomial_part(k)
    }

    /// c1·k + c2·k²: the phase with the integer multiple of π dropped.
    /// Sines and cosines of this value equal those of δ up to a common sign
    /// (−1)^offset_half_turns.
    pub fn polynomial_part(&self, k: f64) -> f64 {
        k * (self.c1 + self.c2 * k)
    }

    /// δ(k) reduced modulo π to [−π/2, π/2].
    pub fn reduced_phase(&self, k: f64) -> f64 {
        let x = self.polynomial_part(k);
        x - PI * (x / PI).round()
    }

    /// (sin, cos) of the polynomial part. Consumers only use ratios and
    /// products with one factor per center, so the dropped sign cancels.
    pub fn sin_cos(&self, k: f64) -> (f64, f64) {
        self.polynomial_part(k).sin_cos()
    }

    /// k·cot δ(k), with the default pole floor.
    pub fn kcot_delta(&self, k: f64) -> Result<f64> {
        self.kcot_delta_with_floor(k, DEFAULT_POLE_FLOOR)
    }

    pub fn kcot_delta_with_floor(&self, k: f64, floor: f64) -> Result<f64> {
        check_momentum(k)?;
        let (s, c) = self.reduced_phase(k).sin_cos();
        if s.abs() < floor {
            return Err(Error::CotangentPole { k, sin_delta: s.abs(), floor });
        }
        Ok(k * c / s)
    }

    /// Zero-energy scattering length −lim δ/k = −c1, if the linear term is nonzero.
    pub fn scattering_length(&self) -> Option<f64> {
        (self.c1 != 0.0).then_some(-self.c1)
    }
}

/// Two zero-range centers on the symmetry axis, center 1 at +R/2 and
/// center 2 at −R/2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoCenterTarget {
    pub name: String,
    #[serde(rename = "R")]
    pub separation: f64,
    pub center1: SPhaseModel,
    pub center2: SPhaseModel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl TwoCenterTarget {
    pub fn new(
        name: impl Into<String>,
        center1: SPhaseModel,
        center2: SPhaseModel,
        separation: f64,
    ) -> Result<Self> {
        let t = TwoCenterTarget {
            name: name.into(),
            separation,
            center1,
            center2,
            provenance: None,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = Some(provenance.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.separation > 0.0 && self.separation.is_finite()) {
            return Err(Error::InvalidTarget(format!(
                "R must be positive and finite, got {}",
                self.separation
            )));
        }
        self.center1.validate()?;
        self.center2.validate()
    }

    /// Both centers carry the same phase model.
    pub fn is_symmetric(&self) -> bool {
        self.center1 == self.center2
    }

    /// Same target with the two centers exchanged.
    pub fn swapped(&self) -> Self {
        TwoCenterTarget {
            center1: self.center2,
            center2: self.center1,
            ..self.clone()
        }
    }

    /// Signed positions of the centers along the axis.
    pub fn center_positions(&self) -> (f64, f64) {
        (0.5 * self.separation, -0.5 * self.separation)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let t: TwoCenterTarget = serde_json::from_str(text).map_err(|e| Error::MalformedJson {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("target serialization is infallible")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json_str(&text)
    }
}

pub const CH_SEPARATION: f64 = 2.116;

/// Resolves a preset name or a path to a target JSON file.
///
/// `"CH"` is carbon + hydrogen at R = 2.116 bohr. `"C2"` is two carbon
/// centers and needs `separation`; no built-in C₂ bond length is assumed.
/// A separation given together with `"CH"` or a file overrides R.
pub fn preset(name: &str, separation: Option<f64>) -> Result<TwoCenterTarget> {
    let target = match name {
        "CH" => {
            let t = TwoCenterTarget::new(
                "CH",
                SPhaseModel::CARBON,
                SPhaseModel::HYDROGEN_SINGLET,
                CH_SEPARATION,
            )?
            .with_provenance("built-in CH model, R = 2.116 bohr");
            match separation {
                Some(r) => override_separation(t, r)?,
                None => t,
            }
        }
        "C2" => {
            let r = separation.ok_or_else(|| Error::MissingSeparation(name.to_string()))?;
            TwoCenterTarget::new("C2", SPhaseModel::CARBON, SPhaseModel::CARBON, r)?
                .with_provenance(format!("built-in C2 model, user-supplied R = {r} bohr"))
        }
        other => {
            let path = Path::new(other);
            if !path.exists() {
                return Err(Error::UnknownPreset(other.to_string()));
            }
            let t = TwoCenterTarget::load(path)?;
            match separation {
                Some(r) => override_separation(t, r)?,
                None => t,
            }
        }
    };
    Ok(target)
}

fn override_separation(mut t: TwoCenterTarget, r: f64) -> Result<TwoCenterTarget> {
    t.separation = r;
    t.validate()?;
    t.provenance = Some(format!("{} (R overridden to {r} bohr)", t.name));
    Ok(t)
}

/// Unit vector given by its polar cosine relative to the target axis and its azimuth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    cos_polar: f64,
    azimuth: f64,
}

impl Direction {
    pub fn new(cos_polar: f64, azimuth: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&cos_polar) {
            return Err(Error::InvalidDirection(format!("cos_polar {cos_polar} outside [-1, 1]")));
        }
        if !(0.0..2.0 * PI).contains(&azimuth) {
            return Err(Error::InvalidDirection(format!("azimuth {azimuth} outside [0, 2pi)")));
        }
        Ok(Direction { cos_polar, azimuth })
    }

    /// Direction with the given polar cosine and zero azimuth.
    pub fn from_cos(cos_polar: f64) -> Result<Self> {
        Self::new(cos_polar, 0.0)
    }

    pub fn from_polar_angle(theta: f64) -> Result<Self> {
        Self::new(theta.cos().clamp(-1.0, 1.0), 0.0)
    }

    pub fn cos_polar(&self) -> f64 {
        self.cos_polar
    }

    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }

    /// The opposite direction.
    pub fn reversed(&self) -> Self {
        Direction {
            cos_polar: -self.cos_polar,
            azimuth: (self.azimuth + PI).rem_euclid(2.0 * PI),
        }
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let sin_polar = (1.0 - self.cos_polar * self.cos_polar).max(0.0).sqrt();
        let (s, c) = self.azimuth.sin_cos();
        [sin_polar * c, sin_polar * s, self.cos_polar]
    }
}
