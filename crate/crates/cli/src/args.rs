use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "zrp", version, about = "Two-center zero-range potential scattering: phases, cross sections, amplitudes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenphases on a k grid.
    Phases {
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Orientation-averaged partial cross sections next to the optical-theorem average.
    Xsec {
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Gauss-Legendre nodes for the orientation average.
        #[arg(long, default_value_t = 64)]
        nodes: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Angular functions Z0, Z1 and their spherical-harmonic limits.
    Angular {
        /// Values of z = kR.
        #[arg(long, value_delimiter = ',', default_values_t = [0.001, 1.0, 2.0, 4.0])]
        z: Vec<f64>,
        /// Number of polar angles in [0, 180] degrees.
        #[arg(long, default_value_t = 181)]
        theta_steps: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Amplitudes from the closed-form solution, the channel expansion and the fixed-basis expansion.
    Amplitude {
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Number of incident and outgoing polar cosines in [-1, 1].
        #[arg(long, default_value_t = 5)]
        dir_steps: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Writes figure1.csv, figure2.csv and figure3.csv into a directory.
    Figures {
        /// Internuclear distance of C2 in bohr.
        #[arg(long = "c2-r")]
        c2_r: f64,
        #[arg(long, default_value_t = 0.01)]
        k_min: f64,
        #[arg(long, default_value_t = 2.0)]
        k_max: f64,
        #[arg(long, default_value_t = 400)]
        k_steps: usize,
        #[arg(long, default_value_t = 181)]
        theta_steps: usize,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Runs the invariant checks and prints a pass/fail table.
    Validate {
        /// Tolerance for the amplitude equivalence checks.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Internuclear distance used for the C2 checks.
        #[arg(long = "c2-r", default_value_t = 2.348)]
        c2_r: f64,
        #[arg(long, default_value_t = 64)]
        nodes: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Preset name (CH, C2) or path to a target JSON file.
    #[arg(long, default_value = "CH")]
    pub target: String,
    /// Internuclear distance in bohr; required for C2, overrides CH.
    #[arg(long = "R")]
    pub r: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.01)]
    pub k_min: f64,
    #[arg(long, default_value_t = 2.0)]
    pub k_max: f64,
    #[arg(long, default_value_t = 200)]
    pub k_steps: usize,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Evenly spaced grid including both ends; a single point sits at `min`.
pub fn linspace(min: f64, max: f64, steps: usize) -> CliResult<Vec<f64>> {
    if !(min > 0.0 && min.is_finite() && max.is_finite() && min <= max) {
        return Err(CliError::Usage(format!("need 0 < k-min <= k-max, got {min} and {max}")));
    }
    if steps == 0 {
        return Err(CliError::Usage("k-steps must be at least 1".into()));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let h = (max - min) / (steps - 1) as f64;
    Ok((0..steps).map(|i| if i + 1 == steps { max } else { min + h * i as f64 }).collect())
}

impl GridArgs {
    pub fn ks(&self) -> CliResult<Vec<f64>> {
        linspace(self.k_min, self.k_max, self.k_steps)
    }
}

/// Cosines spaced evenly in [-1, 1].
pub fn cos_grid(steps: usize) -> CliResult<Vec<f64>> {
    match steps {
        0 => Err(CliError::Usage("direction grid needs at least one point".into())),
        1 => Ok(vec![1.0]),
        n => Ok((0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect()),
    }
}

/// Polar angles in degrees spaced evenly in [0, 180].
pub fn theta_grid(steps: usize) -> CliResult<Vec<f64>> {
    if steps < 2 {
        return Err(CliError::Usage("theta-steps must be at least 2".into()));
    }
    Ok((0..steps).map(|i| 180.0 * i as f64 / (steps - 1) as f64).collect())
}

pub fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("{name} must be positive, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_ends_exact() {
        let g = linspace(0.01, 2.0, 400).unwrap();
        assert_eq!(g.len(), 400);
        assert_eq!((g[0], g[399]), (0.01, 2.0));
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(linspace(0.5, 0.5, 1).unwrap(), vec![0.5]);
        assert!(linspace(0.0, 1.0, 3).is_err());
        assert!(linspace(2.0, 1.0, 3).is_err());
        assert!(linspace(0.1, 1.0, 0).is_err());
    }
}
