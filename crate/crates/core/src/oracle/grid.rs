use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::atomkit::Vec3;
use crate::error::{domain, Error, Result};
use crate::numerics::gauss_legendre;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridPreset {
    #[serde(rename = "coarse")]
    Coarse,
    #[serde(rename = "fine")]
    Fine,
}

impl std::str::FromStr for GridPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coarse" => Ok(Self::Coarse),
            "fine" => Ok(Self::Fine),
            other => domain(format!("unknown grid preset '{other}'")),
        }
    }
}

/// Discretized mode continuum in internal units (wavenumbers in ω₀/c).
///
/// Radial nodes are midpoints of equal cells on `[1 − W, 1 + W]`; the
/// angular rule is Gauss–Legendre in cos θ times the trapezoid rule in φ.
/// Each direction carries both polarizations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeGrid {
    pub k: Vec<f64>,
    pub k_weights: Vec<f64>,
    pub directions: Vec<Vec3>,
    pub direction_weights: Vec<f64>,
}

impl ModeGrid {
    /// `half_width` W and spacing Δk in units of ω₀/c; the discrete spectrum
    /// recurs after `2π/Δk`, which must exceed the simulated time span.
    pub fn new(half_width: f64, dk: f64, n_theta: usize, n_phi: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width < 1.0) {
            return domain("radial half-width must lie in (0, 1)");
        }
        if !(dk > 0.0 && dk <= half_width) {
            return domain("radial spacing must lie in (0, W]");
        }
        if n_theta == 0 || n_phi == 0 {
            return domain("angular rule needs at least one node per axis");
        }
        let n = (2.0 * half_width / dk).round().max(1.0) as usize;
        let step = 2.0 * half_width / n as f64;
        let k: Vec<f64> = (0..n).map(|j| 1.0 - half_width + (j as f64 + 0.5) * step).collect();
        let k_weights = vec![step; n];

        let (u, wu) = gauss_legendre(n_theta);
        let mut directions = Vec::with_capacity(n_theta * n_phi);
        let mut direction_weights = Vec::with_capacity(n_theta * n_phi);
        for (ct, w) in u.iter().zip(&wu) {
            let st = (1.0 - ct * ct).sqrt();
            for j in 0..n_phi {
                let phi = 2.0 * PI * (j as f64 + 0.5) / n_phi as f64;
                directions.push([st * phi.cos(), st * phi.sin(), *ct]);
                direction_weights.push(w * 2.0 * PI / n_phi as f64);
            }
        }
        let grid = Self { k, k_weights, directions, direction_weights };
        grid.validate()?;
        Ok(grid)
    }

    /// Window `W = n_w·γ` around resonance with spacing chosen so that the
    /// recurrence time is at least `recurrence` (internal time).
    pub fn around_resonance(gamma: f64, n_w: f64, recurrence: f64, n_theta: usize, n_phi: usize) -> Result<Self> {
        let w = (n_w * gamma).min(0.9);
        Self::new(w, 2.0 * PI / recurrence, n_theta, n_phi)
    }

    /// Presets for a decay simulated over `t_max` (internal time).
    pub fn preset(preset: GridPreset, gamma: f64, t_max: f64) -> Result<Self> {
        match preset {
            GridPreset::Coarse => Self::around_resonance(gamma, 30.0, 2.0 * t_max, 2, 3),
            GridPreset::Fine => Self::around_resonance(gamma, 100.0, 8.0 * t_max, 3, 4),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k.len() != self.k_weights.len() || self.directions.len() != self.direction_weights.len() {
            return domain("node and weight counts differ");
        }
        if self.k_weights.iter().chain(&self.direction_weights).any(|w| !(*w > 0.0)) {
            return domain("quadrature weights must be positive");
        }
        let total: f64 = self.direction_weights.iter().sum();
        if (total - 4.0 * PI).abs() > 1e-10 {
            return domain(format!("angular weights sum to {total}, expected 4π"));
        }
        Ok(())
    }

    pub fn half_width(&self) -> f64 {
        let lo = self.k[0] - 0.5 * self.k_weights[0];
        let hi = self.k[self.k.len() - 1] + 0.5 * self.k_weights[self.k.len() - 1];
        0.5 * (hi - lo)
    }

    pub fn spacing(&self) -> f64 {
        self.k_weights[0]
    }

    pub fn mode_count(&self) -> usize {
        self.k.len() * self.directions.len() * 2
    }
}
