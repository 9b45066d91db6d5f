use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::constants::PhysicalConstants;
use super::geometry::{xi, CVec3};
use crate::error::{domain, Error, Result};

/// Lyman-α vacuum wavelength used by the hydrogen presets.
pub const LYMAN_ALPHA_WAVELENGTH_M: f64 = 121.567e-9;

/// Spontaneous decay rate of hydrogen 2p → 1s (Einstein A coefficient).
pub const HYDROGEN_2P_DECAY_RATE: f64 = 6.2649e8;

/// Unit system used when writing datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum UnitSystem {
    #[serde(rename = "SI")]
    Si,
    #[default]
    #[serde(rename = "internal")]
    Internal,
}

/// JSON form of a transition.
///
/// `m2_weights` lists `[re, im]` pairs for m₂ = −1, 0, +1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionConfig {
    pub omega0_rad_s: f64,
    pub gamma_rad_s: f64,
    pub m2_weights: [[f64; 2]; 3],
    #[serde(default)]
    pub units: UnitSystem,
}

impl TransitionConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }
}

/// `√2·(2⁷/3⁵)·e·a₀`, the Hermitian norm of the 1s–2p dipole.
pub fn dipole_norm(constants: &PhysicalConstants) -> f64 {
    SQRT_2 * (128.0 / 243.0) * constants.e_charge * constants.a0
}

/// Transition dipole `μ = √2(2⁷/3⁵)ea₀ Σ w_{m₂} ξ_{m₂}` in C·m.
///
/// Weights are ordered m₂ = −1, 0, +1 and must be normalized.
pub fn dipole_moment(m2_weights: &[Complex64; 3], constants: &PhysicalConstants) -> Result<CVec3> {
    let total: f64 = m2_weights.iter().map(|w| w.norm_sqr()).sum();
    if !((total - 1.0).abs() <= 1e-12) {
        return domain(format!("m2 weights must satisfy Σ|w|² = 1, got {total}"));
    }
    Ok(dipole_from_weights(m2_weights, dipole_norm(constants)))
}

fn dipole_from_weights(m2_weights: &[Complex64; 3], scale: f64) -> CVec3 {
    let mut mu = CVec3::zero();
    for (w, m2) in m2_weights.iter().zip(-1..=1) {
        mu += xi(m2).expect("m2 in range").scale(*w * scale);
    }
    mu
}

/// Atomic transition parameters plus the derived dipole.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionSpec {
    pub constants: PhysicalConstants,
    pub omega_e: f64,
    pub omega_g: f64,
    pub omega0: f64,
    pub gamma: f64,
    pub m2_weights: [Complex64; 3],
    /// Dipole moment in C·m.
    pub mu: CVec3,
}

impl TransitionSpec {
    pub fn new(
        omega0: f64,
        gamma: f64,
        m2_weights: [Complex64; 3],
        constants: PhysicalConstants,
    ) -> Result<Self> {
        constants.validate()?;
        if !(omega0.is_finite() && omega0 > 0.0) {
            return domain("omega0 must be positive");
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return domain("gamma must be positive");
        }
        if gamma >= omega0 {
            return domain("gamma must be smaller than omega0");
        }
        let mu = dipole_moment(&m2_weights, &constants)?;
        Ok(Self {
            constants,
            omega_e: omega0,
            omega_g: 0.0,
            omega0,
            gamma,
            m2_weights,
            mu,
        })
    }

    pub fn from_config(cfg: &TransitionConfig, constants: PhysicalConstants) -> Result<Self> {
        let w = cfg.m2_weights.map(|[re, im]| Complex64::new(re, im));
        Self::new(cfg.omega0_rad_s, cfg.gamma_rad_s, w, constants)
    }

    pub fn to_config(&self, units: UnitSystem) -> TransitionConfig {
        TransitionConfig {
            omega0_rad_s: self.omega0,
            gamma_rad_s: self.gamma,
            m2_weights: self.m2_weights.map(|w| [w.re, w.im]),
            units,
        }
    }

    /// Lyman-α with ω₀/Γ = 10³, the ratio used for desk-scale runs.
    pub fn hydrogen_paper() -> Self {
        let k = PhysicalConstants::codata2018();
        let omega0 = 2.0 * PI * k.c / LYMAN_ALPHA_WAVELENGTH_M;
        Self::new(omega0, omega0 / 1e3, z_polarized(), k).expect("valid preset")
    }

    /// Lyman-α with the tabulated 2p lifetime.
    pub fn hydrogen_literature() -> Self {
        let k = PhysicalConstants::codata2018();
        let omega0 = 2.0 * PI * k.c / LYMAN_ALPHA_WAVELENGTH_M;
        Self::new(omega0, HYDROGEN_2P_DECAY_RATE, z_polarized(), k).expect("valid preset")
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "hydrogen-paper" => Ok(Self::hydrogen_paper()),
            "hydrogen-literature" => Ok(Self::hydrogen_literature()),
            other => Err(Error::Config(format!("unknown preset '{other}'"))),
        }
    }

    /// Same transition with another decay rate.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::new(self.omega0, gamma, self.m2_weights, self.constants)
    }

    pub fn with_weights(&self, m2_weights: [Complex64; 3]) -> Result<Self> {
        Self::new(self.omega0, self.gamma, m2_weights, self.constants)
    }

    pub fn mu_norm(&self) -> f64 {
        self.mu.norm()
    }

    /// Unit dipole direction μ/‖μ‖ (complex in general).
    pub fn mu_hat(&self) -> CVec3 {
        self.mu * (1.0 / self.mu.norm())
    }

    /// Γ/ω₀.
    pub fn gamma_internal(&self) -> f64 {
        self.gamma / self.omega0
    }

    /// Ω₀/ω₀ = 1 − iΓ/(2ω₀).
    pub fn omega_complex_internal(&self) -> Complex64 {
        Complex64::new(1.0, -0.5 * self.gamma_internal())
    }

    /// Ω₀ = ω₀ − iΓ/2 in rad/s.
    pub fn omega_complex(&self) -> Complex64 {
        Complex64::new(self.omega0, -0.5 * self.gamma)
    }

    /// a₀ω₀/c.
    pub fn a0_internal(&self) -> f64 {
        self.constants.a0 * self.omega0 / self.constants.c
    }

    pub fn wavelength(&self) -> f64 {
        2.0 * PI * self.constants.c / self.omega0
    }
}

fn z_polarized() -> [Complex64; 3] {
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
}
