//! Atom-field matrix elements for the three interaction models, the
//! high-frequency form factor, and the exponential-decay amplitudes.
//!
//! SI couplings are energies (J, unit quantization volume). The internal
//! couplings used by the mode oracle are rates in units of ω₀, normalized so
//! that the golden rule reproduces the configured Γ for the dipole models.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::atomkit::{polarization_basis, real_norm, CVec3, TransitionSpec, Vec3};
use crate::error::{domain, Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CouplingModel {
    #[serde(rename = "er-dip")]
    ErDipole,
    #[serde(rename = "ap-dip")]
    ApDipole,
    #[serde(rename = "ap-exact")]
    ApExact,
}

impl CouplingModel {
    pub const ALL: [CouplingModel; 3] = [Self::ErDipole, Self::ApDipole, Self::ApExact];

    pub fn tag(self) -> &'static str {
        match self {
            Self::ErDipole => "er-dip",
            Self::ApDipole => "ap-dip",
            Self::ApExact => "ap-exact",
        }
    }
}

impl std::str::FromStr for CouplingModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "er-dip" => Ok(Self::ErDipole),
            "ap-dip" => Ok(Self::ApDipole),
            "ap-exact" => Ok(Self::ApExact),
            other => domain(format!("unknown coupling model '{other}'")),
        }
    }
}

/// Photon mode label: wave vector (1/m in SI calls, c/ω₀ units internally)
/// and polarization index 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeIndex {
    pub k: Vec3,
    pub lambda: u8,
}

impl ModeIndex {
    pub fn new(k: Vec3, lambda: u8) -> Result<Self> {
        if !(lambda == 1 || lambda == 2) {
            return domain(format!("polarization index must be 1 or 2, got {lambda}"));
        }
        if k.iter().any(|c| !c.is_finite()) {
            return domain("wave vector must be finite");
        }
        Ok(Self { k, lambda })
    }

    pub fn k_norm(&self) -> f64 {
        real_norm(&self.k)
    }

    pub fn polarization(&self) -> Result<CVec3> {
        if self.k_norm() == 0.0 {
            return domain("polarization undefined at k = 0");
        }
        let (e1, e2) = polarization_basis(&self.k)?;
        Ok(if self.lambda == 1 { e1 } else { e2 })
    }
}

/// Form factor `[1 + ((2/3)a₀k)²]⁻²` of the exact minimal coupling.
/// `k_norm` and `a0` must share a length unit.
pub fn cutoff(k_norm: f64, a0: f64) -> Result<f64> {
    if !(k_norm >= 0.0) {
        return domain(format!("wavenumber must be non-negative, got {k_norm}"));
    }
    let u = 2.0 / 3.0 * a0 * k_norm;
    Ok(1.0 / (1.0 + u * u).powi(2))
}

/// SI coupling `G_λ(k)` in joules.
pub fn coupling(model: CouplingModel, mode: &ModeIndex, transition: &TransitionSpec) -> Result<Complex64> {
    let k = mode.k_norm();
    let eps = mode.polarization()?;
    let overlap = eps.hdot(&transition.mu);
    let pc = &transition.constants;
    let base = 16.0 * PI.powi(3) * pc.eps0;
    let g = match model {
        CouplingModel::ErDipole => -I * (pc.hbar * pc.c * k / base).sqrt() * overlap,
        CouplingModel::ApDipole | CouplingModel::ApExact => {
            let g = -I * transition.omega0 * (pc.hbar / (base * pc.c * k)).sqrt() * overlap;
            if model == CouplingModel::ApExact {
                g * cutoff(k, pc.a0)?
            } else {
                g
            }
        }
    };
    Ok(g)
}

/// Dimensionless coupling (rate in units of ω₀) for a mode with internal
/// wavenumber `k` and overlap `ε*·μ̂`.
///
/// `|G|² = 3γ/(16π²)·k^{±1}·|ε*·μ̂|²`, so that `2π Σ_λ∫d³k |G|² δ(k − 1) = γ`.
pub fn coupling_internal(
    model: CouplingModel,
    k: f64,
    overlap: Complex64,
    gamma: f64,
    a0: f64,
) -> Result<Complex64> {
    if !(k > 0.0) {
        return domain(format!("internal wavenumber must be positive, got {k}"));
    }
    let g = (3.0 * gamma / (16.0 * PI * PI)).sqrt();
    let ap = -I * g / k.sqrt() * overlap;
    Ok(match model {
        CouplingModel::ErDipole => ap * k,
        CouplingModel::ApDipole => ap,
        CouplingModel::ApExact => ap * cutoff(k, a0)?,
    })
}

/// Bare excited amplitude `Θ(t)e^{−Γt/2}` (t in seconds).
pub fn excited_amplitude(t: f64, transition: &TransitionSpec) -> Complex64 {
    if t < 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new((-0.5 * transition.gamma * t).exp(), 0.0)
    }
}

/// Ground amplitude obtained by integrating the mode equation against the
/// exponential excited amplitude (t in seconds).
pub fn ground_amplitude(
    mode: &ModeIndex,
    t: f64,
    model: CouplingModel,
    transition: &TransitionSpec,
) -> Result<Complex64> {
    if t < 0.0 {
        return domain("ground amplitude is defined for t >= 0");
    }
    let g = coupling(model, mode, transition)?;
    let hbar = transition.constants.hbar;
    let detuning = transition.constants.c * mode.k_norm() - transition.omega0;
    let a = Complex64::new(-0.5 * transition.gamma, detuning);
    Ok(-I / hbar * g * ((a * t).exp() - 1.0) / a)
}
