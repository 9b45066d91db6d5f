//! Analytic single-photon fields obtained by convolving the symbolic kernels
//! with the exponential source, in internal units.

mod energy;
mod scan;
mod source;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::atomkit::{normalize, projectors, real_norm, CVec3, Dyadic3, TransitionSpec, Vec3};
use crate::coupling::CouplingModel;
use crate::error::{domain, Error, Result};
use crate::kernels::{kernel, GreenKernel, KernelModel};

pub use energy::{
    excitation_budget, excitation_count, geometric_mean_radius, remanent_energy, RemanentEnergy,
};
pub use scan::{
    causality_scan, direction_set, Axis, ConeZone, FieldScan, GridSpec, ScanPoint, ScanSummary,
    SpacetimeGrid, DEFAULT_COLLAR,
};
pub use source::{GaussianPulse, Source, SourceSignal, Unanchored};

/// Radial-power filter: near `1/r³`, mid `1/r²`, far `1/r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zones {
    pub near: bool,
    pub mid: bool,
    pub far: bool,
}

impl Zones {
    pub const ALL: Zones = Zones { near: true, mid: true, far: true };
    pub const NEAR: Zones = Zones { near: true, mid: false, far: false };
    pub const MID_FAR: Zones = Zones { near: false, mid: true, far: true };

    pub fn contains(&self, radial_power: u8) -> bool {
        match radial_power {
            1 => self.far,
            2 => self.mid,
            3 => self.near,
            _ => false,
        }
    }

    /// Parses a comma list such as `near,far`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut z = Zones { near: false, mid: false, far: false };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "near" => z.near = true,
                "mid" => z.mid = true,
                "far" => z.far = true,
                other => return domain(format!("unknown zone '{other}'")),
            }
        }
        if !(z.near || z.mid || z.far) {
            return domain("at least one zone is required");
        }
        Ok(z)
    }
}

impl Default for Zones {
    fn default() -> Self {
        Self::ALL
    }
}

impl std::fmt::Display for Zones {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<&str> = [(self.near, "near"), (self.mid, "mid"), (self.far, "far")]
            .iter()
            .filter(|(on, _)| *on)
            .map(|(_, n)| *n)
            .collect();
        write!(f, "{}", names.join(","))
    }
}

/// How the instantaneous longitudinal field of the A.p dipole is driven.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LongitudinalSource {
    /// Primitive of the source, continuous at t = 0.
    #[default]
    #[serde(rename = "primitive")]
    Primitive,
    /// `(i/Ω₀)·s(t)`: the dipole amplitude itself, no continuity constant.
    #[serde(rename = "amplitude")]
    Amplitude,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldOptions {
    pub include_longitudinal: bool,
    pub longitudinal_source: LongitudinalSource,
    pub zones: Zones,
}

impl FieldOptions {
    pub fn transverse() -> Self {
        Self { include_longitudinal: false, longitudinal_source: LongitudinalSource::Primitive, zones: Zones::ALL }
    }

    pub fn total() -> Self {
        Self { include_longitudinal: true, ..Self::transverse() }
    }

    pub fn footnote() -> Self {
        Self { longitudinal_source: LongitudinalSource::Amplitude, ..Self::total() }
    }

    pub fn with_zones(self, zones: Zones) -> Self {
        Self { zones, ..self }
    }
}

impl Default for FieldOptions {
    fn default() -> Self {
        Self::total()
    }
}

pub(crate) fn split_position(x: &Vec3) -> Result<(f64, Vec3)> {
    let r = real_norm(x);
    if r == 0.0 {
        return Err(Error::Singularity);
    }
    if !r.is_finite() {
        return domain("position must be finite");
    }
    Ok((r, normalize(x)?))
}

/// Dyadic response `∫dt′ G(x, t − t′)·src(t′)` for the terms whose radial
/// power is selected by `zones`. A retarded δ⁽ⁿ⁾ term samples `src⁽ⁿ⁾` at
/// `t − ‖x‖`, an instantaneous one at `t`; n = −1 samples the primitive.
pub fn convolve<S: Source + ?Sized>(
    kernel: &GreenKernel,
    source: &S,
    x: &Vec3,
    t: f64,
    zones: Zones,
) -> Result<Dyadic3> {
    let (r, xh) = split_position(x)?;
    let (pt, ps) = projectors(&xh)?;
    let mut out = Dyadic3::zero();
    for term in kernel.terms.iter().filter(|term| zones.contains(term.radial_power)) {
        let at = if term.retarded { t - r } else { t };
        let value = term.coefficient.internal() * source.derivative(term.derivative_order, at)
            / r.powi(term.radial_power as i32);
        let shape = match term.shape {
            crate::kernels::Shape::Transverse => pt,
            crate::kernels::Shape::Traceless => ps,
        };
        out += shape * value;
    }
    Ok(out)
}

fn transverse_kernel(model: CouplingModel) -> Result<GreenKernel> {
    match model {
        CouplingModel::ErDipole => Ok(kernel(KernelModel::QuantumErDip)),
        CouplingModel::ApDipole => Ok(kernel(KernelModel::QuantumApDip)),
        CouplingModel::ApExact => Err(Error::Unsupported(
            "the exact A.p coupling has no closed-form kernel; use the k-space oracle".into(),
        )),
    }
}

/// Field ψ(x, t) in internal units for a unit dipole direction μ̂.
///
/// For the E.r model the kernel is already the full causal response and the
/// longitudinal options are ignored. For the A.p dipole the instantaneous
/// longitudinal term is added when `include_longitudinal` is set.
pub fn field(
    model: CouplingModel,
    x: &Vec3,
    t: f64,
    transition: &TransitionSpec,
    options: &FieldOptions,
) -> Result<CVec3> {
    field_for(model, x, t, &transition.mu_hat(), transition.omega_complex_internal(), options)
}

pub(crate) fn field_for(
    model: CouplingModel,
    x: &Vec3,
    t: f64,
    mu_hat: &CVec3,
    omega: Complex64,
    options: &FieldOptions,
) -> Result<CVec3> {
    let src = SourceSignal::new(omega);
    let mut g = convolve(&transverse_kernel(model)?, &src, x, t, options.zones)?;
    if options.include_longitudinal && model == CouplingModel::ApDipole {
        let long = kernel(KernelModel::QuantumApLongitudinal);
        g += match options.longitudinal_source {
            LongitudinalSource::Primitive => convolve(&long, &src, x, t, options.zones)?,
            LongitudinalSource::Amplitude => convolve(&long, &Unanchored(src), x, t, options.zones)?,
        };
    }
    Ok(g.apply(mu_hat))
}

/// Closed form of the causal A.p near field:
/// `θ(t − r)(ω₀/Ω₀)(1 − e^{−iΩ₀(t−r)})(𝕀 − 3x̂x̂)μ̂/r³`.
pub fn total_near_field_ap(x: &Vec3, t: f64, transition: &TransitionSpec) -> Result<CVec3> {
    let (r, xh) = split_position(x)?;
    if t <= r {
        return Ok(CVec3::zero());
    }
    let omega = transition.omega_complex_internal();
    let (_, ps) = projectors(&xh)?;
    let e = Complex64::new(0.0, -1.0) * omega * (t - r);
    let amp = (1.0 - e.exp()) / omega / r.powi(3);
    Ok(ps.apply(&transition.mu_hat()) * amp)
}

fn component_ratio(num: &CVec3, den: &CVec3) -> Result<Complex64> {
    let scale = den.max_abs();
    if !(scale > 0.0) {
        return Err(Error::UndefinedRatio);
    }
    let i = (0..3).max_by(|&a, &b| den[a].norm().total_cmp(&den[b].norm())).expect("three components");
    let ratio = num[i] / den[i];
    // Remaining components must carry the same ratio.
    for j in 0..3 {
        if den[j].norm() > 1e-8 * scale && (num[j] - den[j] * ratio).norm() > 1e-9 * num.max_abs().max(1e-300) {
            return domain("fields are not proportional component by component");
        }
    }
    Ok(ratio)
}

/// `ψ^{A.p}/ψ^{E.r}` on the mid and far zones; ω₀/Ω₀ inside the cone.
pub fn midfar_ratio(x: &Vec3, t: f64, transition: &TransitionSpec) -> Result<Complex64> {
    let opts = FieldOptions::transverse().with_zones(Zones::MID_FAR);
    let ap = field(CouplingModel::ApDipole, x, t, transition, &opts)?;
    let er = field(CouplingModel::ErDipole, x, t, transition, &opts)?;
    component_ratio(&ap, &er)
}

/// `ψ^{A.p}_{near}/ψ^{E.r}_{near}` for the causal total A.p field. Inside the
/// cone it equals `(ω₀/Ω₀)(1 − e)/(−e)` with `e = e^{−iΩ₀(t−r)}`.
pub fn near_ratio(x: &Vec3, t: f64, transition: &TransitionSpec) -> Result<Complex64> {
    let opts = FieldOptions::total().with_zones(Zones::NEAR);
    let ap = field(CouplingModel::ApDipole, x, t, transition, &opts)?;
    let er = field(CouplingModel::ErDipole, x, t, transition, &opts)?;
    component_ratio(&ap, &er)
}
