use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atomkit::{projectors, CVec3, TransitionSpec, Vec3};
use crate::coupling::{cutoff, CouplingModel};
use crate::error::{domain, Error, Result};
use crate::fields::{split_position, ConeZone, FieldScan, ScanPoint, SpacetimeGrid, Zones};
use crate::numerics::{integrate, QuadOptions};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Settings of the radial k-space quadrature.
///
/// Without the form factor the integrand grows at large k and the integral
/// exists only as a distribution; a Gaussian factor `e^{−(k/K)²}` then
/// regularizes it, which blurs the light cone over `~1/K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructOptions {
    /// Multiply by the exact-coupling form factor (implied by `ApExact`).
    pub cutoff: bool,
    /// Integrate over the whole real k line instead of k > 0.
    pub negative_k: bool,
    pub zones: Zones,
    /// Regulator scale K (internal units); unused with the form factor.
    pub regulator_k: f64,
    pub rel_tol: f64,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        Self { cutoff: false, negative_k: true, zones: Zones::ALL, regulator_k: 100.0, rel_tol: 1e-8 }
    }
}

struct Integrand {
    model: CouplingModel,
    form_factor: bool,
    a0: f64,
    omega: Complex64,
    r: f64,
    t: f64,
    regulator: Option<f64>,
}

impl Integrand {
    fn weight(&self, k: f64) -> f64 {
        let f = match self.model {
            CouplingModel::ErDipole => k,
            _ => 1.0,
        };
        let ff = if self.form_factor { cutoff(k.abs(), self.a0).unwrap_or(0.0) } else { 1.0 };
        let reg = self.regulator.map_or(1.0, |kk| (-(k / kk).powi(2)).exp());
        f * ff * reg
    }

    /// `(e^{−iΩt} − e^{−ikt})/(k − Ω)`: the decay-weighted time integral
    /// times the free evolution.
    fn time_factor(&self, k: f64) -> Complex64 {
        ((-I * self.omega * self.t).exp() - Complex64::from_polar(1.0, -k * self.t)) / (k - self.omega)
    }

    fn eval(&self, k: f64) -> [Complex64; 3] {
        let w = self.weight(k);
        if w == 0.0 {
            return [Complex64::new(0.0, 0.0); 3];
        }
        let tf = self.time_factor(k) * w;
        let r = self.r;
        let z = k * r;
        let (s, c) = z.sin_cos();
        // Near weight −2 sin(kr)/(k r³), regular at k = 0.
        let near = if z.abs() < 1e-4 { -2.0 * r * (1.0 - z * z / 6.0) / r.powi(3) } else { -2.0 * s / (k * r.powi(3)) };
        [tf * (2.0 * k * s / r), tf * (2.0 * c / (r * r)), tf * near]
    }
}

/// Modulus of the far-zone integrand at wavenumber `k`; it peaks at
/// resonance, k = 1.
pub fn integrand_modulus(k: f64, r: f64, t: f64, transition: &TransitionSpec) -> f64 {
    let it = Integrand {
        model: CouplingModel::ApDipole,
        form_factor: false,
        a0: transition.a0_internal(),
        omega: transition.omega_complex_internal(),
        r,
        t,
        regulator: None,
    };
    it.eval(k)[0].norm()
}

fn breakpoints(lo: f64, hi: f64, spacing: f64, gamma: f64) -> Vec<f64> {
    let mut b: Vec<f64> = Vec::new();
    let n = ((hi - lo) / spacing).ceil().max(1.0) as usize;
    for i in 0..=n {
        b.push(lo + (hi - lo) * i as f64 / n as f64);
    }
    for m in [0.0, 1.0, 3.0, 10.0, 30.0] {
        for s in [-1.0, 1.0] {
            let k = 1.0 + s * m * gamma;
            if k > lo && k < hi {
                b.push(k);
            }
        }
    }
    b.sort_by(f64::total_cmp);
    b.dedup_by(|a, c| (*a - *c).abs() <= 1e-14 * c.abs().max(1.0));
    b
}

/// ψ(x, t) from the radial k integral with the angular part done
/// analytically, internal units:
///
/// `ψ = (1/2π)∫dk k²·f(k)·M(k, x)·(e^{−iΩ₀t} − e^{−ikt})/(k − Ω₀)·μ̂`
///
/// with `f = 1` (A.p), `k` (E.r) and the form factor for the exact coupling.
pub fn reconstruct_field(
    transition: &TransitionSpec,
    model: CouplingModel,
    x: &Vec3,
    t: f64,
    opts: &ReconstructOptions,
) -> Result<CVec3> {
    let (r, xh) = split_position(x)?;
    if !(t > 0.0) {
        return domain("reconstruction needs t > 0");
    }
    if !(opts.rel_tol > 0.0) {
        return domain("tolerance must be positive");
    }
    let form_factor = opts.cutoff || model == CouplingModel::ApExact;
    let a0 = transition.a0_internal();
    let regulator = if form_factor { None } else { Some(opts.regulator_k) };
    if let Some(kk) = regulator {
        if !(kk > 0.0) {
            return domain("regulator scale must be positive");
        }
        // Regulated cone smearing must stay below the tolerance.
        let blur = (-(kk * (t - r)).powi(2) / 4.0).exp();
        if blur > opts.rel_tol {
            return Err(Error::Accuracy { estimate: blur, tolerance: opts.rel_tol });
        }
    }
    let it = Integrand { model, form_factor, a0, omega: transition.omega_complex_internal(), r, t, regulator };
    let k_max = match regulator {
        Some(kk) => 6.0 * kk,
        None => 60.0 / a0,
    };
    let spacing = std::f64::consts::PI / (t + r);
    let gamma = transition.gamma_internal();
    let qopts = QuadOptions { rel_tol: opts.rel_tol, abs_tol: 0.0, max_panels: 2_000_000 };
    let value: [Complex64; 3] = if opts.negative_k {
        let b = breakpoints(0.0, k_max, spacing, gamma);
        let f = |k: f64| {
            let p = it.eval(k);
            let m = it.eval(-k);
            [p[0] + m[0], p[1] + m[1], p[2] + m[2]]
        };
        integrate(f, &b, qopts)?.value
    } else {
        let b = breakpoints(0.0, k_max, spacing, gamma);
        integrate(|k: f64| it.eval(k), &b, qopts)?.value
    };
    let (pt, ps) = projectors(&xh)?;
    let mu = transition.mu_hat();
    let scale = 1.0 / (2.0 * std::f64::consts::PI);
    let mut psi = CVec3::zero();
    if opts.zones.far {
        psi += pt.apply(&mu) * (value[0] * scale);
    }
    let mut s = Complex64::new(0.0, 0.0);
    if opts.zones.mid {
        s += value[1];
    }
    if opts.zones.near {
        s += value[2];
    }
    psi += ps.apply(&mu) * (s * scale);
    Ok(psi)
}

/// Reconstruction over a grid, in grid order.
pub fn reconstruct_scan(
    transition: &TransitionSpec,
    model: CouplingModel,
    grid: &SpacetimeGrid,
    opts: &ReconstructOptions,
    collar: f64,
) -> Result<FieldScan> {
    if grid.is_empty() {
        return domain("empty grid");
    }
    let points = grid
        .points
        .par_iter()
        .map(|(x, t)| {
            let psi = reconstruct_field(transition, model, x, *t, opts)?;
            let r = crate::atomkit::real_norm(x);
            Ok(ScanPoint { x: *x, t: *t, psi, zone: ConeZone::classify(r, *t, collar) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FieldScan { points })
}
