use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::atomkit::TransitionSpec;
use crate::error::{domain, Result};
use crate::numerics::{integrate_to_infinity, QuadOptions};

/// Static-field energy outside a sphere of radius `r_min`, in joules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemanentEnergy {
    pub r_min_m: f64,
    pub closed_form_j: f64,
    pub quadrature_j: f64,
    pub relative_difference: f64,
}

impl RemanentEnergy {
    pub fn electron_volts(&self, transition: &TransitionSpec) -> f64 {
        self.closed_form_j / transition.constants.electron_volt()
    }
}

/// `√(a₀·λ₀)`, between the atomic size and the emitted wavelength.
pub fn geometric_mean_radius(transition: &TransitionSpec) -> f64 {
    (transition.constants.a0 * transition.wavelength()).sqrt()
}

/// `ε₀(2π/3)∫_{r_min}^∞ dr r²(‖μ‖/(4πε₀r³))²`, closed form `‖μ‖²/(72πε₀r³)`,
/// cross-checked by quadrature in the scaled variable `u = r/r_min`.
pub fn remanent_energy(r_min: f64, transition: &TransitionSpec) -> Result<RemanentEnergy> {
    if !(r_min > 0.0 && r_min.is_finite()) {
        return domain(format!("r_min must be positive, got {r_min}"));
    }
    let eps0 = transition.constants.eps0;
    let mu = transition.mu_norm();
    let closed = mu * mu / (72.0 * PI * eps0 * r_min.powi(3));
    let amp = mu / (4.0 * PI * eps0);
    let scaled = integrate_to_infinity(
        |u: f64| u * u * (1.0 / u.powi(3)).powi(2),
        1.0,
        QuadOptions { rel_tol: 1e-13, ..Default::default() },
    )?
    .value;
    let quad = eps0 * (2.0 * PI / 3.0) * amp * amp / r_min.powi(3) * scaled;
    Ok(RemanentEnergy {
        r_min_m: r_min,
        closed_form_j: closed,
        quadrature_j: quad,
        relative_difference: (quad - closed).abs() / closed,
    })
}

/// Number of excitations whose remanent energies add up to `threshold`
/// under the cumulative hypothesis.
pub fn excitation_count(threshold_j: f64, per_excitation_j: f64) -> Result<u64> {
    if !(threshold_j > 0.0) {
        return domain("threshold energy must be positive");
    }
    if !(per_excitation_j > 0.0) {
        return domain("remanent energy must be positive");
    }
    let q = threshold_j / per_excitation_j;
    // Ratios that are integers up to rounding are not bumped to the next one.
    let n = if (q - q.round()).abs() <= 1e-12 * q { q.round() } else { q.ceil() };
    Ok(n as u64)
}

pub fn excitation_budget(threshold_j: f64, transition: &TransitionSpec, r_min: f64) -> Result<u64> {
    excitation_count(threshold_j, remanent_energy(r_min, transition)?.closed_form_j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_and_quadrature_agree() {
        let t = TransitionSpec::hydrogen_paper();
        let r = geometric_mean_radius(&t);
        let e = remanent_energy(r, &t).unwrap();
        assert!(e.relative_difference < 1e-10);
        let e2 = remanent_energy(2.0 * r, &t).unwrap();
        assert!((e2.closed_form_j * 8.0 - e.closed_form_j).abs() < 1e-14 * e.closed_form_j);
        assert!(remanent_energy(0.0, &t).is_err());
        assert!(remanent_energy(-1.0, &t).is_err());
    }

    #[test]
    fn budget() {
        let t = TransitionSpec::hydrogen_paper();
        let ev = t.constants.electron_volt();
        assert_eq!(excitation_count(10.0 * ev, 1e-4 * ev).unwrap(), 100_000);
        assert_eq!(excitation_count(7.0, 1.0).unwrap(), 7);
        assert_eq!(excitation_count(7.5, 1.0).unwrap(), 8);
        assert!(excitation_count(1.0, 0.0).is_err());
        let r = geometric_mean_radius(&t);
        let n1 = excitation_budget(1e-15, &t, r).unwrap();
        let n2 = excitation_budget(1e-15, &t, 2.0 * r).unwrap();
        let e = remanent_energy(r, &t).unwrap().closed_form_j;
        let exact1 = 1e-15 / e;
        assert!((n2 as f64 / 8.0 - exact1).abs() <= 1.0);
        assert!(n1 as f64 >= exact1 * (1.0 - 1e-12));
    }
}
