use serde::{Deserialize, Serialize};

use super::modes::Trajectory;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    /// Decay rate of `|c_e|²` in units of ω₀.
    pub gamma_eff: f64,
    /// Frequency shift of the excited amplitude in units of ω₀.
    pub omega_shift: f64,
    /// RMS residual of the `ln|c_e|` fit.
    pub residual: f64,
    /// Coefficient of determination of `|c_e|` against the fitted exponential.
    pub r_squared: f64,
}

fn line_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Least-squares fit of `ln|c_e|` (slope −Γ_eff/2) and of the unwrapped
/// phase (slope −δω).
pub fn fit_decay(trajectory: &Trajectory) -> Result<DecayFit> {
    let t = &trajectory.times;
    let c = &trajectory.excited;
    if t.len() < 3 || t.len() != c.len() {
        return Err(Error::FitFailure("need at least three samples".into()));
    }
    let last = c[c.len() - 1].norm_sqr();
    if !(last <= (-2.0f64).exp() * (1.0 + 1e-9)) {
        return Err(Error::FitFailure(format!(
            "trajectory spans fewer than two e-foldings (final |c_e|² = {last:.3e})"
        )));
    }
    if c.iter().any(|z| !(z.norm() > 0.0)) {
        return Err(Error::FitFailure("excited amplitude vanishes".into()));
    }
    let logs: Vec<f64> = c.iter().map(|z| z.norm().ln()).collect();
    let (slope, icpt) = line_fit(t, &logs);
    let gamma_eff = -2.0 * slope;
    if !(gamma_eff > 0.0) {
        return Err(Error::FitFailure("amplitude does not decay".into()));
    }

    let mut phase = Vec::with_capacity(c.len());
    let mut prev = c[0].arg();
    let mut offset = 0.0;
    for z in c {
        let mut a = z.arg() + offset;
        while a - prev > std::f64::consts::PI {
            a -= 2.0 * std::f64::consts::PI;
            offset -= 2.0 * std::f64::consts::PI;
        }
        while a - prev < -std::f64::consts::PI {
            a += 2.0 * std::f64::consts::PI;
            offset += 2.0 * std::f64::consts::PI;
        }
        phase.push(a);
        prev = a;
    }
    let (pslope, _) = line_fit(t, &phase);

    let n = t.len() as f64;
    let residual = (t.iter().zip(&logs).map(|(ti, l)| (l - (icpt + slope * ti)).powi(2)).sum::<f64>() / n).sqrt();
    let mags: Vec<f64> = c.iter().map(|z| z.norm()).collect();
    let mean = mags.iter().sum::<f64>() / n;
    let ss_tot: f64 = mags.iter().map(|m| (m - mean).powi(2)).sum();
    let ss_res: f64 = t.iter().zip(&mags).map(|(ti, m)| (m - (icpt + slope * ti).exp()).powi(2)).sum();
    Ok(DecayFit { gamma_eff, omega_shift: -pslope, residual, r_squared: 1.0 - ss_res / ss_tot })
}
