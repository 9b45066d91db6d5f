use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::ModeGrid;
use crate::atomkit::{polarization_basis, TransitionSpec};
use crate::coupling::{coupling_internal, CouplingModel};
use crate::error::{domain, Result};
use crate::numerics::{Dopri5, DopriOptions};

const I: Complex64 = Complex64::new(0.0, 1.0);
const CHUNK: usize = 4096;

/// Discretized mode equations in internal units. With `b_j = √w_j·c_g,j`:
///
/// `ḃ_j = −i·a_j·c_e·e^{i(k_j − 1)t}`, `ċ_e = −i·Σ_j a_j*·b_j·e^{−i(k_j − 1)t}`,
///
/// where `a_j = √w_j·G_j` and `|c_e|² + Σ|b_j|²` is conserved.
#[derive(Debug, Clone)]
pub struct ModeSystem {
    /// Detuning `k − 1` of each radial node.
    pub detunings: Vec<f64>,
    /// Modes per radial node; mode `m` belongs to node `m / per_node`.
    pub per_node: usize,
    pub amplitudes: Vec<Complex64>,
    /// `√w_j` per mode, to recover `c_g` from `b`.
    pub sqrt_weights: Vec<f64>,
}

impl ModeSystem {
    pub fn new(model: CouplingModel, grid: &ModeGrid, transition: &TransitionSpec) -> Result<Self> {
        grid.validate()?;
        let mu_hat = transition.mu_hat();
        let gamma = transition.gamma_internal();
        let a0 = transition.a0_internal();
        let per_node = grid.directions.len() * 2;
        let mut overlaps = Vec::with_capacity(per_node);
        for (d, w) in grid.directions.iter().zip(&grid.direction_weights) {
            let (e1, e2) = polarization_basis(d)?;
            overlaps.push((e1.hdot(&mu_hat), *w));
            overlaps.push((e2.hdot(&mu_hat), *w));
        }
        let mut amplitudes = Vec::with_capacity(grid.k.len() * per_node);
        let mut sqrt_weights = Vec::with_capacity(grid.k.len() * per_node);
        for (k, wk) in grid.k.iter().zip(&grid.k_weights) {
            for (ov, wd) in &overlaps {
                let sw = (wk * k * k * wd).sqrt();
                amplitudes.push(coupling_internal(model, *k, *ov, gamma, a0)? * sw);
                sqrt_weights.push(sw);
            }
        }
        Ok(Self { detunings: grid.k.iter().map(|k| k - 1.0).collect(), per_node, amplitudes, sqrt_weights })
    }

    /// Same system with every coupling set to zero.
    pub fn decoupled(&self) -> Self {
        Self { amplitudes: vec![Complex64::new(0.0, 0.0); self.amplitudes.len()], ..self.clone() }
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    fn rhs(&self, t: f64, y: &[Complex64], dy: &mut [Complex64]) {
        let ce = y[0];
        let phases: Vec<Complex64> = self.detunings.iter().map(|d| Complex64::from_polar(1.0, d * t)).collect();
        let per = self.per_node;
        let (b, db) = (&y[1..], &mut dy[1..]);
        // Fixed chunking keeps the reduction order independent of the pool.
        let partial: Vec<Complex64> = db
            .par_chunks_mut(CHUNK)
            .zip(b.par_chunks(CHUNK))
            .enumerate()
            .map(|(c, (dbc, bc))| {
                let base = c * CHUNK;
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, (d, bj)) in dbc.iter_mut().zip(bc).enumerate() {
                    let m = base + i;
                    let a = self.amplitudes[m];
                    let ph = phases[m / per];
                    *d = -I * a * ce * ph;
                    acc += a.conj() * bj * ph.conj();
                }
                acc
            })
            .collect();
        let mut sum = Complex64::new(0.0, 0.0);
        for p in partial {
            sum += p;
        }
        dy[0] = -I * sum;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationOptions {
    pub t_max: f64,
    /// Relative tolerance of the integrator; absolute tolerance is 1e-2 of it.
    pub tol: f64,
    pub samples: usize,
}

/// Sampled decay. Ground amplitudes are kept for the final time only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub excited: Vec<Complex64>,
    pub norm: Vec<f64>,
    pub final_ground: Vec<Complex64>,
    pub steps: usize,
}

impl Trajectory {
    pub fn max_norm_drift(&self) -> f64 {
        self.norm.iter().map(|n| (n - 1.0).abs()).fold(0.0, f64::max)
    }
}

pub fn simulate_system(system: &ModeSystem, opts: &SimulationOptions) -> Result<Trajectory> {
    if !(opts.tol > 0.0) {
        return domain("tolerance must be positive");
    }
    if !(opts.t_max > 0.0) || opts.samples < 2 {
        return domain("need t_max > 0 and at least two samples");
    }
    let n = opts.samples;
    let times: Vec<f64> = (0..n).map(|i| opts.t_max * i as f64 / (n - 1) as f64).collect();
    let mut y0 = vec![Complex64::new(0.0, 0.0); system.len() + 1];
    y0[0] = Complex64::new(1.0, 0.0);
    let mut excited = Vec::with_capacity(n);
    let mut norm = Vec::with_capacity(n);
    let mut solver = Dopri5::new(DopriOptions { rtol: opts.tol, atol: 1e-2 * opts.tol, ..Default::default() });
    let y = solver.integrate(
        |t, y, dy| system.rhs(t, y, dy),
        0.0,
        &y0,
        &times,
        |_, y| {
            excited.push(y[0]);
            norm.push(y.iter().map(|c| c.norm_sqr()).sum());
        },
    )?;
    let final_ground = y[1..].iter().zip(&system.sqrt_weights).map(|(b, s)| b / s).collect();
    Ok(Trajectory { times, excited, norm, final_ground, steps: solver.stats.accepted })
}

pub fn simulate_modes(
    model: CouplingModel,
    grid: &ModeGrid,
    transition: &TransitionSpec,
    opts: &SimulationOptions,
) -> Result<Trajectory> {
    simulate_system(&ModeSystem::new(model, grid, transition)?, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{fit_decay, GridPreset};

    #[test]
    fn decoupled_system_stays_excited() {
        let t = TransitionSpec::hydrogen_paper();
        let g = ModeGrid::new(0.05, 0.005, 2, 3).unwrap();
        let sys = ModeSystem::new(CouplingModel::ApDipole, &g, &t).unwrap().decoupled();
        let traj = simulate_system(&sys, &SimulationOptions { t_max: 100.0, tol: 1e-8, samples: 11 }).unwrap();
        assert!(traj.excited.iter().all(|c| *c == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn coarse_decay_conserves_norm() {
        let t = TransitionSpec::hydrogen_paper().with_gamma(TransitionSpec::hydrogen_paper().omega0 * 1e-2).unwrap();
        let gamma = t.gamma_internal();
        let t_max = 3.0 / gamma;
        let g = ModeGrid::preset(GridPreset::Coarse, gamma, t_max).unwrap();
        let tol = 1e-8;
        let traj = simulate_modes(CouplingModel::ApDipole, &g, &t, &SimulationOptions { t_max, tol, samples: 61 }).unwrap();
        assert!(traj.max_norm_drift() < 10.0 * tol, "{}", traj.max_norm_drift());
        let fit = fit_decay(&traj).unwrap();
        assert!((fit.gamma_eff / gamma - 1.0).abs() < 0.05, "{fit:?}");
    }

    #[test]
    fn rejects_bad_options() {
        let t = TransitionSpec::hydrogen_paper();
        let g = ModeGrid::new(0.05, 0.01, 1, 1).unwrap();
        let sys = ModeSystem::new(CouplingModel::ErDipole, &g, &t).unwrap();
        assert!(simulate_system(&sys, &SimulationOptions { t_max: 1.0, tol: 0.0, samples: 3 }).is_err());
        assert!(simulate_system(&sys, &SimulationOptions { t_max: 1.0, tol: 1e-6, samples: 1 }).is_err());
    }
}
