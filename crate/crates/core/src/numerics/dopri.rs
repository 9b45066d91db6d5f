//! Dormand–Prince 5(4) with embedded error control for complex state
//! vectors.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct DopriOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step; picked from the tolerance when `None`.
    pub h0: Option<f64>,
    pub h_max: f64,
    pub h_min: f64,
    pub max_steps: usize,
}

impl Default for DopriOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-8,
            atol: 1e-10,
            h0: None,
            h_max: f64::INFINITY,
            h_min: 1e-12,
            max_steps: 1_000_000,
        }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Fifth minus fourth order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Default, Clone, Copy)]
pub struct DopriStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_calls: usize,
}

pub struct Dopri5 {
    pub opts: DopriOptions,
    pub stats: DopriStats,
}

impl Dopri5 {
    pub fn new(opts: DopriOptions) -> Self {
        Self { opts, stats: DopriStats::default() }
    }

    /// Integrates `y' = rhs(t, y)` from `t0`, stopping exactly at every time
    /// in `outputs` (ascending, ≥ t0) and handing the state to `observe`.
    pub fn integrate<R, O>(
        &mut self,
        mut rhs: R,
        t0: f64,
        y0: &[Complex64],
        outputs: &[f64],
        mut observe: O,
    ) -> Result<Vec<Complex64>>
    where
        R: FnMut(f64, &[Complex64], &mut [Complex64]),
        O: FnMut(f64, &[Complex64]),
    {
        let n = y0.len();
        let mut y = y0.to_vec();
        let mut t = t0;
        let zero = Complex64::new(0.0, 0.0);
        let mut k: [Vec<Complex64>; 7] = std::array::from_fn(|_| vec![zero; n]);
        let mut tmp = vec![zero; n];
        let mut y_new = vec![zero; n];

        rhs(t, &y, &mut k[0]);
        self.stats.rhs_calls += 1;
        let mut h = self.opts.h0.unwrap_or_else(|| {
            let scale = k[0].iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-300);
            (0.01 * self.opts.rtol.powf(0.2) / scale).min(self.opts.h_max)
        });

        for &t_target in outputs {
            if t_target < t {
                return Err(Error::IntegratorFailure("output times must be ascending".into()));
            }
            while t < t_target {
                if self.stats.accepted + self.stats.rejected >= self.opts.max_steps {
                    return Err(Error::IntegratorFailure("step budget exhausted".into()));
                }
                let mut last = false;
                if t + h >= t_target {
                    h = t_target - t;
                    last = true;
                }
                if h < self.opts.h_min && !last {
                    return Err(Error::IntegratorFailure(format!("step size underflow at t = {t}")));
                }

                let stage = |tmp: &mut [Complex64], y: &[Complex64], k: &[Vec<Complex64>], coeffs: &[(usize, f64)]| {
                    for i in 0..y.len() {
                        let mut acc = y[i];
                        for &(j, a) in coeffs {
                            acc += k[j][i] * (a * h);
                        }
                        tmp[i] = acc;
                    }
                };

                stage(&mut tmp, &y, &k, &[(0, A21)]);
                rhs(t + C2 * h, &tmp, &mut k[1]);
                stage(&mut tmp, &y, &k, &[(0, A31), (1, A32)]);
                rhs(t + C3 * h, &tmp, &mut k[2]);
                stage(&mut tmp, &y, &k, &[(0, A41), (1, A42), (2, A43)]);
                rhs(t + C4 * h, &tmp, &mut k[3]);
                stage(&mut tmp, &y, &k, &[(0, A51), (1, A52), (2, A53), (3, A54)]);
                rhs(t + C5 * h, &tmp, &mut k[4]);
                stage(&mut tmp, &y, &k, &[(0, A61), (1, A62), (2, A63), (3, A64), (4, A65)]);
                rhs(t + h, &tmp, &mut k[5]);
                stage(&mut y_new, &y, &k, &[(0, A71), (2, A73), (3, A74), (4, A75), (5, A76)]);
                rhs(t + h, &y_new, &mut k[6]);
                self.stats.rhs_calls += 6;

                let mut err: f64 = 0.0;
                for i in 0..n {
                    let e = (k[0][i] * E1
                        + k[2][i] * E3
                        + k[3][i] * E4
                        + k[4][i] * E5
                        + k[5][i] * E6
                        + k[6][i] * E7)
                        * h;
                    let sc = self.opts.atol + self.opts.rtol * y[i].norm().max(y_new[i].norm());
                    err = err.max(e.norm() / sc);
                }
                if !err.is_finite() {
                    return Err(Error::IntegratorFailure(format!("non-finite state at t = {t}")));
                }

                if err <= 1.0 {
                    self.stats.accepted += 1;
                    t = if last { t_target } else { t + h };
                    std::mem::swap(&mut y, &mut y_new);
                    // FSAL: last stage is the derivative at the new point.
                    k.swap(0, 6);
                    let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                    if !last {
                        h = (h * fac).min(self.opts.h_max);
                    } else {
                        h = (h * fac).max(self.opts.h_min).min(self.opts.h_max);
                    }
                } else {
                    self.stats.rejected += 1;
                    h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
                    if h < self.opts.h_min {
                        return Err(Error::IntegratorFailure(format!(
                            "step size underflow at t = {t}"
                        )));
                    }
                }
            }
            observe(t, &y);
        }
        Ok(y)
    }
}
