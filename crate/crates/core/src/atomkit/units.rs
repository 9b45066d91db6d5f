use std::f64::consts::PI;

use super::transition::TransitionSpec;

/// Scales between SI and the internal dimensionless system.
///
/// Internal time is `ω₀t`, internal length is `ω₀x/c`, internal wavenumber is
/// `ck/ω₀`, and internal field is the SI field divided by
/// `‖μ‖ω₀³/(4πε₀c³)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub time: f64,
    pub length: f64,
    pub field: f64,
}

impl Units {
    pub fn new(transition: &TransitionSpec) -> Self {
        let k = &transition.constants;
        let w = transition.omega0;
        Self {
            time: 1.0 / w,
            length: k.c / w,
            field: transition.mu_norm() * w.powi(3) / (4.0 * PI * k.eps0 * k.c.powi(3)),
        }
    }

    pub fn time_to_internal(&self, t_s: f64) -> f64 {
        t_s / self.time
    }

    pub fn time_to_si(&self, t: f64) -> f64 {
        t * self.time
    }

    pub fn length_to_internal(&self, x_m: f64) -> f64 {
        x_m / self.length
    }

    pub fn length_to_si(&self, x: f64) -> f64 {
        x * self.length
    }

    pub fn wavenumber_to_internal(&self, k_per_m: f64) -> f64 {
        k_per_m * self.length
    }

    pub fn wavenumber_to_si(&self, k: f64) -> f64 {
        k / self.length
    }

    pub fn field_to_internal(&self, e_v_per_m: f64) -> f64 {
        e_v_per_m / self.field
    }

    pub fn field_to_si(&self, e: f64) -> f64 {
        e * self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_scale_matches_static_dipole() {
        // A static dipole field ‖μ‖/(4πε₀r³) at r = c/ω₀ is one field unit.
        let t = TransitionSpec::hydrogen_paper();
        let u = Units::new(&t);
        let k = &t.constants;
        let r = u.length_to_si(1.0);
        let e = t.mu_norm() / (4.0 * PI * k.eps0 * r.powi(3));
        assert!((u.field_to_internal(e) - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn round_trips(v in -1e3f64..1e3, exp in -20i32..20) {
            let u = Units::new(&TransitionSpec::hydrogen_literature());
            let x = v * 10f64.powi(exp);
            let tol = 1e-12 * x.abs();
            prop_assert!((u.time_to_si(u.time_to_internal(x)) - x).abs() <= tol);
            prop_assert!((u.length_to_si(u.length_to_internal(x)) - x).abs() <= tol);
            prop_assert!((u.wavenumber_to_si(u.wavenumber_to_internal(x)) - x).abs() <= tol);
            prop_assert!((u.field_to_si(u.field_to_internal(x)) - x).abs() <= tol);
        }
    }
}
