use lumen_core::fields::Zones;
use lumen_core::oracle::{
    fit_decay, integrand_modulus, reconstruct_field, simulate_modes, GridPreset, ModeGrid, ReconstructOptions,
    SimulationOptions,
};
use lumen_core::{field, CVec3, CouplingModel, FieldOptions, TransitionSpec};
use num_complex::Complex64;

/// ω₀/Γ = 100 keeps the decay runs to a fraction of a second.
fn fast() -> TransitionSpec {
    let base = TransitionSpec::hydrogen_paper();
    base.with_gamma(base.omega0 * 1e-2).unwrap()
}

fn gamma_eff(model: CouplingModel, grid: &ModeGrid, tr: &TransitionSpec, t_max: f64) -> f64 {
    let traj = simulate_modes(model, grid, tr, &SimulationOptions { t_max, tol: 1e-9, samples: 121 }).unwrap();
    assert!(traj.max_norm_drift() < 1e-6);
    fit_decay(&traj).unwrap().gamma_eff
}

#[test]
fn refinement_converges_monotonically() {
    let tr = fast();
    let g = tr.gamma_internal();
    let t_max = 3.0 / g;
    let rates: Vec<f64> = [1.0, 2.0, 4.0, 8.0]
        .iter()
        .map(|m| {
            let grid = ModeGrid::around_resonance(g, 30.0, m * t_max, 2, 3).unwrap();
            gamma_eff(CouplingModel::ApDipole, &grid, &tr, t_max)
        })
        .collect();
    let steps: Vec<f64> = rates.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    assert!(steps[0] > steps[1] && steps[1] > steps[2], "rates {rates:?}, steps {steps:?}");
}

#[test]
fn exact_coupling_matches_dipole_rate() {
    // a₀ω₀/c ≈ 2.7e-3, so the form factor moves Γ_eff by ~1e-5.
    let tr = fast();
    let g = tr.gamma_internal();
    let t_max = 3.0 / g;
    let grid = ModeGrid::preset(GridPreset::Coarse, g, t_max).unwrap();
    let ap = gamma_eff(CouplingModel::ApDipole, &grid, &tr, t_max);
    let ex = gamma_eff(CouplingModel::ApExact, &grid, &tr, t_max);
    assert!((ex - ap).abs() / ap < 1e-4, "ap {ap} exact {ex}");
    assert!(ex < ap);
}

#[test]
fn er_and_ap_rates_agree() {
    let tr = fast();
    let g = tr.gamma_internal();
    let t_max = 3.0 / g;
    let grid = ModeGrid::preset(GridPreset::Coarse, g, t_max).unwrap();
    let ap = gamma_eff(CouplingModel::ApDipole, &grid, &tr, t_max);
    let er = gamma_eff(CouplingModel::ErDipole, &grid, &tr, t_max);
    assert!((er - ap).abs() / ap < 0.02, "ap {ap} er {er}");
    assert!((ap - g).abs() / g < 0.05);
}

#[test]
fn resonance_dominates_integrand() {
    let tr = TransitionSpec::hydrogen_paper();
    let g = tr.gamma_internal();
    let t = 3.0 / g;
    let grid = ModeGrid::preset(GridPreset::Fine, g, t).unwrap();
    let dk = grid.spacing();
    let (mut best_k, mut best) = (0.0, 0.0);
    let mut k = 0.5;
    while k < 1.5 {
        let m = integrand_modulus(k, 2.0, t, &tr);
        if m > best {
            best = m;
            best_k = k;
        }
        k += dk;
    }
    assert!((best_k - 1.0).abs() <= dk, "peak at {best_k}, cell {dk}");
}

#[test]
fn reconstruction_is_linear_in_mu() {
    // Weights are normalized, so superpose orthonormal ones with 1/√2.
    let tr = TransitionSpec::hydrogen_paper();
    let z = Complex64::new(0.0, 0.0);
    let w1 = [z, Complex64::new(1.0, 0.0), z];
    let w2 = [Complex64::new(0.6, 0.0), z, Complex64::new(0.0, 0.8)];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let sum = [(w1[0] + w2[0]) * h, (w1[1] + w2[1]) * h, (w1[2] + w2[2]) * h];
    let opts = ReconstructOptions::default();
    let x = [0.7, -1.1, 2.0];
    let t = 4.0;
    // Physical field is ‖μ‖ times the internal one.
    let physical = |w: [Complex64; 3]| -> CVec3 {
        let s = tr.with_weights(w).unwrap();
        reconstruct_field(&s, CouplingModel::ApDipole, &x, t, &opts).unwrap() * s.mu_norm()
    };
    let lhs = physical(sum);
    let rhs = (physical(w1) + physical(w2)) * h;
    assert!((lhs - rhs).norm() < 1e-9 * lhs.norm());

    let phase = Complex64::from_polar(1.0, 0.9);
    let rotated = physical(w2.map(|c| c * phase));
    assert!((rotated - physical(w2) * phase).norm() < 1e-12 * rotated.norm());
}

#[test]
fn cutoff_reconstruction_tracks_regulated_one_off_cone() {
    // Away from the cone both truncations converge to the same field.
    let tr = TransitionSpec::hydrogen_paper();
    for (x, t) in [([0.0, 1.0, 1.0], 3.0), ([2.0, 0.0, 0.0], 1.0)] {
        let reg = reconstruct_field(&tr, CouplingModel::ApDipole, &x, t, &ReconstructOptions::default()).unwrap();
        let cut = reconstruct_field(
            &tr,
            CouplingModel::ApDipole,
            &x,
            t,
            &ReconstructOptions { cutoff: true, rel_tol: 1e-6, ..Default::default() },
        )
        .unwrap();
        let exact = field(CouplingModel::ApDipole, &x, t, &tr, &FieldOptions::transverse()).unwrap();
        let scale = exact.norm().max(reg.norm());
        assert!((reg - exact).norm() < 1e-3 * scale, "{x:?} {t}");
        assert!((cut - reg).norm() < 1e-2 * scale, "{x:?} {t}: cut {cut:?} reg {reg:?}");
    }
}

#[test]
fn er_reconstruction_matches_analytic_mid_far() {
    let tr = TransitionSpec::hydrogen_paper();
    let opts = ReconstructOptions { zones: Zones::MID_FAR, ..Default::default() };
    let x = [1.5, 0.5, -0.5];
    let t = 6.0;
    let num = reconstruct_field(&tr, CouplingModel::ErDipole, &x, t, &opts).unwrap();
    let ana = field(CouplingModel::ErDipole, &x, t, &tr, &FieldOptions::transverse().with_zones(Zones::MID_FAR)).unwrap();
    assert!((num - ana).norm() < 1e-3 * ana.norm(), "{num:?} vs {ana:?}");
}
