//! Acceptance checks, one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach stdout; the process exits
//! non-zero when any criterion fails.

use std::time::{Duration, Instant};

use lumen_core::fields::{direction_set, geometric_mean_radius, Zones};
use lumen_core::kernels::{
    classical_harmonic, instantaneous_sum, longitudinal_harmonic, transverse_harmonic, KernelModel,
};
use lumen_core::oracle::{
    compare, fit_decay, reconstruct_scan, simulate_modes, GridPreset, ModeGrid, ReconstructOptions,
    SimulationOptions,
};
use lumen_core::{
    causality_scan, coupling, cutoff, er_ap_structure_check, field, kernel, midfar_ratio, projectors,
    remanent_energy, ConeZone, CouplingModel, FieldOptions, ModeIndex, SpacetimeGrid, TransitionSpec,
    Vec3,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x1ce_c0de;
const COLLAR: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn unit(rng: &mut impl Rng) -> Vec3 {
    loop {
        let v: Vec3 = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|c| c / n);
        }
    }
}

fn scaled(d: Vec3, r: f64) -> Vec3 {
    d.map(|c| c * r)
}

fn log_space(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a * (b / a).powf(i as f64 / (n - 1) as f64)).collect()
}

/// Radii in [0.01, 10]; times linear over the first light-crossings and
/// logarithmic out to 20/Γ.
fn causality_grid(tr: &TransitionSpec) -> SpacetimeGrid {
    let radii = log_space(0.01, 10.0, 40);
    let t_end = 20.0 / tr.gamma_internal();
    let mut times: Vec<f64> = (0..50).map(|i| 12.0 * i as f64 / 49.0).collect();
    times.extend(log_space(12.0, t_end, 51).into_iter().skip(1));
    SpacetimeGrid::product(&radii, &times, &direction_set(3).unwrap()).unwrap()
}

fn c1_causal_confinement(tr: &TransitionSpec) -> Outcome {
    let grid = causality_grid(tr);
    let start = Instant::now();
    let (_, s) = causality_scan(CouplingModel::ApDipole, &FieldOptions::total(), &grid, tr, COLLAR).unwrap();
    let elapsed = start.elapsed();
    let pass = grid.len() >= 10_000
        && s.n_outside > 0
        && s.n_inside > 0
        && s.ratio <= 1e-12
        && elapsed < Duration::from_secs(10);
    outcome(
        pass,
        format!(
            "{} points ({} outside), max outside/inside = {:.3e}, {:.2?}",
            grid.len(),
            s.n_outside,
            s.ratio,
            elapsed
        ),
    )
}

fn c2_noncausal_transverse(tr: &TransitionSpec) -> Outcome {
    let grid = causality_grid(tr);
    let opts = FieldOptions::transverse().with_zones(Zones::NEAR);
    let (scan, _) = causality_scan(CouplingModel::ApDipole, &opts, &grid, tr, COLLAR).unwrap();
    let omega = tr.omega_complex_internal();
    let mu = tr.mu_hat();
    let (mut worst, mut n, mut max_mag) = (0.0f64, 0, 0.0f64);
    for p in scan.points.iter().filter(|p| p.zone == ConeZone::Outside) {
        let r = (p.x[0] * p.x[0] + p.x[1] * p.x[1] + p.x[2] * p.x[2]).sqrt();
        let (_, ps) = projectors(&p.x.map(|c| c / r)).unwrap();
        let e = (Complex64::new(0.0, -1.0) * omega * p.t).exp();
        let expected = (e - 1.0).norm() * ps.apply(&mu).norm() / (omega.norm() * r.powi(3));
        let got = p.psi.norm();
        let dev = if expected > 0.0 { (got - expected).abs() / expected } else { got };
        worst = worst.max(dev);
        max_mag = max_mag.max(got);
        n += 1;
    }
    outcome(
        n > 0 && max_mag > 0.0 && worst <= 1e-12,
        format!("{n} outside points, max relative deviation {worst:.3e}"),
    )
}

fn c3_midfar_ratio(tr: &TransitionSpec) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let expected = 1.0 / tr.omega_complex_internal();
    let t_end = 20.0 / tr.gamma_internal();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let r = 10f64.powf(rng.gen_range(-2.0..1.0));
        let t = r + rng.gen_range(0.01..t_end);
        let ratio = midfar_ratio(&scaled(unit(&mut rng), r), t, tr).unwrap();
        worst = worst.max((ratio - expected).norm() / expected.norm());
    }
    outcome(worst <= 1e-12, format!("1000 points, max |ratio − ω₀/Ω₀|/|ω₀/Ω₀| = {worst:.3e}"))
}

fn c4_classical_decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = scaled(unit(&mut rng), 10f64.powf(rng.gen_range(-2.0..1.0)));
        let w = 10f64.powf(rng.gen_range(-2.0..1.0));
        let full = classical_harmonic(&x, w).unwrap();
        let sum = longitudinal_harmonic(&x, w).unwrap() + transverse_harmonic(&x, w).unwrap();
        worst = worst.max((full - sum).max_abs() / full.max_abs());
    }
    let residue = instantaneous_sum(
        &[kernel(KernelModel::ClassicalTransverse), kernel(KernelModel::ClassicalLongitudinal)],
        0,
    );
    outcome(
        worst <= 1e-12 && residue.is_empty(),
        format!("100 points, max relative residual {worst:.3e}; instantaneous δ⁽⁰⁾ sum has {} nonzero terms", residue.len()),
    )
}

fn c5_structure() -> Outcome {
    let r = er_ap_structure_check();
    let fmt = |c: Option<lumen_core::kernels::Coefficient>| c.map_or("none".to_string(), |c| c.to_string());
    outcome(
        r.passed,
        format!(
            "E.r/classical = {}, A.p/E.r = {}, orders lowered: {}, counter-term: {}",
            fmt(r.er_over_classical),
            fmt(r.ap_over_er),
            r.ap_orders_lowered,
            r.ap_counterterm
        ),
    )
}

fn c6_coupling_ratios(tr: &TransitionSpec) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let k0 = tr.omega0 / tr.constants.c;
    let (mut worst_er, mut worst_cut, mut used, mut dark) = (0.0f64, 0.0f64, 0, 0);
    // Ratios are undefined for dark modes (ε ⊥ μ), so draw until 1000 bright ones.
    while used < 1000 {
        let k = k0 * 10f64.powf(rng.gen_range(-2.0..4.0));
        let mode = ModeIndex::new(scaled(unit(&mut rng), k), rng.gen_range(1..=2)).unwrap();
        let er = coupling(CouplingModel::ErDipole, &mode, tr).unwrap();
        let ap = coupling(CouplingModel::ApDipole, &mode, tr).unwrap();
        let ex = coupling(CouplingModel::ApExact, &mode, tr).unwrap();
        if ap.norm() == 0.0 {
            assert!(er.norm() == 0.0 && ex.norm() == 0.0);
            dark += 1;
            continue;
        }
        used += 1;
        let ck = tr.constants.c * mode.k_norm() / tr.omega0;
        worst_er = worst_er.max((er / ap - ck).norm() / ck);
        let cut = cutoff(mode.k_norm(), tr.constants.a0).unwrap();
        worst_cut = worst_cut.max((ex / ap - cut).norm() / cut);
    }
    outcome(
        worst_er <= 1e-12 && worst_cut <= 1e-12,
        format!("{used} modes ({dark} dark skipped), max rel. error E.r/A.p {worst_er:.3e}, exact/A.p {worst_cut:.3e}"),
    )
}

fn c7_oracle_decay(tr: &TransitionSpec) -> Outcome {
    let gamma = tr.gamma_internal();
    let t_max = 3.0 / gamma;
    let start = Instant::now();
    let grid = ModeGrid::preset(GridPreset::Fine, gamma, t_max).unwrap();
    let opts = SimulationOptions { t_max, tol: 1e-10, samples: 301 };
    let traj = match simulate_modes(CouplingModel::ApDipole, &grid, tr, &opts) {
        Ok(t) => t,
        Err(e) => return outcome(false, format!("simulation failed: {e}")),
    };
    let fit = match fit_decay(&traj) {
        Ok(f) => f,
        Err(e) => return outcome(false, format!("fit failed: {e}")),
    };
    let elapsed = start.elapsed();
    let drift = traj.max_norm_drift();
    // The window must cover 3/Γ_eff for the fitted rate.
    let covers = t_max * fit.gamma_eff >= 3.0 * (1.0 - 0.05);
    outcome(
        fit.r_squared > 0.999 && drift < 1e-6 && covers && elapsed < Duration::from_secs(60),
        format!(
            "{} modes, Γ_eff/Γ = {:.5}, R² = {:.8}, drift = {:.2e}, {:.2?}",
            grid.mode_count(),
            fit.gamma_eff / gamma,
            fit.r_squared,
            drift,
            elapsed
        ),
    )
}

fn c8_reconstruction(tr: &TransitionSpec) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut points = Vec::with_capacity(50);
    while points.len() < 50 {
        let r = rng.gen_range(0.3..8.0);
        let t: f64 = rng.gen_range(0.2..16.0);
        if (t - r).abs() >= 0.2 {
            points.push((scaled(unit(&mut rng), r), t));
        }
    }
    let grid = SpacetimeGrid::new(points);
    let start = Instant::now();
    let mut errors = Vec::new();
    for zones in [Zones::MID_FAR, Zones::NEAR] {
        let ropts = ReconstructOptions { zones, ..Default::default() };
        let numeric = match reconstruct_scan(tr, CouplingModel::ApDipole, &grid, &ropts, COLLAR) {
            Ok(s) => s,
            Err(e) => return outcome(false, format!("reconstruction failed: {e}")),
        };
        let fopts = FieldOptions::transverse().with_zones(zones);
        let (analytic, _) = causality_scan(CouplingModel::ApDipole, &fopts, &grid, tr, COLLAR).unwrap();
        errors.push(compare(&numeric, &analytic).unwrap().overall.rms_rel);
    }
    let elapsed = start.elapsed();
    outcome(
        errors[0] <= 0.02 && errors[1] <= 0.05 && elapsed < Duration::from_secs(120),
        format!("50 points, RMS rel. error mid+far {:.3e}, near {:.3e}, {:.2?}", errors[0], errors[1], elapsed),
    )
}

fn c9_remanent_energy(tr: &TransitionSpec) -> Outcome {
    let r_min = geometric_mean_radius(tr);
    let e = remanent_energy(r_min, tr).unwrap();
    let ev = e.electron_volts(tr);
    let stated = 1e-4;
    let orders = (ev / stated).log10();
    outcome(
        e.relative_difference <= 1e-10 && orders.abs() <= 2.0,
        format!(
            "r_min = {:.4e} m, quadrature vs closed form {:.2e}, δE = {:.4e} eV ({:+.2} decades from 1e-4 eV)",
            e.r_min_m, e.relative_difference, ev, orders
        ),
    )
}

fn c10_footnote_mode(tr: &TransitionSpec) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let foot = FieldOptions::footnote().with_zones(Zones::NEAR);
    let er_opts = FieldOptions::transverse().with_zones(Zones::NEAR);
    let scale = 1.0 / tr.omega_complex_internal();
    let (mut literal, mut proportional) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let r = 10f64.powf(rng.gen_range(-2.0..1.0));
        let x = scaled(unit(&mut rng), r);
        let t = r + rng.gen_range(0.01..20.0 / tr.gamma_internal());
        let ap = field(CouplingModel::ApDipole, &x, t, tr, &foot).unwrap();
        let er = field(CouplingModel::ErDipole, &x, t, tr, &er_opts).unwrap();
        literal = literal.max((ap - er).norm() / er.norm());
        proportional = proportional.max((ap - er * scale).norm() / er.norm());
    }
    let mut outside_min = f64::INFINITY;
    for _ in 0..1000 {
        let r = 10f64.powf(rng.gen_range(-2.0..1.0));
        let x = scaled(unit(&mut rng), r);
        let t = rng.gen_range(0.0..r * (1.0 - 1e-6));
        let ap = field(CouplingModel::ApDipole, &x, t, tr, &foot).unwrap();
        outside_min = outside_min.min(ap.norm() * r.powi(3));
    }
    outcome(
        literal <= 1e-12 && outside_min > 0.0,
        format!(
            "inside: max |ψ^A.p − ψ^E.r|/|ψ^E.r| = {literal:.3e} (vs (ω₀/Ω₀)ψ^E.r: {proportional:.3e}); \
             outside: min |ψ|·r³ = {outside_min:.3e}"
        ),
    )
}

type Criterion = (&'static str, fn(&TransitionSpec) -> Outcome);

fn main() {
    let tr = TransitionSpec::hydrogen_paper();
    let checks: [Criterion; 10] = [
        ("causal confinement", c1_causal_confinement),
        ("non-causal transverse near field", c2_noncausal_transverse),
        ("mid/far proportionality", c3_midfar_ratio),
        ("classical decomposition and cancellation", |_| c4_classical_decomposition()),
        ("E.r/classical structural equivalence", |_| c5_structure()),
        ("coupling ratio identities", c6_coupling_ratios),
        ("oracle decay", c7_oracle_decay),
        ("oracle field reconstruction", c8_reconstruction),
        ("remanent energy", c9_remanent_energy),
        ("footnote mode", c10_footnote_mode),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let o = check(&tr);
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2} {:<42} {}  {}", i + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {} failed", checks.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
