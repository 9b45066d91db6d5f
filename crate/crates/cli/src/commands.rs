use std::path::Path;
use std::time::Instant;

use lumen_core::fields::{excitation_budget, Zones, DEFAULT_COLLAR};
use lumen_core::kernels::{kernel, KernelModel};
use lumen_core::oracle::{
    compare, fit_decay, reconstruct_scan, simulate_modes, ModeGrid, ReconstructOptions, SimulationOptions,
};
use lumen_core::{causality_scan, remanent_energy, CouplingModel, SpacetimeGrid};
use serde_json::json;

use crate::config::{Longitudinal, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::{num, read_scan_csv, scan_csv, Check, Output};

/// Reference scale the remanent energy is compared against.
pub const STATED_ENERGY_EV: f64 = 1e-4;

fn expected_causal(cfg: &RunConfig, zones: Zones) -> bool {
    match cfg.coupling {
        CouplingModel::ErDipole => true,
        _ => cfg.longitudinal == Longitudinal::Primitive || !zones.near,
    }
}

pub fn scan(cfg: &RunConfig) -> CliResult<Output> {
    let tr = cfg.transition_spec()?;
    let grid = cfg.grid_spec()?.build()?;
    let opts = cfg.field_options()?;
    let start = Instant::now();
    let (scan, s) = causality_scan(cfg.coupling, &opts, &grid, &tr, DEFAULT_COLLAR)?;
    let mut out = Output::new("scan");
    out.results = json!({
        "points": grid.len(),
        "inside": s.n_inside,
        "outside": s.n_outside,
        "on_cone": s.n_on_cone,
        "max_inside": s.max_inside,
        "max_outside": s.max_outside,
        "outside_over_inside": s.ratio,
        "worst_ratio_same_radius": s.worst_ratio_same_radius,
        "seconds": start.elapsed().as_secs_f64(),
    });
    if expected_causal(cfg, opts.zones) {
        out.checks.push(
            Check::at_most("causal-confinement", s.ratio, cfg.tolerances.causality)
                .require(s.n_inside > 0, "no inside-cone points"),
        );
    }
    out.datasets.push(("scan.csv".into(), scan_csv(&scan)));
    Ok(out)
}

pub fn energy(cfg: &RunConfig, threshold_ev: Option<f64>) -> CliResult<Output> {
    let tr = cfg.transition_spec()?;
    let r_min = cfg.r_min()?;
    let e = remanent_energy(r_min, &tr)?;
    let ev = e.electron_volts(&tr);
    let decades = (ev / STATED_ENERGY_EV).log10();
    let mut out = Output::new("energy");
    let mut results = json!({
        "r_min_m": r_min,
        "r_min_rule": cfg.rmin,
        "closed_form_j": e.closed_form_j,
        "quadrature_j": e.quadrature_j,
        "electron_volts": ev,
        "decades_from_stated": decades,
    });
    if let Some(th) = threshold_ev {
        if !(th > 0.0) {
            return Err(CliError::Usage("threshold must be positive".into()));
        }
        let n = excitation_budget(th * tr.constants.electron_volt(), &tr, r_min)?;
        results["threshold_ev"] = json!(th);
        results["excitations_to_threshold"] = json!(n);
    }
    out.results = results;
    out.checks.push(Check::at_most("energy-quadrature", e.relative_difference, cfg.tolerances.energy_quadrature));
    out.checks.push(
        Check::at_most("energy-order-of-magnitude", decades.abs(), cfg.tolerances.energy_decades)
            .detail("electron_volts", ev)
            .note(format!("computed {ev:.4e} eV against a stated 1e-4 eV")),
    );
    Ok(out)
}

pub fn decay(cfg: &RunConfig) -> CliResult<Output> {
    let tr = cfg.transition_spec()?;
    let gamma = tr.gamma_internal();
    let t_max = cfg.decay.t_max_gamma / gamma;
    let model = cfg.coupling;
    let grid = ModeGrid::preset(cfg.decay.grid, gamma, t_max)?;
    let start = Instant::now();
    let opts = SimulationOptions { t_max, tol: cfg.tolerances.integrator, samples: cfg.decay.samples };
    let traj = simulate_modes(model, &grid, &tr, &opts)?;
    let fit = fit_decay(&traj)?;
    let drift = traj.max_norm_drift();

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "re_c_e", "im_c_e", "abs2_c_e", "norm"]).expect("in-memory write");
    for ((t, c), n) in traj.times.iter().zip(&traj.excited).zip(&traj.norm) {
        w.write_record([num(*t), num(c.re), num(c.im), num(c.norm_sqr()), num(*n)]).expect("in-memory write");
    }
    let mut out = Output::new("decay");
    out.results = json!({
        "modes": grid.mode_count(),
        "t_max": t_max,
        "gamma": gamma,
        "gamma_eff": fit.gamma_eff,
        "gamma_eff_over_gamma": fit.gamma_eff / gamma,
        "omega_shift": fit.omega_shift,
        "r_squared": fit.r_squared,
        "max_norm_drift": drift,
        "steps": traj.steps,
        "seconds": start.elapsed().as_secs_f64(),
    });
    out.checks.push(Check::at_least("decay-fit", fit.r_squared, cfg.tolerances.decay_r_squared));
    out.checks.push(Check::at_most("norm-conservation", drift, cfg.tolerances.norm_drift));
    out.datasets.push(("decay.csv".into(), w.into_inner().expect("in-memory flush")));
    Ok(out)
}

/// Grid points that the regulated reconstruction can resolve.
fn reconstructable(grid: &SpacetimeGrid, gap: f64) -> SpacetimeGrid {
    SpacetimeGrid::new(
        grid.points
            .iter()
            .filter(|(x, t)| {
                let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
                *t > 0.0 && (t - r).abs() >= gap
            })
            .copied()
            .collect(),
    )
}

pub fn reconstruct(cfg: &RunConfig) -> CliResult<Output> {
    let tr = cfg.transition_spec()?;
    let zones = cfg.zone_set()?;
    let model = cfg.coupling;
    let full = cfg.grid_spec()?.build()?;
    let grid = reconstructable(&full, cfg.cone_gap);
    if grid.is_empty() {
        return Err(CliError::Usage(format!("no grid point lies {} or more away from the light cone", cfg.cone_gap)));
    }
    let start = Instant::now();
    let ropts = ReconstructOptions { zones, rel_tol: cfg.tolerances.quadrature, ..Default::default() };
    let numeric = reconstruct_scan(&tr, model, &grid, &ropts, DEFAULT_COLLAR)?;
    let mut out = Output::new("reconstruct");
    let mut results = json!({ "points": grid.len(), "skipped_near_cone": full.len() - grid.len() });

    // The oracle holds only photons: compare with the transverse field.
    if model != CouplingModel::ApExact {
        let fopts = lumen_core::FieldOptions::transverse().with_zones(zones);
        let (analytic, _) = causality_scan(model, &fopts, &grid, &tr, DEFAULT_COLLAR)?;
        for (part, tol, name) in [
            (Zones { near: false, ..zones }, cfg.tolerances.reconstruct_mid_far, "reconstruct-mid-far"),
            (Zones { mid: false, far: false, ..zones }, cfg.tolerances.reconstruct_near, "reconstruct-near"),
        ] {
            if !(part.near || part.mid || part.far) {
                continue;
            }
            let a = reconstruct_scan(&tr, model, &grid, &ReconstructOptions { zones: part, ..ropts }, DEFAULT_COLLAR)?;
            let (b, _) = causality_scan(model, &fopts.with_zones(part), &grid, &tr, DEFAULT_COLLAR)?;
            let rep = compare(&a, &b)?;
            out.checks.push(Check::at_most(name, rep.overall.rms_rel, tol).detail("max_rel", rep.overall.max_rel));
        }
        out.datasets.push(("analytic.csv".into(), scan_csv(&analytic)));
    }
    results["seconds"] = json!(start.elapsed().as_secs_f64());
    out.results = results;
    out.datasets.insert(0, ("reconstruct.csv".into(), scan_csv(&numeric)));
    Ok(out)
}

pub fn compare_files(cfg: &RunConfig, a: &Path, b: &Path, tol: Option<f64>) -> CliResult<Output> {
    let tol = tol.unwrap_or(cfg.tolerances.compare);
    if !(tol > 0.0) {
        return Err(CliError::Usage("tolerance must be positive".into()));
    }
    let sa = read_scan_csv(a)?;
    let sb = read_scan_csv(b)?;
    let rep = compare(&sa, &sb)?;
    let mut out = Output::new("compare");
    out.results = serde_json::to_value(&rep).expect("report serializes");
    out.results["a"] = json!(a.display().to_string());
    out.results["b"] = json!(b.display().to_string());
    out.checks.push(Check::at_most("compare-rms", rep.overall.rms_rel, tol).detail("max_rel", rep.overall.max_rel));
    Ok(out)
}

pub fn kernels_dump(model: &str) -> CliResult<(Output, String)> {
    let models: Vec<KernelModel> = if model == "all" {
        KernelModel::ALL.to_vec()
    } else {
        vec![model.parse().map_err(|e: lumen_core::Error| CliError::Usage(e.to_string()))?]
    };
    let mut text = String::new();
    let mut list = Vec::new();
    for m in models {
        let k = kernel(m);
        k.validate()?;
        text.push_str(&format!("{}{}\n", m.tag(), if k.causal_gate { " (causal gate)" } else { "" }));
        let mut terms = Vec::new();
        for t in &k.terms {
            let kind = if t.retarded { "retarded" } else { "instantaneous" };
            text.push_str(&format!(
                "  {:?} r^-{} δ^({}) {:<13} {}\n",
                t.shape, t.radial_power, t.derivative_order, kind, t.coefficient
            ));
            terms.push(json!({
                "shape": format!("{:?}", t.shape).to_lowercase(),
                "radial_power": t.radial_power,
                "derivative_order": t.derivative_order,
                "retarded": t.retarded,
                "coefficient": t.coefficient,
                "coefficient_text": t.coefficient.to_string(),
            }));
        }
        list.push(json!({ "model": m.tag(), "causal_gate": k.causal_gate, "terms": terms }));
    }
    let mut out = Output::new("kernels");
    out.results = json!({ "kernels": list });
    Ok((out, text))
}
