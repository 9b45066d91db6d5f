//! Run configuration: one JSON file plus flag overrides, flags winning.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use lumen_core::fields::{geometric_mean_radius, GridSpec};
use lumen_core::oracle::GridPreset;
use lumen_core::{CouplingModel, FieldOptions, PhysicalConstants, TransitionConfig, TransitionSpec, Zones};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Longitudinal {
    Primitive,
    Amplitude,
    Off,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub causality: f64,
    pub proportionality: f64,
    pub decomposition: f64,
    pub coupling: f64,
    pub footnote: f64,
    pub energy_quadrature: f64,
    /// Allowed distance in decades between the computed energy and 1e-4 eV.
    pub energy_decades: f64,
    pub decay_r_squared: f64,
    pub norm_drift: f64,
    pub integrator: f64,
    pub reconstruct_mid_far: f64,
    pub reconstruct_near: f64,
    pub quadrature: f64,
    pub compare: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            causality: 1e-12,
            proportionality: 1e-12,
            decomposition: 1e-12,
            coupling: 1e-12,
            footnote: 1e-12,
            energy_quadrature: 1e-10,
            energy_decades: 2.0,
            decay_r_squared: 0.999,
            norm_drift: 1e-6,
            integrator: 1e-10,
            reconstruct_mid_far: 0.02,
            reconstruct_near: 0.05,
            quadrature: 1e-8,
            compare: 0.02,
        }
    }
}

impl Tolerances {
    fn all(&self) -> [(&'static str, f64); 14] {
        [
            ("causality", self.causality),
            ("proportionality", self.proportionality),
            ("decomposition", self.decomposition),
            ("coupling", self.coupling),
            ("footnote", self.footnote),
            ("energy_quadrature", self.energy_quadrature),
            ("energy_decades", self.energy_decades),
            ("decay_r_squared", self.decay_r_squared),
            ("norm_drift", self.norm_drift),
            ("integrator", self.integrator),
            ("reconstruct_mid_far", self.reconstruct_mid_far),
            ("reconstruct_near", self.reconstruct_near),
            ("quadrature", self.quadrature),
            ("compare", self.compare),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecayConfig {
    pub grid: GridPreset,
    /// Simulated span in units of 1/Γ.
    pub t_max_gamma: f64,
    pub samples: usize,
}

impl Default for DecayConfig {
    fn default() -> Self {
        Self { grid: GridPreset::Fine, t_max_gamma: 3.0, samples: 301 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub preset: String,
    /// Explicit transition; replaces the preset when present.
    pub transition: Option<TransitionConfig>,
    pub coupling: CouplingModel,
    pub longitudinal: Longitudinal,
    pub zones: String,
    /// `r=min:max:n[:log],t=min:max:n[:log],dirs=n`, internal units.
    pub grid: String,
    pub out: PathBuf,
    pub seed: u64,
    /// Random points per property check.
    pub samples: usize,
    /// Points excluded from reconstruction when `|t − r|` is below this.
    pub cone_gap: f64,
    /// `auto-geomean` or a radius in metres.
    pub rmin: String,
    pub decay: DecayConfig,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            preset: "hydrogen-paper".into(),
            transition: None,
            coupling: CouplingModel::ApDipole,
            longitudinal: Longitudinal::Primitive,
            zones: "near,mid,far".into(),
            grid: "r=0.01:10:40:log,t=0.01:20000:100:log,dirs=3".into(),
            out: PathBuf::from("lumen-out"),
            seed: 1,
            samples: 1000,
            cone_gap: 0.2,
            rmin: "auto-geomean".into(),
            decay: DecayConfig::default(),
            tolerances: Tolerances::default(),
        }
    }
}

/// Flag values that override the file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub preset: Option<String>,
    pub coupling: Option<CouplingModel>,
    pub longitudinal: Option<Longitudinal>,
    pub zones: Option<String>,
    pub grid: Option<String>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl RunConfig {
    /// Reads a config file; a report bundle is accepted too, in which case
    /// its echoed config is used.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let value = match value.get("schema_version") {
            Some(_) => value.get("config").cloned().ok_or_else(|| usage("report bundle without config"))?,
            None => value,
        };
        serde_json::from_value(value).map_err(|e| usage(format!("{}: {e}", path.display())))
    }

    pub fn resolve(file: Option<&Path>, o: Overrides) -> CliResult<Self> {
        let mut c = match file {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        if let Some(v) = o.preset {
            c.preset = v;
            c.transition = None;
        }
        if let Some(v) = o.coupling {
            c.coupling = v;
        }
        if let Some(v) = o.longitudinal {
            c.longitudinal = v;
        }
        if let Some(v) = o.zones {
            c.zones = v;
        }
        if let Some(v) = o.grid {
            c.grid = v;
        }
        if let Some(v) = o.out {
            c.out = v;
        }
        if let Some(v) = o.seed {
            c.seed = v;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> CliResult<()> {
        for (name, v) in self.tolerances.all() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(usage(format!("tolerance '{name}' must be positive, got {v}")));
            }
        }
        if self.tolerances.decay_r_squared >= 1.0 {
            return Err(usage("decay_r_squared must be below 1"));
        }
        let g = self.grid_spec()?;
        if g.r.n < 2 || g.t.n < 2 {
            return Err(usage(format!("grid counts must be at least 2, got r:{} t:{}", g.r.n, g.t.n)));
        }
        if g.directions == 0 {
            return Err(usage("grid needs at least one direction"));
        }
        self.transition_spec()?;
        self.zone_set()?;
        if self.samples == 0 {
            return Err(usage("samples must be positive"));
        }
        if !(self.cone_gap > 0.0) {
            return Err(usage("cone_gap must be positive"));
        }
        if !(self.decay.t_max_gamma > 0.0) || self.decay.samples < 3 {
            return Err(usage("decay needs t_max_gamma > 0 and at least 3 samples"));
        }
        self.r_min()?;
        Ok(())
    }

    pub fn transition_spec(&self) -> CliResult<TransitionSpec> {
        match &self.transition {
            Some(t) => TransitionSpec::from_config(t, PhysicalConstants::codata2018()).map_err(usage),
            None => TransitionSpec::preset(&self.preset).map_err(usage),
        }
    }

    pub fn grid_spec(&self) -> CliResult<GridSpec> {
        GridSpec::parse(&self.grid).map_err(usage)
    }

    pub fn zone_set(&self) -> CliResult<Zones> {
        Zones::parse(&self.zones).map_err(usage)
    }

    pub fn field_options(&self) -> CliResult<FieldOptions> {
        let base = match self.longitudinal {
            Longitudinal::Off => FieldOptions::transverse(),
            Longitudinal::Primitive => FieldOptions::total(),
            Longitudinal::Amplitude => FieldOptions::footnote(),
        };
        Ok(base.with_zones(self.zone_set()?))
    }

    /// Minimal radius in metres.
    pub fn r_min(&self) -> CliResult<f64> {
        if self.rmin == "auto-geomean" {
            return Ok(geometric_mean_radius(&self.transition_spec()?));
        }
        match self.rmin.parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
            _ => Err(usage(format!("rmin must be 'auto-geomean' or a positive length in metres, got '{}'", self.rmin))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn flags_win() {
        let c = RunConfig::resolve(
            None,
            Overrides { seed: Some(9), zones: Some("near".into()), ..Default::default() },
        )
        .unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.zone_set().unwrap(), Zones::NEAR);
    }

    #[test]
    fn rejects_bad_values() {
        let bad = |f: fn(&mut RunConfig)| {
            let mut c = RunConfig::default();
            f(&mut c);
            assert!(matches!(c.validate(), Err(CliError::Usage(_))));
        };
        bad(|c| c.tolerances.causality = 0.0);
        bad(|c| c.grid = "r=1:2:1,t=0:1:5".into());
        bad(|c| c.preset = "helium".into());
        bad(|c| c.zones = "middle".into());
        bad(|c| c.rmin = "-3".into());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let r: Result<RunConfig, _> = serde_json::from_str(r#"{"sede": 3}"#);
        assert!(r.is_err());
    }
}
