use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{field_for, FieldOptions};
use crate::atomkit::{real_norm, CVec3, TransitionSpec, Vec3};
use crate::coupling::CouplingModel;
use crate::error::{domain, Result};

/// Half-width of the band around `t = ‖x‖` treated as on the cone.
pub const DEFAULT_COLLAR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConeZone {
    #[serde(rename = "inside")]
    Inside,
    #[serde(rename = "outside")]
    Outside,
    #[serde(rename = "on-cone")]
    OnCone,
}

impl ConeZone {
    pub fn classify(r: f64, t: f64, collar: f64) -> Self {
        let d = t - r;
        if d.abs() < collar {
            ConeZone::OnCone
        } else if d > 0.0 {
            ConeZone::Inside
        } else {
            ConeZone::Outside
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ConeZone::Inside => "inside",
            ConeZone::Outside => "outside",
            ConeZone::OnCone => "on-cone",
        }
    }
}

impl std::str::FromStr for ConeZone {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inside" => Ok(ConeZone::Inside),
            "outside" => Ok(ConeZone::Outside),
            "on-cone" => Ok(ConeZone::OnCone),
            other => domain(format!("unknown cone zone '{other}'")),
        }
    }
}

/// One sampled axis; `log` spaces the nodes geometrically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub n: usize,
    pub log: bool,
}

impl Axis {
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.n == 0 {
            return domain("axis needs at least one node");
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.max < self.min {
            return domain(format!("invalid axis range [{}, {}]", self.min, self.max));
        }
        if self.log && !(self.min > 0.0) {
            return domain("log axis needs a positive lower bound");
        }
        if self.n == 1 {
            return Ok(vec![self.min]);
        }
        let m = (self.n - 1) as f64;
        Ok((0..self.n)
            .map(|i| {
                let f = i as f64 / m;
                if self.log {
                    self.min * (self.max / self.min).powf(f)
                } else {
                    self.min + (self.max - self.min) * f
                }
            })
            .collect())
    }

    /// `min:max:n[:log]`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(parts.len() == 3 || parts.len() == 4) {
            return domain(format!("axis '{s}' must read min:max:n[:log]"));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| crate::error::Error::Domain(format!("bad number '{p}'")));
        let n = parts[2].trim().parse::<usize>().map_err(|_| crate::error::Error::Domain(format!("bad count '{}'", parts[2])))?;
        let log = match parts.get(3).map(|p| p.trim()) {
            None | Some("lin") => false,
            Some("log") => true,
            Some(other) => return domain(format!("unknown spacing '{other}'")),
        };
        Ok(Axis { min: num(parts[0])?, max: num(parts[1])?, n, log })
    }
}

/// Product grid of radii, times and directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r: Axis,
    pub t: Axis,
    pub directions: usize,
}

impl GridSpec {
    /// `r=min:max:n[:log],t=min:max:n[:log][,dirs=n]`.
    pub fn parse(s: &str) -> Result<Self> {
        let (mut r, mut t, mut dirs) = (None, None, 1);
        for item in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = item.split_once('=').ok_or_else(|| crate::error::Error::Domain(format!("bad grid item '{item}'")))?;
            match key.trim() {
                "r" => r = Some(Axis::parse(val)?),
                "t" => t = Some(Axis::parse(val)?),
                "dirs" => {
                    dirs = val.trim().parse().map_err(|_| crate::error::Error::Domain(format!("bad direction count '{val}'")))?
                }
                other => return domain(format!("unknown grid key '{other}'")),
            }
        }
        let r = r.ok_or_else(|| crate::error::Error::Domain("grid needs an r axis".into()))?;
        let t = t.ok_or_else(|| crate::error::Error::Domain("grid needs a t axis".into()))?;
        Ok(GridSpec { r, t, directions: dirs })
    }

    pub fn build(&self) -> Result<SpacetimeGrid> {
        SpacetimeGrid::product(&self.r.values()?, &self.t.values()?, &direction_set(self.directions)?)
    }
}

/// `n` unit directions on a Fibonacci spiral; a single direction is the
/// generic `(1, 2, 3)/√14` so that no projector entry vanishes.
pub fn direction_set(n: usize) -> Result<Vec<Vec3>> {
    if n == 0 {
        return domain("at least one direction is required");
    }
    if n == 1 {
        let s = 14f64.sqrt();
        return Ok(vec![[1.0 / s, 2.0 / s, 3.0 / s]]);
    }
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    Ok((0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let rho = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            [rho * phi.cos(), rho * phi.sin(), z]
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeGrid {
    pub points: Vec<(Vec3, f64)>,
}

impl SpacetimeGrid {
    pub fn new(points: Vec<(Vec3, f64)>) -> Self {
        Self { points }
    }

    /// Points ordered by direction, then radius, then time.
    pub fn product(radii: &[f64], times: &[f64], dirs: &[Vec3]) -> Result<Self> {
        if radii.iter().any(|r| !(*r > 0.0)) {
            return domain("radii must be positive");
        }
        let mut points = Vec::with_capacity(radii.len() * times.len() * dirs.len());
        for d in dirs {
            for &r in radii {
                for &t in times {
                    points.push((d.map(|c| c * r), t));
                }
            }
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub x: Vec3,
    pub t: f64,
    pub psi: CVec3,
    pub zone: ConeZone,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldScan {
    pub points: Vec<ScanPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub n_inside: usize,
    pub n_outside: usize,
    pub n_on_cone: usize,
    pub max_outside: f64,
    pub max_inside: f64,
    /// `max_outside / max_inside` over the whole grid.
    pub ratio: f64,
    /// Worst outside/inside ratio among radii sampled on both sides.
    pub worst_ratio_same_radius: f64,
}

impl FieldScan {
    pub fn summary(&self) -> ScanSummary {
        let (mut n_in, mut n_out, mut n_on) = (0, 0, 0);
        let (mut max_out, mut max_in) = (0.0f64, 0.0f64);
        // Keyed by the bit pattern of ‖x‖ so that equal radii group exactly.
        let mut per_r: std::collections::BTreeMap<u64, (f64, f64)> = Default::default();
        for p in &self.points {
            let m = p.psi.norm();
            let e = per_r.entry(real_norm(&p.x).to_bits()).or_default();
            match p.zone {
                ConeZone::Inside => {
                    n_in += 1;
                    max_in = max_in.max(m);
                    e.1 = e.1.max(m);
                }
                ConeZone::Outside => {
                    n_out += 1;
                    max_out = max_out.max(m);
                    e.0 = e.0.max(m);
                }
                ConeZone::OnCone => n_on += 1,
            }
        }
        let ratio = if max_in > 0.0 { max_out / max_in } else { f64::INFINITY };
        let worst = per_r
            .values()
            .filter(|(_, i)| *i > 0.0)
            .map(|(o, i)| o / i)
            .fold(0.0, f64::max);
        ScanSummary {
            n_inside: n_in,
            n_outside: n_out,
            n_on_cone: n_on,
            max_outside: max_out,
            max_inside: max_in,
            ratio,
            worst_ratio_same_radius: worst,
        }
    }
}

/// Evaluates the field on every grid point in parallel; output order follows
/// the grid and the summary is reduced sequentially.
pub fn causality_scan(
    model: CouplingModel,
    options: &FieldOptions,
    grid: &SpacetimeGrid,
    transition: &TransitionSpec,
    collar: f64,
) -> Result<(FieldScan, ScanSummary)> {
    if grid.is_empty() {
        return domain("empty grid");
    }
    let mu_hat = transition.mu_hat();
    let omega = transition.omega_complex_internal();
    let points = grid
        .points
        .par_iter()
        .map(|(x, t)| {
            let psi = field_for(model, x, *t, &mu_hat, omega, options)?;
            Ok(ScanPoint { x: *x, t: *t, psi, zone: ConeZone::classify(real_norm(x), *t, collar) })
        })
        .collect::<Result<Vec<_>>>()?;
    let scan = FieldScan { points };
    let summary = scan.summary();
    Ok((scan, summary))
}
