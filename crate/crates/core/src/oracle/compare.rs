use serde::{Deserialize, Serialize};

use crate::atomkit::real_norm;
use crate::error::{domain, Result};
use crate::fields::{ConeZone, FieldScan};

/// Relative error of `b` against the reference `a` over one group of points:
/// `max_rel = max|Δψ|/max|ψ_a|`, `rms_rel = √(Σ|Δψ|²/Σ|ψ_a|²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZoneError {
    pub zone: Option<ConeZone>,
    pub points: usize,
    pub max_rel: f64,
    pub rms_rel: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub per_zone: Vec<ZoneError>,
    pub overall: ZoneError,
}

impl CompareReport {
    pub fn zone(&self, zone: ConeZone) -> Option<&ZoneError> {
        self.per_zone.iter().find(|z| z.zone == Some(zone))
    }

    pub fn passes(&self, rms_tol: f64) -> bool {
        self.overall.rms_rel <= rms_tol
    }
}

fn accumulate(zone: Option<ConeZone>, pairs: &[(f64, f64)]) -> ZoneError {
    let (mut max_d, mut max_a, mut sum_d, mut sum_a) = (0.0f64, 0.0f64, 0.0, 0.0);
    for &(d, a) in pairs {
        max_d = max_d.max(d);
        max_a = max_a.max(a);
        sum_d += d * d;
        sum_a += a * a;
    }
    let ratio = |num: f64, den: f64| if den > 0.0 { num / den } else if num == 0.0 { 0.0 } else { f64::INFINITY };
    ZoneError { zone, points: pairs.len(), max_rel: ratio(max_d, max_a), rms_rel: ratio(sum_d, sum_a).sqrt() }
}

/// Compares two scans sampled on the same spacetime points.
pub fn compare(a: &FieldScan, b: &FieldScan) -> Result<CompareReport> {
    if a.points.len() != b.points.len() {
        return domain(format!("grid mismatch: {} vs {} points", a.points.len(), b.points.len()));
    }
    if a.points.is_empty() {
        return domain("empty scans");
    }
    let mut groups: Vec<(ConeZone, Vec<(f64, f64)>)> =
        [ConeZone::Inside, ConeZone::Outside, ConeZone::OnCone].into_iter().map(|z| (z, Vec::new())).collect();
    let mut all = Vec::with_capacity(a.points.len());
    for (i, (pa, pb)) in a.points.iter().zip(&b.points).enumerate() {
        let scale = real_norm(&pa.x).max(pa.t.abs()).max(1.0);
        let dx = (0..3).map(|j| (pa.x[j] - pb.x[j]).abs()).fold((pa.t - pb.t).abs(), f64::max);
        if dx > 1e-12 * scale {
            return domain(format!("grid mismatch at point {i}"));
        }
        let pair = ((pa.psi - pb.psi).norm(), pa.psi.norm());
        groups.iter_mut().find(|(z, _)| *z == pa.zone).expect("zone group").1.push(pair);
        all.push(pair);
    }
    let per_zone = groups
        .iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|(z, v)| accumulate(Some(*z), v))
        .collect();
    Ok(CompareReport { per_zone, overall: accumulate(None, &all) })
}
