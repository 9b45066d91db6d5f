//! Report bundles, CSV datasets and atomic output.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use lumen_core::fields::{FieldScan, ScanPoint};
use lumen_core::{CVec3, ConeZone};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Column order of field datasets.
pub const SCAN_HEADER: [&str; 12] =
    ["x", "y", "z", "t", "zone", "re_psi_x", "im_psi_x", "re_psi_y", "im_psi_y", "re_psi_z", "im_psi_z", "abs2_psi"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// Passes when `measured <= tolerance`.
    AtMost,
    /// Passes when `measured >= tolerance`.
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub relation: Relation,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn at_most(name: &str, measured: f64, tolerance: f64) -> Self {
        Self::new(name, measured, tolerance, Relation::AtMost)
    }

    pub fn at_least(name: &str, measured: f64, tolerance: f64) -> Self {
        Self::new(name, measured, tolerance, Relation::AtLeast)
    }

    fn new(name: &str, measured: f64, tolerance: f64, relation: Relation) -> Self {
        // NaN fails either way.
        let passed = match relation {
            Relation::AtMost => measured <= tolerance,
            Relation::AtLeast => measured >= tolerance,
        };
        Self { name: name.into(), passed, measured, tolerance, relation, details: BTreeMap::new(), note: None }
    }

    pub fn detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.into(), value);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Extra condition that must also hold.
    pub fn require(mut self, ok: bool, why: &str) -> Self {
        if !ok {
            self.passed = false;
            let n = self.note.take().map_or(why.to_string(), |n| format!("{n}; {why}"));
            self.note = Some(n);
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub results: serde_json::Value,
    pub datasets: Vec<String>,
    pub passed: bool,
}

/// Files produced by one command; nothing touches the disk until
/// [`Output::commit`].
pub struct Output {
    pub command: String,
    pub checks: Vec<Check>,
    pub results: serde_json::Value,
    pub datasets: Vec<(String, Vec<u8>)>,
}

impl Output {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), checks: vec![], results: serde_json::Value::Null, datasets: vec![] }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn bundle(&self, config: &RunConfig) -> ReportBundle {
        ReportBundle {
            schema_version: SCHEMA_VERSION,
            command: self.command.clone(),
            config: config.clone(),
            checks: self.checks.clone(),
            results: self.results.clone(),
            datasets: self.datasets.iter().map(|(n, _)| n.clone()).collect(),
            passed: self.passed(),
        }
    }

    /// Writes every dataset and `<command>.json` into `config.out`. All files
    /// are staged as temporaries first and renamed only once all are written.
    pub fn commit(&self, config: &RunConfig) -> CliResult<PathBuf> {
        let dir = &config.out;
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let mut summary = serde_json::to_vec_pretty(&self.bundle(config)).expect("bundle serializes");
        summary.push(b'\n');
        let summary_name = format!("{}.json", self.command);
        let mut staged = Vec::with_capacity(self.datasets.len() + 1);
        for (name, bytes) in self.datasets.iter().map(|(n, b)| (n.as_str(), b.as_slice())).chain([(summary_name.as_str(), summary.as_slice())]) {
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
            tmp.write_all(bytes).map_err(|e| CliError::io(tmp.path(), e))?;
            tmp.as_file().sync_all().map_err(|e| CliError::io(tmp.path(), e))?;
            staged.push((tmp, dir.join(name)));
        }
        for (tmp, target) in staged {
            tmp.persist(&target).map_err(|e| CliError::io(&target, e.error))?;
        }
        Ok(dir.join(summary_name))
    }
}

/// Round-trip formatting: 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn scan_csv(scan: &FieldScan) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SCAN_HEADER).expect("in-memory write");
    for p in &scan.points {
        let mut row = vec![num(p.x[0]), num(p.x[1]), num(p.x[2]), num(p.t), p.zone.label().to_string()];
        for c in p.psi.0 {
            row.push(num(c.re));
            row.push(num(c.im));
        }
        row.push(num(p.psi.norm_sqr()));
        w.write_record(&row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub fn read_scan_csv(path: &Path) -> CliResult<FieldScan> {
    let bad = |msg: String| CliError::Usage(format!("{}: {msg}", path.display()));
    let mut r = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => bad(format!("{other:?}")),
    })?;
    let header = r.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.iter().ne(SCAN_HEADER) {
        return Err(bad("not a field dataset (unexpected header)".into()));
    }
    let mut points = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let f = |j: usize| -> CliResult<f64> {
            rec[j].parse::<f64>().map_err(|_| bad(format!("row {}: bad number '{}'", i + 1, &rec[j])))
        };
        let zone: ConeZone = rec[4].parse().map_err(|_| bad(format!("row {}: bad zone '{}'", i + 1, &rec[4])))?;
        let psi = CVec3::new(
            Complex64::new(f(5)?, f(6)?),
            Complex64::new(f(7)?, f(8)?),
            Complex64::new(f(9)?, f(10)?),
        );
        points.push(ScanPoint { x: [f(0)?, f(1)?, f(2)?], t: f(3)?, psi, zone });
    }
    Ok(FieldScan { points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_compare_in_the_stated_direction() {
        assert!(Check::at_most("a", 1.0, 1.0).passed);
        assert!(!Check::at_most("a", f64::NAN, 1.0).passed);
        assert!(Check::at_least("b", 0.9995, 0.999).passed);
        assert!(!Check::at_least("b", 1.0, 2.0).passed);
        let c = Check::at_most("c", 0.0, 1.0).require(false, "too slow");
        assert!(!c.passed);
        assert_eq!(c.note.as_deref(), Some("too slow"));
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let v = 0.1 + 0.2;
        let scan = FieldScan {
            points: vec![ScanPoint {
                x: [v, -1e-300, 3.0],
                t: 1.0 / 3.0,
                psi: CVec3::new(Complex64::new(v, -v), Complex64::new(1e300, 0.0), Complex64::new(0.0, 2.5e-17)),
                zone: ConeZone::Outside,
            }],
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        std::fs::write(&path, scan_csv(&scan)).unwrap();
        assert_eq!(read_scan_csv(&path).unwrap(), scan);
    }
}
