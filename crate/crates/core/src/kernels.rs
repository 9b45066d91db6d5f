//! Dyadic Green functions of the point dipole.
//!
//! Time-domain kernels are symbolic sums of δ⁽ⁿ⁾ distributions, never sampled
//! arrays. Each [`KernelTerm`] stands for
//!
//! `coefficient · shape(x̂) / ‖x‖^p · δ⁽ⁿ⁾(t − t′ − ‖x‖/c)` (retarded), or
//! `coefficient · shape(x̂) / ‖x‖^p · δ⁽ⁿ⁾(t − t′)` (instantaneous),
//!
//! with δ⁽⁻¹⁾ the Heaviside step, so that under convolution the term produces
//! the primitive of the source. Coefficients are exact and carry the factor
//! `1/(4πε₀)` implicitly.
//!
//! Harmonic dyadics use internal units (`c = ω₀ = 4πε₀ = 1`, so `k = ω`) and
//! follow `g(x, ω) = ∫dτ g(x, τ)e^{iωτ}`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::atomkit::{normalize, projectors, real_norm, Dyadic3, Vec3};
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Shape {
    /// `𝕀 − x̂x̂`
    Transverse,
    /// `𝕀 − 3x̂x̂`
    Traceless,
}

impl Shape {
    pub fn dyadic(self, x_hat: &Vec3) -> Result<Dyadic3> {
        let (pt, ps) = projectors(x_hat)?;
        Ok(match self {
            Shape::Transverse => pt,
            Shape::Traceless => ps,
        })
    }
}

/// Exact scalar `(re + i·im)·ω₀^omega0_power·c^c_power/(4πε₀)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Coefficient {
    pub re: i64,
    pub im: i64,
    pub omega0_power: i32,
    pub c_power: i32,
}

impl Coefficient {
    pub const fn new(re: i64, im: i64, omega0_power: i32, c_power: i32) -> Self {
        Self { re, im, omega0_power, c_power }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// Value in internal units, where ω₀, c and 4πε₀ are all one.
    pub fn internal(&self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }

    pub fn si(&self, omega0: f64, c: f64, eps0: f64) -> Complex64 {
        self.internal() * omega0.powi(self.omega0_power) * c.powi(self.c_power)
            / (4.0 * std::f64::consts::PI * eps0)
    }

    pub fn neg(&self) -> Self {
        Self { re: -self.re, im: -self.im, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: self.re * other.re - self.im * other.im,
            im: self.re * other.im + self.im * other.re,
            omega0_power: self.omega0_power + other.omega0_power,
            c_power: self.c_power + other.c_power,
        }
    }

    /// Exact quotient `self/other` over the Gaussian integers, or `None` when
    /// it does not exist.
    pub fn ratio(&self, other: &Self) -> Option<Self> {
        let n = other.re * other.re + other.im * other.im;
        if n == 0 {
            return None;
        }
        let re = self.re * other.re + self.im * other.im;
        let im = self.im * other.re - self.re * other.im;
        if re % n != 0 || im % n != 0 {
            return None;
        }
        Some(Self {
            re: re / n,
            im: im / n,
            omega0_power: self.omega0_power - other.omega0_power,
            c_power: self.c_power - other.c_power,
        })
    }

    /// Sign of a purely real or purely imaginary coefficient.
    pub fn sign(&self) -> i32 {
        let lead = if self.re != 0 { self.re } else { self.im };
        lead.signum() as i32
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.re, self.im) {
            (0, 0) => "0".to_string(),
            (r, 0) => r.to_string(),
            (0, 1) => "i".to_string(),
            (0, -1) => "-i".to_string(),
            (0, i) => format!("{i}i"),
            (r, i) => format!("({r}{i:+}i)"),
        };
        write!(f, "{num}")?;
        if self.omega0_power != 0 {
            write!(f, "·ω₀^{}", self.omega0_power)?;
        }
        if self.c_power != 0 {
            write!(f, "·c^{}", self.c_power)?;
        }
        write!(f, "/(4πε₀)")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelTerm {
    pub shape: Shape,
    /// Power of `1/‖x‖`, in {1, 2, 3}.
    pub radial_power: u8,
    /// Order n of δ⁽ⁿ⁾, in {−1, 0, 1, 2}.
    pub derivative_order: i8,
    pub retarded: bool,
    pub coefficient: Coefficient,
}

impl KernelTerm {
    /// Term with the dimensionally consistent power of c (`c^{p−3}`).
    pub const fn new(shape: Shape, radial_power: u8, derivative_order: i8, retarded: bool, re: i64, im: i64, omega0_power: i32) -> Self {
        Self {
            shape,
            radial_power,
            derivative_order,
            retarded,
            coefficient: Coefficient::new(re, im, omega0_power, radial_power as i32 - 3),
        }
    }

    pub fn key(&self) -> (Shape, i8, bool) {
        (self.shape, self.derivative_order, self.retarded)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelModel {
    #[serde(rename = "classical-full")]
    ClassicalFull,
    #[serde(rename = "classical-transverse")]
    ClassicalTransverse,
    #[serde(rename = "classical-longitudinal")]
    ClassicalLongitudinal,
    #[serde(rename = "quantum-er-dip")]
    QuantumErDip,
    #[serde(rename = "quantum-ap-dip")]
    QuantumApDip,
    /// Instantaneous Coulomb-like field of the A.p dipole, driven by the
    /// primitive of the source.
    #[serde(rename = "quantum-ap-longitudinal")]
    QuantumApLongitudinal,
}

impl KernelModel {
    pub const ALL: [KernelModel; 6] = [
        Self::ClassicalFull,
        Self::ClassicalTransverse,
        Self::ClassicalLongitudinal,
        Self::QuantumErDip,
        Self::QuantumApDip,
        Self::QuantumApLongitudinal,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::ClassicalFull => "classical-full",
            Self::ClassicalTransverse => "classical-transverse",
            Self::ClassicalLongitudinal => "classical-longitudinal",
            Self::QuantumErDip => "quantum-er-dip",
            Self::QuantumApDip => "quantum-ap-dip",
            Self::QuantumApLongitudinal => "quantum-ap-longitudinal",
        }
    }
}

impl std::str::FromStr for KernelModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| Error::Domain(format!("unknown kernel model '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreenKernel {
    pub model: KernelModel,
    pub terms: Vec<KernelTerm>,
    /// Overall `Θ(t − t′)` factor.
    pub causal_gate: bool,
}

use Shape::{Transverse as T, Traceless as S};

const CLASSICAL_RETARDED: [KernelTerm; 3] = [
    KernelTerm::new(T, 1, 2, true, -1, 0, 0),
    KernelTerm::new(S, 2, 1, true, -1, 0, 0),
    KernelTerm::new(S, 3, 0, true, -1, 0, 0),
];

/// Term list of each kernel model.
pub fn kernel(model: KernelModel) -> GreenKernel {
    let (terms, causal_gate) = match model {
        KernelModel::ClassicalFull => (CLASSICAL_RETARDED.to_vec(), false),
        KernelModel::ClassicalLongitudinal => (vec![KernelTerm::new(S, 3, 0, false, -1, 0, 0)], false),
        KernelModel::ClassicalTransverse => {
            let mut t = CLASSICAL_RETARDED.to_vec();
            t.push(KernelTerm::new(S, 3, 0, false, 1, 0, 0));
            (t, false)
        }
        // Same triples as the classical kernel; the overall sign is the one
        // that makes the far field `+Ω₀²e^{−iΩ₀(t−r)}P_T·μ/r`.
        KernelModel::QuantumErDip => (CLASSICAL_RETARDED.to_vec(), true),
        // Each E.r term with one derivative fewer and a factor −iω₀, plus the
        // instantaneous primitive that makes the field vanish at t = 0⁺.
        KernelModel::QuantumApDip => (
            vec![
                KernelTerm::new(T, 1, 1, true, 0, 1, 1),
                KernelTerm::new(S, 2, 0, true, 0, 1, 1),
                KernelTerm::new(S, 3, -1, true, 0, 1, 1),
                KernelTerm::new(S, 3, -1, false, 0, -1, 1),
            ],
            true,
        ),
        KernelModel::QuantumApLongitudinal => (vec![KernelTerm::new(S, 3, -1, false, 0, 1, 1)], true),
    };
    GreenKernel { model, terms, causal_gate }
}

impl GreenKernel {
    /// Checks the structural invariants of the term list.
    pub fn validate(&self) -> Result<()> {
        let mut keys: Vec<_> = self.terms.iter().map(KernelTerm::key).collect();
        keys.sort();
        keys.dedup();
        if keys.len() != self.terms.len() {
            return domain("kernel terms must have distinct (shape, order, retarded) keys");
        }
        for t in &self.terms {
            if !(1..=3).contains(&t.radial_power) || !(-1..=2).contains(&t.derivative_order) {
                return domain(format!("term out of range: {t:?}"));
            }
            if t.coefficient.c_power != t.radial_power as i32 - 3 {
                return domain(format!("dimensionally inconsistent term: {t:?}"));
            }
        }
        let retarded = self.terms.iter().filter(|t| t.retarded).count();
        let inst = self.terms.len() - retarded;
        let orders: Vec<i8> = self.terms.iter().map(|t| t.derivative_order).collect();
        let ok = match self.model {
            KernelModel::ClassicalFull => retarded == 3 && inst == 0,
            KernelModel::ClassicalLongitudinal => retarded == 0 && inst == 1,
            KernelModel::ClassicalTransverse => retarded == 3 && inst == 1,
            KernelModel::QuantumErDip => retarded == 3 && inst == 0 && orders == [2, 1, 0],
            KernelModel::QuantumApDip => {
                let prim: Vec<_> = self.terms.iter().filter(|t| t.derivative_order == -1).collect();
                self.terms.len() == 4
                    && orders == [1, 0, -1, -1]
                    && prim.len() == 2
                    && prim[0].retarded != prim[1].retarded
                    && prim[0].coefficient == prim[1].coefficient.neg()
            }
            KernelModel::QuantumApLongitudinal => retarded == 0 && inst == 1,
        };
        if ok {
            Ok(())
        } else {
            domain(format!("kernel {} violates its term inventory", self.model.tag()))
        }
    }

    pub fn triples(&self) -> Vec<(Shape, i8, bool)> {
        self.terms.iter().map(KernelTerm::key).collect()
    }
}

/// Symbolic sum of the instantaneous δ⁽ⁿ⁾ terms of several kernels, keyed by
/// (shape, radial power, ω₀ power, c power). The dyadic sum is the zero
/// dyadic iff every entry vanishes, since the two shapes are independent.
pub fn instantaneous_sum(kernels: &[GreenKernel], order: i8) -> BTreeMap<(Shape, u8, i32, i32), (i64, i64)> {
    let mut acc: BTreeMap<(Shape, u8, i32, i32), (i64, i64)> = BTreeMap::new();
    for k in kernels {
        for t in k.terms.iter().filter(|t| !t.retarded && t.derivative_order == order) {
            let c = t.coefficient;
            let e = acc.entry((t.shape, t.radial_power, c.omega0_power, c.c_power)).or_default();
            e.0 += c.re;
            e.1 += c.im;
        }
    }
    acc.retain(|_, v| *v != (0, 0));
    acc
}

/// Outcome of the E.r / classical / A.p structural comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    /// E.r quantum kernel and classical kernel share (shape, n, retarded).
    pub er_matches_classical: bool,
    /// Exact ratio E.r/classical when it is common to all terms.
    pub er_over_classical: Option<Coefficient>,
    /// A.p retarded terms are the E.r terms with n lowered by one.
    pub ap_orders_lowered: bool,
    /// Exact ratio A.p/E.r when it is common to all retarded terms.
    pub ap_over_er: Option<Coefficient>,
    /// The instantaneous δ⁽⁻¹⁾ counter-term is present, opposite to the
    /// retarded δ⁽⁻¹⁾ term.
    pub ap_counterterm: bool,
    pub passed: bool,
}

fn common_ratio(a: &[KernelTerm], b: &[KernelTerm]) -> Option<Coefficient> {
    let ratios: Vec<_> = a.iter().zip(b).map(|(x, y)| x.coefficient.ratio(&y.coefficient)).collect();
    let first = ratios.first().copied().flatten()?;
    ratios.iter().all(|r| *r == Some(first)).then_some(first)
}

pub fn er_ap_structure_check() -> StructureReport {
    let cl = kernel(KernelModel::ClassicalFull);
    let er = kernel(KernelModel::QuantumErDip);
    let ap = kernel(KernelModel::QuantumApDip);

    let er_matches_classical = er.triples() == cl.triples()
        && er.terms.iter().zip(&cl.terms).all(|(a, b)| a.radial_power == b.radial_power);
    let er_over_classical = common_ratio(&er.terms, &cl.terms);

    let ap_ret: Vec<KernelTerm> = ap.terms.iter().filter(|t| t.retarded).copied().collect();
    let ap_orders_lowered = ap_ret.len() == er.terms.len()
        && ap_ret.iter().zip(&er.terms).all(|(a, e)| {
            a.shape == e.shape && a.radial_power == e.radial_power && a.derivative_order == e.derivative_order - 1
        });
    let ap_over_er = if ap_orders_lowered { common_ratio(&ap_ret, &er.terms) } else { None };

    let inst: Vec<&KernelTerm> = ap.terms.iter().filter(|t| !t.retarded).collect();
    let ap_counterterm = inst.len() == 1
        && ap_ret.iter().any(|r| {
            r.derivative_order == -1
                && r.shape == inst[0].shape
                && r.radial_power == inst[0].radial_power
                && inst[0].derivative_order == -1
                && r.coefficient == inst[0].coefficient.neg()
        });

    let passed = er_matches_classical
        && er_over_classical.is_some()
        && ap_orders_lowered
        && ap_over_er.is_some_and(|r| r.omega0_power == 1 && r.c_power == 0 && r.re == 0 && r.im.abs() == 1)
        && ap_counterterm;
    StructureReport { er_matches_classical, er_over_classical, ap_orders_lowered, ap_over_er, ap_counterterm, passed }
}

fn split_position(x: &Vec3) -> Result<(f64, Vec3)> {
    let r = real_norm(x);
    if r == 0.0 {
        return Err(Error::Singularity);
    }
    if !r.is_finite() {
        return domain("position must be finite");
    }
    Ok((r, normalize(x)?))
}

/// Scalar weights `(m₁, m₂, m₃)` with
/// `M = m₁·(𝕀 − x̂x̂) + (m₂ + m₃)·(𝕀 − 3x̂x̂)`, grouped by radial power
/// (far `1/r`, mid `1/r²`, near `1/r³` once multiplied by k²). Even in k.
pub fn dyadic_m_parts(k: f64, r: f64) -> [f64; 3] {
    let z = k * r;
    if z.abs() < 1e-3 {
        // Series keeps the near/mid pieces finite; their sum is regular.
        let z2 = z * z;
        let sinc = 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
        return [2.0 * sinc, 2.0 * z.cos() / z2, -2.0 * sinc / z2];
    }
    let (s, c) = z.sin_cos();
    [2.0 * s / z, 2.0 * c / (z * z), -2.0 * s / (z * z * z)]
}

/// The dyadic M(k, x): `∫dΩ_k Σ_λ ε_λε_λ† e^{ik·x} = 2π·M(k, x)`.
pub fn dyadic_m(k: f64, x: &Vec3) -> Result<Dyadic3> {
    let (r, xh) = split_position(x)?;
    if !(k > 0.0 && k.is_finite()) {
        return domain(format!("wavenumber must be positive, got {k}"));
    }
    let (pt, ps) = projectors(&xh)?;
    let [m1, m2, m3] = dyadic_m_parts(k, r);
    Ok(pt * m1 + ps * (m2 + m3))
}

/// Classical harmonic response (self-field term excluded), internal units.
pub fn classical_harmonic(x: &Vec3, omega: f64) -> Result<Dyadic3> {
    let (r, xh) = split_position(x)?;
    let (pt, ps) = projectors(&xh)?;
    let xx = (pt - ps) * 0.5;
    let z = omega * r;
    let iz = Complex64::new(0.0, z);
    let pref = -iz.exp() / r.powi(3);
    Ok((pt * (1.0 - iz - z * z) - xx * (2.0 - 2.0 * iz)) * pref)
}

/// Longitudinal part, `−(𝕀 − 3x̂x̂)/r³`, independent of ω.
pub fn longitudinal_harmonic(x: &Vec3, _omega: f64) -> Result<Dyadic3> {
    let (r, xh) = split_position(x)?;
    let (_, ps) = projectors(&xh)?;
    Ok(ps * (-1.0 / r.powi(3)))
}

pub fn transverse_harmonic(x: &Vec3, omega: f64) -> Result<Dyadic3> {
    let (r, xh) = split_position(x)?;
    let (_, ps) = projectors(&xh)?;
    Ok(ps * (1.0 / r.powi(3)) + classical_harmonic(x, omega)?)
}
