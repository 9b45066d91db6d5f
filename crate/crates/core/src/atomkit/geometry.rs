use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Real Cartesian 3-vector.
pub type Vec3 = [f64; 3];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn real_dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn real_norm(a: &Vec3) -> f64 {
    real_dot(a, a).sqrt()
}

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Unit vector along `v`, or a domain error for a zero / non-finite input.
pub fn normalize(v: &Vec3) -> Result<Vec3> {
    let n = real_norm(v);
    if !(n.is_finite() && n > 0.0) {
        return domain("direction vector must be non-zero and finite");
    }
    Ok([v[0] / n, v[1] / n, v[2] / n])
}

/// Complex 3-vector in the fixed Cartesian frame.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CVec3(pub [Complex64; 3]);

impl CVec3 {
    pub const fn zero() -> Self {
        Self([ZERO; 3])
    }

    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        Self([x, y, z])
    }

    pub fn from_real(v: &Vec3) -> Self {
        Self([v[0].into(), v[1].into(), v[2].into()])
    }

    /// Hermitian product `Σ conj(a_i) b_i`.
    pub fn hdot(&self, other: &Self) -> Complex64 {
        (0..3).map(|i| self.0[i].conj() * other.0[i]).sum()
    }

    /// Bilinear product `Σ a_i b_i` (no conjugation).
    pub fn dot(&self, other: &Self) -> Complex64 {
        (0..3).map(|i| self.0[i] * other.0[i]).sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|c| c.conj()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Largest component modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Add for CVec3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl AddAssign for CVec3 {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for CVec3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl Neg for CVec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl Mul<Complex64> for CVec3 {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for CVec3 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self(self.0.map(|c| c * rhs))
    }
}

impl Index<usize> for CVec3 {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for CVec3 {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.0[i]
    }
}

/// 3×3 complex dyadic.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Dyadic3(pub [[Complex64; 3]; 3]);

impl Dyadic3 {
    pub const fn zero() -> Self {
        Self([[ZERO; 3]; 3])
    }

    pub fn identity() -> Self {
        let mut d = Self::zero();
        for i in 0..3 {
            d.0[i][i] = ONE;
        }
        d
    }

    /// `a bᵀ` for real vectors.
    pub fn outer(a: &Vec3, b: &Vec3) -> Self {
        Self(a.map(|ai| b.map(|bj| (ai * bj).into())))
    }

    /// `a b†` for complex vectors.
    pub fn outer_conj(a: &CVec3, b: &CVec3) -> Self {
        let mut d = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                d.0[i][j] = a.0[i] * b.0[j].conj();
            }
        }
        d
    }

    pub fn from_real(m: [[f64; 3]; 3]) -> Self {
        Self(m.map(|row| row.map(Complex64::from)))
    }

    pub fn apply(&self, v: &CVec3) -> CVec3 {
        let mut out = CVec3::zero();
        for i in 0..3 {
            out.0[i] = (0..3).map(|j| self.0[i][j] * v.0[j]).sum();
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = self.0[j][i];
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(self.0.map(|row| row.map(|c| c * s)))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flat_map(|r| r.iter()).all(|c| c.is_finite())
    }
}

impl Add for Dyadic3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }
}

impl AddAssign for Dyadic3 {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Dyadic3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }
}

impl Mul<Complex64> for Dyadic3 {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for Dyadic3 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs.into())
    }
}

/// Spherical basis vector ξ_{m₂}: ξ₀ = e_z, ξ±₁ = ∓(e_x ± i e_y)/√2.
pub fn xi(m2: i32) -> Result<CVec3> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match m2 {
        0 => Ok(CVec3::new(ZERO, ZERO, ONE)),
        1 => Ok(CVec3::new(
            Complex64::new(-s, 0.0),
            Complex64::new(0.0, -s),
            ZERO,
        )),
        -1 => Ok(CVec3::new(
            Complex64::new(s, 0.0),
            Complex64::new(0.0, -s),
            ZERO,
        )),
        other => Err(Error::Domain(format!("m2 must be -1, 0 or +1, got {other}"))),
    }
}

/// Transverse polarization pair for propagation direction `k_hat`.
///
/// ε₁ ∝ ẑ×k̂ and ε₂ = k̂×ε₁; along ±ẑ the pair is (x̂, ±ŷ). Both vectors are
/// real.
pub fn polarization_basis(k_hat: &Vec3) -> Result<(CVec3, CVec3)> {
    let k = normalize(k_hat)?;
    let zc = cross(&[0.0, 0.0, 1.0], &k);
    let n = real_norm(&zc);
    let (e1, e2) = if n < 1e-12 {
        let sign = if k[2] >= 0.0 { 1.0 } else { -1.0 };
        ([1.0, 0.0, 0.0], [0.0, sign, 0.0])
    } else {
        let e1 = [zc[0] / n, zc[1] / n, zc[2] / n];
        let e2 = cross(&k, &e1);
        (e1, e2)
    };
    Ok((CVec3::from_real(&e1), CVec3::from_real(&e2)))
}

/// Projector pair `(𝕀 − x̂x̂, 𝕀 − 3x̂x̂)` for direction `x_hat`.
pub fn projectors(x_hat: &Vec3) -> Result<(Dyadic3, Dyadic3)> {
    let x = normalize(x_hat)?;
    let xx = Dyadic3::outer(&x, &x);
    let id = Dyadic3::identity();
    Ok((id - xx, id - xx * 3.0))
}
