use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Time signal that can be differentiated (n ≥ 0) or integrated (n = −1)
/// analytically.
pub trait Source {
    fn derivative(&self, n: i8, t: f64) -> Complex64;
}

/// `s(t) = Θ(t)e^{−iΩt}` in internal time units.
///
/// The primitive vanishes for t < 0 and is continuous at t = 0:
/// `S(t) = (i/Ω)(e^{−iΩt} − 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceSignal {
    pub omega: Complex64,
}

impl SourceSignal {
    pub fn new(omega: Complex64) -> Self {
        Self { omega }
    }

    pub fn value(&self, t: f64) -> Complex64 {
        if t < 0.0 {
            ZERO
        } else {
            (-I * self.omega * t).exp()
        }
    }

    pub fn primitive(&self, t: f64) -> Complex64 {
        if t < 0.0 {
            ZERO
        } else {
            I / self.omega * ((-I * self.omega * t).exp() - 1.0)
        }
    }

    /// `(i/Ω)s(t)`: a primitive of `s` on t > 0 without the continuity
    /// constant, vanishing for t < 0.
    pub fn unanchored_primitive(&self, t: f64) -> Complex64 {
        I / self.omega * self.value(t)
    }
}

impl Source for SourceSignal {
    fn derivative(&self, n: i8, t: f64) -> Complex64 {
        match n {
            -1 => self.primitive(t),
            _ => (-I * self.omega).powi(n as i32) * self.value(t),
        }
    }
}

/// Same signal with the primitive replaced by [`SourceSignal::unanchored_primitive`].
#[derive(Debug, Clone, Copy)]
pub struct Unanchored(pub SourceSignal);

impl Source for Unanchored {
    fn derivative(&self, n: i8, t: f64) -> Complex64 {
        match n {
            -1 => self.0.unanchored_primitive(t),
            _ => self.0.derivative(n, t),
        }
    }
}

/// Smooth test pulse `exp(−(t − t₀)²/2σ²)` with derivatives up to order 2
/// and its primitive from −∞.
#[derive(Debug, Clone, Copy)]
pub struct GaussianPulse {
    pub center: f64,
    pub width: f64,
}

impl Source for GaussianPulse {
    fn derivative(&self, n: i8, t: f64) -> Complex64 {
        let s = self.width;
        let u = t - self.center;
        let p = (-u * u / (2.0 * s * s)).exp();
        let v = match n {
            -1 => s * (std::f64::consts::PI / 2.0).sqrt() * (1.0 + erf(u / (s * std::f64::consts::SQRT_2))),
            0 => p,
            1 => -u / (s * s) * p,
            2 => (u * u / s.powi(4) - 1.0 / (s * s)) * p,
            _ => panic!("derivative order {n} not supported"),
        };
        Complex64::new(v, 0.0)
    }
}

/// Error function via the complementary series/continued-fraction split
/// (absolute error below 1e-15).
fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x < 3.0 {
        // Maclaurin series.
        let mut term = x;
        let mut sum = x;
        let x2 = x * x;
        let mut k = 0.0;
        while term.abs() > 1e-17 * sum.abs() {
            k += 1.0;
            term *= -x2 / k;
            sum += term / (2.0 * k + 1.0);
        }
        return 2.0 / std::f64::consts::PI.sqrt() * sum;
    }
    // Lentz continued fraction for erfc.
    let x2 = x * x;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..200 {
        let a = k as f64 / 2.0;
        d = 1.0 / (x + a * d);
        c = x + a / c;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 - (-x2).exp() / (f * std::f64::consts::PI.sqrt())
}
