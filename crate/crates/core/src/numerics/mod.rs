//! Quadrature and ODE machinery used by the oracle and the energy estimate.

pub mod dopri;
pub mod gauss_legendre;
pub mod quad;

pub use dopri::{Dopri5, DopriOptions};
pub use gauss_legendre::gauss_legendre;
pub use quad::{integrate, integrate_to_infinity, QuadOptions, QuadResult, QuadValue};
