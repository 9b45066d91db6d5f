//! Constants, transition description and the vector/dyadic geometry shared
//! by every other module.

mod constants;
mod geometry;
mod transition;
mod units;

pub use constants::PhysicalConstants;
pub use geometry::{
    normalize, polarization_basis, projectors, real_dot, real_norm, xi, CVec3, Dyadic3, Vec3,
};
pub use transition::{dipole_moment, dipole_norm, TransitionConfig, TransitionSpec, UnitSystem};
pub use units::Units;
