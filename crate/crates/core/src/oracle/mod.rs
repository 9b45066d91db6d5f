//! Brute-force cross-checks: direct integration of the discretized mode
//! equations, and k-space quadrature of the emitted field.

mod compare;
mod fit;
mod grid;
mod modes;
mod reconstruct;

pub use compare::{compare, CompareReport, ZoneError};
pub use fit::{fit_decay, DecayFit};
pub use grid::{GridPreset, ModeGrid};
pub use modes::{simulate_modes, simulate_system, ModeSystem, SimulationOptions, Trajectory};
pub use reconstruct::{integrand_modulus, reconstruct_field, reconstruct_scan, ReconstructOptions};
