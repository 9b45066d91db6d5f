//! Electromagnetic field of a two-level atom in spontaneous emission.
//!
//! The crate evaluates the single-photon field radiated by a decaying dipole
//! under three atom-field couplings (E.r dipole, A.p dipole, A.p exact),
//! represents the classical and quantum dyadic Green functions as symbolic
//! sums of retarded/instantaneous distributions, and checks the analytic
//! results against a brute-force k-space oracle.
//!
//! All evaluation happens in dimensionless internal units: time in `1/ω₀`,
//! length in `c/ω₀`, fields in `‖μ‖ω₀³/(4πε₀c³)`. See [`Units`] for the
//! conversions used at I/O boundaries.

// Guards are written `!(x > 0.0)` on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atomkit;
pub mod coupling;
pub mod error;
pub mod fields;
pub mod kernels;
pub mod numerics;
pub mod oracle;

pub use atomkit::{
    dipole_moment, polarization_basis, projectors, xi, CVec3, Dyadic3, PhysicalConstants,
    TransitionConfig, TransitionSpec, Units, Vec3,
};
pub use coupling::{coupling, cutoff, excited_amplitude, ground_amplitude, CouplingModel, ModeIndex};
pub use error::{Error, Result};
pub use fields::{
    causality_scan, convolve, excitation_budget, field, midfar_ratio, remanent_energy,
    total_near_field_ap, ConeZone, FieldOptions, FieldScan, LongitudinalSource, ScanSummary,
    SourceSignal, SpacetimeGrid, Zones,
};
pub use kernels::{er_ap_structure_check, kernel, GreenKernel, KernelModel, KernelTerm, Shape};
