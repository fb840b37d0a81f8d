//! Mutual inductance of disjoint space curves and regularized
//! self-inductance of single loops.
//!
//! The crate computes the Neumann and Weber double line integrals for
//! disjoint filament pairs, extracts the finite part of the divergent
//! self-inductance integral by two independent regularizations (an
//! epsilon-sweep with log counter terms and analytic continuation in the
//! kernel exponent), and provides the solenoid limit in complete elliptic
//! integrals.
//!
//! Everything numeric is generic over the scalar type via [`real::Real`];
//! the type aliases below fix `f64`, which the CLI and the test suite use.

pub mod curve;
pub mod error;
pub mod inductance;
pub mod quad;
pub mod real;
pub mod regularize;
pub mod solenoid;
pub mod units;
pub mod vec3;

pub use curve::{min_pair_distance, FrenetData, ParametricLoop};
pub use error::{Error, Result};
pub use inductance::{
    mutual_inductance, power2_self_regularized, power_alpha_energy, InductanceForm,
};
pub use quad::{
    elliptic::{elliptic_e, elliptic_e_quadrature, elliptic_k, elliptic_k_quadrature},
    integrate_1d,
    pair::integrate_pair_minus_strip,
    QuadratureSpec,
};
pub use regularize::{
    continuation_self, default_delta_schedule, default_eps_schedule, default_z_schedule,
    hadamard_self, hadamard_self_both, parallel_limit, phi_local, phi_local_form,
    residue_estimates, z_energy, RegularizationMethod, RegularizationResult, ZEnergySample,
};
pub use solenoid::{
    asymptotic_inductance, closed_form_inductance, convergence_study, cylinder_surface_oracle,
    helix_curve, SolenoidSpec,
};
pub use units::UnitSystem;
pub use vec3::Vec3;

/// `f64` concrete aliases for the generic core types.
pub type Loop64 = ParametricLoop<f64>;
pub type Frenet64 = FrenetData<f64>;
pub type Vec364 = Vec3<f64>;
pub type QuadratureSpec64 = QuadratureSpec<f64>;
pub type RegularizationResult64 = RegularizationResult<f64>;
