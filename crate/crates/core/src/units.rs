//! Unit systems for reported inductances.
//!
//! All internal computation uses reduced units in which `mu0 / 4 pi = 1`,
//! i.e. `mu0 = 4 pi`. SI output is a single multiplicative rescale, since
//! `mu0_SI / 4 pi = 1e-7 H/m`.

use crate::real::Real;
use serde::{Deserialize, Serialize};

/// Output unit system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    /// `mu0 / 4 pi = 1`; every golden value in the test suite is reduced.
    #[default]
    Reduced,
    /// `mu0 = 4 pi x 1e-7 H/m`; values are the reduced ones times `1e-7`.
    Si,
}

impl UnitSystem {
    /// Factor converting a reduced-unit inductance into this system.
    #[inline]
    pub fn scale<T: Real>(self) -> T {
        match self {
            UnitSystem::Reduced => T::one(),
            UnitSystem::Si => T::of(1e-7),
        }
    }

    /// `mu0` in reduced units (`4 pi`) times the unit scale.
    #[inline]
    pub fn mu0<T: Real>(self) -> T {
        T::of(4.0) * T::PI() * self.scale()
    }
}
