//! Inductance functionals: Neumann and Weber mutual inductance of disjoint
//! loops, generalized power-alpha energies, and the regularized power-2
//! self energy.

use crate::curve::{min_pair_distance, ParametricLoop};
use crate::error::{Error, Result};
use crate::quad::pair::{disjoint_pair_multi, self_strip_multi, NeumannWeber, PowerKind};
use crate::quad::QuadratureSpec;
use crate::real::Real;
use crate::regularize::{
    fit::{fit_rms_residual, weighted_lsq},
    CounterTerm, CounterTermKind, FitCoefficients, RegularizationMethod, RegularizationResult,
};
use crate::units::UnitSystem;
use serde::{Deserialize, Serialize};

/// Selects between the Neumann integrand `(dx1 . dx2)/r` and the Weber
/// integrand `(rhat . dx1)(rhat . dx2)/r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum InductanceForm {
    #[default]
    Neumann,
    Weber,
}

impl InductanceForm {
    #[inline]
    pub(crate) fn pick<T>(self, pair: (T, T)) -> T {
        match self {
            InductanceForm::Neumann => pair.0,
            InductanceForm::Weber => pair.1,
        }
    }
}

const PROXIMITY_SAMPLES: usize = 2048;

/// Verifies the two curves are safely disjoint; returns the sampled minimal
/// chord distance.
pub fn proximity_check<T: Real>(a: &ParametricLoop<T>, b: &ParametricLoop<T>) -> Result<T> {
    let threshold = T::of(1e-6) * a.total_arclength().max(b.total_arclength());
    let min_dist = min_pair_distance(a, b, PROXIMITY_SAMPLES);
    if min_dist <= threshold {
        return Err(Error::Proximity {
            min_dist: min_dist.to_f64().unwrap_or(0.0),
            threshold: threshold.to_f64().unwrap_or(0.0),
        });
    }
    Ok(min_dist)
}

/// Mutual inductance of two disjoint loops: `(mu0 / 4 pi) * kernel integral`.
pub fn mutual_inductance<T: Real>(
    a: &ParametricLoop<T>,
    b: &ParametricLoop<T>,
    form: InductanceForm,
    units: UnitSystem,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    spec.validate()?;
    proximity_check(a, b)?;
    let raw = disjoint_pair_multi(
        a,
        b,
        spec,
        &NeumannWeber {
            power: PowerKind::InvDist,
        },
    );
    Ok(form.pick(raw) * units.scale())
}

/// Double integral of the chosen kernel at denominator power `alpha` for a
/// disjoint pair of closed loops. No `mu0 / 4 pi` prefactor.
pub fn power_alpha_energy<T: Real>(
    a: &ParametricLoop<T>,
    b: &ParametricLoop<T>,
    alpha: T,
    form: InductanceForm,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    spec.validate()?;
    if !a.is_closed() || !b.is_closed() {
        return Err(Error::Domain(
            "power-alpha energy requires closed loops".into(),
        ));
    }
    proximity_check(a, b)?;
    let power = if alpha == T::one() {
        PowerKind::InvDist
    } else if alpha == T::of(2.0) {
        PowerKind::InvDistSq
    } else {
        PowerKind::General(alpha)
    };
    let raw = disjoint_pair_multi(a, b, spec, &NeumannWeber { power });
    Ok(form.pick(raw))
}

/// Hadamard finite part of the power-2 self energy
/// `integral integral kernel / r^2` with counter term `2 L / eps`.
///
/// The same counter term applies to both kernel forms: near the diagonal both
/// numerators tend to one, so each integrand behaves like `1/w^2` and the
/// divergent part per base point is exactly `2/eps`. (The finite parts then
/// differ by the factor two of the closed-loop identity.)
pub fn power2_self_regularized<T: Real>(
    lp: &ParametricLoop<T>,
    form: InductanceForm,
    eps_schedule: &[T],
    spec: &QuadratureSpec<T>,
) -> Result<RegularizationResult<T>> {
    spec.validate()?;
    if !lp.is_closed() {
        return Err(Error::Domain(
            "power-2 self regularization requires a closed loop".into(),
        ));
    }
    if eps_schedule.len() < 4 {
        return Err(Error::Fit(format!(
            "epsilon schedule needs at least 4 points, got {}",
            eps_schedule.len()
        )));
    }
    let l = lp.total_arclength();
    let two_l = T::of(2.0) * l;
    let mut schedule = Vec::with_capacity(eps_schedule.len());
    let mut ys = Vec::with_capacity(eps_schedule.len());
    let mut rows = Vec::with_capacity(eps_schedule.len());
    let mut weights = Vec::with_capacity(eps_schedule.len());
    for &eps in eps_schedule {
        if !(eps > T::zero()) {
            return Err(Error::Domain("epsilon values must be positive".into()));
        }
        let raw = form.pick(self_strip_multi(
            lp,
            eps,
            spec,
            &NeumannWeber {
                power: PowerKind::InvDistSq,
            },
        )?);
        schedule.push((eps, raw));
        ys.push(raw - two_l / eps);
        rows.push(vec![T::one(), eps, eps * eps, eps * eps * eps]);
        weights.push((eps * eps).recip());
    }
    let coef = weighted_lsq(&rows, &ys, &weights)?;
    let rms = fit_rms_residual(&rows, &ys, &weights, &coef);
    Ok(RegularizationResult {
        value: coef[0],
        method: RegularizationMethod::Hadamard,
        schedule,
        counter_terms: vec![CounterTerm {
            kind: CounterTermKind::InvEps,
            coefficient: -two_l,
        }],
        fit: FitCoefficients {
            c0: coef[0],
            c_log: None,
            c1: Some(coef[1]),
            c2: Some(coef[2]),
            c4: None,
        },
        error_estimate: rms,
        implied_self_inductance: None,
    })
}
