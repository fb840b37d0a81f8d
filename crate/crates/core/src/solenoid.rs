//! Solenoid scaling: helix self-inductance per squared winding density, its
//! closed-form limit in complete elliptic integrals, the cylinder-surface
//! oracle integral, and the long-cylinder asymptotics.

use crate::curve::ParametricLoop;
use crate::error::{Error, Result};
use crate::inductance::InductanceForm;
use crate::quad::elliptic::{elliptic_e, elliptic_k};
use crate::quad::gauss::GaussRule;
use crate::quad::QuadratureSpec;
use crate::real::Real;
use crate::regularize::{default_eps_schedule, hadamard_self};
use crate::units::UnitSystem;
use serde::{Deserialize, Serialize};

/// A coil winding a cylinder of radius `r` and length `l` with `n` turns per
/// unit length; `n * l` must be a whole number of turns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolenoidSpec<T> {
    pub r: T,
    pub l: T,
    pub n: T,
}

impl<T: Real> SolenoidSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.r > T::zero()) || !(self.l > T::zero()) || !(self.n > T::zero()) {
            return Err(Error::Config("solenoid needs positive r, l, n".into()));
        }
        let turns = self.n * self.l;
        if (turns - turns.round()).abs() > T::of(1e-9) * turns.max(T::one()) {
            return Err(Error::Config(format!(
                "n * l = {turns} must be a whole number of turns"
            )));
        }
        Ok(())
    }
}

/// The open helix realizing the solenoid: total arc length
/// `l * sqrt((2 pi n r)^2 + 1)`.
pub fn helix_curve<T: Real>(spec: &SolenoidSpec<T>) -> Result<ParametricLoop<T>> {
    spec.validate()?;
    ParametricLoop::helix(spec.r, spec.l, spec.n)
}

/// Closed-form `n -> infinity` limit of `H(helix) / n^2`:
///
/// ```text
/// L(r,l) = (8 mu0 / 3) [ -r^3 + (1/8)( -l (l^2 - 4 r^2) E(-4r^2/l^2)
///                                     + l (l^2 + 4 r^2) K(-4r^2/l^2) ) ]
/// ```
pub fn closed_form_inductance<T: Real>(r: T, l: T, units: UnitSystem) -> Result<T> {
    if !(r > T::zero()) || !(l > T::zero()) {
        return Err(Error::Config("closed-form limit needs r, l > 0".into()));
    }
    let m = -(T::of(4.0) * r * r) / (l * l);
    let e = elliptic_e(m)?;
    let k = elliptic_k(m)?;
    let four_r2 = T::of(4.0) * r * r;
    let inner = T::of(0.125) * (-(l * (l * l - four_r2) * e) + l * (l * l + four_r2) * k);
    let mu0 = units.mu0::<T>();
    Ok(T::of(8.0 / 3.0) * mu0 * (-(r * r * r) + inner))
}

/// Direct numerical evaluation of the cylinder-surface integral
///
/// ```text
/// 2 mu0 r^3 int_0^{pi/2} int_0^{l/r} int_0^{l/r}
///     (1 - 2 sin^2 t) / sqrt(4 sin^2 t + (z1 - z2)^2) dz1 dz2 dt
/// ```
///
/// The inner square is reduced by convolution symmetry,
/// `iint F(z1 - z2) = 2 int_0^a (a - u) F(u) du` with `a = l/r`, which has
/// the elementary antiderivative `a asinh(a/b) - sqrt(a^2+b^2) + b` for
/// `b = 2 sin t`; the remaining 1-D integrand carries an integrable log
/// singularity at `t = 0` handled by geometrically graded panels.
pub fn cylinder_surface_oracle<T: Real>(
    r: T,
    l: T,
    units: UnitSystem,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    spec.validate()?;
    if !(r > T::zero()) || !(l >= T::zero()) {
        return Err(Error::Config("oracle needs r > 0, l >= 0".into()));
    }
    if l == T::zero() {
        return Ok(T::zero());
    }
    let a = l / r;
    let rule = GaussRule::new(spec.panel_order.max(16));
    let grade = spec.refinement_near_strip.max(T::of(1.5));
    let floor = T::of(1e-16);
    // Geometric layers from the log singularity, then uniform panels.
    let mut panels: Vec<(T, T)> = Vec::new();
    let bulk = T::FRAC_PI_2() / T::of(32.0);
    let mut x = floor;
    loop {
        let next = (x * grade).min(T::FRAC_PI_2());
        if next - x >= bulk || next >= T::FRAC_PI_2() {
            break;
        }
        panels.push((x, next));
        x = next;
    }
    let n_bulk = ((T::FRAC_PI_2() - x) / bulk).ceil().to_usize().unwrap_or(1).max(1);
    let h = (T::FRAC_PI_2() - x) / T::of_usize(n_bulk);
    for i in 0..n_bulk {
        panels.push((x + h * T::of_usize(i), x + h * T::of_usize(i + 1)));
    }
    let mut acc = T::zero();
    for (lo, hi) in panels {
        acc += rule.integrate(lo, hi, |theta| {
            let st = theta.sin();
            let b = T::of(2.0) * st;
            let hyp = (a * a + b * b).sqrt();
            let inner = T::of(2.0) * (a * (a / b).asinh() - hyp + b);
            (T::one() - T::of(2.0) * st * st) * inner
        });
    }
    let mu0 = units.mu0::<T>();
    Ok(T::of(2.0) * mu0 * r * r * r * acc)
}

/// Long-cylinder asymptotics `mu0 (pi r^2 l - 8 r^3 / 3)`.
pub fn asymptotic_inductance<T: Real>(r: T, l: T, units: UnitSystem) -> T {
    let mu0 = units.mu0::<T>();
    mu0 * (T::PI() * r * r * l - T::of(8.0 / 3.0) * r * r * r)
}

/// Regularized helix self-inductance divided by `n^2` for each winding
/// density in `n_list`; the rows converge to [`closed_form_inductance`].
pub fn convergence_study<T: Real>(
    r: T,
    l: T,
    n_list: &[T],
    form: InductanceForm,
    spec: &QuadratureSpec<T>,
) -> Result<Vec<(T, T)>> {
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let sol = SolenoidSpec { r, l, n };
        let helix = helix_curve(&sol)?;
        let schedule = default_eps_schedule(&helix);
        let h = hadamard_self(&helix, form, &schedule, spec, UnitSystem::Reduced)?;
        rows.push((n, h.value / (n * n)));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helix_lengths() {
        let h1 = helix_curve(&SolenoidSpec {
            r: 1.0,
            l: 1.0,
            n: 1.0,
        })
        .unwrap();
        let want = (4.0 * std::f64::consts::PI.powi(2) + 1.0).sqrt();
        assert!((h1.total_arclength() - want).abs() < 1e-9);
    }
}
