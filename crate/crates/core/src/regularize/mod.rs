//! The two regularization engines for the self-inductance of a single loop:
//! Hadamard finite-part extraction via epsilon sweeps with counter terms, and
//! analytic continuation in the kernel exponent with pole subtraction.
//! Also: the local chord-ball expansion machinery for residues and the
//! parallel-loop limit.

pub mod fit;

use crate::curve::ParametricLoop;
use crate::error::{Error, Result};
use crate::inductance::{mutual_inductance, InductanceForm};
use crate::quad::pair::{self_strip_multi, z_self_neumann_weber, NeumannWeber, PowerKind};
use crate::quad::{gauss::GaussRule, QuadratureSpec};
use crate::real::Real;
use crate::units::UnitSystem;
use fit::{fit_rms_residual, weighted_lsq};
use serde::{Deserialize, Serialize};

/// Which regularization produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularizationMethod {
    Hadamard,
    Continuation,
    ParallelLimit,
}

/// Functional form of a divergent counter term, as the quantity *added* to
/// the raw integral before taking the limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CounterTermKind {
    /// `coefficient * ln(x)` (x = eps or delta).
    LogEps,
    /// `coefficient / x`.
    InvEps,
    /// `coefficient / (z + 1)`.
    PoleAtMinusOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterTerm<T> {
    pub kind: CounterTermKind,
    pub coefficient: T,
}

impl<T: Real> CounterTerm<T> {
    /// Value of the counter term at schedule point `x`.
    pub fn value_at(&self, x: T) -> T {
        match self.kind {
            CounterTermKind::LogEps => self.coefficient * x.ln(),
            CounterTermKind::InvEps => self.coefficient / x,
            CounterTermKind::PoleAtMinusOne => self.coefficient / (x + T::one()),
        }
    }
}

/// Coefficients recovered by the extrapolation fit; fields are populated as
/// applicable to the model used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitCoefficients<T> {
    /// Constant term: the regularized value before unit scaling.
    pub c0: T,
    /// Free-fit log coefficient (diagnostic; the returned value pins it).
    pub c_log: Option<T>,
    pub c1: Option<T>,
    pub c2: Option<T>,
    pub c4: Option<T>,
}

/// A regularized value plus its counter-term ledger, sample schedule, fit
/// coefficients and error estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularizationResult<T> {
    pub value: T,
    pub method: RegularizationMethod,
    /// `(eps | delta | z, raw integral)` pairs actually computed.
    pub schedule: Vec<(T, T)>,
    pub counter_terms: Vec<CounterTerm<T>>,
    pub fit: FitCoefficients<T>,
    pub error_estimate: T,
    /// For the parallel-loop limit: the implied self-inductance
    /// `limit - (log 2) mu0 L / 2 pi`.
    pub implied_self_inductance: Option<T>,
}

impl<T: Real> RegularizationResult<T> {
    /// Rescales every linear quantity (unit conversion).
    fn scaled(mut self, f: T) -> Self {
        self.value = self.value * f;
        for (_, raw) in self.schedule.iter_mut() {
            *raw = *raw * f;
        }
        for ct in self.counter_terms.iter_mut() {
            ct.coefficient = ct.coefficient * f;
        }
        self.fit.c0 = self.fit.c0 * f;
        self.fit.c_log = self.fit.c_log.map(|v| v * f);
        self.fit.c1 = self.fit.c1.map(|v| v * f);
        self.fit.c2 = self.fit.c2.map(|v| v * f);
        self.fit.c4 = self.fit.c4.map(|v| v * f);
        self.error_estimate = self.error_estimate * f;
        self.implied_self_inductance = self.implied_self_inductance.map(|v| v * f);
        self
    }
}

/// One sample of the holomorphic energy `F(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZEnergySample<T> {
    pub z: T,
    pub value: T,
}

/// Geometric epsilon schedule `eps_max / 2^k`, `k = 0..5`, with
/// `eps_max = min(L/20, half the self-separation scale, 1/(2 kappa_max))`.
/// For the unit circle this reduces to the plain `L * 2^-k / 20`.
pub fn default_eps_schedule<T: Real>(lp: &ParametricLoop<T>) -> Vec<T> {
    let l = lp.total_arclength();
    let (_, kappa_max) = lp.curvature_range();
    let mut eps_max = l / T::of(20.0);
    eps_max = eps_max.min(T::of(0.5) * lp.min_self_separation());
    if kappa_max > T::zero() {
        eps_max = eps_max.min(T::of(0.5) / kappa_max);
    }
    (0..6).map(|k| eps_max / T::of_usize(1 << k)).collect()
}

/// Default continuation schedule `z = -1 + 2^-k`, `k = 1..6`.
pub fn default_z_schedule<T: Real>() -> Vec<T> {
    (1..=6)
        .map(|k| -T::one() + T::of_usize(1 << k).recip())
        .collect()
}

/// Geometric offset schedule within the validity bound of `offset_curve`.
/// Eight points: the parallel-limit remainder carries `delta ln delta`
/// terms, so the extrapolation benefits from a deeper schedule.
pub fn default_delta_schedule<T: Real>(lp: &ParametricLoop<T>) -> Vec<T> {
    let l = lp.total_arclength();
    let (_, kappa_max) = lp.curvature_range();
    let mut bound = T::of(0.5) * lp.min_self_separation();
    if kappa_max > T::zero() {
        bound = bound.min(kappa_max.recip());
    }
    let delta_max = (l / T::of(20.0)).min(T::of(0.5) * bound);
    (0..8).map(|k| delta_max / T::of_usize(1 << k)).collect()
}

fn validate_schedule<T: Real>(schedule: &[T], upper: T, what: &str) -> Result<()> {
    if schedule.len() < 4 {
        return Err(Error::Fit(format!(
            "{what} schedule needs at least 4 points, got {}",
            schedule.len()
        )));
    }
    for pair in schedule.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(Error::Config(format!("{what} schedule must strictly decrease")));
        }
    }
    for &x in schedule {
        if !(x > T::zero()) {
            return Err(Error::Config(format!("{what} schedule values must be positive")));
        }
        if x > upper {
            return Err(Error::Config(format!(
                "{what} value {x} above the allowed bound {upper}"
            )));
        }
    }
    Ok(())
}

/// Hadamard-regularized self-inductance: sweeps the strip-excluded integral
/// over the epsilon schedule, pins the log counter term to `mu0 L / 2 pi`,
/// and extrapolates the finite part with `eps^2`-type accelerator terms.
///
/// The free-fit log coefficient is returned as a diagnostic; deviating more
/// than 1% from the predicted value is a counter-term mismatch error.
pub fn hadamard_self<T: Real>(
    lp: &ParametricLoop<T>,
    form: InductanceForm,
    eps_schedule: &[T],
    spec: &QuadratureSpec<T>,
    units: UnitSystem,
) -> Result<RegularizationResult<T>> {
    let both = hadamard_self_both(lp, eps_schedule, spec, units)?;
    Ok(match form {
        InductanceForm::Neumann => both.0,
        InductanceForm::Weber => both.1,
    })
}

/// Both kernel forms from a single geometry sweep.
pub fn hadamard_self_both<T: Real>(
    lp: &ParametricLoop<T>,
    eps_schedule: &[T],
    spec: &QuadratureSpec<T>,
    units: UnitSystem,
) -> Result<(RegularizationResult<T>, RegularizationResult<T>)> {
    spec.validate()?;
    let l = lp.total_arclength();
    validate_schedule(eps_schedule, l / T::of(10.0), "epsilon")?;
    let mut raw = Vec::with_capacity(eps_schedule.len());
    for &eps in eps_schedule {
        raw.push(self_strip_multi(
            lp,
            eps,
            spec,
            &NeumannWeber {
                power: PowerKind::InvDist,
            },
        )?);
    }
    let neumann: Vec<(T, T)> = eps_schedule.iter().copied().zip(raw.iter().map(|r| r.0)).collect();
    let weber: Vec<(T, T)> = eps_schedule.iter().copied().zip(raw.iter().map(|r| r.1)).collect();
    let rn = hadamard_fit(lp, &neumann)?.scaled(units.scale());
    let rw = hadamard_fit(lp, &weber)?.scaled(units.scale());
    Ok((rn, rw))
}

/// Fit `I(eps) = c0 + (mu0 L / 2 pi) ln(1/eps) + ...` with the log
/// coefficient pinned; closed curves carry even accelerator terms only,
/// open curves gain odd end-effect terms.
fn hadamard_fit<T: Real>(
    lp: &ParametricLoop<T>,
    schedule: &[(T, T)],
) -> Result<RegularizationResult<T>> {
    let l = lp.total_arclength();
    let c_log_predicted = T::of(2.0) * l;
    let closed = lp.is_closed();
    let n = schedule.len();
    let mut rows_pinned = Vec::with_capacity(n);
    let mut rows_free = Vec::with_capacity(n);
    let mut y_pinned = Vec::with_capacity(n);
    let mut y_free = Vec::with_capacity(n);
    let mut w_pinned = Vec::with_capacity(n);
    let mut w_free = Vec::with_capacity(n);
    for &(eps, raw) in schedule {
        let log_term = (eps.recip()).ln();
        let basis: Vec<T> = if closed {
            vec![T::one(), eps * eps, eps * eps * eps * eps]
        } else {
            vec![T::one(), eps, eps * eps, eps * eps * eps]
        };
        y_pinned.push(raw - c_log_predicted * log_term);
        rows_pinned.push(basis.clone());
        let mut free_basis = vec![basis[0], log_term];
        free_basis.extend_from_slice(&basis[1..]);
        rows_free.push(free_basis);
        y_free.push(raw);
        w_pinned.push((eps * eps).recip());
        w_free.push(eps.recip());
    }
    let pinned = weighted_lsq(&rows_pinned, &y_pinned, &w_pinned)?;
    let free = weighted_lsq(&rows_free, &y_free, &w_free)?;
    let fitted_log = free[1];
    let deviation = ((fitted_log - c_log_predicted) / c_log_predicted).abs();
    if deviation > T::of(0.01) {
        return Err(Error::CounterTermMismatch {
            fitted: fitted_log.to_f64().unwrap_or(f64::NAN),
            predicted: c_log_predicted.to_f64().unwrap_or(f64::NAN),
            deviation: deviation.to_f64().unwrap_or(f64::NAN),
        });
    }
    let rms = fit_rms_residual(&rows_pinned, &y_pinned, &w_pinned, &pinned);
    let cross_check = (free[0] - pinned[0]).abs();
    let fit = if closed {
        FitCoefficients {
            c0: pinned[0],
            c_log: Some(fitted_log),
            c1: None,
            c2: Some(pinned[1]),
            c4: Some(pinned[2]),
        }
    } else {
        FitCoefficients {
            c0: pinned[0],
            c_log: Some(fitted_log),
            c1: Some(pinned[1]),
            c2: Some(pinned[2]),
            c4: None,
        }
    };
    Ok(RegularizationResult {
        value: pinned[0],
        method: RegularizationMethod::Hadamard,
        schedule: schedule.to_vec(),
        counter_terms: vec![CounterTerm {
            kind: CounterTermKind::LogEps,
            coefficient: c_log_predicted,
        }],
        fit,
        error_estimate: rms.max(cross_check),
        implied_self_inductance: None,
    })
}

/// One sample of `F(z) = (mu0 / 4 pi) iint r^z (kernel numerator)`, computed
/// by direct double integration (valid for `z > -1`).
pub fn z_energy<T: Real>(
    lp: &ParametricLoop<T>,
    form: InductanceForm,
    z: T,
    spec: &QuadratureSpec<T>,
) -> Result<ZEnergySample<T>> {
    spec.validate()?;
    if !(z > -T::one()) {
        return Err(Error::Domain(format!(
            "z = {z} outside the direct-integration domain z > -1"
        )));
    }
    if !lp.is_closed() {
        return Err(Error::Domain("z-energy requires a closed loop".into()));
    }
    let pair = z_self_neumann_weber(lp, z, spec)?;
    Ok(ZEnergySample {
        z,
        value: form.pick(pair),
    })
}

/// Regularization by analytic continuation: samples `F(z)` on the schedule,
/// subtracts the simple pole `mu0 L / (2 pi (z + 1))`, and extrapolates the
/// analytic remainder to `z = -1` by polynomial fit in `(z + 1)`.
pub fn continuation_self<T: Real>(
    lp: &ParametricLoop<T>,
    form: InductanceForm,
    z_schedule: &[T],
    spec: &QuadratureSpec<T>,
    units: UnitSystem,
) -> Result<RegularizationResult<T>> {
    spec.validate()?;
    if !lp.is_closed() {
        return Err(Error::Domain(
            "analytic continuation requires a closed loop".into(),
        ));
    }
    if z_schedule.len() < 4 {
        return Err(Error::Fit(format!(
            "z schedule needs at least 4 points, got {}",
            z_schedule.len()
        )));
    }
    for pair in z_schedule.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(Error::Config("z schedule must strictly decrease toward -1".into()));
        }
    }
    for &z in z_schedule {
        if !(z > -T::one()) || z > T::of(-0.4) {
            return Err(Error::Config(format!(
                "z value {z} outside the sampling window (-1, -0.4]"
            )));
        }
    }
    let l = lp.total_arclength();
    let pole_coeff = T::of(2.0) * l;
    let mut schedule = Vec::with_capacity(z_schedule.len());
    let mut xs = Vec::with_capacity(z_schedule.len());
    let mut gs = Vec::with_capacity(z_schedule.len());
    for &z in z_schedule {
        let f = form.pick(z_self_neumann_weber(lp, z, spec)?);
        schedule.push((z, f));
        xs.push(z + T::one());
        gs.push(f - pole_coeff / (z + T::one()));
    }
    // Quadratic fit in (z + 1); the remainder is analytic near -1 since the
    // next pole sits at z = -3. A cubic fit provides the error estimate.
    let rows2: Vec<Vec<T>> = xs.iter().map(|&x| vec![T::one(), x, x * x]).collect();
    let rows3: Vec<Vec<T>> = xs
        .iter()
        .map(|&x| vec![T::one(), x, x * x, x * x * x])
        .collect();
    let w: Vec<T> = xs.iter().map(|&x| x.recip()).collect();
    let quad = weighted_lsq(&rows2, &gs, &w)?;
    let cubic = weighted_lsq(&rows3, &gs, &w)?;
    let rms = fit_rms_residual(&rows2, &gs, &w, &quad);
    let spread = (quad[0] - cubic[0]).abs();
    if rms > T::of(1e-3) * (T::one() + quad[0].abs()) {
        return Err(Error::Fit(format!(
            "continuation fit residual {rms} too large"
        )));
    }
    let result = RegularizationResult {
        value: cubic[0],
        method: RegularizationMethod::Continuation,
        schedule,
        counter_terms: vec![CounterTerm {
            kind: CounterTermKind::PoleAtMinusOne,
            coefficient: -pole_coeff,
        }],
        fit: FitCoefficients {
            c0: cubic[0],
            c_log: None,
            c1: Some(cubic[1]),
            c2: Some(cubic[2]),
            c4: None,
        },
        error_estimate: rms.max(spread),
        implied_self_inductance: None,
    };
    Ok(result.scaled(units.scale()))
}

/// Tangent-correlation chord-ball integral
/// `psi(t) = integral_{curve within chord distance t} rho(x1, x2) dx2`.
fn psi_chord_ball<T: Real>(
    lp: &ParametricLoop<T>,
    form: InductanceForm,
    s1: T,
    t: T,
) -> Result<T> {
    let x_plus = chord_crossing(lp, s1, t, true)?;
    let x_minus = chord_crossing(lp, s1, t, false)?;
    if !lp.is_closed() {
        let l = lp.total_arclength();
        if s1 - x_minus < T::zero() || s1 + x_plus > l {
            return Err(Error::Locality(
                "chord ball reaches past an endpoint of the open curve".into(),
            ));
        }
    }
    let (p1, t1) = lp.point_tangent(s1);
    let rule = GaussRule::new(16);
    let a = s1 - x_minus;
    let b = s1 + x_plus;
    let panels = 16usize;
    let h = (b - a) / T::of_usize(panels);
    let mut acc = T::zero();
    for i in 0..panels {
        let lo = a + h * T::of_usize(i);
        let hi = a + h * T::of_usize(i + 1);
        acc += rule.integrate(lo, hi, |s2| {
            let (p2, t2) = lp.point_tangent(s2);
            match form {
                InductanceForm::Neumann => t1.dot(t2),
                InductanceForm::Weber => {
                    let r = p2 - p1;
                    let d2 = r.norm_sq();
                    if d2 > T::zero() {
                        r.dot(t1) * r.dot(t2) / d2
                    } else {
                        T::one()
                    }
                }
            }
        });
    }
    Ok(acc)
}

/// Arc offset `x > 0` with `|gamma(s1 +/- x) - gamma(s1)| = t`, found by
/// bisection seeded by the chord-to-arc estimate `t (1 + kappa^2 t^2 / 24)`.
fn chord_crossing<T: Real>(lp: &ParametricLoop<T>, s1: T, t: T, forward: bool) -> Result<T> {
    let p1 = lp.point(s1);
    let chord = |x: T| {
        let s2 = if forward { s1 + x } else { s1 - x };
        p1.distance(lp.point(s2)) - t
    };
    let kappa = lp
        .eval_by_arclength(s1)
        .map(|f| f.curvature)
        .unwrap_or(T::zero());
    let seed = t * (T::one() + kappa * kappa * t * t / T::of(24.0));
    let mut lo = t * (T::one() - T::of(1e-12));
    let mut hi = seed * (T::one() + T::of(1e-6)) + t * T::of(1e-9);
    let mut expand = 0;
    while chord(hi) < T::zero() {
        hi = hi * T::of(1.5);
        expand += 1;
        if expand > 60 {
            return Err(Error::Locality(format!(
                "no chord crossing found near t = {t}"
            )));
        }
    }
    if chord(lo) > T::zero() {
        lo = t * T::of(0.5);
    }
    for _ in 0..100 {
        let mid = T::of(0.5) * (lo + hi);
        if chord(mid) >= T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= t * T::of(4.0) * T::epsilon() {
            break;
        }
    }
    Ok(T::of(0.5) * (lo + hi))
}

/// `phi(t) = psi'(t)` for the Neumann numerator, via centered finite
/// differences of the chord-ball integral. `phi(0+) = 2`.
pub fn phi_local<T: Real>(lp: &ParametricLoop<T>, s1: T, t: T) -> Result<T> {
    phi_local_form(lp, InductanceForm::Neumann, s1, t)
}

/// `phi(t)` for either kernel numerator.
pub fn phi_local_form<T: Real>(
    lp: &ParametricLoop<T>,
    form: InductanceForm,
    s1: T,
    t: T,
) -> Result<T> {
    let locality = T::of(0.5) * lp.min_self_separation();
    if !(t > T::zero()) || t >= locality {
        return Err(Error::Locality(format!(
            "chord radius {t} outside (0, {locality})"
        )));
    }
    let dt = (t * T::of(1e-3)).min((locality - t) * T::of(0.5));
    let up = psi_chord_ball(lp, form, s1, t + dt)?;
    let dn = psi_chord_ball(lp, form, s1, t - dt)?;
    Ok((up - dn) / (T::of(2.0) * dt))
}

/// Default chord-radius window for the residue fits, scaled so that
/// `kappa * t` stays within about [0.02, 0.2].
pub fn default_phi_fit_range<T: Real>(lp: &ParametricLoop<T>) -> (T, T) {
    let l = lp.total_arclength();
    let (_, kappa_max) = lp.curvature_range();
    let kappa_base = kappa_max.max((T::of(0.1) * l).recip());
    let locality = T::of(0.5) * lp.min_self_separation();
    let hi = (T::of(0.2) / kappa_base).min(locality * T::of(0.9));
    (hi * T::of(0.1), hi)
}

/// Residues of the meromorphic continuation from the local expansion of
/// `phi`: fits `phi(t) ~ a + b t^2` at each base point and integrates.
/// Returns `(res at z = -1, res at z = -3)` in reduced units; the expected
/// values are `mu0 L / 2 pi` and the curvature-squared integrals with
/// coefficients `-3/(16 pi) mu0` (Neumann) and `-1/(16 pi) mu0` (Weber).
pub fn residue_estimates<T: Real>(
    lp: &ParametricLoop<T>,
    form: InductanceForm,
    fit_range: (T, T),
) -> Result<(T, T)> {
    if !lp.is_closed() {
        return Err(Error::Domain("residue estimates require a closed loop".into()));
    }
    let (t_lo, t_hi) = fit_range;
    if !(t_lo > T::zero()) || !(t_hi > t_lo) {
        return Err(Error::ExpansionRange(format!(
            "invalid fit range ({t_lo}, {t_hi})"
        )));
    }
    let locality = T::of(0.5) * lp.min_self_separation();
    if t_hi >= locality {
        return Err(Error::ExpansionRange(format!(
            "fit range upper end {t_hi} reaches the locality radius {locality}"
        )));
    }
    let l = lp.total_arclength();
    let n_base = 64usize;
    let n_t = 8usize;
    let mut a_sum = T::zero();
    let mut b_sum = T::zero();
    for i in 0..n_base {
        let s1 = l * T::of_usize(i) / T::of_usize(n_base);
        let mut rows = Vec::with_capacity(n_t);
        let mut ys = Vec::with_capacity(n_t);
        let w = vec![T::one(); n_t];
        for j in 0..n_t {
            let t = t_lo + (t_hi - t_lo) * T::of_usize(j) / T::of_usize(n_t - 1);
            let phi = phi_local_form(lp, form, s1, t)?;
            rows.push(vec![T::one(), t * t]);
            ys.push(phi);
        }
        let c = weighted_lsq(&rows, &ys, &w)?;
        let rms = fit_rms_residual(&rows, &ys, &w, &c);
        if rms > T::of(2e-3) * c[0].abs().max(T::one()) {
            return Err(Error::ExpansionRange(format!(
                "phi expansion fit residual {rms} too large at s1 = {s1}"
            )));
        }
        a_sum += c[0];
        b_sum += c[1];
    }
    // Periodic trapezoid over equally spaced arc samples.
    let measure = l / T::of_usize(n_base);
    Ok((a_sum * measure, b_sum * measure))
}

/// Theorem-2 route: mutual inductance to the delta-parallel curve with the
/// `(mu0 L / 2 pi) log delta` counter term, extrapolated to `delta = 0`.
/// The limit equals `H_N + (log 2) mu0 L / 2 pi`; the implied self-inductance
/// is reported alongside.
pub fn parallel_limit<T: Real>(
    lp: &ParametricLoop<T>,
    delta_schedule: &[T],
    spec: &QuadratureSpec<T>,
    units: UnitSystem,
) -> Result<RegularizationResult<T>> {
    spec.validate()?;
    if !lp.is_closed() {
        return Err(Error::UnsupportedCurve(
            "parallel-limit regularization requires a closed curve".into(),
        ));
    }
    let l = lp.total_arclength();
    validate_schedule(delta_schedule, l, "delta")?;
    let c_log = T::of(2.0) * l;
    // The counter-termed mutual inductance approaches its limit with
    // delta ln(delta) corrections (measured against the coaxial-circle
    // closed form), so a pure constant-plus-linear model underfits badly.
    let n_basis = delta_schedule.len().saturating_sub(3).clamp(3, 5);
    let mut schedule = Vec::with_capacity(delta_schedule.len());
    let mut rows = Vec::with_capacity(delta_schedule.len());
    let mut ys = Vec::with_capacity(delta_schedule.len());
    let mut ws = Vec::with_capacity(delta_schedule.len());
    for &delta in delta_schedule {
        let offset = lp.offset_curve(delta)?;
        let m = mutual_inductance(lp, &offset, InductanceForm::Neumann, UnitSystem::Reduced, spec)?;
        schedule.push((delta, m));
        ys.push(m + c_log * delta.ln());
        let dl = delta * delta.ln();
        let mut row = vec![T::one(), dl, delta, delta * dl, delta * delta];
        row.truncate(n_basis);
        rows.push(row);
        ws.push((delta * delta).recip());
    }
    let coef = weighted_lsq(&rows, &ys, &ws)?;
    let rms = fit_rms_residual(&rows, &ys, &ws, &coef);
    let limit = coef[0];
    let implied = limit - T::of(2.0).ln() * c_log;
    let result = RegularizationResult {
        value: limit,
        method: RegularizationMethod::ParallelLimit,
        schedule,
        counter_terms: vec![CounterTerm {
            kind: CounterTermKind::LogEps,
            coefficient: c_log,
        }],
        fit: FitCoefficients {
            c0: limit,
            c_log: None,
            c1: Some(coef[1]),
            c2: coef.get(2).copied(),
            c4: coef.get(4).copied(),
        },
        error_estimate: rms,
        implied_self_inductance: Some(implied),
    };
    Ok(result.scaled(units.scale()))
}
