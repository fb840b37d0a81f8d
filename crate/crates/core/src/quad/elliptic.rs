//! Complete elliptic integrals in the parameter convention
//!
//! ```text
//! K(m) = integral_0^{pi/2} dt / sqrt(1 - m sin^2 t)
//! E(m) = integral_0^{pi/2} sqrt(1 - m sin^2 t) dt
//! ```
//!
//! The parameter `m` sits inside the square root directly (classical tables
//! use the modulus `k` with `m = k^2`). Negative parameters are allowed and
//! are exercised heavily by the solenoid limit, which needs `m = -4 r^2 / l^2`.
//!
//! Two routes are provided: an arithmetic-geometric-mean iteration (fast
//! path) and direct quadrature of the defining integral (reference); tests
//! cross-check them across positive and negative parameters.

use super::{integrate_1d, QuadratureSpec};
use crate::error::{Error, Result};
use crate::real::Real;

/// Complete elliptic integral of the first kind, parameter convention.
///
/// Valid for `m < 1`; `K` diverges as `m -> 1`.
pub fn elliptic_k<T: Real>(m: T) -> Result<T> {
    if !(m < T::one()) {
        return Err(Error::Domain(format!("elliptic_k requires m < 1, got {m}")));
    }
    let (agm, _) = agm_with_sum(T::one(), (T::one() - m).sqrt(), m);
    Ok(T::FRAC_PI_2() / agm)
}

/// Complete elliptic integral of the second kind, parameter convention.
///
/// Valid for `m <= 1`, with `E(1) = 1`.
pub fn elliptic_e<T: Real>(m: T) -> Result<T> {
    if m > T::one() {
        return Err(Error::Domain(format!("elliptic_e requires m <= 1, got {m}")));
    }
    if m == T::one() {
        return Ok(T::one());
    }
    let (agm, c_sum) = agm_with_sum(T::one(), (T::one() - m).sqrt(), m);
    let k = T::FRAC_PI_2() / agm;
    Ok(k * (T::one() - c_sum))
}

/// AGM of `(a0, b0)` together with `sum_j 2^{j-1} c_j^2`, where `c_0^2 = m`
/// and `c_j = (a_{j-1} - b_{j-1}) / 2`. The sum feeds the second-kind
/// integral; the j = 0 term uses the parameter directly so that negative
/// parameters need no complex arithmetic.
fn agm_with_sum<T: Real>(mut a: T, mut b: T, m: T) -> (T, T) {
    let mut c_sum = T::of(0.5) * m;
    let mut pow2 = T::one();
    for _ in 0..64 {
        let c = T::of(0.5) * (a - b);
        let an = T::of(0.5) * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
        c_sum += pow2 * c * c;
        pow2 = pow2 * T::of(2.0);
        if c.abs() <= a.abs() * T::epsilon() {
            break;
        }
    }
    (a, c_sum)
}

/// Reference evaluation of `K(m)` by quadrature of the defining integral.
pub fn elliptic_k_quadrature<T: Real>(m: T, spec: &QuadratureSpec<T>) -> Result<T> {
    if !(m < T::one()) {
        return Err(Error::Domain(format!("elliptic_k requires m < 1, got {m}")));
    }
    integrate_1d(
        move |t: T| (T::one() - m * t.sin() * t.sin()).sqrt().recip(),
        T::zero(),
        T::FRAC_PI_2(),
        spec,
    )
}

/// Reference evaluation of `E(m)` by quadrature of the defining integral.
pub fn elliptic_e_quadrature<T: Real>(m: T, spec: &QuadratureSpec<T>) -> Result<T> {
    if m > T::one() {
        return Err(Error::Domain(format!("elliptic_e requires m <= 1, got {m}")));
    }
    integrate_1d(
        move |t: T| (T::one() - m * t.sin() * t.sin()).sqrt(),
        T::zero(),
        T::FRAC_PI_2(),
        spec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        assert!((elliptic_k(0.0f64).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((elliptic_e(0.0f64).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((elliptic_e(1.0f64).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn k_of_minus_one() {
        // Direct quadrature oracle of the defining integral.
        let spec = QuadratureSpec::<f64>::default();
        let oracle = elliptic_k_quadrature(-1.0, &spec).unwrap();
        let fast = elliptic_k(-1.0f64).unwrap();
        assert!((fast - oracle).abs() < 1e-12);
        assert!((fast - 1.3110287771460599).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(elliptic_k(1.0f64).is_err());
        assert!(elliptic_k(1.5f64).is_err());
        assert!(elliptic_e(1.0f64).is_ok());
        assert!(elliptic_e(1.0001f64).is_err());
    }

    #[test]
    fn agm_matches_quadrature_across_parameters() {
        let spec = QuadratureSpec::<f64>::default();
        for &m in &[-10.0, -4.0, -1.0, -0.5, 0.0, 0.5, 0.9] {
            let k_fast = elliptic_k(m).unwrap();
            let k_ref = elliptic_k_quadrature(m, &spec).unwrap();
            assert!(
                (k_fast - k_ref).abs() <= 1e-10 * k_ref.abs().max(1.0),
                "K({m}): {k_fast} vs {k_ref}"
            );
            let e_fast = elliptic_e(m).unwrap();
            let e_ref = elliptic_e_quadrature(m, &spec).unwrap();
            assert!(
                (e_fast - e_ref).abs() <= 1e-10 * e_ref.abs().max(1.0),
                "E({m}): {e_fast} vs {e_ref}"
            );
        }
    }

    #[test]
    fn scipy_reference_values() {
        // scipy.special.ellipk / ellipe, parameter convention.
        let cases_k: [(f64, f64); 2] = [(0.5, 1.8540746773013719), (0.8, 2.257205326820854)];
        let cases_e: [(f64, f64); 2] = [(0.5, 1.3506438810476755), (0.8, 1.1784899243278386)];
        for (m, v) in cases_k {
            assert!((elliptic_k(m).unwrap() - v).abs() < 5e-14);
        }
        for (m, v) in cases_e {
            assert!((elliptic_e(m).unwrap() - v).abs() < 5e-14);
        }
    }

    #[test]
    fn legendre_relation() {
        // E(m) K(1-m) + E(1-m) K(m) - K(m) K(1-m) = pi/2
        let m = 0.3f64;
        let lhs = elliptic_e(m).unwrap() * elliptic_k(1.0 - m).unwrap()
            + elliptic_e(1.0 - m).unwrap() * elliptic_k(m).unwrap()
            - elliptic_k(m).unwrap() * elliptic_k(1.0 - m).unwrap();
        assert!((lhs - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn f32_smoke() {
        let k = elliptic_k(0.5f32).unwrap();
        assert!((k - 1.8540747).abs() < 1e-5);
    }
}
