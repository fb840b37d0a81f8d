//! The curve library: analytic parametrizations with derivatives up to
//! fourth order. All kinds are finite trigonometric expressions, so the
//! derivatives are exact; offset curves derive their higher orders by
//! high-order central differences of the analytic first derivative.

use crate::real::Real;
use crate::vec3::Vec3;

/// One Fourier harmonic of a space curve: `A cos(k u) + B sin(k u)`.
#[derive(Debug, Clone)]
pub struct Harmonic<T> {
    pub k: usize,
    pub cos_coeff: Vec3<T>,
    pub sin_coeff: Vec3<T>,
}

/// Parametrization kinds. `u` always runs over `[0, period)`.
#[derive(Debug, Clone)]
pub enum CurveKind<T> {
    /// `center + radius (cos u e1 + sin u e2)`, period `2 pi`.
    Circle {
        radius: T,
        center: Vec3<T>,
        e1: Vec3<T>,
        e2: Vec3<T>,
    },
    /// `center + (a cos u, b sin u, 0)`, period `2 pi`.
    Ellipse { a: T, b: T, center: Vec3<T> },
    /// Finite Fourier series, period `2 pi`.
    HarmonicKnot {
        constant: Vec3<T>,
        harmonics: Vec<Harmonic<T>>,
    },
    /// `(r cos(2 pi n u), r sin(2 pi n u), u)` for `u` in `[0, length]`, open.
    Helix {
        radius: T,
        length: T,
        turns_per_unit: T,
    },
    /// Parallel curve `base(u) + delta N(u)` along the unit principal normal.
    Offset {
        base: Box<CurveKind<T>>,
        base_period: T,
        delta: T,
    },
    /// Same trace, opposite orientation: `u -> period - u`.
    Reversed { base: Box<CurveKind<T>>, period: T },
}

impl<T: Real> CurveKind<T> {
    /// Position and raw (non-unit) first derivative.
    pub fn eval01(&self, u: T) -> (Vec3<T>, Vec3<T>) {
        match self {
            CurveKind::Circle {
                radius,
                center,
                e1,
                e2,
            } => {
                let (s, c) = u.sin_cos();
                let p = *center + (*e1 * c + *e2 * s) * *radius;
                let d = (*e2 * c - *e1 * s) * *radius;
                (p, d)
            }
            CurveKind::Ellipse { a, b, center } => {
                let (s, c) = u.sin_cos();
                (
                    *center + Vec3::new(*a * c, *b * s, T::zero()),
                    Vec3::new(-*a * s, *b * c, T::zero()),
                )
            }
            CurveKind::HarmonicKnot {
                constant,
                harmonics,
            } => {
                let mut p = *constant;
                let mut d = Vec3::zero();
                for h in harmonics {
                    let kf = T::of_usize(h.k);
                    let (s, c) = (kf * u).sin_cos();
                    p += h.cos_coeff * c + h.sin_coeff * s;
                    d += (h.sin_coeff * c - h.cos_coeff * s) * kf;
                }
                (p, d)
            }
            CurveKind::Helix {
                radius,
                turns_per_unit,
                ..
            } => {
                let w = T::of(2.0) * T::PI() * *turns_per_unit;
                let (s, c) = (w * u).sin_cos();
                (
                    Vec3::new(*radius * c, *radius * s, u),
                    Vec3::new(-*radius * w * s, *radius * w * c, T::one()),
                )
            }
            CurveKind::Offset { base, delta, .. } => {
                let d = base.derivs(u);
                offset_point_and_derivative(&d, *delta)
            }
            CurveKind::Reversed { base, period } => {
                let (p, d) = base.eval01(*period - u);
                (p, -d)
            }
        }
    }

    /// Derivatives of orders 0..=4 at `u`.
    pub fn derivs(&self, u: T) -> [Vec3<T>; 5] {
        match self {
            CurveKind::Circle {
                radius,
                center,
                e1,
                e2,
            } => {
                let (s, c) = u.sin_cos();
                let radial = (*e1 * c + *e2 * s) * *radius;
                let azimuthal = (*e2 * c - *e1 * s) * *radius;
                [*center + radial, azimuthal, -radial, -azimuthal, radial]
            }
            CurveKind::Ellipse { a, b, center } => {
                let (s, c) = u.sin_cos();
                let p = Vec3::new(*a * c, *b * s, T::zero());
                let d = Vec3::new(-*a * s, *b * c, T::zero());
                [*center + p, d, -p, -d, p]
            }
            CurveKind::HarmonicKnot {
                constant,
                harmonics,
            } => {
                let mut out = [*constant, Vec3::zero(), Vec3::zero(), Vec3::zero(), Vec3::zero()];
                for h in harmonics {
                    let kf = T::of_usize(h.k);
                    let (s, c) = (kf * u).sin_cos();
                    let even = h.cos_coeff * c + h.sin_coeff * s;
                    let odd = h.sin_coeff * c - h.cos_coeff * s;
                    let k2 = kf * kf;
                    out[0] += even;
                    out[1] += odd * kf;
                    out[2] += -(even * k2);
                    out[3] += -(odd * k2 * kf);
                    out[4] += even * k2 * k2;
                }
                out
            }
            CurveKind::Helix {
                radius,
                turns_per_unit,
                ..
            } => {
                let w = T::of(2.0) * T::PI() * *turns_per_unit;
                let (s, c) = (w * u).sin_cos();
                let radial = Vec3::new(*radius * c, *radius * s, T::zero());
                let azimuthal = Vec3::new(-*radius * s, *radius * c, T::zero());
                let w2 = w * w;
                [
                    Vec3::new(radial.x, radial.y, u),
                    Vec3::new(azimuthal.x * w, azimuthal.y * w, T::one()),
                    -(radial * w2),
                    -(azimuthal * w2 * w),
                    radial * w2 * w2,
                ]
            }
            CurveKind::Offset { base, base_period, delta } => {
                // Orders 0..1 analytic; 2..4 by five-point central differences
                // of the analytic first derivative.
                let h = *base_period * T::of(1e-3);
                let d0 = base.derivs(u);
                let (p, p1) = offset_point_and_derivative(&d0, *delta);
                let at = |du: T| {
                    let d = base.derivs(u + du);
                    offset_point_and_derivative(&d, *delta).1
                };
                let m2 = at(-(h + h));
                let m1 = at(-h);
                let p1v = p1;
                let q1 = at(h);
                let q2 = at(h + h);
                let inv12h = (T::of(12.0) * h).recip();
                let d2 = (m2 - m1 * T::of(8.0) + q1 * T::of(8.0) - q2) * inv12h;
                let d3 = (-(m2) + m1 * T::of(16.0) - p1v * T::of(30.0) + q1 * T::of(16.0) - q2)
                    * (T::of(12.0) * h * h).recip();
                let d4 = (-(m2 * T::of(0.5)) + m1 - q1 + q2 * T::of(0.5)) * (h * h * h).recip();
                [p, p1, d2, d3, d4]
            }
            CurveKind::Reversed { base, period } => {
                let d = base.derivs(*period - u);
                [d[0], -d[1], d[2], -d[3], d[4]]
            }
        }
    }
}

/// Offset position `p = g + delta N` and its parameter derivative, from base
/// derivatives of order 0..=3. `N` is the unit principal normal `T'/|T'|`.
fn offset_point_and_derivative<T: Real>(d: &[Vec3<T>; 5], delta: T) -> (Vec3<T>, Vec3<T>) {
    let v = d[1].norm();
    let t = d[1] / v;
    let q = t.dot(d[2]);
    let t1 = (d[2] - t * q) / v;
    let w = t1.norm();
    let n = t1 / w;
    let q1 = t1.dot(d[2]) + t.dot(d[3]);
    let t2 = (d[3] - t * q1 - t1 * (T::of(2.0) * q)) / v;
    let n1 = (t2 - n * n.dot(t2)) / w;
    (d[0] + n * delta, d[1] + n1 * delta)
}
