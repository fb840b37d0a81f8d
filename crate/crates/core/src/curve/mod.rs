//! Parametric space curves: arc-length reparametrization, Frenet data,
//! curvature integrals, offset (parallel) curves and the curve library
//! (circle, ellipse, harmonic knots, helix).

pub mod kinds;
pub mod spec;
pub mod table;

use crate::error::{Error, Result};
use crate::quad::gauss::GaussRule;
use crate::real::Real;
use crate::vec3::Vec3;
use kinds::CurveKind;
use std::sync::OnceLock;
use table::ArcTable;

/// Full local geometric data at a point of the curve.
#[derive(Debug, Clone, Copy)]
pub struct FrenetData<T> {
    pub point: Vec3<T>,
    pub tangent: Vec3<T>,
    pub normal: Vec3<T>,
    pub binormal: Vec3<T>,
    pub curvature: T,
    pub torsion: T,
    /// Derivative of the curvature with respect to arc length.
    pub curvature_derivative: T,
}

/// A regular space curve with derivatives up to order three and an
/// arc-length reparametrization table. Immutable after construction and safe
/// to share across threads.
#[derive(Debug)]
pub struct ParametricLoop<T> {
    kind: CurveKind<T>,
    closed: bool,
    period: T,
    table: ArcTable<T>,
    kappa_cache: OnceLock<(T, T)>,
    self_sep_cache: OnceLock<T>,
}

impl<T: Real> Clone for ParametricLoop<T> {
    fn clone(&self) -> Self {
        Self {
            kind: self.kind.clone(),
            closed: self.closed,
            period: self.period,
            table: self.table.clone(),
            kappa_cache: OnceLock::new(),
            self_sep_cache: OnceLock::new(),
        }
    }
}

const REGULARITY_SAMPLES: usize = 4096;
const SCAN_SAMPLES: usize = 2048;

impl<T: Real> ParametricLoop<T> {
    fn from_kind(kind: CurveKind<T>, closed: bool, period: T) -> Result<Self> {
        // Regularity scan: the first derivative must never vanish.
        let mut vmax = T::zero();
        let mut vmin = T::infinity();
        for i in 0..REGULARITY_SAMPLES {
            let u = period * T::of_usize(i) / T::of_usize(REGULARITY_SAMPLES);
            let (_, d1) = kind.eval01(u);
            let v = d1.norm();
            vmax = vmax.max(v);
            vmin = vmin.min(v);
        }
        if !(vmax > T::zero()) || vmin < vmax * T::of(1e-9) {
            return Err(Error::DegenerateCurve(
                "first derivative vanishes somewhere on the curve".into(),
            ));
        }
        // Rough length estimate to size the inverse table.
        let l_est = vmax * period;
        let nodes = (T::of(512.0) * l_est)
            .to_usize()
            .unwrap_or(4096)
            .clamp(4096, 65536);
        let kind_for_speed = kind.clone();
        let table = ArcTable::build(
            move |u| kind_for_speed.eval01(u).1.norm(),
            period,
            nodes,
        )?;
        Ok(Self {
            kind,
            closed,
            period,
            table,
            kappa_cache: OnceLock::new(),
            self_sep_cache: OnceLock::new(),
        })
    }

    /// Unit circle scaled to `radius` in the `z = 0` plane.
    pub fn circle(radius: T) -> Result<Self> {
        Self::circle_at(radius, Vec3::zero(), Vec3::new(T::zero(), T::zero(), T::one()))
    }

    /// Circle with an arbitrary center and plane normal.
    pub fn circle_at(radius: T, center: Vec3<T>, normal: Vec3<T>) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(Error::Config("circle radius must be positive".into()));
        }
        let n = normal.norm();
        if !(n > T::zero()) {
            return Err(Error::Config("circle normal must be nonzero".into()));
        }
        let nh = normal / n;
        let e1 = perpendicular_unit(nh);
        let e2 = nh.cross(e1);
        let kind = CurveKind::Circle {
            radius,
            center,
            e1,
            e2,
        };
        Self::from_kind(kind, true, T::of(2.0) * T::PI())
    }

    /// Axis-aligned ellipse in the `z = 0` plane.
    pub fn ellipse(a: T, b: T) -> Result<Self> {
        Self::ellipse_at(a, b, Vec3::zero())
    }

    pub fn ellipse_at(a: T, b: T, center: Vec3<T>) -> Result<Self> {
        if !(a > T::zero()) || !(b > T::zero()) {
            return Err(Error::Config("ellipse semi-axes must be positive".into()));
        }
        Self::from_kind(CurveKind::Ellipse { a, b, center }, true, T::of(2.0) * T::PI())
    }

    /// Closed curve given by a finite Fourier series.
    pub fn harmonic_knot(constant: Vec3<T>, harmonics: Vec<kinds::Harmonic<T>>) -> Result<Self> {
        if harmonics.is_empty() {
            return Err(Error::Config("harmonic knot needs at least one harmonic".into()));
        }
        Self::from_kind(
            CurveKind::HarmonicKnot {
                constant,
                harmonics,
            },
            true,
            T::of(2.0) * T::PI(),
        )
    }

    /// The (2,3) torus trefoil `((2 + cos 3t) cos 2t, (2 + cos 3t) sin 2t, sin 3t)`
    /// written as a finite Fourier series; the generic smooth-loop test case.
    pub fn trefoil() -> Result<Self> {
        let h = |k: usize, cx: f64, sx: f64, cy: f64, sy: f64, cz: f64, sz: f64| kinds::Harmonic {
            k,
            cos_coeff: Vec3::of(cx, cy, cz),
            sin_coeff: Vec3::of(sx, sy, sz),
        };
        Self::harmonic_knot(
            Vec3::zero(),
            vec![
                h(1, 0.5, 0.0, 0.0, -0.5, 0.0, 0.0),
                h(2, 2.0, 0.0, 0.0, 2.0, 0.0, 0.0),
                h(3, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0),
                h(5, 0.5, 0.0, 0.0, 0.5, 0.0, 0.0),
            ],
        )
    }

    /// Open helix `(r cos(2 pi n u), r sin(2 pi n u), u)` over height `length`.
    /// `radius = 0` degenerates to a straight segment, which stays regular.
    pub fn helix(radius: T, length: T, turns_per_unit: T) -> Result<Self> {
        if !(length > T::zero()) || radius < T::zero() || turns_per_unit < T::zero() {
            return Err(Error::Config("helix needs length > 0 and radius, turns >= 0".into()));
        }
        Self::from_kind(
            CurveKind::Helix {
                radius,
                length,
                turns_per_unit,
            },
            false,
            length,
        )
    }

    /// Same trace with the opposite orientation.
    pub fn reversed(&self) -> Result<Self> {
        let kind = match &self.kind {
            CurveKind::Reversed { base, .. } => (**base).clone(),
            other => CurveKind::Reversed {
                base: Box::new(other.clone()),
                period: self.period,
            },
        };
        Self::from_kind(kind, self.closed, self.period)
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn period(&self) -> T {
        self.period
    }

    /// Total arc length.
    pub fn total_arclength(&self) -> T {
        self.table.total_length
    }

    /// Short name of the parametrization kind.
    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            CurveKind::Circle { .. } => "circle",
            CurveKind::Ellipse { .. } => "ellipse",
            CurveKind::HarmonicKnot { .. } => "harmonic-knot",
            CurveKind::Helix { .. } => "helix",
            CurveKind::Offset { .. } => "offset",
            CurveKind::Reversed { .. } => "reversed",
        }
    }

    /// Raw parameter corresponding to an arc position (cyclic for closed curves).
    #[inline]
    pub fn param_of_arc(&self, s: T) -> T {
        let l = self.table.total_length;
        let s = if self.closed {
            let r = s - l * (s / l).floor();
            if r.is_finite() { r } else { T::zero() }
        } else {
            s.max(T::zero()).min(l)
        };
        self.table.u_of_s(s)
    }

    /// Position and unit tangent at arc position `s` (hot path).
    #[inline]
    pub fn point_tangent(&self, s: T) -> (Vec3<T>, Vec3<T>) {
        let u = self.param_of_arc(s);
        let (p, d1) = self.kind.eval01(u);
        (p, d1 / d1.norm())
    }

    /// Position only.
    #[inline]
    pub fn point(&self, s: T) -> Vec3<T> {
        let u = self.param_of_arc(s);
        self.kind.eval01(u).0
    }

    /// Full Frenet data at arc position `s`.
    ///
    /// Closed curves wrap cyclically; for open curves `s` must lie within
    /// `[0, total_arclength]`.
    pub fn eval_by_arclength(&self, s: T) -> Result<FrenetData<T>> {
        let l = self.table.total_length;
        if !self.closed && (s < -l * T::of(1e-12) || s > l * (T::one() + T::of(1e-12))) {
            return Err(Error::Domain(format!(
                "arc position {s} outside [0, {l}] on an open curve"
            )));
        }
        let u = self.param_of_arc(s);
        let d = self.kind.derivs(u);
        frenet_from_derivs(&d)
    }

    /// Straight-line distance between two arc positions.
    #[inline]
    pub fn chord_length(&self, s1: T, s2: T) -> T {
        self.point(s1).distance(self.point(s2))
    }

    /// `integral kappa^2 ds` over the whole curve.
    pub fn curvature_sq_integral(&self) -> T {
        let rule = GaussRule::<T>::new(16);
        let panels = (T::of(8.0) * self.table.total_length)
            .to_usize()
            .unwrap_or(64)
            .max(64);
        let h = self.period / T::of_usize(panels);
        let mut acc = T::zero();
        for i in 0..panels {
            let lo = h * T::of_usize(i);
            let hi = h * T::of_usize(i + 1);
            acc += rule.integrate(lo, hi, |u| {
                let d = self.kind.derivs(u);
                let v = d[1].norm();
                let kappa = d[1].cross(d[2]).norm() / (v * v * v);
                kappa * kappa * v
            });
        }
        acc
    }

    /// Parallel curve `x + delta n(x)` along the unit principal normal.
    ///
    /// Requires a closed base with non-vanishing curvature, `delta` below the
    /// flatness radius `1/kappa_max` and below the numerical self-separation
    /// scale; the result is verified disjoint from the base.
    pub fn offset_curve(&self, delta: T) -> Result<Self> {
        if !self.closed {
            return Err(Error::UnsupportedCurve(
                "offset curves require a closed base curve".into(),
            ));
        }
        let (kappa_min, kappa_max) = self.curvature_range();
        // A sampled minimum cannot certify kappa > 0 exactly; a small ratio
        // against kappa_max flags a curvature zero crossing.
        if kappa_min < kappa_max * T::of(0.02) {
            return Err(Error::UnsupportedCurve(
                "offset requires non-vanishing curvature".into(),
            ));
        }
        let bound = (kappa_max.recip() * T::of(0.999)).min(T::of(0.5) * self.min_self_separation());
        if delta.abs() >= bound {
            return Err(Error::Separation(format!(
                "offset distance {delta} exceeds the validity bound {bound}"
            )));
        }
        let out = Self::from_kind(
            CurveKind::Offset {
                base: Box::new(self.kind.clone()),
                base_period: self.period,
                delta,
            },
            true,
            self.period,
        )?;
        if delta != T::zero() {
            let gap = min_pair_distance(self, &out, SCAN_SAMPLES);
            if gap < delta.abs() * T::of(0.25) {
                return Err(Error::Separation(format!(
                    "offset curve not safely disjoint from its base (min distance {gap})"
                )));
            }
        }
        Ok(out)
    }

    /// Minimum and maximum curvature over a dense sample.
    pub fn curvature_range(&self) -> (T, T) {
        *self.kappa_cache.get_or_init(|| {
            let mut lo = T::infinity();
            let mut hi = T::zero();
            for i in 0..REGULARITY_SAMPLES {
                let u = self.period * T::of_usize(i) / T::of_usize(REGULARITY_SAMPLES);
                let d = self.kind.derivs(u);
                let v = d[1].norm();
                let kappa = d[1].cross(d[2]).norm() / (v * v * v);
                lo = lo.min(kappa);
                hi = hi.max(kappa);
            }
            (lo, hi)
        })
    }

    /// Minimal chord distance between points separated in arc length by more
    /// than `min(L/8, pi/kappa_max)`; the numerical stand-in for curve
    /// thickness used to bound offsets, exclusion schedules and chord balls.
    pub fn min_self_separation(&self) -> T {
        *self.self_sep_cache.get_or_init(|| {
            let l = self.table.total_length;
            let (_, kappa_max) = self.curvature_range();
            let floor = if kappa_max > T::zero() {
                (l / T::of(8.0)).min(T::PI() / kappa_max)
            } else {
                l / T::of(8.0)
            };
            let n = SCAN_SAMPLES;
            let h = l / T::of_usize(n);
            let pts: Vec<Vec3<T>> = (0..n).map(|i| self.point(h * T::of_usize(i))).collect();
            let mut best = T::infinity();
            for i in 0..n {
                for j in (i + 1)..n {
                    let arc = h * T::of_usize(j - i);
                    let arc = if self.closed { arc.min(l - arc) } else { arc };
                    if arc >= floor {
                        let d = pts[i].distance(pts[j]);
                        if d < best {
                            best = d;
                        }
                    }
                }
            }
            if best.is_finite() {
                best
            } else {
                l
            }
        })
    }

    /// Positions at `n` arc-uniform samples.
    pub fn sample_positions(&self, n: usize) -> Vec<Vec3<T>> {
        let l = self.table.total_length;
        let h = l / T::of_usize(n);
        (0..n).map(|i| self.point(h * T::of_usize(i))).collect()
    }

    /// Forward arc length of a raw parameter (used by round-trip tests).
    pub fn arc_of_param(&self, u: T) -> T {
        let kind = self.kind.clone();
        self.table.s_of_u(u, move |x| kind.eval01(x).1.norm())
    }
}

/// Brute-force minimal chord distance between two curves over a dense
/// arc-uniform grid (`n` x `n` samples).
pub fn min_pair_distance<T: Real>(a: &ParametricLoop<T>, b: &ParametricLoop<T>, n: usize) -> T {
    let pa = a.sample_positions(n);
    let pb = b.sample_positions(n);
    let mut best_sq = T::infinity();
    for p in &pa {
        for q in &pb {
            let d = (*p - *q).norm_sq();
            if d < best_sq {
                best_sq = d;
            }
        }
    }
    best_sq.sqrt()
}

fn frenet_from_derivs<T: Real>(d: &[Vec3<T>; 5]) -> Result<FrenetData<T>> {
    let v = d[1].norm();
    if !(v > T::zero()) || !v.is_finite() {
        return Err(Error::DegenerateCurve(
            "vanishing first derivative at evaluation point".into(),
        ));
    }
    let tangent = d[1] / v;
    let c = d[1].cross(d[2]);
    let c_norm = c.norm();
    let v3 = v * v * v;
    let curvature = c_norm / v3;
    let straight = curvature < T::of(1e-12) / (v + T::one());
    let (normal, binormal, torsion, curvature_derivative) = if straight {
        // Arbitrary stable frame completion at a straight point.
        let normal = perpendicular_unit(tangent);
        (normal, tangent.cross(normal), T::zero(), T::zero())
    } else {
        let normal = (d[2] - tangent * tangent.dot(d[2])).normalized();
        let binormal = tangent.cross(normal);
        let torsion = c.dot(d[3]) / (c_norm * c_norm);
        // d kappa / du, then divide by |gamma'| for the arc-length derivative.
        let c1 = d[1].cross(d[3]);
        let dkappa_du = c.dot(c1) / (c_norm * v3)
            - T::of(3.0) * c_norm * d[1].dot(d[2]) / (v3 * v * v);
        (normal, binormal, torsion, dkappa_du / v)
    };
    Ok(FrenetData {
        point: d[0],
        tangent,
        normal,
        binormal,
        curvature,
        torsion,
        curvature_derivative,
    })
}

/// A unit vector perpendicular to `v` (deterministic choice).
fn perpendicular_unit<T: Real>(v: Vec3<T>) -> Vec3<T> {
    let ax = v.x.abs();
    let ay = v.y.abs();
    let az = v.z.abs();
    let e = if ax <= ay && ax <= az {
        Vec3::new(T::one(), T::zero(), T::zero())
    } else if ay <= az {
        Vec3::new(T::zero(), T::one(), T::zero())
    } else {
        Vec3::new(T::zero(), T::zero(), T::one())
    };
    (e - v * v.dot(e)).normalized()
}
