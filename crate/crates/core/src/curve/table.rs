//! Arc-length reparametrization table.
//!
//! Forward arc length is accumulated with Gauss panels over the raw
//! parameter; the inverse map `s -> u` is stored on a uniform arc grid and
//! interpolated with cubic Hermite segments using the exact node derivative
//! `du/ds = 1 / |gamma'(u)|`. Grid nodes are solved by Newton iteration with
//! a bisection safeguard.

use crate::error::{Error, Result};
use crate::quad::gauss::GaussRule;
use crate::real::Real;

/// Monotone table of `(raw parameter u, arc length s)` samples plus the
/// total length. Arc samples are uniform: `s_j = j * total_length / (n - 1)`.
#[derive(Debug, Clone)]
pub struct ArcTable<T> {
    /// Raw parameter at each uniform arc node.
    pub u_nodes: Vec<T>,
    /// `du/ds` at each node (reciprocal speed).
    pub du_ds: Vec<T>,
    /// Uniform arc spacing between nodes.
    pub step: T,
    /// Total arc length.
    pub total_length: T,
    /// Parameter-domain length.
    pub period: T,
    /// Cumulative arc length at uniform parameter panel boundaries.
    cum: Vec<T>,
    cum_step: T,
    order: usize,
}

impl<T: Real> ArcTable<T> {
    /// Builds the table for a speed function `|gamma'(u)|` on `[0, period]`.
    pub fn build<F: Fn(T) -> T>(speed: F, period: T, nodes_hint: usize) -> Result<Self> {
        let order = 16;
        let rule = GaussRule::<T>::new(order);
        // Panel count for the forward cumulative map: refine until stable.
        let mut panels = 256usize;
        let mut total = T::zero();
        let mut cum: Vec<T> = Vec::new();
        for attempt in 0..6 {
            panels = 256usize << attempt;
            cum = Vec::with_capacity(panels + 1);
            cum.push(T::zero());
            let h = period / T::of_usize(panels);
            let mut acc = T::zero();
            for i in 0..panels {
                let lo = h * T::of_usize(i);
                let hi = h * T::of_usize(i + 1);
                acc += rule.integrate(lo, hi, |u| speed(u));
                cum.push(acc);
            }
            let new_total = acc;
            if attempt > 0 && (new_total - total).abs() <= T::of(1e-13) * new_total.abs() {
                total = new_total;
                break;
            }
            total = new_total;
        }
        if !(total > T::zero()) || !total.is_finite() {
            return Err(Error::DegenerateCurve(
                "curve has non-positive or non-finite length".into(),
            ));
        }
        let cum_step = period / T::of_usize(panels);

        let forward = |u: T, cum: &[T]| -> T {
            // Arc length s(u) from the cumulative panel sums plus a partial panel.
            let idx_f = (u / cum_step).floor();
            let idx = idx_f.to_usize().unwrap_or(0).min(panels - 1);
            let lo = cum_step * T::of_usize(idx);
            cum[idx] + rule.integrate(lo, u, |x| speed(x))
        };

        // Uniform arc grid; solve u(s_j) by safeguarded Newton.
        let n = nodes_hint.max(64);
        let step = total / T::of_usize(n - 1);
        let mut u_nodes = Vec::with_capacity(n);
        let mut du_ds = Vec::with_capacity(n);
        let mut u = T::zero();
        let tiny_speed = T::of(1e-12) * (total / period);
        for j in 0..n {
            let target = if j + 1 == n { total } else { step * T::of_usize(j) };
            if j > 0 {
                // Newton from the previous node, bracketed by [prev, period].
                let mut lo = u;
                let mut hi = period;
                let sp = speed(u);
                if sp <= tiny_speed {
                    return Err(Error::DegenerateCurve(format!(
                        "vanishing first derivative near u = {u}"
                    )));
                }
                let mut x = u + step / sp;
                for _ in 0..64 {
                    if !(x > lo) || !(x < hi) {
                        x = T::of(0.5) * (lo + hi);
                    }
                    let f = forward(x, &cum) - target;
                    if f > T::zero() {
                        hi = x;
                    } else {
                        lo = x;
                    }
                    let sp_x = speed(x);
                    let dx = f / sp_x.max(tiny_speed);
                    x = x - dx;
                    if dx.abs() <= T::of(1e-14) * period {
                        break;
                    }
                }
                u = x.max(lo).min(hi);
            }
            let sp = speed(u);
            if sp <= tiny_speed {
                return Err(Error::DegenerateCurve(format!(
                    "vanishing first derivative at u = {u}"
                )));
            }
            u_nodes.push(u);
            du_ds.push(sp.recip());
        }
        *u_nodes.last_mut().unwrap() = period;

        Ok(Self {
            u_nodes,
            du_ds,
            step,
            total_length: total,
            period,
            cum,
            cum_step,
            order,
        })
    }

    /// Raw parameter for an arc position `s` in `[0, total_length]`.
    #[inline]
    pub fn u_of_s(&self, s: T) -> T {
        let n = self.u_nodes.len();
        let x = s / self.step;
        let j = x
            .floor()
            .to_usize()
            .unwrap_or(0)
            .min(n - 2);
        let xi = x - T::of_usize(j);
        // Cubic Hermite on [s_j, s_{j+1}] with exact derivatives.
        let u0 = self.u_nodes[j];
        let u1 = self.u_nodes[j + 1];
        let m0 = self.du_ds[j] * self.step;
        let m1 = self.du_ds[j + 1] * self.step;
        let xi2 = xi * xi;
        let xi3 = xi2 * xi;
        let h00 = T::of(2.0) * xi3 - T::of(3.0) * xi2 + T::one();
        let h10 = xi3 - T::of(2.0) * xi2 + xi;
        let h01 = -(T::of(2.0) * xi3) + T::of(3.0) * xi2;
        let h11 = xi3 - xi2;
        h00 * u0 + h10 * m0 + h01 * u1 + h11 * m1
    }

    /// Arc length for a raw parameter `u` in `[0, period]`, accurate to the
    /// forward quadrature.
    pub fn s_of_u<F: Fn(T) -> T>(&self, u: T, speed: F) -> T {
        let rule = GaussRule::<T>::new(self.order);
        let panels = self.cum.len() - 1;
        let idx = (u / self.cum_step)
            .floor()
            .to_usize()
            .unwrap_or(0)
            .min(panels - 1);
        let lo = self.cum_step * T::of_usize(idx);
        self.cum[idx] + rule.integrate(lo, u, |x| speed(x))
    }
}
