//! Gauss-Legendre nodes and weights.
//!
//! Nodes are the roots of the Legendre polynomial `P_n`, found by Newton
//! iteration from the Chebyshev-like initial guess; weights follow from
//! `w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2)`.

use crate::real::Real;

/// A Gauss-Legendre rule of fixed order on the reference interval `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussRule<T> {
    /// Builds the rule of the given order (`order >= 1`).
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss rule order must be at least 1");
        let n = order;
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let tol = T::epsilon() * T::of(8.0);
        for i in 0..n {
            // Initial guess for the i-th root (descending order).
            let theta = T::PI() * (T::of_usize(i) + T::of(0.75)) / (T::of_usize(n) + T::of(0.5));
            let mut x = theta.cos();
            for _ in 0..64 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x = x - dx;
                if dx.abs() <= tol {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            nodes[i] = x;
            weights[i] = T::of(2.0) / ((T::one() - x * x) * dp * dp);
        }
        // Ascending node order for deterministic panel sweeps.
        nodes.reverse();
        weights.reverse();
        Self { nodes, weights }
    }

    /// Applies the rule to `f` on `[a, b]`.
    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        let half = T::of(0.5) * (b - a);
        let mid = T::of(0.5) * (a + b);
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(self.weights.iter()) {
            acc += *w * f(mid + half * *x);
        }
        acc * half
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = T::of(0.5) * (b - a);
        let mid = T::of(0.5) * (a + b);
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(move |(x, w)| (mid + half * *x, *w * half))
    }
}

/// Evaluates `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p_prev = T::one();
    let mut p = x;
    if n == 0 {
        return (T::one(), T::zero());
    }
    for k in 2..=n {
        let kf = T::of_usize(k);
        let next = ((T::of(2.0) * kf - T::one()) * x * p - (kf - T::one()) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    let dp = T::of_usize(n) * (x * p - p_prev) / (x * x - T::one());
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_3_reference_nodes() {
        let rule = GaussRule::<f64>::new(3);
        let x_ref = [-0.7745966692414834, 0.0, 0.7745966692414834];
        let w_ref = [0.5555555555555556, 0.8888888888888888, 0.5555555555555556];
        for i in 0..3 {
            assert!((rule.nodes[i] - x_ref[i]).abs() < 1e-14);
            assert!((rule.weights[i] - w_ref[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = GaussRule::<f64>::new(8);
        // Degree 15 is exact for an 8-point rule.
        let got = rule.integrate(0.0, 1.0, |x| x.powi(15));
        assert!((got - 1.0 / 16.0).abs() < 1e-14);
    }

    #[test]
    fn high_order_rule_is_sane() {
        let rule = GaussRule::<f64>::new(64);
        let sum: f64 = rule.weights.iter().sum();
        assert!((sum - 2.0).abs() < 1e-12);
        let got = rule.integrate(0.0, std::f64::consts::PI, |x| x.sin());
        assert!((got - 2.0).abs() < 1e-13);
    }
}
