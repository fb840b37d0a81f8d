//! Small weighted least-squares solver used by the extrapolation fits.

use crate::error::{Error, Result};
use crate::real::Real;

/// Solves `min_c sum_k w_k (rows[k] . c - y[k])^2` by normal equations with
/// column scaling and partially pivoted Gaussian elimination. Sizes here are
/// tiny (up to ~6 x 5), so this is both adequate and deterministic.
pub fn weighted_lsq<T: Real>(rows: &[Vec<T>], y: &[T], w: &[T]) -> Result<Vec<T>> {
    let m = rows.len();
    if m == 0 || y.len() != m || w.len() != m {
        return Err(Error::Fit("empty or inconsistent regression data".into()));
    }
    let n = rows[0].len();
    if m < n {
        return Err(Error::Fit(format!(
            "underdetermined fit: {m} samples for {n} coefficients"
        )));
    }
    // Column scales for conditioning.
    let mut scale = vec![T::zero(); n];
    for row in rows {
        for (j, v) in row.iter().enumerate() {
            scale[j] = scale[j].max(v.abs());
        }
    }
    for s in scale.iter_mut() {
        if !(*s > T::zero()) {
            *s = T::one();
        }
    }
    let mut g = vec![vec![T::zero(); n]; n];
    let mut b = vec![T::zero(); n];
    for k in 0..m {
        for i in 0..n {
            let xi = rows[k][i] / scale[i];
            b[i] += w[k] * xi * y[k];
            for j in 0..n {
                g[i][j] += w[k] * xi * rows[k][j] / scale[j];
            }
        }
    }
    let mut c = solve_dense(&mut g, &mut b)?;
    for j in 0..n {
        c[j] = c[j] / scale[j];
    }
    Ok(c)
}

/// Weighted RMS residual of a fit.
pub fn fit_rms_residual<T: Real>(rows: &[Vec<T>], y: &[T], w: &[T], c: &[T]) -> T {
    let mut acc = T::zero();
    let mut wsum = T::zero();
    for k in 0..rows.len() {
        let mut pred = T::zero();
        for j in 0..c.len() {
            pred += rows[k][j] * c[j];
        }
        let r = pred - y[k];
        acc += w[k] * r * r;
        wsum += w[k];
    }
    (acc / wsum).sqrt()
}

fn solve_dense<T: Real>(a: &mut [Vec<T>], b: &mut [T]) -> Result<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if !(a[piv][col].abs() > T::zero()) {
            return Err(Error::Fit("singular normal equations".into()));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        for r in (col + 1)..n {
            let f = a[r][col] / d;
            if f != T::zero() {
                for j in col..n {
                    let v = a[col][j];
                    a[r][j] = a[r][j] - f * v;
                }
                b[r] = b[r] - f * b[col];
            }
        }
    }
    let mut x = vec![T::zero(); n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for j in (col + 1)..n {
            acc -= a[col][j] * x[j];
        }
        x[col] = acc / a[col][col];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_quadratic() {
        let xs = [0.5, 1.0, 1.5, 2.0, 3.0];
        let rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![1.0, x, x * x]).collect();
        let y: Vec<f64> = xs.iter().map(|&x| 2.0 - 3.0 * x + 0.25 * x * x).collect();
        let w = vec![1.0; xs.len()];
        let c = weighted_lsq(&rows, &y, &w).unwrap();
        assert!((c[0] - 2.0).abs() < 1e-12);
        assert!((c[1] + 3.0).abs() < 1e-12);
        assert!((c[2] - 0.25).abs() < 1e-12);
        assert!(fit_rms_residual(&rows, &y, &w, &c) < 1e-12);
    }

    #[test]
    fn rejects_underdetermined() {
        let rows = vec![vec![1.0, 2.0, 3.0]];
        assert!(weighted_lsq(&rows, &[1.0], &[1.0]).is_err());
    }
}
