//! Block least-squares (MMSE) weight initialization.

use nalgebra::{DMatrix, DVector};

use super::RxError;

/// Smallest acceptable ratio between the smallest and largest squared
/// Cholesky pivot when no ridge is applied.
const MIN_PIVOT_RATIO: f64 = 1e-13;

/// `argmin_w Σ (t − w·f)² + ridge·‖w‖²` over the rows of `features`.
///
/// Solved through the normal equations with a Cholesky factorization.
pub fn mmse_train(features: &DMatrix<f64>, targets: &[f64], ridge: f64) -> Result<Vec<f64>, RxError> {
    if features.nrows() != targets.len() {
        return Err(RxError::LengthMismatch { left: features.nrows(), right: targets.len() });
    }
    if !(ridge >= 0.0) {
        return Err(RxError::Config(format!("ridge must be nonnegative, got {ridge}")));
    }
    // the explicit transpose takes nalgebra's blocked GEMM path, which is far
    // faster than `tr_mul` at equalizer sizes
    let ft = features.transpose();
    let mut gram = &ft * features;
    for i in 0..gram.nrows() {
        gram[(i, i)] += ridge;
    }
    let rhs = &ft * DVector::from_column_slice(targets);
    solve_normal_equations(gram, rhs, ridge)
}

/// Solves `gram · w = rhs` for a symmetric positive-definite `gram`.
pub fn solve_normal_equations(
    gram: DMatrix<f64>,
    rhs: DVector<f64>,
    ridge: f64,
) -> Result<Vec<f64>, RxError> {
    let chol = gram.cholesky().ok_or(RxError::IllConditioned { ridge })?;
    let l = chol.l_dirty();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..l.nrows() {
        let p = l[(i, i)] * l[(i, i)];
        lo = lo.min(p);
        hi = hi.max(p);
    }
    if ridge == 0.0 && !(lo > hi * MIN_PIVOT_RATIO) {
        return Err(RxError::IllConditioned { ridge });
    }
    Ok(chol.solve(&rhs).iter().copied().collect())
}

/// Mean squared error of `weights` over the rows of `features`.
pub fn mse(features: &DMatrix<f64>, targets: &[f64], weights: &[f64]) -> f64 {
    let w = DVector::from_column_slice(weights);
    let y = features * w;
    y.iter().zip(targets).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / targets.len().max(1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    /// Rows are cyclic windows of `x` centered on each index.
    fn window_matrix(x: &[f64], taps: usize) -> DMatrix<f64> {
        let n = x.len();
        let half = taps / 2;
        DMatrix::from_fn(n, taps, |k, m| x[(k + n + m - half) % n])
    }

    /// Symmetric Toeplitz solve by Levinson recursion; `r` is the first row.
    fn levinson(r: &[f64], b: &[f64]) -> Vec<f64> {
        let n = b.len();
        let mut f = vec![1.0 / r[0]];
        let mut x = vec![b[0] / r[0]];
        for k in 1..n {
            let ef: f64 = (0..k).map(|i| r[k - i] * f[i]).sum();
            let back: Vec<f64> = f.iter().rev().copied().collect();
            let denom = 1.0 - ef * ef;
            let mut fnew = vec![0.0; k + 1];
            for i in 0..k {
                fnew[i] += f[i] / denom;
                fnew[i + 1] -= ef * back[i] / denom;
            }
            let bnew: Vec<f64> = fnew.iter().rev().copied().collect();
            let ex: f64 = (0..k).map(|i| r[k - i] * x[i]).sum();
            x.push(0.0);
            for i in 0..=k {
                x[i] += (b[k] - ex) * bnew[i];
            }
            f = fnew;
        }
        x
    }

    fn random_pam4(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| (rng.random_range(0..4) * 2) as f64 - 3.0).collect()
    }

    #[test]
    fn identity_channel_gives_center_tap() {
        let s = random_pam4(2048, 1);
        let f = window_matrix(&s, 9);
        let w = mmse_train(&f, &s, 0.0).unwrap();
        for (i, v) in w.iter().enumerate() {
            if i == 4 {
                assert!((v - 1.0).abs() < 1e-8);
            } else {
                assert!(v.abs() < 1e-8, "{i}: {v}");
            }
        }
    }

    #[test]
    fn matches_wiener_hopf_solution() {
        let n = 4096;
        let taps = 11;
        let s = random_pam4(n, 2);
        let h = [0.25, 1.0, -0.3];
        let normal = Normal::new(0.0, 0.1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // cyclic 3-tap FIR centered on the middle tap, plus AWGN
        let x: Vec<f64> = (0..n)
            .map(|k| {
                h[0] * s[(k + 1) % n] + h[1] * s[k] + h[2] * s[(k + n - 1) % n]
                    + normal.sample(&mut rng)
            })
            .collect();
        let w = mmse_train(&window_matrix(&x, taps), &s, 0.0).unwrap();

        // Wiener-Hopf: Toeplitz autocorrelation of x, cross-correlation with s
        let half = taps / 2;
        let r: Vec<f64> = (0..taps)
            .map(|m| (0..n).map(|k| x[k] * x[(k + m) % n]).sum::<f64>())
            .collect();
        let p: Vec<f64> = (0..taps)
            .map(|m| (0..n).map(|k| x[(k + n + m - half) % n] * s[k]).sum::<f64>())
            .collect();
        let wiener = levinson(&r, &p);
        let norm: f64 = wiener.iter().map(|v| v * v).sum::<f64>().sqrt();
        let diff: f64 = w.iter().zip(&wiener).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        assert!(diff / norm < 1e-6, "{diff}");
    }

    #[test]
    fn huge_ridge_shrinks_to_zero() {
        let s = random_pam4(512, 4);
        let f = window_matrix(&s, 5);
        let w = mmse_train(&f, &s, 1e15).unwrap();
        assert!(w.iter().all(|v| v.abs() < 1e-9));
    }

    #[test]
    fn singular_without_ridge_is_reported() {
        // constant input: every window column identical
        let x = vec![1.0; 256];
        let f = window_matrix(&x, 5);
        let t = vec![1.0; 256];
        assert!(matches!(mmse_train(&f, &t, 0.0), Err(RxError::IllConditioned { .. })));
        assert!(mmse_train(&f, &t, 1e-3).is_ok());
    }

    #[test]
    fn objective_is_minimal_along_random_directions() {
        let s = random_pam4(1024, 5);
        let normal = Normal::new(0.0, 0.3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x: Vec<f64> = s.iter().map(|v| 0.8 * v + normal.sample(&mut rng)).collect();
        let f = window_matrix(&x, 7);
        let ridge = 0.5;
        let w = mmse_train(&f, &s, ridge).unwrap();
        let cost = |w: &[f64]| {
            mse(&f, &s, w) * s.len() as f64 + ridge * w.iter().map(|v| v * v).sum::<f64>()
        };
        let base = cost(&w);
        for _ in 0..100 {
            let dir: Vec<f64> = (0..7).map(|_| normal.sample(&mut rng)).collect();
            for eps in [1e-3, -1e-3] {
                let moved: Vec<f64> = w.iter().zip(&dir).map(|(a, d)| a + eps * d).collect();
                assert!(cost(&moved) >= base);
            }
        }
    }

    #[test]
    fn length_mismatch() {
        let f = DMatrix::<f64>::zeros(4, 2);
        assert!(matches!(mmse_train(&f, &[1.0; 3], 0.0), Err(RxError::LengthMismatch { .. })));
    }
}
