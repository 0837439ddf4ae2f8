use serde::{Deserialize, Serialize};

use crate::scalar::{lit, Scalar};

use super::GpError;

pub const LENGTHSCALE_MIN: f64 = 0.05;
pub const LENGTHSCALE_MAX: f64 = 10.0;
pub const NOISE_MIN: f64 = 1e-8;
pub const NOISE_MAX: f64 = 1.0;
pub const SIGNAL_MIN: f64 = 0.05;
pub const SIGNAL_MAX: f64 = 20.0;
/// Default noise for a deterministic objective.
pub const DEFAULT_NOISE: f64 = 1e-6;

/// Matérn 5/2 ARD hyperparameters on unit-cube inputs and standardized outputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelParams<T> {
    pub signal_variance: T,
    pub lengthscales: Vec<T>,
    pub noise_variance: T,
}

impl<T: Scalar> KernelParams<T> {
    /// Unit signal variance, lengthscale 0.5 in every dimension, default noise.
    pub fn default_for(dim: usize) -> Self {
        Self {
            signal_variance: T::one(),
            lengthscales: vec![lit(0.5); dim],
            noise_variance: lit(DEFAULT_NOISE),
        }
    }

    pub fn dim(&self) -> usize {
        self.lengthscales.len()
    }

    pub fn validate(&self) -> Result<(), GpError> {
        let bad = |what: &str| Err(GpError::InvalidParams(what.to_string()));
        if !(self.signal_variance > T::zero() && self.signal_variance.is_finite()) {
            return bad("signal variance must be positive");
        }
        if self.lengthscales.is_empty() {
            return bad("at least one lengthscale required");
        }
        let (lo, hi) = (lit::<T>(LENGTHSCALE_MIN), lit::<T>(LENGTHSCALE_MAX));
        if self.lengthscales.iter().any(|&l| !(l >= lo && l <= hi)) {
            return bad("lengthscales must lie in [0.05, 10]");
        }
        if !(self.noise_variance >= lit(NOISE_MIN) && self.noise_variance.is_finite()) {
            return bad("noise variance must be at least 1e-8");
        }
        Ok(())
    }
}

/// Scaled distance `ρ = √Σ((aᵢ−bᵢ)/ℓᵢ)²`.
pub(crate) fn scaled_distance<T: Scalar>(lengthscales: &[T], a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .zip(lengthscales)
        .map(|((&x, &y), &l)| {
            let d = (x - y) / l;
            d * d
        })
        .sum::<T>()
        .sqrt()
}

/// `σ²(1 + √5ρ + 5ρ²/3)·exp(−√5ρ)`.
#[inline]
pub(crate) fn matern52<T: Scalar>(signal_variance: T, rho: T) -> T {
    let s5 = lit::<T>(5.0).sqrt() * rho;
    signal_variance * (T::one() + s5 + s5 * s5 / lit(3.0)) * (-s5).exp()
}

/// Matérn 5/2 ARD covariance between two unit-cube points.
pub fn kernel_eval<T: Scalar>(params: &KernelParams<T>, a: &[T], b: &[T]) -> Result<T, GpError> {
    params.validate()?;
    if a.len() != params.dim() || b.len() != params.dim() {
        return Err(GpError::DimensionMismatch {
            expected: params.dim(),
            got: a.len().max(b.len()),
        });
    }
    Ok(matern52(
        params.signal_variance,
        scaled_distance(&params.lengthscales, a, b),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_distance_gives_signal_variance() {
        let mut p = KernelParams::<f64>::default_for(7);
        p.signal_variance = 2.5;
        let a = [0.3; 7];
        assert_eq!(kernel_eval(&p, &a, &a).unwrap(), 2.5);
    }

    #[test]
    fn unit_distance_value() {
        let mut p = KernelParams::<f64>::default_for(7);
        p.lengthscales = vec![1.0; 7];
        let a = [0.0; 7];
        let mut b = [0.0; 7];
        b[3] = 1.0;
        assert!((kernel_eval(&p, &a, &b).unwrap() - 0.523994).abs() < 1e-6);
    }

    #[test]
    fn symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = KernelParams::<f64>::default_for(7);
        for _ in 0..100 {
            let a: Vec<f64> = (0..7).map(|_| rng.random()).collect();
            let b: Vec<f64> = (0..7).map(|_| rng.random()).collect();
            assert_eq!(
                kernel_eval(&p, &a, &b).unwrap(),
                kernel_eval(&p, &b, &a).unwrap()
            );
        }
    }

    #[test]
    fn rejects_bad_params() {
        let a = [0.0; 7];
        let mut p = KernelParams::<f64>::default_for(7);
        p.signal_variance = 0.0;
        assert!(kernel_eval(&p, &a, &a).is_err());
        let mut p = KernelParams::<f64>::default_for(7);
        p.lengthscales[0] = 0.01;
        assert!(kernel_eval(&p, &a, &a).is_err());
        let mut p = KernelParams::<f64>::default_for(7);
        p.noise_variance = 0.0;
        assert!(kernel_eval(&p, &a, &a).is_err());
        let p = KernelParams::<f64>::default_for(7);
        assert!(matches!(
            kernel_eval(&p, &a, &[0.0; 3]),
            Err(GpError::DimensionMismatch { .. })
        ));
    }
}
