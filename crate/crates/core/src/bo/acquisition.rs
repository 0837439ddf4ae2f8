use crate::scalar::{from_usize, lit, to_f64, Scalar};

use super::BoError;

/// Exploration weight `β_t = √(v·τ_t)` with `τ_t = 2 ln(t^(d/2+2) π² / 3δ)`,
/// clamped at zero below.
pub fn beta_schedule<T: Scalar>(t: usize, d: usize, delta: T, v: T) -> Result<T, BoError> {
    if t < 1 || d < 1 {
        return Err(BoError::InvalidConfig(format!(
            "beta schedule needs t >= 1 and d >= 1, got t={t}, d={d}"
        )));
    }
    if !(delta > T::zero() && delta < T::one()) {
        return Err(BoError::InvalidConfig(format!(
            "delta must be in (0, 1), got {}",
            to_f64(delta)
        )));
    }
    if !(v > T::zero() && v.is_finite()) {
        return Err(BoError::InvalidConfig(format!(
            "v must be positive, got {}",
            to_f64(v)
        )));
    }
    let exponent = from_usize::<T>(d) / lit(2.0) + lit(2.0);
    let log_arg =
        exponent * from_usize::<T>(t).ln() + (T::PI() * T::PI() / (lit::<T>(3.0) * delta)).ln();
    let tau = (lit::<T>(2.0) * log_arg).max(T::zero());
    Ok((v * tau).sqrt())
}

/// Lower confidence bound `mean − β·std` (minimized).
#[inline]
pub fn lcb<T: Scalar>(mean: T, std: T, beta: T) -> T {
    mean - beta * std
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_direct_evaluation() {
        // τ₁ = 2 ln(π²/0.3)
        let tau1 = 2.0 * (std::f64::consts::PI.powi(2) / 0.3).ln();
        let b1 = beta_schedule(1, 7, 0.1f64, 1.0).unwrap();
        assert!((b1 - tau1.sqrt()).abs() < 1e-14);
        assert!((b1 - 2.643_267_9).abs() < 1e-7);
        let b10 = beta_schedule(10, 7, 0.1f64, 1.0).unwrap();
        assert!((b10 - 5.684_654_9).abs() < 1e-7);
    }

    #[test]
    fn beta_monotone_in_t() {
        let mut prev = 0.0;
        for t in 1..=1000 {
            let b = beta_schedule(t, 7, 0.1f64, 1.0).unwrap();
            assert!(b >= prev);
            prev = b;
        }
    }

    #[test]
    fn beta_scales_with_v_and_rejects_bad_domain() {
        let a = beta_schedule(3, 2, 0.1f64, 1.0).unwrap();
        let b = beta_schedule(3, 2, 0.1f64, 4.0).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-12);
        assert!(beta_schedule(0, 7, 0.1f64, 1.0).is_err());
        assert!(beta_schedule(1, 0, 0.1f64, 1.0).is_err());
        assert!(beta_schedule(1, 7, 1.0f64, 1.0).is_err());
        assert!(beta_schedule(1, 7, 0.1f64, 0.0).is_err());
    }

    #[test]
    fn lcb_examples() {
        assert_eq!(lcb(2.0, 0.5, 0.0), 2.0);
        assert_eq!(lcb(2.0, 0.0, 3.0), 2.0);
        assert!((lcb(2.0f64, 0.5, 2.64330) - 0.678350).abs() < 1e-12);
    }
}
