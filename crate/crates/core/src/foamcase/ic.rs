use serde::{Deserialize, Serialize};

use crate::scalar::{lit, to_f64, Scalar};

/// Standard two-equation model constant.
pub const C_MU: f64 = 0.09;
/// Turbulent length scale as a fraction of hull length.
pub const LENGTH_SCALE_FRACTION: f64 = 0.07;

/// Inflow turbulence initial conditions for a k-ω model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TurbulenceIC<T> {
    /// Turbulent kinetic energy, m²/s².
    pub k: T,
    /// Specific dissipation rate, 1/s.
    pub omega: T,
    pub length_scale: T,
    pub c_mu: T,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("turbulence inputs must be positive and finite: {name} = {value}")]
pub struct IcError {
    pub name: &'static str,
    pub value: f64,
}

/// `k = 3/2 (U·I)²`, `ω = √k / (l·C_μ^¼)` with `I = I_pct / 100`.
pub fn turbulence_ic<T: Scalar>(
    velocity: T,
    intensity_pct: T,
    length_scale: T,
    c_mu: T,
) -> Result<TurbulenceIC<T>, IcError> {
    for (name, v) in [
        ("velocity", velocity),
        ("intensity", intensity_pct),
        ("length_scale", length_scale),
        ("c_mu", c_mu),
    ] {
        if !(v > T::zero() && v.is_finite()) {
            return Err(IcError {
                name,
                value: to_f64(v),
            });
        }
    }
    let fluctuation = velocity * intensity_pct / lit(100.0);
    let k = lit::<T>(1.5) * fluctuation * fluctuation;
    let omega = k.sqrt() / (length_scale * c_mu.powf(lit(0.25)));
    Ok(TurbulenceIC {
        k,
        omega,
        length_scale,
        c_mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn high_speed_high_turbulence() {
        let ic = turbulence_ic(10.0f64, 20.0, 0.07, 0.09).unwrap();
        assert!((ic.k - 6.0).abs() <= 6.0 * 1e-12);
        assert!((ic.omega - 63.886).abs() < 0.01);
    }

    #[test]
    fn low_speed_low_turbulence() {
        let ic = turbulence_ic(1.0f64, 0.1, 0.07, 0.09).unwrap();
        assert!((ic.k - 1.5e-6).abs() < 1e-18);
        assert!((ic.omega - 0.031944).abs() < 1e-5);
    }

    #[test]
    fn k_is_quadratic_in_speed() {
        let a = turbulence_ic(1.0f64, 5.0, 0.07, C_MU).unwrap();
        let b = turbulence_ic(2.0f64, 5.0, 0.07, C_MU).unwrap();
        assert!((b.k / a.k - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_positive() {
        assert_eq!(
            turbulence_ic(0.0f64, 5.0, 0.07, 0.09).unwrap_err().name,
            "velocity"
        );
        assert_eq!(
            turbulence_ic(1.0f64, -1.0, 0.07, 0.09).unwrap_err().name,
            "intensity"
        );
        assert_eq!(
            turbulence_ic(1.0f64, 5.0, 0.0, 0.09).unwrap_err().name,
            "length_scale"
        );
        assert_eq!(
            turbulence_ic(1.0f64, 5.0, 0.07, f64::NAN).unwrap_err().name,
            "c_mu"
        );
    }

    proptest! {
        #[test]
        fn intensity_round_trips(u in 0.1f64..20.0, i in 0.01f64..50.0) {
            let ic = turbulence_ic(u, i, 0.07, C_MU).unwrap();
            let back = (2.0 * ic.k / 3.0).sqrt() / u * 100.0;
            prop_assert!((back / i - 1.0).abs() < 1e-12);
        }

        #[test]
        fn omega_identity(u in 0.1f64..20.0, i in 0.01f64..50.0, l in 0.001f64..1.0, c in 0.01f64..1.0) {
            let ic = turbulence_ic(u, i, l, c).unwrap();
            let lhs = ic.omega * l * c.powf(0.25);
            prop_assert!((lhs / ic.k.sqrt() - 1.0).abs() < 1e-12);
        }
    }
}
