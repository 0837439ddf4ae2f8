use serde::{Deserialize, Serialize};

use crate::scalar::{lit, to_f64, Scalar};

/// Overall hull length, meters.
pub const HULL_LENGTH: f64 = 1.0;
/// Maximum diameter implied by fineness ratio 5 on a 1 m hull.
pub const MAX_DIAMETER: f64 = 0.2;
/// Radius at the nose/tail junction.
pub const MAX_RADIUS: f64 = 0.5 * MAX_DIAMETER;
pub const NOSE_LENGTH_MIN: f64 = 0.01;
pub const NOSE_LENGTH_MAX: f64 = 0.90;
/// Number of control diameters (three on the nose, three on the tail).
pub const N_CONTROL: usize = 6;
/// Design-space dimension: control diameters plus nose length.
pub const DESIGN_DIM: usize = N_CONTROL + 1;

/// One point of the hull design space.
///
/// Control values are diameters in meters; knot radius is half the value.
/// The tail length is always `1 - nose_length` and is never stored.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignVector<T> {
    pub control_diameters: [T; N_CONTROL],
    pub nose_length: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Bound {
    Lower(f64),
    Upper(f64),
    Finite,
}

/// A single violated design-space bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundViolation {
    /// 0..=5 for control diameters, 6 for nose length.
    pub index: usize,
    pub value: f64,
    pub bound: Bound,
}

impl std::fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = if self.index < N_CONTROL {
            format!("control_diameters[{}]", self.index)
        } else {
            "nose_length".to_string()
        };
        match self.bound {
            Bound::Lower(b) => write!(f, "{name} = {} below lower bound {b}", self.value),
            Bound::Upper(b) => write!(f, "{name} = {} above upper bound {b}", self.value),
            Bound::Finite => write!(f, "{name} is not finite"),
        }
    }
}

/// Box bounds `(lo, hi)` of the 7-D design space, in design-vector order.
pub fn design_bounds() -> [(f64, f64); DESIGN_DIM] {
    let mut b = [(0.0, MAX_DIAMETER); DESIGN_DIM];
    b[N_CONTROL] = (NOSE_LENGTH_MIN, NOSE_LENGTH_MAX);
    b
}

impl<T: Scalar> DesignVector<T> {
    pub fn new(control_diameters: [T; N_CONTROL], nose_length: T) -> Self {
        Self {
            control_diameters,
            nose_length,
        }
    }

    /// All control diameters equal to `diameter`.
    pub fn uniform(diameter: T, nose_length: T) -> Self {
        Self::new([diameter; N_CONTROL], nose_length)
    }

    pub fn tail_length(&self) -> T {
        lit::<T>(HULL_LENGTH) - self.nose_length
    }

    pub fn to_array(&self) -> [T; DESIGN_DIM] {
        let mut out = [T::zero(); DESIGN_DIM];
        out[..N_CONTROL].copy_from_slice(&self.control_diameters);
        out[N_CONTROL] = self.nose_length;
        out
    }

    /// Builds a design from a 7-element slice. Panics on wrong length.
    pub fn from_slice(x: &[T]) -> Self {
        assert_eq!(
            x.len(),
            DESIGN_DIM,
            "design vector has {DESIGN_DIM} components"
        );
        let mut control_diameters = [T::zero(); N_CONTROL];
        control_diameters.copy_from_slice(&x[..N_CONTROL]);
        Self::new(control_diameters, x[N_CONTROL])
    }

    /// Every violated bound, in component order. Empty means valid.
    pub fn violations(&self) -> Vec<BoundViolation> {
        self.to_array()
            .iter()
            .zip(design_bounds())
            .enumerate()
            .filter_map(|(index, (&v, (lo, hi)))| {
                let value = to_f64(v);
                let bound = if !value.is_finite() {
                    Bound::Finite
                } else if value < lo {
                    Bound::Lower(lo)
                } else if value > hi {
                    Bound::Upper(hi)
                } else {
                    return None;
                };
                Some(BoundViolation {
                    index,
                    value,
                    bound,
                })
            })
            .collect()
    }

    /// Accepts iff every component lies inside its bound.
    pub fn validate(&self) -> Result<(), DesignError> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(DesignError(v))
        }
    }

    pub fn cast<U: Scalar>(&self) -> DesignVector<U> {
        DesignVector {
            control_diameters: self.control_diameters.map(|v| lit(to_f64(v))),
            nose_length: lit(to_f64(self.nose_length)),
        }
    }
}

/// Rejected design, carrying all violated bounds.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("invalid design: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct DesignError(pub Vec<BoundViolation>);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_point_is_valid() {
        let d = DesignVector::uniform(0.1f64, 0.4);
        assert!(d.validate().is_ok());
        assert!((d.tail_length() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn diameter_above_bound() {
        let mut d = DesignVector::uniform(0.1, 0.4);
        d.control_diameters[2] = 0.25;
        let err = d.validate().unwrap_err();
        assert_eq!(
            err.0,
            vec![BoundViolation {
                index: 2,
                value: 0.25,
                bound: Bound::Upper(0.2)
            }]
        );
    }

    #[test]
    fn nose_above_bound() {
        let d = DesignVector::uniform(0.1, 0.95);
        let err = d.validate().unwrap_err();
        assert_eq!(err.0.len(), 1);
        assert_eq!(err.0[0].index, 6);
        assert_eq!(err.0[0].bound, Bound::Upper(0.9));
    }

    #[test]
    fn reports_every_violation() {
        let d = DesignVector::new([-0.1, 0.1, 0.3, 0.1, f64::NAN, 0.1], 0.001);
        let err = d.validate().unwrap_err();
        let idx: Vec<_> = err.0.iter().map(|v| v.index).collect();
        assert_eq!(idx, vec![0, 2, 4, 6]);
        assert_eq!(err.0[2].bound, Bound::Finite);
        assert!(err.to_string().contains("nose_length"));
    }

    #[test]
    fn json_shape() {
        let d = DesignVector::new([0.05, 0.1, 0.15, 0.15, 0.1, 0.05], 0.4);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"control_diameters":[0.05,0.1,0.15,0.15,0.1,0.05],"nose_length":0.4}"#
        );
        let back: DesignVector<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
