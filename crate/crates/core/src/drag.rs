//! Strip-integrated drag estimate for a body of revolution.
//!
//! Skin friction is integrated along the profile with a laminar run up to a
//! transition station that moves forward with speed and free-stream
//! turbulence, then scaled by a body-of-revolution form factor. A quadratic
//! penalty on steep wall slopes stands in for separation pressure drag.

use serde::{Deserialize, Serialize};

use crate::geometry::{build_profile, DesignVector, GeometryError, HullProfile, DEFAULT_STATIONS};
use crate::scalar::{from_usize, lit, to_f64, Scalar};

pub const RE_CRIT_FLOOR: f64 = 5.0e5;
pub const RE_CRIT_SPAN: f64 = 4.5e6;
pub const CF_CAP: f64 = 0.05;
pub const SEPARATION_COEFF: f64 = 2.0;
/// Wall slope |dr/dx| above which the separation penalty applies.
pub const SEPARATION_SLOPE: f64 = 0.3;

/// One operating/environmental condition.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario<T> {
    /// Free-stream speed, m/s.
    pub velocity: T,
    /// Turbulence intensity in percent of the mean flow speed.
    pub turbulence_intensity: T,
}

impl<T: Scalar> Scenario<T> {
    pub fn new(velocity: T, turbulence_intensity: T) -> Self {
        Self {
            velocity,
            turbulence_intensity,
        }
    }

    pub fn validate(&self) -> Result<(), DragError> {
        let ok_u = self.velocity > T::zero() && self.velocity.is_finite();
        let i = self.turbulence_intensity;
        let ok_i = i > T::zero() && i < lit(100.0);
        if ok_u && ok_i {
            Ok(())
        } else {
            Err(DragError::InvalidScenario {
                velocity: to_f64(self.velocity),
                intensity: to_f64(i),
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluidProps<T> {
    /// kg/m³
    pub density: T,
    /// m²/s
    pub kinematic_viscosity: T,
}

impl<T: Scalar> Default for FluidProps<T> {
    /// Fresh water at 20 °C.
    fn default() -> Self {
        Self {
            density: lit(998.2),
            kinematic_viscosity: lit(1.004e-6),
        }
    }
}

impl<T: Scalar> FluidProps<T> {
    pub fn validate(&self) -> Result<(), DragError> {
        if self.density > T::zero() && self.kinematic_viscosity > T::zero() {
            Ok(())
        } else {
            Err(DragError::InvalidFluid)
        }
    }
}

/// Drag components in newtons. `total = friction + form + separation`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DragBreakdown<T> {
    pub friction: T,
    pub form: T,
    pub separation: T,
    pub total: T,
    pub transition_x: T,
    pub reynolds_l: T,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum DragError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid scenario: velocity {velocity} m/s, intensity {intensity}%")]
    InvalidScenario { velocity: f64, intensity: f64 },
    #[error("fluid density and viscosity must be positive")]
    InvalidFluid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowRegime {
    Laminar,
    Turbulent,
}

pub fn reynolds<T: Scalar>(velocity: T, length: T, nu: T) -> T {
    velocity * length / nu
}

/// Transition station: critical Reynolds number `5e5 + 4.5e6·exp(-I%)`,
/// clamped to the hull.
pub fn transition_x<T: Scalar>(velocity: T, intensity_pct: T, nu: T) -> T {
    let re_crit = lit::<T>(RE_CRIT_FLOOR) + lit::<T>(RE_CRIT_SPAN) * (-intensity_pct).exp();
    (re_crit * nu / velocity).max(T::zero()).min(T::one())
}

/// Flat-plate local skin-friction coefficient, capped at [`CF_CAP`].
pub fn local_cf<T: Scalar>(re_x: T, regime: FlowRegime) -> T {
    let cap = lit::<T>(CF_CAP);
    if re_x <= T::zero() {
        return cap;
    }
    let cf = match regime {
        FlowRegime::Laminar => lit::<T>(0.664) / re_x.sqrt(),
        FlowRegime::Turbulent => lit::<T>(0.0592) / re_x.powf(lit(0.2)),
    };
    cf.min(cap)
}

/// Body-of-revolution form factor `1.5(D/L)^1.5 + 7(D/L)^3`.
pub fn form_factor<T: Scalar>(max_diameter: T, length: T) -> T {
    let ratio = max_diameter / length;
    lit::<T>(1.5) * ratio.powf(lit(1.5)) + lit::<T>(7.0) * ratio.powi(3)
}

pub fn evaluate_drag<T: Scalar>(
    d: &DesignVector<T>,
    s: &Scenario<T>,
    fluid: &FluidProps<T>,
    stations: usize,
) -> Result<DragBreakdown<T>, DragError> {
    let profile = build_profile(d)?;
    evaluate_profile(&profile, s, fluid, stations)
}

/// [`evaluate_drag`] at the default station count.
pub fn drag_total<T: Scalar>(
    d: &DesignVector<T>,
    s: &Scenario<T>,
    fluid: &FluidProps<T>,
) -> Result<T, DragError> {
    Ok(evaluate_drag(d, s, fluid, DEFAULT_STATIONS)?.total)
}

pub fn evaluate_profile<T: Scalar>(
    p: &HullProfile<T>,
    s: &Scenario<T>,
    fluid: &FluidProps<T>,
    stations: usize,
) -> Result<DragBreakdown<T>, DragError> {
    s.validate()?;
    fluid.validate()?;
    let n = stations.max(1);
    let length = p.hull_length();
    let nu = fluid.kinematic_viscosity;
    let u = s.velocity;
    let dx = length / from_usize::<T>(n);
    let q = lit::<T>(0.5) * fluid.density * u * u;
    let x_tr = transition_x(u, s.turbulence_intensity, nu);
    let s0 = lit::<T>(SEPARATION_SLOPE);
    let two_pi = T::TAU();

    let mut friction = T::zero();
    let mut separation = T::zero();
    for x in p.midpoints(n) {
        let (r, slope) = p.radius_and_slope(x);
        let regime = if x < x_tr {
            FlowRegime::Laminar
        } else {
            FlowRegime::Turbulent
        };
        let cf = local_cf(reynolds(u, x, nu), regime);
        friction = friction + cf * two_pi * r * (T::one() + slope * slope).sqrt();
        let excess = (slope.abs() - s0).max(T::zero());
        separation = separation + excess * excess * two_pi * r;
    }
    let friction = q * friction * dx;
    let separation = q * lit::<T>(SEPARATION_COEFF) * separation * dx;
    let k_form = form_factor(lit::<T>(2.0) * p.max_radius(), length);
    let form = k_form * friction;

    Ok(DragBreakdown {
        friction,
        form,
        separation,
        total: friction + form + separation,
        transition_x: x_tr,
        reynolds_l: reynolds(u, length, nu),
    })
}
