//! Drag-minimizing hull design by Bayesian optimization.
//!
//! A 7-parameter axisymmetric hull (six control diameters and a nose length)
//! is optimized with a Gaussian-process surrogate and the lower confidence
//! bound acquisition, across a matrix of operating speeds and free-stream
//! turbulence intensities. Each scenario's optimum is then evaluated in every
//! other scenario to look for a design that is near-optimal everywhere.
//!
//! The numeric modules are generic over [`Scalar`] (`f32`/`f64`); the
//! aliases below fix them to `f64`, which is what the campaign and CLI use.

pub mod bo;
pub mod campaign;
pub mod drag;
pub mod foamcase;
pub mod geometry;
pub mod gp;
pub mod numfmt;
pub mod scalar;

pub use scalar::Scalar;

pub type Design = geometry::DesignVector<f64>;
pub type Profile = geometry::HullProfile<f64>;
pub type Scenario = drag::Scenario<f64>;
pub type Fluid = drag::FluidProps<f64>;
pub type Breakdown = drag::DragBreakdown<f64>;
pub type Gp = gp::GpModel<f64>;
pub type Kernel = gp::KernelParams<f64>;
pub type Trace = bo::Trace<f64>;
pub type BoConfig = bo::BoConfig<f64>;
pub type TurbulenceIc = foamcase::TurbulenceIC<f64>;

pub type Design32 = geometry::DesignVector<f32>;
pub type Profile32 = geometry::HullProfile<f32>;
pub type Gp32 = gp::GpModel<f32>;
