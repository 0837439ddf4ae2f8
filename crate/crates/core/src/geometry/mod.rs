//! Hull parametrization: design vector → radius profile → surface quantities
//! and meshes.

mod design;
mod pchip;
mod profile;
mod stl;

pub use design::{
    design_bounds, Bound, BoundViolation, DesignError, DesignVector, DESIGN_DIM, HULL_LENGTH,
    MAX_DIAMETER, MAX_RADIUS, NOSE_LENGTH_MAX, NOSE_LENGTH_MIN, N_CONTROL,
};
pub use pchip::{MonotoneCubic, PchipError};
pub use profile::{
    build_profile, export_profile_csv, parse_profile_csv, GeometryError, HullProfile,
    DEFAULT_STATIONS,
};
pub use stl::{check_watertight, export_stl, parse_binary_stl, MeshStats, StlError, StlMesh};
