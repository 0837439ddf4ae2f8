//! External CFD hand-off: turbulence inflow conditions, case-directory
//! emission and force-log parsing. Never runs a solver.

mod case;
mod forcelog;
mod ic;

pub use case::{render_case, write_case, CaseError, FORCE_LOG, STL_AXIAL, STL_CIRC};
pub use forcelog::{parse_force_log, ForceHistory, ForceLogError};
pub use ic::{turbulence_ic, IcError, TurbulenceIC, C_MU, LENGTH_SCALE_FRACTION};
