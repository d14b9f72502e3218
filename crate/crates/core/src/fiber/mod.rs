//! Trench-assisted multi-core fiber physics.

mod classify;
mod coupling;
mod crosstalk;
mod geometry;
mod layout;
mod spec;
mod trench;

pub use classify::{classify_ul_icxt, UlClassification, WorstCase, DEFAULT_UL_THRESHOLD_DB};
pub use coupling::{
    bessel_k1_asymptotic, mode_coupling_coefficient, power_coupling_coefficient,
    power_coupling_from, v_number, w_parameter, CouplingIntermediates, CouplingModel, UFormula,
    WApproximation,
};
pub use crosstalk::mean_icxt;
pub use geometry::{
    validate_geometry, Finding, FindingKind, GeometryLimits, SeparationRule, Severity,
    ValidationReport,
};
pub use layout::{Core, CoreLayout};
pub use spec::{FiberLibrary, FiberSpec};
pub use trench::TrenchProfile;
