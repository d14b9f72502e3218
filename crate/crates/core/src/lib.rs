//! Planning and analysis toolkit for multi-band (C+L+S) elastic optical
//! networks built on trench-assisted multi-core fibers.
//!
//! The crate is organised bottom-up:
//!
//! * [`fiber`]: trench-assisted coupled-mode model, mean inter-core
//!   crosstalk, core layouts, geometry validation and the ultra-low
//!   crosstalk (UL-ICXT) classification.
//! * [`band`]: the channel grid shared by every other module.
//! * [`qot`]: span-by-span noise accumulation into a GSNR and the mapping
//!   of GSNR plus crosstalk onto a GMI level and net bit rate.
//! * [`net`]: topologies, k-shortest paths, scenario evaluation and
//!   throughput aggregation for MCF and fiber-bundle deployments.
//! * [`config`] and [`report`]: run configuration files and CSV output.
//!
//! All internal physics runs in SI units (m, Hz, W). Decibels and
//! micrometres only appear at file and report boundaries.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod band;
pub mod config;
pub mod curve;
pub mod error;
pub mod fiber;
pub mod net;
pub mod qot;
pub mod report;
pub mod units;

pub use band::{Band, BandName, BandPlan, Channel};
pub use curve::FrequencyCurve;
pub use error::{Error, Result};
pub use fiber::{
    classify_ul_icxt, mean_icxt, mode_coupling_coefficient, power_coupling_coefficient, v_number,
    validate_geometry, w_parameter, CoreLayout, CouplingIntermediates, CouplingModel, FiberLibrary,
    FiberSpec, GeometryLimits, TrenchProfile, UFormula, UlClassification, ValidationReport,
    WApproximation,
};
pub use net::{
    evaluate_scenario, k_shortest_paths, sweep_fiber_response, Engine, Mode, Path, Scenario,
    ScenarioResult, Topology, TupleResult,
};
pub use qot::{
    accumulate_gsnr, ase_power, icxt_noise_power, icxt_threshold, segment_link, select_gmi,
    GmiLevel, GmiTable, LaunchPower, NliEstimator, Penalties, QotBreakdown, SelectionBasis,
    SpanNoise, SpanState,
};
