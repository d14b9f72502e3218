//! Quality of transmission: span-by-span noise accumulation into a GSNR,
//! and the GMI / bit-rate decision taken on top of it.

mod gmi;
mod gsnr;
mod noise;
mod span;

pub use gmi::{
    backsolve_required_gsnr, icxt_threshold, net_bitrate_gbps, select_gmi, GmiLevel, GmiTable,
    SelectionBasis, DEFAULT_GSNR_THRESHOLDS_DB, GMI_BITS, PUBLISHED_CHI,
    PUBLISHED_ICXT_THRESHOLDS_DB,
};
pub use gsnr::{accumulate_gsnr, Penalties, QotBreakdown, SpanNoise};
pub use noise::{ase_power, icxt_noise_power, IncoherentGn, NliEstimator};
pub use span::{segment_link, LaunchPower, SpanState};
