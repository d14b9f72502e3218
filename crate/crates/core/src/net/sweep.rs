use crate::band::BandPlan;
use crate::error::Result;
use crate::fiber::{mean_icxt, CouplingModel, FiberSpec};
use crate::units::linear_to_db;

/// One (fiber, trench ratio, frequency) sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub fiber: String,
    pub ratio: f64,
    pub freq_hz: f64,
    /// Ω, 1/m.
    pub pcc: f64,
    /// κ, 1/m.
    pub mcc: f64,
    /// Mean crosstalk of the most-coupled core after `reach`, dB.
    pub icxt_db: f64,
}

/// PCC, MCC and worst-core crosstalk over every channel of `band` for each
/// trench width ratio. `reach` in metres.
pub fn sweep_fiber_response(
    spec: &FiberSpec,
    band: &BandPlan,
    ratios: &[f64],
    reach: f64,
    model: CouplingModel,
) -> Result<Vec<SweepRow>> {
    spec.check_coverage(band)?;
    let n_ac = spec.layout().map_or(0, |l| l.max_adjacency());
    let mut rows = Vec::with_capacity(ratios.len() * band.channel_count());
    for &ratio in ratios {
        let variant = if spec.is_multicore() {
            spec.with_trench_ratio(ratio)?
        } else {
            spec.clone()
        };
        for ch in band.channels() {
            let (mcc, pcc) = variant.coupling(ch.freq_hz, model)?;
            rows.push(SweepRow {
                fiber: spec.name().to_owned(),
                ratio,
                freq_hz: ch.freq_hz,
                pcc,
                mcc,
                icxt_db: linear_to_db(mean_icxt(pcc, n_ac, reach)),
            });
        }
    }
    Ok(rows)
}
