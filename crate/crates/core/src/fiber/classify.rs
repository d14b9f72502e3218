use super::{mean_icxt, CouplingModel, FiberSpec};
use crate::band::BandPlan;
use crate::error::Result;
use crate::units::linear_to_db;

/// Highest-GMI crosstalk threshold used as the default UL-ICXT bound, dB.
pub const DEFAULT_UL_THRESHOLD_DB: f64 = -26.82;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorstCase {
    pub freq_hz: f64,
    pub core: usize,
    pub mu_db: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UlClassification {
    pub is_ul: bool,
    /// Binding (channel, core). `None` for single-core fibers.
    pub worst: Option<WorstCase>,
}

/// Is every channel of every core below `threshold_db` after `reach` metres
/// with all neighbours lit?
pub fn classify_ul_icxt(
    spec: &FiberSpec,
    band: &BandPlan,
    reach: f64,
    threshold_db: f64,
    model: CouplingModel,
) -> Result<UlClassification> {
    let Some(layout) = spec.layout() else {
        return Ok(UlClassification {
            is_ul: true,
            worst: None,
        });
    };
    let mut worst: Option<WorstCase> = None;
    for ch in band.channels() {
        let (_, omega) = spec.coupling(ch.freq_hz, model)?;
        for core in layout.cores() {
            let mu_db = linear_to_db(mean_icxt(omega, core.n_adjacent, reach));
            if worst.is_none_or(|w| mu_db > w.mu_db) {
                worst = Some(WorstCase {
                    freq_hz: ch.freq_hz,
                    core: core.id,
                    mu_db,
                });
            }
        }
    }
    Ok(UlClassification {
        is_ul: worst.is_none_or(|w| w.mu_db < threshold_db),
        worst,
    })
}
