//! GMI levels, crosstalk thresholds and modulation selection.

use serde::{Deserialize, Serialize};

use super::QotBreakdown;
use crate::error::{Error, Result};
use crate::units::{db_to_linear, linear_to_db};

/// Crosstalk weighting χ per level, m = 1..6.
pub const PUBLISHED_CHI: [f64; 6] = [0.5, 1.0, 3.41, 5.0, 10.0, 21.0];

/// Published crosstalk thresholds per level for a 1 dB penalty, dB.
pub const PUBLISHED_ICXT_THRESHOLDS_DB: [f64; 6] = [-10.58, -13.59, -18.93, -20.58, -23.59, -26.82];

/// GMI per dual-polarisation symbol for m = 1..6.
pub const GMI_BITS: [u32; 6] = [2, 4, 6, 8, 10, 12];

/// Theoretical required SNR at pre-FEC BER 1.5e-2 for DP-BPSK, DP-QPSK,
/// DP-8QAM, DP-16QAM, DP-32QAM and DP-64QAM (Gray mapping, nearest
/// neighbour approximation), dB.
pub const DEFAULT_GSNR_THRESHOLDS_DB: [f64; 6] = [3.72, 6.73, 10.17, 13.24, 16.16, 19.01];

/// μ_th = 10·log10[(1 − 10^(−Γ/10)) / (χ · 10^(G_th/10))], dB.
///
/// `penalty_db` is the tolerated SNR penalty Γ, `gsnr_req_db` the required
/// SNR G_th.
pub fn icxt_threshold(chi: f64, penalty_db: f64, gsnr_req_db: f64) -> f64 {
    linear_to_db((1.0 - db_to_linear(-penalty_db)) / (chi * db_to_linear(gsnr_req_db)))
}

/// Back-solve G_th from published (χ, μ_th) pairs. Returns the mean and
/// the spread (max − min) of the per-level solutions.
pub fn backsolve_required_gsnr(chi: &[f64], thresholds_db: &[f64], penalty_db: f64) -> (f64, f64) {
    let num = 1.0 - db_to_linear(-penalty_db);
    let g: Vec<f64> = chi
        .iter()
        .zip(thresholds_db)
        .map(|(&c, &t)| linear_to_db(num / c) - t)
        .collect();
    let mean = g.iter().sum::<f64>() / g.len() as f64;
    let lo = g.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (mean, hi - lo)
}

/// Net bit rate, Gb/s: symbol rate × GMI / (1 + FEC overhead).
pub fn net_bitrate_gbps(symbol_rate_gbaud: f64, gmi_bits: u32, fec_overhead: f64) -> f64 {
    symbol_rate_gbaud * gmi_bits as f64 / (1.0 + fec_overhead)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GmiLevel {
    pub m: u8,
    pub gmi_bits: u32,
    pub chi: f64,
    pub gsnr_threshold_db: f64,
    pub icxt_threshold_db: f64,
    pub net_bitrate_gbps: f64,
}

/// Which GSNR is compared against the per-level threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionBasis {
    /// Thresholds apply to the crosstalk-free GSNR; crosstalk is admitted
    /// through the per-level ICXT threshold, which already budgets its
    /// penalty.
    #[default]
    IcxtBudget,
    /// Thresholds apply to the GSNR with the crosstalk term included.
    FullGsnr,
}

impl SelectionBasis {
    pub fn gsnr_db(self, qot: &QotBreakdown) -> f64 {
        match self {
            SelectionBasis::IcxtBudget => qot.gsnr_excl_icxt_db,
            SelectionBasis::FullGsnr => qot.gsnr_db,
        }
    }
}

/// Immutable modulation table, ascending in m.
#[derive(Debug, Clone, PartialEq)]
pub struct GmiTable {
    levels: Vec<GmiLevel>,
}

impl GmiTable {
    pub fn new(levels: Vec<GmiLevel>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::invalid("GMI table is empty"));
        }
        for w in levels.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if b.m <= a.m {
                return Err(Error::invalid("GMI table must be sorted by m"));
            }
            if !(b.gsnr_threshold_db > a.gsnr_threshold_db) {
                return Err(Error::invalid("GSNR thresholds must increase with m"));
            }
            if !(b.icxt_threshold_db < a.icxt_threshold_db) {
                return Err(Error::invalid("ICXT thresholds must decrease with m"));
            }
        }
        Ok(Self { levels })
    }

    /// Six levels, GMI 2..12, published χ and ICXT thresholds, 28 % FEC.
    pub fn standard(symbol_rate_gbaud: f64) -> Self {
        let levels = (0..6)
            .map(|i| GmiLevel {
                m: i as u8 + 1,
                gmi_bits: GMI_BITS[i],
                chi: PUBLISHED_CHI[i],
                gsnr_threshold_db: DEFAULT_GSNR_THRESHOLDS_DB[i],
                icxt_threshold_db: PUBLISHED_ICXT_THRESHOLDS_DB[i],
                net_bitrate_gbps: net_bitrate_gbps(symbol_rate_gbaud, GMI_BITS[i], 0.28),
            })
            .collect();
        Self::new(levels).expect("standard table is consistent")
    }

    pub fn levels(&self) -> &[GmiLevel] {
        &self.levels
    }

    pub fn level(&self, m: u8) -> Option<&GmiLevel> {
        self.levels.iter().find(|l| l.m == m)
    }

    pub fn highest(&self) -> &GmiLevel {
        self.levels.last().expect("non-empty")
    }
}

/// Highest level whose GSNR threshold is met and whose crosstalk threshold
/// is not reached. `None` when even the lowest level fails.
pub fn select_gmi<'t>(
    qot: &QotBreakdown,
    worst_mu_icxt_db: f64,
    table: &'t GmiTable,
    basis: SelectionBasis,
) -> Option<&'t GmiLevel> {
    let gsnr = basis.gsnr_db(qot);
    table
        .levels()
        .iter()
        .rev()
        .find(|l| gsnr >= l.gsnr_threshold_db && worst_mu_icxt_db < l.icxt_threshold_db)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qot(gsnr_db: f64) -> QotBreakdown {
        QotBreakdown {
            snr_ase: 1.0,
            snr_nli: 1.0,
            snr_icxt: f64::INFINITY,
            snr_trx: f64::INFINITY,
            penalty_filter_db: 0.0,
            margin_aging_db: 0.0,
            gsnr_db,
            gsnr_excl_icxt_db: gsnr_db,
        }
    }

    #[test]
    fn published_thresholds_from_chi() {
        assert!((icxt_threshold(21.0, 1.0, 6.72) + 26.82).abs() < 0.01);
        assert!((icxt_threshold(0.5, 1.0, 6.72) + 10.58).abs() < 0.01);
        assert_eq!(icxt_threshold(1.0, 0.0, 6.72), f64::NEG_INFINITY);
    }

    #[test]
    fn backsolved_gth_is_common() {
        let (g, spread) =
            backsolve_required_gsnr(&PUBLISHED_CHI, &PUBLISHED_ICXT_THRESHOLDS_DB, 1.0);
        assert!((g - 6.7252).abs() < 1e-3);
        assert!(spread < 0.02);
    }

    #[test]
    fn bitrates_are_exact() {
        let t = GmiTable::standard(64.0);
        let r: Vec<f64> = t.levels().iter().map(|l| l.net_bitrate_gbps).collect();
        assert_eq!(r, vec![100.0, 200.0, 300.0, 400.0, 500.0, 600.0]);
    }

    #[test]
    fn selection_examples() {
        let t = GmiTable::standard(64.0);
        let b = SelectionBasis::IcxtBudget;
        assert_eq!(select_gmi(&qot(25.0), -40.0, &t, b).unwrap().m, 6);
        assert_eq!(
            select_gmi(&qot(25.0), -40.0, &t, b)
                .unwrap()
                .net_bitrate_gbps,
            600.0
        );
        // −25 dB breaks the m = 6 crosstalk bound (−26.82 dB)
        assert_eq!(select_gmi(&qot(25.0), -25.0, &t, b).unwrap().m, 5);
        assert!(select_gmi(&qot(1.0), -40.0, &t, b).is_none());
        assert!(select_gmi(&qot(25.0), -5.0, &t, b).is_none());
        assert_eq!(
            select_gmi(&qot(14.0), f64::NEG_INFINITY, &t, b).unwrap().m,
            4
        );
    }

    #[test]
    fn basis_picks_the_right_gsnr() {
        let mut q = qot(13.3);
        q.gsnr_db = 13.2;
        let t = GmiTable::standard(64.0);
        assert_eq!(
            select_gmi(&q, -40.0, &t, SelectionBasis::IcxtBudget)
                .unwrap()
                .m,
            4
        );
        assert_eq!(
            select_gmi(&q, -40.0, &t, SelectionBasis::FullGsnr)
                .unwrap()
                .m,
            3
        );
    }

    #[test]
    fn table_rejects_non_monotone_thresholds() {
        let mut levels = GmiTable::standard(64.0).levels().to_vec();
        levels[2].icxt_threshold_db = -5.0;
        assert!(GmiTable::new(levels).is_err());
    }
}
