use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::band::{BandName, BandPlan};
use crate::error::{Error, Result};
use crate::fiber::FiberSpec;
use crate::units::{db_to_linear, dbm_to_watt, KM, THZ};

/// Split a link into ⌈length/max⌉ equal spans (km).
pub fn segment_link(length_km: f64, max_span_km: f64) -> Result<Vec<f64>> {
    if !(length_km > 0.0) || !length_km.is_finite() {
        return Err(Error::invalid(format!(
            "link length {length_km} km must be positive"
        )));
    }
    if !(max_span_km > 0.0) {
        return Err(Error::invalid("maximum span length must be positive"));
    }
    let n = (length_km / max_span_km).ceil().max(1.0) as usize;
    Ok(vec![length_km / n as f64; n])
}

/// Per-channel launch power: a flat level per band plus a linear pre-tilt.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LaunchPower {
    pub per_channel_dbm: f64,
    pub tilt_db_per_thz: f64,
    /// Frequency at which the tilt is zero; band-plan centre when absent.
    pub tilt_reference_thz: Option<f64>,
    pub band_offset_db: BTreeMap<BandName, f64>,
}

impl Default for LaunchPower {
    fn default() -> Self {
        Self {
            per_channel_dbm: 0.0,
            tilt_db_per_thz: 0.0,
            tilt_reference_thz: None,
            band_offset_db: BTreeMap::new(),
        }
    }
}

impl LaunchPower {
    pub fn flat_dbm(per_channel_dbm: f64) -> Self {
        Self {
            per_channel_dbm,
            ..Self::default()
        }
    }

    /// Launch power of every channel of `band`, W.
    pub fn powers_w(&self, band: &BandPlan) -> Vec<f64> {
        let f_ref = self
            .tilt_reference_thz
            .map(|f| f * THZ)
            .unwrap_or_else(|| band.centre_hz());
        band.channels()
            .iter()
            .map(|ch| {
                let offset = self.band_offset_db.get(&ch.band).copied().unwrap_or(0.0);
                let tilt = self.tilt_db_per_thz * (ch.freq_hz - f_ref) / THZ;
                dbm_to_watt(self.per_channel_dbm + offset + tilt)
            })
            .collect()
    }
}

/// Power levels around one amplified span.
///
/// With ideal gain equalisation the amplifier at the end of the span
/// restores every channel to its launch level, so the next span's launch
/// power equals this span's.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanState {
    pub index: usize,
    /// m.
    pub length: f64,
    /// Per-channel power at the span input, W.
    pub launch_power: Vec<f64>,
    /// Per-channel power at the span output, W.
    pub received_power: Vec<f64>,
    /// Per-channel amplifier gain, linear.
    pub gain: Vec<f64>,
}

impl SpanState {
    pub fn new(
        index: usize,
        length: f64,
        launch_power: Vec<f64>,
        spec: &FiberSpec,
        band: &BandPlan,
    ) -> Result<Self> {
        if launch_power.len() != band.channel_count() {
            return Err(Error::invalid(
                "launch power vector does not match the band plan",
            ));
        }
        if !(length > 0.0) {
            return Err(Error::invalid("span length must be positive"));
        }
        let mut received_power = Vec::with_capacity(launch_power.len());
        let mut gain = Vec::with_capacity(launch_power.len());
        for (ch, &p) in band.channels().iter().zip(&launch_power) {
            let loss_db = spec.attenuation_db_per_km(ch.freq_hz)? * length / KM;
            let g = db_to_linear(loss_db);
            received_power.push(p / g);
            gain.push(g);
        }
        Ok(Self {
            index,
            length,
            launch_power,
            received_power,
            gain,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segmentation_examples() {
        assert_eq!(segment_link(80.0, 80.0).unwrap(), vec![80.0]);
        assert_eq!(segment_link(81.0, 80.0).unwrap(), vec![40.5, 40.5]);
        assert_eq!(segment_link(447.0, 80.0).unwrap(), vec![74.5; 6]);
        assert_eq!(segment_link(10.0, 80.0).unwrap(), vec![10.0]);
        assert!(segment_link(0.0, 80.0).is_err());
        assert!(segment_link(-5.0, 80.0).is_err());
    }

    #[test]
    fn gain_restores_launch_power() {
        let band = BandPlan::default_clse();
        let spec = FiberSpec::builtin("SSMF").unwrap();
        let launch = LaunchPower::default().powers_w(&band);
        let s = SpanState::new(0, 80.0 * KM, launch.clone(), &spec, &band).unwrap();
        for ((g, rx), tx) in s.gain.iter().zip(&s.received_power).zip(&launch) {
            assert!(*g >= 1.0);
            assert!((rx * g - tx).abs() < 1e-18);
        }
    }

    #[test]
    fn tilt_is_linear_about_reference() {
        let band = BandPlan::default_clse();
        let lp = LaunchPower {
            tilt_db_per_thz: 0.1,
            tilt_reference_thz: Some(193.0),
            ..LaunchPower::default()
        };
        let p = lp.powers_w(&band);
        for (ch, w) in band.channels().iter().zip(&p) {
            let expected = 0.1 * (ch.freq_hz / THZ - 193.0);
            assert!((crate::units::watt_to_dbm(*w) - expected).abs() < 1e-9);
        }
    }
}
