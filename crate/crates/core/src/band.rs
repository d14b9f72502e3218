//! The multi-band channel grid.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{GHZ, THZ};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BandName {
    C,
    L,
    S,
}

impl fmt::Display for BandName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BandName::C => "C",
            BandName::L => "L",
            BandName::S => "S",
        };
        f.write_str(s)
    }
}

/// One contiguous block of channels with a common amplifier type.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub name: BandName,
    /// Centre frequency of the first channel, Hz.
    pub f_start_hz: f64,
    pub channel_count: usize,
    /// Amplifier noise figure, dB.
    pub nf_db: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub index: usize,
    pub band: BandName,
    pub band_index: usize,
    pub freq_hz: f64,
}

/// Fixed-grid band plan. Channels are numbered in ascending frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct BandPlan {
    bands: Vec<Band>,
    channel_spacing_hz: f64,
    symbol_rate_baud: f64,
    channels: Vec<Channel>,
}

impl BandPlan {
    pub fn new(
        mut bands: Vec<Band>,
        channel_spacing_hz: f64,
        symbol_rate_baud: f64,
    ) -> Result<Self> {
        if bands.is_empty() || bands.iter().all(|b| b.channel_count == 0) {
            return Err(Error::invalid("band plan has no channels"));
        }
        if !(channel_spacing_hz > 0.0) || !(symbol_rate_baud > 0.0) {
            return Err(Error::invalid(
                "channel spacing and symbol rate must be positive",
            ));
        }
        if symbol_rate_baud > channel_spacing_hz {
            return Err(Error::invalid("symbol rate exceeds channel spacing"));
        }
        bands.sort_by(|a, b| a.f_start_hz.total_cmp(&b.f_start_hz));
        for pair in bands.windows(2) {
            let prev_top =
                pair[0].f_start_hz + (pair[0].channel_count as f64 - 0.5) * channel_spacing_hz;
            let next_bottom = pair[1].f_start_hz - 0.5 * channel_spacing_hz;
            if next_bottom < prev_top - 1e-6 {
                return Err(Error::invalid(format!(
                    "bands {} and {} overlap",
                    pair[0].name, pair[1].name
                )));
            }
        }
        for b in &bands {
            if !(b.f_start_hz > 0.0) {
                return Err(Error::invalid(format!(
                    "band {} has non-positive start",
                    b.name
                )));
            }
        }
        let mut channels = Vec::new();
        for (band_index, b) in bands.iter().enumerate() {
            for i in 0..b.channel_count {
                channels.push(Channel {
                    index: channels.len(),
                    band: b.name,
                    band_index,
                    freq_hz: b.f_start_hz + i as f64 * channel_spacing_hz,
                });
            }
        }
        Ok(Self {
            bands,
            channel_spacing_hz,
            symbol_rate_baud,
            channels,
        })
    }

    /// 268 × 75 GHz channels at 64 GBaud: L 64, C 64, S 140.
    /// Noise figures 5.0 / 4.5 / 6.0 dB.
    pub fn default_clse() -> Self {
        let spacing = 75.0 * GHZ;
        let bands = vec![
            Band {
                name: BandName::L,
                f_start_hz: 186.0375 * THZ,
                channel_count: 64,
                nf_db: 5.0,
            },
            Band {
                name: BandName::C,
                f_start_hz: 191.3375 * THZ,
                channel_count: 64,
                nf_db: 4.5,
            },
            Band {
                name: BandName::S,
                f_start_hz: 196.6375 * THZ,
                channel_count: 140,
                nf_db: 6.0,
            },
        ];
        Self::new(bands, spacing, 64.0 * GHZ).expect("default band plan is valid")
    }

    /// Keep `channels_per_band` evenly spaced channels of each band (edges
    /// included). The occupied bandwidth still reflects the full plan, so
    /// reduced-grid runs see a fully loaded system.
    pub fn decimated(&self, channels_per_band: usize) -> Result<Self> {
        if channels_per_band == 0 {
            return Err(Error::invalid(
                "decimated plan needs at least one channel per band",
            ));
        }
        let mut out = self.clone();
        out.channels.clear();
        for (band_index, b) in self.bands.iter().enumerate() {
            let n = channels_per_band.min(b.channel_count);
            for j in 0..n {
                let i = if n == 1 {
                    0
                } else {
                    j * (b.channel_count - 1) / (n - 1)
                };
                out.channels.push(Channel {
                    index: out.channels.len(),
                    band: b.name,
                    band_index,
                    freq_hz: b.f_start_hz + i as f64 * self.channel_spacing_hz,
                });
            }
        }
        Ok(out)
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn channel(&self, index: usize) -> Option<&Channel> {
        self.channels.get(index)
    }

    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    pub fn channel_spacing_hz(&self) -> f64 {
        self.channel_spacing_hz
    }

    pub fn symbol_rate_baud(&self) -> f64 {
        self.symbol_rate_baud
    }

    pub fn band(&self, channel: &Channel) -> &Band {
        &self.bands[channel.band_index]
    }

    /// Occupied optical bandwidth: channels × spacing.
    pub fn occupied_bandwidth_hz(&self) -> f64 {
        self.bands.iter().map(|b| b.channel_count).sum::<usize>() as f64 * self.channel_spacing_hz
    }

    pub fn lowest_hz(&self) -> f64 {
        self.channels[0].freq_hz
    }

    pub fn highest_hz(&self) -> f64 {
        self.channels[self.channels.len() - 1].freq_hz
    }

    /// Midpoint between lowest and highest channel centres.
    pub fn centre_hz(&self) -> f64 {
        0.5 * (self.lowest_hz() + self.highest_hz())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_plan_shape() {
        let plan = BandPlan::default_clse();
        assert_eq!(plan.channel_count(), 268);
        let count = |n| plan.channels().iter().filter(|c| c.band == n).count();
        assert_eq!(
            (count(BandName::C), count(BandName::L), count(BandName::S)),
            (64, 64, 140)
        );
        let nf: Vec<_> = plan.bands().iter().map(|b| (b.name, b.nf_db)).collect();
        assert!(nf.contains(&(BandName::C, 4.5)));
        assert!(nf.contains(&(BandName::L, 5.0)));
        assert!(nf.contains(&(BandName::S, 6.0)));
        for w in plan.channels().windows(2) {
            assert!(w[1].freq_hz > w[0].freq_hz);
        }
        assert!((plan.occupied_bandwidth_hz() - 20.1 * THZ).abs() < 1.0);
    }

    #[test]
    fn rejects_overlap_and_empty() {
        let b = |name, start_thz, n| Band {
            name,
            f_start_hz: start_thz * THZ,
            channel_count: n,
            nf_db: 5.0,
        };
        let spacing = 75.0 * GHZ;
        assert!(BandPlan::new(vec![], spacing, 64.0 * GHZ).is_err());
        assert!(BandPlan::new(vec![b(BandName::C, 191.0, 0)], spacing, 64.0 * GHZ).is_err());
        let overlapping = vec![b(BandName::C, 191.0, 10), b(BandName::L, 191.5, 10)];
        assert!(BandPlan::new(overlapping, spacing, 64.0 * GHZ).is_err());
    }

    #[test]
    fn decimation_keeps_band_edges() {
        let plan = BandPlan::default_clse().decimated(4).unwrap();
        assert_eq!(plan.channel_count(), 12);
        assert_eq!(plan.lowest_hz(), BandPlan::default_clse().lowest_hz());
        assert_eq!(plan.highest_hz(), BandPlan::default_clse().highest_hz());
    }
}
