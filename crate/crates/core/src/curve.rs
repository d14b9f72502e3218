//! Piecewise-linear frequency curves (attenuation, effective area, ...).

use crate::error::{Error, Result};
use crate::units::THZ;

/// A tabulated quantity as a function of frequency.
///
/// Points are stored in Hz, strictly increasing. Lookups interpolate
/// linearly between neighbours and refuse to extrapolate.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyCurve {
    name: String,
    points: Vec<(f64, f64)>,
}

impl FrequencyCurve {
    /// Build from `(frequency_THz, value)` rows as they appear in fiber files.
    pub fn from_thz_rows(name: impl Into<String>, rows: &[(f64, f64)]) -> Result<Self> {
        let name = name.into();
        if rows.len() < 2 {
            return Err(Error::invalid(format!(
                "curve `{name}` needs at least two points"
            )));
        }
        let points: Vec<(f64, f64)> = rows.iter().map(|&(f, v)| (f * THZ, v)).collect();
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::invalid(format!(
                    "curve `{name}` frequencies must be strictly increasing"
                )));
            }
        }
        if points.iter().any(|(f, v)| !f.is_finite() || !v.is_finite()) {
            return Err(Error::invalid(format!(
                "curve `{name}` has non-finite values"
            )));
        }
        Ok(Self { name, points })
    }

    /// Constant value over `[lo_hz, hi_hz]`.
    pub fn flat(name: impl Into<String>, lo_hz: f64, hi_hz: f64, value: f64) -> Self {
        Self {
            name: name.into(),
            points: vec![(lo_hz, value), (hi_hz, value)],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn range_hz(&self) -> (f64, f64) {
        (self.points[0].0, self.points[self.points.len() - 1].0)
    }

    pub fn covers(&self, f_hz: f64) -> bool {
        let (lo, hi) = self.range_hz();
        f_hz >= lo && f_hz <= hi
    }

    pub fn at(&self, f_hz: f64) -> Result<f64> {
        let (lo, hi) = self.range_hz();
        if !(f_hz >= lo && f_hz <= hi) {
            return Err(Error::MissingCurve {
                curve: self.name.clone(),
                f_thz: f_hz / THZ,
                lo_thz: lo / THZ,
                hi_thz: hi / THZ,
            });
        }
        let i = self.points.partition_point(|&(f, _)| f <= f_hz);
        if i >= self.points.len() {
            return Ok(self.points[self.points.len() - 1].1);
        }
        let (f0, v0) = self.points[i - 1];
        let (f1, v1) = self.points[i];
        Ok(v0 + (v1 - v0) * (f_hz - f0) / (f1 - f0))
    }
}
