use crate::error::{Error, Result};

/// Index profile of one trench-assisted core.
///
/// All lengths in metres. `delta_ratio` is |Δ2/Δ1|; the W1 fit used by the
/// coupling model was derived for a ratio of exactly 2, so nothing else is
/// accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrenchProfile {
    core_radius: f64,
    core_trench_gap: f64,
    trench_width: f64,
    delta1: f64,
    delta_ratio: f64,
    n_core: f64,
}

impl TrenchProfile {
    pub fn new(
        core_radius: f64,
        core_trench_gap: f64,
        trench_width: f64,
        delta1: f64,
        delta_ratio: f64,
        n_core: f64,
    ) -> Result<Self> {
        if !(core_radius > 0.0) {
            return Err(Error::invalid("core radius r1 must be positive"));
        }
        if !(core_trench_gap >= core_radius) {
            return Err(Error::invalid("core-to-trench distance r2 must be >= r1"));
        }
        if !(trench_width >= 0.0) || !trench_width.is_finite() {
            return Err(Error::invalid("trench width must be >= 0"));
        }
        if !(delta1 > 0.0 && delta1 < 0.05) {
            return Err(Error::invalid(format!(
                "delta1 = {delta1} outside (0, 0.05)"
            )));
        }
        if delta_ratio != 2.0 {
            return Err(Error::invalid(format!(
                "delta2/delta1 = {delta_ratio}; the W1 approximation is only valid for 2"
            )));
        }
        if !(n_core > 1.0) {
            return Err(Error::invalid("core refractive index must exceed 1"));
        }
        Ok(Self {
            core_radius,
            core_trench_gap,
            trench_width,
            delta1,
            delta_ratio,
            n_core,
        })
    }

    /// Same profile with the trench width set to `ratio · r1`.
    pub fn with_width_ratio(&self, ratio: f64) -> Result<Self> {
        Self::new(
            self.core_radius,
            self.core_trench_gap,
            ratio * self.core_radius,
            self.delta1,
            self.delta_ratio,
            self.n_core,
        )
    }

    pub fn with_delta1(&self, delta1: f64) -> Result<Self> {
        Self::new(
            self.core_radius,
            self.core_trench_gap,
            self.trench_width,
            delta1,
            self.delta_ratio,
            self.n_core,
        )
    }

    /// r1, m.
    pub fn core_radius(&self) -> f64 {
        self.core_radius
    }

    /// r2, m.
    pub fn core_trench_gap(&self) -> f64 {
        self.core_trench_gap
    }

    /// w_tr, m.
    pub fn trench_width(&self) -> f64 {
        self.trench_width
    }

    pub fn width_ratio(&self) -> f64 {
        self.trench_width / self.core_radius
    }

    pub fn delta1(&self) -> f64 {
        self.delta1
    }

    pub fn delta_ratio(&self) -> f64 {
        self.delta_ratio
    }

    pub fn n_core(&self) -> f64 {
        self.n_core
    }
}
