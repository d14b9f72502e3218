//! Coupled-mode closed form for trench-assisted cores.
//!
//! The mode coupling coefficient between two identical trench-assisted
//! cores at pitch Λ is
//!
//! ```text
//! κ ≅ √(ΓΔ1)/r1 · U1²/(V1³ K1²(W1)) · √(π r1/(W1 Λ)) · exp{−[W1 Λ + 1.2(1+V1) w_tr]/r1}
//! Γ  = W1 / (W1 + 1.2(1+V1) w_tr/Λ)
//! V1 = 2π f r1 n_core √(2Δ1) / c
//! K1(W1) ≈ √(π/(2W1)) e^(−W1)
//! ```
//!
//! and the power coupling coefficient for a bent fiber is
//! `Ω = c κ² r_b n_core / (π f Λ)`.
//!
//! W1 comes from a linear fit in V1 and U1² from either the step-index
//! relation or the tabulated expansion; see [`WApproximation`] and
//! [`UFormula`].

use serde::{Deserialize, Serialize};

use super::{FiberSpec, TrenchProfile};
use crate::error::{Error, Result};
use crate::units::SPEED_OF_LIGHT;

/// Linear fit used for the normalised transverse decay constant W1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WApproximation {
    /// `W1 = 1.1428 V1 − 0.996`, the usual step-index fit for
    /// 1.5 ≤ V1 ≤ 2.5. Keeps W1 < V1 across the C+L+S band.
    #[default]
    StepIndex,
    /// `W1 = 1.143 V1 − 0.22`. Exceeds V1 for V1 > 1.54, which makes the
    /// step-index U1² negative; only usable together with
    /// [`UFormula::Printed`].
    Printed,
}

impl WApproximation {
    pub fn coefficients(self) -> (f64, f64) {
        match self {
            WApproximation::StepIndex => (1.1428, 0.996),
            WApproximation::Printed => (1.143, 0.22),
        }
    }
}

/// How U1² is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UFormula {
    /// `U1² = V1² − W1²`.
    #[default]
    StepIndex,
    /// `U1² = [2π f r1/(n c)]² (n⁴ − 1)` with n taken as the core index.
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CouplingModel {
    #[serde(default)]
    pub w_approximation: WApproximation,
    #[serde(default)]
    pub u_formula: UFormula,
}

/// Normalised frequency V1 of a core at `f_hz`.
pub fn v_number(f_hz: f64, trench: &TrenchProfile) -> f64 {
    2.0 * std::f64::consts::PI
        * f_hz
        * trench.core_radius()
        * trench.n_core()
        * (2.0 * trench.delta1()).sqrt()
        / SPEED_OF_LIGHT
}

/// W1 from V1 under the given fit.
pub fn w_parameter(v1: f64, approx: WApproximation) -> Result<f64> {
    let (a, b) = approx.coefficients();
    let w1 = a * v1 - b;
    if !(w1 > 0.0) {
        return Err(Error::NonPositiveW { v1, w1 });
    }
    Ok(w1)
}

/// √(π/(2W)) e^(−W), the large-argument form of the modified Bessel K1.
pub fn bessel_k1_asymptotic(w: f64) -> f64 {
    (std::f64::consts::PI / (2.0 * w)).sqrt() * (-w).exp()
}

/// Auxiliary quantities of the coupling closed form at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingIntermediates {
    pub v1: f64,
    pub w1: f64,
    pub u1_sq: f64,
    /// Γ, the trench correction factor. Exactly 1 without a trench.
    pub gamma_trench: f64,
    pub k1_w1: f64,
}

impl CouplingIntermediates {
    pub fn compute(
        f_hz: f64,
        trench: &TrenchProfile,
        pitch: f64,
        model: CouplingModel,
    ) -> Result<Self> {
        if !(f_hz > 0.0) || !(pitch > 0.0) {
            return Err(Error::invalid("frequency and pitch must be positive"));
        }
        let v1 = v_number(f_hz, trench);
        let w1 = w_parameter(v1, model.w_approximation)?;
        let u1_sq = match model.u_formula {
            UFormula::StepIndex => v1 * v1 - w1 * w1,
            UFormula::Printed => {
                let n = trench.n_core();
                let k =
                    2.0 * std::f64::consts::PI * f_hz * trench.core_radius() / (n * SPEED_OF_LIGHT);
                k * k * (n.powi(4) - 1.0)
            }
        };
        if u1_sq < 0.0 {
            return Err(Error::NegativeU { v1, w1, u1_sq });
        }
        let trench_term = 1.2 * (1.0 + v1) * trench.trench_width();
        let gamma_trench = if trench.trench_width() == 0.0 {
            1.0
        } else {
            w1 / (w1 + trench_term / pitch)
        };
        Ok(Self {
            v1,
            w1,
            u1_sq,
            gamma_trench,
            k1_w1: bessel_k1_asymptotic(w1),
        })
    }
}

/// Mode coupling coefficient κ, 1/m, between adjacent cores at `pitch` (m).
pub fn mode_coupling_coefficient(
    f_hz: f64,
    trench: &TrenchProfile,
    pitch: f64,
    model: CouplingModel,
) -> Result<f64> {
    let aux = CouplingIntermediates::compute(f_hz, trench, pitch, model)?;
    Ok(kappa_from(&aux, trench, pitch))
}

pub(crate) fn kappa_from(aux: &CouplingIntermediates, trench: &TrenchProfile, pitch: f64) -> f64 {
    let r1 = trench.core_radius();
    let CouplingIntermediates {
        v1,
        w1,
        u1_sq,
        gamma_trench,
        k1_w1,
    } = *aux;
    let exponent = -(w1 * pitch + 1.2 * (1.0 + v1) * trench.trench_width()) / r1;
    (gamma_trench * trench.delta1()).sqrt() / r1 * u1_sq / (v1.powi(3) * k1_w1 * k1_w1)
        * (std::f64::consts::PI * r1 / (w1 * pitch)).sqrt()
        * exponent.exp()
}

/// Ω = c κ² r_b n_core / (π f Λ) from raw parameters (SI units).
pub fn power_coupling_from(
    f_hz: f64,
    kappa: f64,
    bend_radius: f64,
    n_core: f64,
    pitch: f64,
) -> f64 {
    SPEED_OF_LIGHT * kappa * kappa * bend_radius * n_core / (std::f64::consts::PI * f_hz * pitch)
}

/// Power coupling coefficient Ω, 1/m, for `spec`'s bend radius, core index
/// and pitch. Single-core fibers have no coupling.
pub fn power_coupling_coefficient(f_hz: f64, kappa: f64, spec: &FiberSpec) -> Result<f64> {
    if !(kappa >= 0.0) {
        return Err(Error::invalid("kappa must be >= 0"));
    }
    let Some(layout) = spec.layout() else {
        return Ok(0.0);
    };
    Ok(power_coupling_from(
        f_hz,
        kappa,
        spec.bend_radius(),
        spec.n_core(),
        layout.pitch(),
    ))
}
