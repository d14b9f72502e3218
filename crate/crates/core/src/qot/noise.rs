use crate::band::BandPlan;
use crate::error::{Error, Result};
use crate::fiber::FiberSpec;
use crate::qot::SpanState;
use crate::units::{db_to_linear, PLANCK};

/// ASE power of a gain-equalised amplifier, W: `n_F h f (G − 1) R_ch`.
pub fn ase_power(nf_db: f64, f_hz: f64, gain: f64, symbol_rate: f64) -> f64 {
    debug_assert!(gain >= 1.0);
    db_to_linear(nf_db) * PLANCK * f_hz * (gain - 1.0) * symbol_rate
}

/// Crosstalk power injected over one span, W.
pub fn icxt_noise_power(mu_icxt: f64, p_tx: f64) -> f64 {
    mu_icxt * p_tx
}

/// Nonlinear interference generated in one span on one channel.
pub trait NliEstimator: Send + Sync {
    fn nli_power(
        &self,
        span: &SpanState,
        channel: usize,
        spec: &FiberSpec,
        band: &BandPlan,
    ) -> Result<f64>;
}

/// Incoherent Gaussian-noise closed form with the channel's own PSD taken
/// as flat across the occupied bandwidth B:
///
/// ```text
/// G_NLI = (8/27) γ² G³ L_eff² asinh(π²/2 |β2| L_eff,a B²) / (π |β2| L_eff,a)
/// P_NLI = G_NLI R_ch,    G = P_ch / R_ch
/// L_eff = (1 − e^(−αL))/α,   L_eff,a = 1/α
/// ```
///
/// Span contributions add incoherently along a path.
#[derive(Debug, Clone, Copy, Default)]
pub struct IncoherentGn;

impl NliEstimator for IncoherentGn {
    fn nli_power(
        &self,
        span: &SpanState,
        channel: usize,
        spec: &FiberSpec,
        band: &BandPlan,
    ) -> Result<f64> {
        let ch = band
            .channel(channel)
            .ok_or_else(|| Error::invalid(format!("channel {channel} not in band plan")))?;
        let p = span.launch_power[channel];
        if p == 0.0 {
            return Ok(0.0);
        }
        let f = ch.freq_hz;
        let alpha = spec.attenuation_per_m(f)?;
        let beta2 = spec.beta2_s2_per_m(f)?.abs();
        let gamma = spec.gamma_per_w_m(f)?;
        if !(alpha > 0.0) || !(beta2 > 0.0) {
            return Err(Error::invalid(format!(
                "fiber `{}` needs positive loss and non-zero dispersion",
                spec.name()
            )));
        }
        let r = band.symbol_rate_baud();
        let b = band.occupied_bandwidth_hz();
        let l_eff = -(-alpha * span.length).exp_m1() / alpha;
        let l_eff_a = 1.0 / alpha;
        let psd = p / r;
        let pi = std::f64::consts::PI;
        let g_nli = 8.0 / 27.0
            * gamma
            * gamma
            * psd.powi(3)
            * l_eff
            * l_eff
            * (pi * pi / 2.0 * beta2 * l_eff_a * b * b).asinh()
            / (pi * beta2 * l_eff_a);
        Ok(g_nli * r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qot::LaunchPower;
    use crate::units::{GHZ, KM, THZ};

    #[test]
    fn ase_reference_value() {
        // n_F = 10^0.45, P = n_F·h·f·14.85·64e9 evaluated independently.
        let p = ase_power(4.5, 193.4 * THZ, 15.85, 64.0 * GHZ);
        assert!(((p - 3.432_566_240_177_99e-7) / p).abs() < 1e-12);
        assert_eq!(ase_power(4.5, 193.4 * THZ, 1.0, 64.0 * GHZ), 0.0);
        let twice = ase_power(4.5, 193.4 * THZ, 15.85, 128.0 * GHZ);
        assert!((twice / p - 2.0).abs() < 1e-12);
    }

    #[test]
    fn icxt_power_is_a_product() {
        assert_eq!(icxt_noise_power(0.0, 1e-3), 0.0);
        assert!((icxt_noise_power(1e-4, 1e-3) - 1e-7).abs() < 1e-20);
    }

    fn one_span(dbm: f64) -> (SpanState, FiberSpec, BandPlan) {
        let band = BandPlan::default_clse();
        let spec = FiberSpec::builtin("MC04").unwrap();
        let launch = LaunchPower::flat_dbm(dbm).powers_w(&band);
        let s = SpanState::new(0, 80.0 * KM, launch, &spec, &band).unwrap();
        (s, spec, band)
    }

    #[test]
    fn nli_is_cubic_in_power() {
        let (s1, spec, band) = one_span(0.0);
        let (s2, _, _) = one_span(10.0 * 2f64.log10());
        for ch in [0, 100, 267] {
            let a = IncoherentGn.nli_power(&s1, ch, &spec, &band).unwrap();
            let b = IncoherentGn.nli_power(&s2, ch, &spec, &band).unwrap();
            assert!((b / a - 8.0).abs() < 1e-9);
        }
        let mut zero = s1.clone();
        zero.launch_power[5] = 0.0;
        assert_eq!(IncoherentGn.nli_power(&zero, 5, &spec, &band).unwrap(), 0.0);
    }

    #[test]
    fn nli_regression_single_span() {
        // MC04 at 193.4 THz (alpha 0.17 dB/km, gamma 1.3173 /W/km,
        // |beta2| 21.694 ps^2/km), 80 km, 0 dBm, B = 20.1 THz, 64 GBaud.
        // Independent evaluation of the same closed form: 6.286628611817198e-07 W.
        let band = BandPlan::new(
            vec![crate::band::Band {
                name: crate::band::BandName::C,
                f_start_hz: 193.4 * THZ,
                channel_count: 268,
                nf_db: 4.5,
            }],
            75.0 * GHZ,
            64.0 * GHZ,
        );
        // 268 channels from 193.4 THz would run past the curves; only the
        // occupied bandwidth and the first channel matter here.
        let band = band.unwrap();
        let spec = FiberSpec::builtin("MC04").unwrap();
        let mut s = SpanState {
            index: 0,
            length: 80.0 * KM,
            launch_power: vec![1e-3; 268],
            received_power: vec![0.0; 268],
            gain: vec![1.0; 268],
        };
        s.launch_power[0] = 1e-3;
        let p = IncoherentGn.nli_power(&s, 0, &spec, &band).unwrap();
        assert!(((p - 6.286_628_611_817_198e-7) / p).abs() < 1e-9, "{p}");
    }
}
