use crate::error::{Error, Result};
use crate::units::{db_to_linear, linear_to_db};

/// Noise injected over one span on one channel, W, together with the
/// signal power it is referred to (the launch power of the next span).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpanNoise {
    pub signal_w: f64,
    pub ase_w: f64,
    pub nli_w: f64,
    pub icxt_w: f64,
}

/// End-to-end impairments that are not accumulated span by span.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Penalties {
    /// Transceiver SNR, dB. `f64::INFINITY` for an ideal transceiver.
    pub snr_trx_db: f64,
    /// Total filtering penalty σ_Flt, dB.
    pub filter_db: f64,
    /// Aging margin σ_Ag, dB.
    pub aging_db: f64,
}

impl Penalties {
    pub const NONE: Penalties = Penalties {
        snr_trx_db: f64::INFINITY,
        filter_db: 0.0,
        aging_db: 0.0,
    };
}

/// Component SNRs (linear) and the resulting GSNR of one lightpath tuple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QotBreakdown {
    pub snr_ase: f64,
    pub snr_nli: f64,
    pub snr_icxt: f64,
    pub snr_trx: f64,
    pub penalty_filter_db: f64,
    pub margin_aging_db: f64,
    /// GSNR with all four noise terms, after penalties.
    pub gsnr_db: f64,
    /// GSNR with ASE, NLI and transceiver noise only, after penalties.
    pub gsnr_excl_icxt_db: f64,
}

impl QotBreakdown {
    pub fn snr_ase_db(&self) -> f64 {
        linear_to_db(self.snr_ase)
    }

    pub fn snr_nli_db(&self) -> f64 {
        linear_to_db(self.snr_nli)
    }

    pub fn snr_icxt_db(&self) -> f64 {
        linear_to_db(self.snr_icxt)
    }

    pub fn snr_trx_db(&self) -> f64 {
        linear_to_db(self.snr_trx)
    }
}

fn inverse(x: f64) -> f64 {
    if x == 0.0 {
        f64::INFINITY
    } else {
        1.0 / x
    }
}

/// Combine per-span noise into a [`QotBreakdown`].
///
/// Each component accumulates noise-over-signal along the path,
/// `1/SNR_X = Σ_s P_X^s / P_tx^{s+1}`; the components then add as inverse
/// SNRs and the penalties are subtracted in dB.
pub fn accumulate_gsnr(spans: &[SpanNoise], penalties: Penalties) -> Result<QotBreakdown> {
    if spans.is_empty() {
        return Err(Error::invalid("a lightpath needs at least one span"));
    }
    let (mut inv_ase, mut inv_nli, mut inv_icxt) = (0.0, 0.0, 0.0);
    for s in spans {
        if !(s.signal_w > 0.0) {
            return Err(Error::invalid("span signal power must be positive"));
        }
        inv_ase += s.ase_w / s.signal_w;
        inv_nli += s.nli_w / s.signal_w;
        inv_icxt += s.icxt_w / s.signal_w;
    }
    let inv_trx = inverse(db_to_linear(penalties.snr_trx_db));
    let loss = penalties.filter_db + penalties.aging_db;
    let gsnr_db = linear_to_db(inverse(inv_ase + inv_nli + inv_icxt + inv_trx)) - loss;
    let gsnr_excl_icxt_db = linear_to_db(inverse(inv_ase + inv_nli + inv_trx)) - loss;
    Ok(QotBreakdown {
        snr_ase: inverse(inv_ase),
        snr_nli: inverse(inv_nli),
        snr_icxt: inverse(inv_icxt),
        snr_trx: inverse(inv_trx),
        penalty_filter_db: penalties.filter_db,
        margin_aging_db: penalties.aging_db,
        gsnr_db,
        gsnr_excl_icxt_db,
    })
}
