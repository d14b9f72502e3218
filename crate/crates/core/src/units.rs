//! Physical constants and unit conversions used at the I/O boundary.

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626_070_15e-34;

pub const THZ: f64 = 1e12;
pub const GHZ: f64 = 1e9;
pub const UM: f64 = 1e-6;
pub const MM: f64 = 1e-3;
pub const KM: f64 = 1e3;

/// Linear power ratio from decibels.
#[inline]
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Decibels from a linear power ratio. Zero maps to `-inf`.
#[inline]
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

#[inline]
pub fn dbm_to_watt(dbm: f64) -> f64 {
    1e-3 * db_to_linear(dbm)
}

#[inline]
pub fn watt_to_dbm(w: f64) -> f64 {
    linear_to_db(w / 1e-3)
}

/// Power attenuation coefficient in 1/m (neper-style, `P(z) = P0 exp(-a z)`)
/// from a loss figure in dB/km.
#[inline]
pub fn db_per_km_to_per_m(db_per_km: f64) -> f64 {
    db_per_km * std::f64::consts::LN_10 / 10.0 / KM
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_round_trip() {
        for db in [-40.0, -3.0, 0.0, 6.5, 26.0] {
            assert!((linear_to_db(db_to_linear(db)) - db).abs() < 1e-12);
        }
        assert_eq!(linear_to_db(0.0), f64::NEG_INFINITY);
    }

    #[test]
    fn attenuation_matches_span_loss() {
        let a = db_per_km_to_per_m(0.2);
        let loss_db = -linear_to_db((-a * 80.0 * KM).exp());
        assert!((loss_db - 16.0).abs() < 1e-12);
    }
}
