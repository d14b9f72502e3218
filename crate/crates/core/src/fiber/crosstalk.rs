/// Mean inter-core crosstalk (linear power ratio) of a core with `n_ac`
/// adjacent cores after `length` metres at power coupling coefficient
/// `omega` (1/m):
///
/// ```text
/// μ = [N − N·exp(−(N+1)ΩL)] / [1 + N·exp(−(N+1)ΩL)]
/// ```
///
/// Evaluated with `expm1` so that μ ≈ N·Ω·L keeps full precision when the
/// coupling is tiny.
pub fn mean_icxt(omega: f64, n_ac: usize, length: f64) -> f64 {
    debug_assert!(omega >= 0.0 && length >= 0.0);
    if n_ac == 0 {
        return 0.0;
    }
    let n = n_ac as f64;
    let x = (n + 1.0) * omega * length;
    -n * (-x).exp_m1() / (1.0 + n * (-x).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::linear_to_db;

    #[test]
    fn zero_length_has_no_crosstalk() {
        for n in [1, 2, 3, 6] {
            assert_eq!(mean_icxt(1e-3, n, 0.0), 0.0);
        }
    }

    #[test]
    fn saturates_at_adjacent_count() {
        let mu = mean_icxt(1.0, 2, 1e6);
        assert!((mu - 2.0).abs() < 1e-12);
        assert!((linear_to_db(mu) - 3.0103).abs() < 1e-4);
    }

    #[test]
    fn small_coupling_limit() {
        // N = 2, ΩL = 5e-5: μ ≈ 2·5e-5 = 1e-4, i.e. −40 dB
        let mu = mean_icxt(5e-5, 2, 1.0);
        assert!((mu - 1.0e-4).abs() / 1.0e-4 < 1e-3);
        assert!((linear_to_db(mu) + 40.0).abs() < 0.01);
    }

    #[test]
    fn monotone_in_length() {
        let mut prev = 0.0;
        for k in 1..50 {
            let mu = mean_icxt(1e-4, 3, k as f64 * 1e3);
            assert!(mu > prev);
            prev = mu;
        }
    }
}
