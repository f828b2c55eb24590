//! Goodness-of-fit helpers for sampler statistics.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[derive(Clone, Debug, Serialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// Pearson chi-square test of observed counts against expected counts.
/// Expected counts must be positive and should sum to the same total as
/// the observations; degrees of freedom are cells - 1.
pub fn chi_square_gof(observed: &[u64], expected: &[f64]) -> ChiSquareResult {
    assert_eq!(observed.len(), expected.len());
    assert!(observed.len() >= 2, "need at least two cells");
    assert!(expected.iter().all(|&e| e > 0.0), "expected counts must be positive");
    let statistic: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    let df = observed.len() - 1;
    let dist = ChiSquared::new(df as f64).expect("positive dof");
    ChiSquareResult {
        statistic,
        degrees_of_freedom: df,
        p_value: 1.0 - dist.cdf(statistic),
    }
}

/// Standard error of an empirical frequency with success probability `p`
/// over `n` draws.
pub fn frequency_sigma(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_counts_have_high_p_value() {
        let r = chi_square_gof(&[100, 100, 100, 100], &[100.0, 100.0, 100.0, 100.0]);
        assert_eq!(r.statistic, 0.0);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gross_mismatch_has_tiny_p_value() {
        let r = chi_square_gof(&[400, 0, 0, 0], &[100.0, 100.0, 100.0, 100.0]);
        assert!(r.p_value < 1e-6);
    }

    #[test]
    fn sigma_scales_with_root_n() {
        let a = frequency_sigma(0.5, 100);
        let b = frequency_sigma(0.5, 400);
        assert!((a / b - 2.0).abs() < 1e-12);
    }
}
