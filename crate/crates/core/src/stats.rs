//! Moments of the entropy operator `Ŝ = −ln ρ`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Entropies below this are treated as zero when forming `δS = ΔS/S`.
pub const ZERO_ENTROPY: f64 = 1e-14;

/// Tolerance on `Σ p = 1` for probability spectra.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// `S`, `D`, `ΔS`, `δS` and `⟨Ŝ²⟩` of one reduced density matrix.
///
/// `relative` is `None` where `S = 0` and `δS` is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyStats {
    /// `S = ⟨Ŝ⟩` in nats.
    pub entropy: f64,
    /// `D = ⟨(Ŝ − S)²⟩`.
    pub dispersion: f64,
    /// `ΔS = √D`.
    pub fluctuation: f64,
    /// `δS = ΔS / S`.
    pub relative: Option<f64>,
    /// `⟨Ŝ²⟩ = D + S²`.
    pub second_moment: f64,
}

impl EntropyStats {
    pub fn from_moments(entropy: f64, dispersion: f64) -> Self {
        let dispersion = dispersion.max(0.0);
        let fluctuation = dispersion.sqrt();
        Self {
            entropy,
            dispersion,
            fluctuation,
            relative: (entropy >= ZERO_ENTROPY).then(|| fluctuation / entropy),
            second_moment: dispersion + entropy * entropy,
        }
    }
}

/// Statistics of `Ŝ` for a density matrix with eigenvalues `probs`.
///
/// `D` is accumulated in centred form `Σ p (−ln p − S)²`. Zero
/// probabilities contribute nothing.
pub fn stats_from_probs(probs: &[f64]) -> Result<EntropyStats> {
    check_normalized(probs)?;
    let entropy: f64 = probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum();
    let dispersion: f64 = probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| {
            let dev = -p.ln() - entropy;
            p * dev * dev
        })
        .sum();
    Ok(EntropyStats::from_moments(entropy.max(0.0), dispersion))
}

pub(crate) fn check_normalized(probs: &[f64]) -> Result<()> {
    let sum: f64 = probs.iter().sum();
    if probs.iter().any(|p| !(p.is_finite() && *p >= 0.0))
        || (sum - 1.0).abs() > NORMALIZATION_TOL
    {
        return Err(Error::Unnormalized { sum });
    }
    Ok(())
}
