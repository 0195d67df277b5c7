//! Rényi and Tsallis entropies, moments of `Ŝ` from `Tr ρ^α`, and the
//! conformal scaling helpers.
//!
//! `Tr ρ^α` generates the raw moments of the entropy operator:
//! `⟨Ŝⁿ⟩ = (−1)ⁿ ∂ⁿ/∂αⁿ Tr ρ^α` at `α = 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_fermion::{ladder_sum, softplus_neg, Coupling, DEFAULT_TERM_CAP};
use crate::infinite_entropy;
use crate::stats::{check_normalized, stats_from_probs, EntropyStats};

/// Truncation tolerance for infinite-chain `ln Tr ρ^α`.
pub const SERIES_TOL: f64 = 1e-16;

/// Step of the finite-difference stencils in `α`.
pub const ALPHA_STEP: f64 = 1e-4;

/// Upper end of `|α − 1|` where the second-order Tsallis expansion is
/// documented to be useful.
pub const EXPANSION_RANGE: f64 = 0.1;

/// A reduced density matrix, given by its spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Source {
    /// Finite spectrum (dimer, finite chain).
    Probabilities(Vec<f64>),
    /// Half-infinite chain at a given coupling.
    InfiniteChain(Coupling),
}

impl Source {
    pub fn probabilities(probs: Vec<f64>) -> Result<Self> {
        check_normalized(&probs)?;
        Ok(Source::Probabilities(probs))
    }

    pub fn infinite(lambda: f64) -> Result<Self> {
        Ok(Source::InfiniteChain(Coupling::new(lambda)?))
    }

    /// Schmidt spectrum of the dimer ground state.
    pub fn dimer(lambda: f64) -> Result<Self> {
        let c = crate::dimer::dimer_concurrence(lambda);
        Self::probabilities(crate::dimer::schmidt_probs(c)?.to_vec())
    }

    /// `S`, `D` and `⟨Ŝ²⟩` from the owning module: direct spectrum sums or
    /// the infinite-chain closed forms.
    pub fn stats(&self) -> Result<EntropyStats> {
        match self {
            Source::Probabilities(p) => stats_from_probs(p),
            Source::InfiniteChain(c) => infinite_entropy::stats(c),
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("order α", alpha, "(0, ∞)"))
    }
}

/// `ln Tr ρ^α`.
///
/// For the infinite chain, `ln Tr ρ^α = Σⱼ [ln(1 + e^{−αεⱼ}) − α ln(1 + e^{−εⱼ})]`.
pub fn log_trace_rho_alpha(source: &Source, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha == 1.0 {
        return Ok(0.0);
    }
    match source {
        Source::Probabilities(p) => Ok(p
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| x.powf(alpha))
            .sum::<f64>()
            .ln()),
        Source::InfiniteChain(c) => {
            let s = c.spectrum()?;
            let term = |x: f64| softplus_neg(alpha * x) - alpha * softplus_neg(x);
            ladder_sum(&s, alpha.min(1.0), 0.0, SERIES_TOL, DEFAULT_TERM_CAP, term)
                .map(|(v, _)| v)
        }
    }
}

fn reject_one(alpha: f64) -> Result<()> {
    check_alpha(alpha)?;
    if alpha == 1.0 {
        Err(Error::AlphaIsOne)
    } else {
        Ok(())
    }
}

/// `S_R = ln Tr ρ^α / (1 − α)`.
pub fn renyi(source: &Source, alpha: f64) -> Result<f64> {
    reject_one(alpha)?;
    Ok(log_trace_rho_alpha(source, alpha)? / (1.0 - alpha))
}

/// `S_T = (1 − Tr ρ^α)/(α − 1)`.
pub fn tsallis(source: &Source, alpha: f64) -> Result<f64> {
    reject_one(alpha)?;
    Ok(-log_trace_rho_alpha(source, alpha)?.exp_m1() / (alpha - 1.0))
}

/// `S_R = ln[1 + (1 − α) S_T] / (1 − α)`.
pub fn renyi_from_tsallis(t: f64, alpha: f64) -> Result<f64> {
    reject_one(alpha)?;
    let arg = (1.0 - alpha) * t;
    if !(arg > -1.0) {
        return Err(Error::domain("1 + (1 − α) S_T", 1.0 + arg, "(0, ∞)"));
    }
    Ok(arg.ln_1p() / (1.0 - alpha))
}

/// `S_T = [exp((1 − α) S_R) − 1] / (1 − α)`.
pub fn tsallis_from_renyi(r: f64, alpha: f64) -> Result<f64> {
    reject_one(alpha)?;
    let v = ((1.0 - alpha) * r).exp_m1() / (1.0 - alpha);
    if !v.is_finite() {
        return Err(Error::domain("Rényi entropy", r, "finite exp((1 − α) S_R)"));
    }
    Ok(v)
}

/// Second-order moment expansion `S_T ≈ S − (α − 1)⟨Ŝ²⟩/2`.
pub fn tsallis_moment_expansion(source: &Source, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let st = source.stats()?;
    Ok(st.entropy - 0.5 * (alpha - 1.0) * st.second_moment)
}

/// `⟨Ŝⁿ⟩` for `n ∈ {1, 2}` from five-point central differences of
/// `Tr ρ^α` around `α = 1`.
pub fn moment_by_alpha_derivative(source: &Source, n: u32) -> Result<f64> {
    let h = ALPHA_STEP;
    let tr = |a: f64| log_trace_rho_alpha(source, a).map(f64::exp);
    let (m2, m1, p1, p2) = (tr(1.0 - 2.0 * h)?, tr(1.0 - h)?, tr(1.0 + h)?, tr(1.0 + 2.0 * h)?);
    match n {
        1 => Ok(-(m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h)),
        2 => Ok((-m2 + 16.0 * m1 - 30.0 + 16.0 * p1 - p2) / (12.0 * h * h)),
        _ => Err(Error::domain("moment order", n as f64, "{1, 2}")),
    }
}

fn check_cft(xi: f64, c: f64, boundaries: u32) -> Result<()> {
    if !(xi > 1.0) || !xi.is_finite() {
        return Err(Error::domain("correlation length ξ", xi, "(1, ∞)"));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::domain("central charge", c, "(0, ∞)"));
    }
    if boundaries == 0 {
        return Err(Error::domain("boundary count", 0.0, "{1, 2, …}"));
    }
    Ok(())
}

/// `Tr ρ^α ≈ ξ^{−A c (α − 1/α)/12}` with the amplitude `c_α` set to 1.
pub fn cft_trace_asymptote(xi: f64, c: f64, alpha: f64, boundaries: u32) -> Result<f64> {
    check_cft(xi, c, boundaries)?;
    check_alpha(alpha)?;
    let exponent = -(boundaries as f64) * c * (alpha - 1.0 / alpha) / 12.0;
    Ok(xi.powf(exponent))
}

/// `S ≈ A (c/6) ln ξ`.
pub fn cft_entropy(xi: f64, c: f64, boundaries: u32) -> Result<f64> {
    check_cft(xi, c, boundaries)?;
    Ok(boundaries as f64 * c / 6.0 * xi.ln())
}

/// `ΔS ≈ √(A (c/6) ln ξ)`: the scaling form of `Tr ρ^α` gives `D = S`.
pub fn cft_fluctuation(xi: f64, c: f64, boundaries: u32) -> Result<f64> {
    cft_entropy(xi, c, boundaries).map(f64::sqrt)
}

/// `⟨Ŝ²⟩ ≈ (A (c/6) ln ξ)² + A (c/6) ln ξ`.
pub fn cft_second_moment(xi: f64, c: f64, boundaries: u32) -> Result<f64> {
    let s = cft_entropy(xi, c, boundaries)?;
    Ok(s * s + s)
}

/// Ising correlation length `ξ ≈ 1/|1 − λ|`.
pub fn correlation_length(lambda: f64) -> Result<f64> {
    let d = (1.0 - lambda).abs();
    if !(d > 0.0) || !lambda.is_finite() {
        return Err(Error::domain("correlation length λ", lambda, "λ ≠ 1"));
    }
    Ok(1.0 / d)
}
