//! Entanglement entropy and its fluctuation for the half-infinite chain.
//!
//! Two independent routes are provided for `S` and `D`: truncated sums over
//! the free-fermion ladder (the reference) and closed forms in complete
//! elliptic integrals. With `K = K(k)`, `K' = K(k')`, `E = E(k)`:
//!
//! ```text
//! λ < 1:  S = [ln(16/(k²k'²)) + (4/π)(k² − k'²) K K'] / 24
//!         D = (2/(3π²)) K'² K [k'² K + (k² − k'²) E]
//! λ > 1:  S = [ln(k²/(16k')) + (4/π)(1 − k²/2) K K'] / 12 + ln 2
//!         D = (4/(3π²)) K'² K [(1 − k²/2) E − k'² K]
//! ```
//!
//! Near `λ = 1` both diverge like `(1/12) ln(1/|1 − λ|)`.

use std::f64::consts::{LN_2, PI};

use crate::elliptic::EllipticPair;
use crate::error::{Error, Result};
use crate::free_fermion::{ladder_sum, Coupling, Phase, DEFAULT_TERM_CAP};
use crate::solve::{brent, golden_max, log_grid, scan_bracket, Landmark};
use crate::stats::EntropyStats;

/// Points in the coarse scans that precede root/extremum refinement.
pub const SCAN_POINTS: usize = 1000;

/// `x/(1 + eˣ) + ln(1 + e⁻ˣ)`, the entropy carried by one fermion mode.
pub(crate) fn mode_entropy(x: f64) -> f64 {
    let e = (-x).exp();
    x * e / (1.0 + e) + e.ln_1p()
}

/// `(x/2)²/cosh²(x/2) = x² e⁻ˣ/(1 + e⁻ˣ)²`, the variance of one mode.
pub(crate) fn mode_variance(x: f64) -> f64 {
    let e = (-x).exp();
    let d = 1.0 + e;
    x * x * e / (d * d)
}

/// `S` as the ladder sum `Σⱼ [εⱼ/(1 + e^{εⱼ}) + ln(1 + e^{−εⱼ})]`.
pub fn entropy_series(c: &Coupling, tol: f64) -> Result<f64> {
    let s = c.spectrum()?;
    ladder_sum(&s, 1.0, 1.0, tol, DEFAULT_TERM_CAP, mode_entropy).map(|(v, _)| v)
}

/// `D = Σⱼ (εⱼ/2)²/cosh²(εⱼ/2)`.
pub fn dispersion_series(c: &Coupling, tol: f64) -> Result<f64> {
    let s = c.spectrum()?;
    ladder_sum(&s, 1.0, 3.0, tol, DEFAULT_TERM_CAP, mode_variance).map(|(v, _)| v)
}

/// `ln Z` of the coupling's ladder.
pub fn log_partition(c: &Coupling, tol: f64) -> Result<f64> {
    crate::free_fermion::log_partition(&c.spectrum()?, tol)
}

/// Below this modulus the logarithms in the closed-form `S` cancel to an
/// `O(k² ln k)` remainder, and the ladder (two terms suffice there) is used.
pub const SMALL_MODULUS: f64 = 1e-3;

pub fn entropy_closed(c: &Coupling) -> Result<f64> {
    let p = c.elliptic()?;
    entropy_from_pair(c, &p)
}

fn entropy_from_pair(c: &Coupling, p: &EllipticPair) -> Result<f64> {
    let (k, kp) = (p.modulus.k(), p.modulus.k_prime());
    if k < SMALL_MODULUS {
        return entropy_series(c, 1e-17);
    }
    let kk = p.k_first * p.k_first_prime;
    Ok(match c.phase() {
        Phase::Disordered => {
            let log_part = 16f64.ln() - 2.0 * k.ln() - 2.0 * kp.ln();
            let s = (log_part + 4.0 / PI * (k - kp) * (k + kp) * kk) / 24.0;
            s.max(0.0)
        }
        Phase::Ordered => {
            let log_part = 2.0 * k.ln() - 16f64.ln() - kp.ln();
            let bracket = log_part + 4.0 / PI * (1.0 - 0.5 * k * k) * kk;
            bracket.max(0.0) / 12.0 + LN_2
        }
        Phase::Critical => unreachable!("elliptic pair exists only off criticality"),
    })
}

/// Bracketed factor of the closed-form dispersion, before the `K'² K`
/// prefactor. Rewritten through `E = K(1 − k²/2 − tail)` on the side where
/// the printed form cancels.
fn dispersion_radicand(phase: Phase, p: &EllipticPair) -> f64 {
    let (k, kp) = (p.modulus.k(), p.modulus.k_prime());
    let (big_k, big_e) = (p.k_first, p.e_second);
    let k2 = k * k;
    let small = k2 < 0.5;
    match phase {
        // k'² K + (k² − k'²) E
        Phase::Disordered if small => {
            let s = 0.5 * k2 + p.tail;
            big_k * (k2 + (1.0 - 2.0 * k2) * s)
        }
        Phase::Disordered => kp * kp * big_k + (k - kp) * (k + kp) * big_e,
        // (1 − k²/2) E − k'² K
        Phase::Ordered if small => {
            let s = 0.5 * k2 + p.tail;
            big_k * (0.5 * k2 * s - p.tail)
        }
        Phase::Ordered => (1.0 - 0.5 * k2) * big_e - kp * kp * big_k,
        Phase::Critical => unreachable!("elliptic pair exists only off criticality"),
    }
}

fn dispersion_from_pair(c: &Coupling, p: &EllipticPair) -> Result<f64> {
    let radicand = dispersion_radicand(c.phase(), p);
    if !(radicand >= 0.0) {
        return Err(Error::NegativeRadicand {
            lambda: c.lambda(),
            value: radicand,
        });
    }
    let pre = match c.phase() {
        Phase::Disordered => 2.0 / (3.0 * PI * PI),
        _ => 4.0 / (3.0 * PI * PI),
    };
    Ok(pre * p.k_first_prime * p.k_first_prime * p.k_first * radicand)
}

/// Closed-form `D = (ΔS)²`.
pub fn dispersion_closed(c: &Coupling) -> Result<f64> {
    let p = c.elliptic()?;
    dispersion_from_pair(c, &p)
}

/// Closed-form `ΔS`.
pub fn fluctuation_closed(c: &Coupling) -> Result<f64> {
    dispersion_closed(c).map(f64::sqrt)
}

/// Closed-form `S`, `D`, `ΔS`, `δS`, `⟨Ŝ²⟩` from one elliptic pair.
pub fn stats(c: &Coupling) -> Result<EntropyStats> {
    let p = c.elliptic()?;
    let s = entropy_from_pair(c, &p)?;
    let d = dispersion_from_pair(c, &p)?;
    Ok(EntropyStats::from_moments(s, d))
}

/// Closed-form statistics at a bare `λ`.
pub fn stats_at(lambda: f64) -> Result<EntropyStats> {
    stats(&Coupling::new(lambda)?)
}

fn critical_distance(lambda: f64) -> Result<f64> {
    let delta = (1.0 - lambda).abs();
    if !lambda.is_finite() || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain("critical asymptote", lambda, "0 < |1 − λ| < 1"));
    }
    Ok(delta)
}

/// Leading critical behaviour `S ≈ (1/12) ln(1/|1 − λ|)`.
pub fn asymptote_entropy(lambda: f64) -> Result<f64> {
    Ok(-critical_distance(lambda)?.ln() / 12.0)
}

/// Leading critical behaviour `D ≈ (1/12) ln(1/|1 − λ|)`.
pub fn asymptote_dispersion(lambda: f64) -> Result<f64> {
    asymptote_entropy(lambda)
}

/// `⟨Ŝ²⟩ ≈ S_asym² + D_asym`.
pub fn asymptote_second_moment(lambda: f64) -> Result<f64> {
    let s = asymptote_entropy(lambda)?;
    Ok(s * s + asymptote_dispersion(lambda)?)
}

/// `ΔS − S`, evaluated in closed form.
fn fluctuation_excess(lambda: f64) -> f64 {
    match stats_at(lambda) {
        Ok(st) => st.fluctuation - st.entropy,
        Err(_) => f64::NAN,
    }
}

/// The coupling `λ_f ∈ (0.99, 1)` above which `ΔS < S` in the disordered
/// phase.
pub fn find_lambda_f_infinite() -> Result<Landmark> {
    // λ = 1 − δ with δ from 1e-2 down to 1e-12, so λ increases along the grid.
    let mut grid: Vec<f64> = log_grid(1e-12, 1e-2, SCAN_POINTS)
        .into_iter()
        .map(|d| 1.0 - d)
        .collect();
    grid.reverse();
    let (lo, hi) = scan_bracket(fluctuation_excess, &grid).ok_or(Error::BracketFailure {
        what: "ΔS − S",
        lo: grid[0],
        hi: grid[grid.len() - 1],
    })?;
    let root = brent(fluctuation_excess, lo, hi, 1e-12, 200)?;
    let value = entropy_closed(&Coupling::new(root.x)?)?;
    Ok(Landmark {
        lambda: root.x,
        value,
        bracket_width: root.bracket_width,
    })
}

fn relative_fluctuation(lambda: f64) -> f64 {
    stats_at(lambda)
        .ok()
        .and_then(|s| s.relative)
        .unwrap_or(f64::NAN)
}

/// `(λ_m, δS_m)`: location and height of the maximum of `δS` on `(1, 2)`.
pub fn find_lambda_m() -> Result<Landmark> {
    let grid: Vec<f64> = log_grid(1e-8, 1.0, SCAN_POINTS)
        .into_iter()
        .map(|d| 1.0 + d)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&l| relative_fluctuation(l)).collect();
    let i = crate::solve::argmax(&values).ok_or(Error::BracketFailure {
        what: "δS maximum",
        lo: grid[0],
        hi: grid[grid.len() - 1],
    })?;
    if i == 0 || i + 1 == grid.len() {
        return Err(Error::BracketFailure {
            what: "δS maximum (boundary)",
            lo: grid[0],
            hi: grid[grid.len() - 1],
        });
    }
    let peak = golden_max(relative_fluctuation, grid[i - 1], grid[i + 1], 1e-9);
    Ok(Landmark {
        lambda: peak.x,
        value: peak.value,
        bracket_width: peak.bracket_width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(l: f64) -> Coupling {
        Coupling::new(l).unwrap()
    }

    #[test]
    fn extreme_limits() {
        assert!(entropy_closed(&c(1e-6)).unwrap() < 1e-8);
        assert!(entropy_series(&c(1e-6), 1e-15).unwrap() < 1e-8);
        assert!((entropy_closed(&c(1e9)).unwrap() - LN_2).abs() < 1e-14);
        assert!((entropy_series(&c(1e9), 1e-15).unwrap() - LN_2).abs() < 1e-15);
        assert!(dispersion_series(&c(1e-6), 1e-15).unwrap() < 1e-8);
        assert!(dispersion_series(&c(1e9), 1e-15).unwrap() < 1e-30);
        assert!(fluctuation_closed(&c(1e9)).unwrap() < 1e-12);
    }

    #[test]
    fn ordered_limit_stats() {
        let s = stats(&c(1e9)).unwrap();
        assert!((s.entropy - LN_2).abs() < 1e-14);
        assert!(s.dispersion < 1e-24);
        assert!(s.relative.unwrap() < 1e-12);
        assert!((s.second_moment - LN_2 * LN_2).abs() < 1e-14);
    }

    #[test]
    fn closed_matches_series_at_half_and_two() {
        for l in [0.5, 2.0] {
            let cc = c(l);
            let s_ser = entropy_series(&cc, 1e-13).unwrap();
            let d_ser = dispersion_series(&cc, 1e-13).unwrap();
            assert!((entropy_closed(&cc).unwrap() - s_ser).abs() < 1e-10);
            assert!((fluctuation_closed(&cc).unwrap() - d_ser.sqrt()).abs() < 1e-10);
        }
    }

    #[test]
    fn critical_point_errors() {
        let cc = c(1.0);
        assert_eq!(entropy_closed(&cc), Err(Error::CriticalPoint));
        assert_eq!(entropy_series(&cc, 1e-12), Err(Error::CriticalPoint));
        assert_eq!(stats(&cc), Err(Error::CriticalPoint));
        assert!(asymptote_entropy(1.0).is_err());
        assert!(asymptote_entropy(2.5).is_err());
    }

    #[test]
    fn asymptotes() {
        let expected = 10f64.ln() / 12.0;
        assert!((asymptote_entropy(0.9).unwrap() - expected).abs() < 1e-15);
        assert!((asymptote_entropy(1.1).unwrap() - expected).abs() < 1e-14);
        assert_eq!(asymptote_dispersion(0.9), asymptote_entropy(0.9));
        let sm = asymptote_second_moment(0.9).unwrap();
        assert!((sm - (expected * expected + expected)).abs() < 1e-15);
    }

    #[test]
    fn near_critical_values_are_finite() {
        for l in [1.0 - 1e-6, 1.0 + 1e-6] {
            let s = stats(&c(l)).unwrap();
            assert!(s.entropy.is_finite() && s.entropy > 1.0);
            assert!(s.dispersion.is_finite() && s.dispersion > 1.0);
        }
    }

    #[test]
    fn stats_consistency() {
        let s = stats(&c(2.0)).unwrap();
        assert!((s.fluctuation * s.fluctuation - s.dispersion).abs() <= 1e-12 * s.dispersion);
        assert!(
            (s.second_moment - s.dispersion - s.entropy * s.entropy).abs()
                <= 1e-12 * s.second_moment
        );
        assert_eq!(s.relative, Some(s.fluctuation / s.entropy));
    }
}
