//! Numerical checks of the nome product and sum identities that turn the
//! ladder sums into closed forms, plus the derivative relations and the
//! Legendre relation behind them.
//!
//! With `q = exp(−π K(k')/K(k))`, `K = K(k)`, `E = E(k)`:
//!
//! ```text
//! A1  ∏ (1 + q^{2j+1})                  = (16q/(k²k'²))^{1/24}
//! A2  ∏ (1 + q^{2j})                    = 2 (k²/(16 q k'))^{1/12}
//! A3  Σ (2j+1) q^{2j+1}/(1 + q^{2j+1})   = [1 − (1 − 2k²)(2K/π)²] / 24
//! A4  Σ 2j q^{2j}/(1 + q^{2j})           = [(1 − k²/2)(2K/π)² − 1] / 12
//! A5  Σ (2j+1)² q^{2j+1}/(1 + q^{2j+1})² = (2K³/(3π⁴)) [(1 − k²)K − (1 − 2k²)E]
//! A6  Σ (2j)² q^{2j}/(1 + q^{2j})²       = (4K³/(3π⁴)) [(1 − k²/2)E − (1 − k²)K]
//! ```
//!
//! Products are accumulated as sums of logarithms.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::elliptic::{ellint_k, nome, EllipticPair};
use crate::error::{Error, Result};
use crate::free_fermion::{Coupling, Phase};
use crate::infinite_entropy::{dispersion_series, entropy_closed, entropy_series, dispersion_closed};

/// Largest modulus accepted; the nome approaches 1 beyond it.
pub const MAX_IDENTITY_MODULUS: f64 = 0.9999;

pub const DEFAULT_TERM_CAP: usize = 1_000_000;

/// Step of the central differences checking the derivative relations.
pub const FD_STEP: f64 = 1e-6;

/// Resolution of a central difference with step `FD_STEP`.
pub const FD_RESOLUTION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IdentityTag {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    #[serde(rename = "dqdk")]
    DqDk,
    #[serde(rename = "dIdk")]
    DiDk,
    #[serde(rename = "legendre")]
    Legendre,
    /// `S` from the ladder sum vs the closed form.
    #[serde(rename = "series_S")]
    SeriesEntropy,
    /// `D` from the ladder sum vs the closed form.
    #[serde(rename = "series_D")]
    SeriesDispersion,
    /// `D` from the ladder sum vs `ε²` times the A5/A6 right-hand side.
    #[serde(rename = "chain_D")]
    DispersionChain,
    /// `S` from the ladder sum vs `ε·(A3/A4 sum) + ln(A1/A2 product)`.
    #[serde(rename = "chain_S")]
    EntropyChain,
}

impl IdentityTag {
    /// Families checked pointwise in the modulus `k`.
    pub const MODULUS_FAMILIES: [IdentityTag; 9] = [
        IdentityTag::A1,
        IdentityTag::A2,
        IdentityTag::A3,
        IdentityTag::A4,
        IdentityTag::A5,
        IdentityTag::A6,
        IdentityTag::DqDk,
        IdentityTag::DiDk,
        IdentityTag::Legendre,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityTag::A1 => "A1",
            IdentityTag::A2 => "A2",
            IdentityTag::A3 => "A3",
            IdentityTag::A4 => "A4",
            IdentityTag::A5 => "A5",
            IdentityTag::A6 => "A6",
            IdentityTag::DqDk => "dqdk",
            IdentityTag::DiDk => "dIdk",
            IdentityTag::Legendre => "legendre",
            IdentityTag::SeriesEntropy => "series_S",
            IdentityTag::SeriesDispersion => "series_D",
            IdentityTag::DispersionChain => "chain_D",
            IdentityTag::EntropyChain => "chain_S",
        }
    }

    /// Smallest defect the check can resolve. Nonzero only for the
    /// derivative relations, which are compared with finite differences.
    pub fn resolution(&self) -> f64 {
        match self {
            IdentityTag::DqDk | IdentityTag::DiDk => FD_RESOLUTION,
            _ => 0.0,
        }
    }
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let all = [
            IdentityTag::A1,
            IdentityTag::A2,
            IdentityTag::A3,
            IdentityTag::A4,
            IdentityTag::A5,
            IdentityTag::A6,
            IdentityTag::DqDk,
            IdentityTag::DiDk,
            IdentityTag::Legendre,
            IdentityTag::SeriesEntropy,
            IdentityTag::SeriesDispersion,
            IdentityTag::DispersionChain,
            IdentityTag::EntropyChain,
        ];
        all.into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown identity '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: IdentityTag,
    pub k: f64,
    /// Coupling, for the checks that are stated per `λ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub defect: f64,
    pub terms_used: usize,
}

impl IdentityReport {
    fn new(name: IdentityTag, k: f64, lhs: f64, rhs: f64, terms_used: usize) -> Self {
        Self {
            name,
            k,
            lambda: None,
            lhs,
            rhs,
            defect: (lhs - rhs).abs(),
            terms_used: terms_used.max(1),
        }
    }

    fn at_lambda(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    /// `defect < max(tol, resolution)`.
    pub fn passes(&self, tol: f64) -> bool {
        self.defect < tol.max(self.name.resolution())
    }
}

fn identity_pair(k: f64) -> Result<EllipticPair> {
    if !k.is_finite() || k <= 0.0 || k > MAX_IDENTITY_MODULUS {
        return Err(Error::domain("identity modulus", k, "(0, 0.9999]"));
    }
    EllipticPair::from_k(k)
}

/// Which multiples of the nome exponent a sum runs over.
#[derive(Clone, Copy)]
enum Parity {
    Odd,
    Even,
}

/// `Σⱼ term(m, qᵐ)` over `m = 2j+1` or `m = 2j`, truncated once the terms
/// are decreasing and below `tol·(1 − q²)`.
fn nome_sum<F>(log_q: f64, parity: Parity, tol: f64, cap: usize, term: F) -> Result<(f64, usize)>
where
    F: Fn(f64, f64) -> f64,
{
    let threshold = tol * -(2.0 * log_q).exp_m1();
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for j in 0..cap {
        let m = match parity {
            Parity::Odd => (2 * j + 1) as f64,
            Parity::Even => (2 * j) as f64,
        };
        let t = term(m, (m * log_q).exp());
        sum += t;
        if j >= 1 && t <= prev && t.abs() < threshold {
            return Ok((sum, j + 1));
        }
        prev = t;
    }
    Err(Error::NonConvergence {
        what: "nome series",
        limit: cap,
    })
}

/// Truncation of the left-hand sides is pushed well below the tolerance
/// they are checked against.
fn truncation(tol: f64) -> f64 {
    (tol * 1e-3).max(f64::MIN_POSITIVE)
}

/// Evaluates one modulus identity at modulus `k`.
pub fn check(tag: IdentityTag, k: f64, tol: f64) -> Result<IdentityReport> {
    check_capped(tag, k, tol, DEFAULT_TERM_CAP)
}

pub fn check_capped(tag: IdentityTag, k: f64, tol: f64, cap: usize) -> Result<IdentityReport> {
    if !(tol > 0.0) {
        return Err(Error::domain("identity tolerance", tol, "(0, ∞)"));
    }
    let p = identity_pair(k)?;
    let kp = p.modulus.k_prime();
    let big_k = p.k_first;
    let big_e = p.e_second;
    let log_q = -p.log_nome_neg();
    let tt = truncation(tol);
    let two_k_over_pi_sq = (2.0 * big_k / PI).powi(2);
    let k2 = k * k;

    let report = match tag {
        IdentityTag::A1 => {
            let (ln_lhs, n) = nome_sum(log_q, Parity::Odd, tt, cap, |_, x| x.ln_1p())?;
            let ln_rhs = (16f64.ln() + log_q - 2.0 * k.ln() - 2.0 * kp.ln()) / 24.0;
            IdentityReport::new(tag, k, ln_lhs.exp(), ln_rhs.exp(), n)
        }
        IdentityTag::A2 => {
            let (ln_lhs, n) = nome_sum(log_q, Parity::Even, tt, cap, |_, x| x.ln_1p())?;
            let ln_rhs = 2f64.ln() + (2.0 * k.ln() - 16f64.ln() - log_q - kp.ln()) / 12.0;
            IdentityReport::new(tag, k, ln_lhs.exp(), ln_rhs.exp(), n)
        }
        IdentityTag::A3 => {
            let (lhs, n) = nome_sum(log_q, Parity::Odd, tt, cap, |m, x| m * x / (1.0 + x))?;
            let rhs = (1.0 - (1.0 - 2.0 * k2) * two_k_over_pi_sq) / 24.0;
            IdentityReport::new(tag, k, lhs, rhs, n)
        }
        IdentityTag::A4 => {
            let (lhs, n) = nome_sum(log_q, Parity::Even, tt, cap, |m, x| m * x / (1.0 + x))?;
            let rhs = ((1.0 - 0.5 * k2) * two_k_over_pi_sq - 1.0) / 12.0;
            IdentityReport::new(tag, k, lhs, rhs, n)
        }
        IdentityTag::A5 => {
            let (lhs, n) = nome_sum(log_q, Parity::Odd, tt, cap, |m, x| {
                m * m * x / ((1.0 + x) * (1.0 + x))
            })?;
            IdentityReport::new(tag, k, lhs, a5_rhs(&p), n)
        }
        IdentityTag::A6 => {
            let (lhs, n) = nome_sum(log_q, Parity::Even, tt, cap, |m, x| {
                m * m * x / ((1.0 + x) * (1.0 + x))
            })?;
            IdentityReport::new(tag, k, lhs, a6_rhs(&p), n)
        }
        IdentityTag::DqDk => {
            let h = FD_STEP;
            let fd = (nome(k + h)? - nome(k - h)?) / (2.0 * h);
            IdentityReport::new(tag, k, p.dq_dk(), fd, 2)
        }
        IdentityTag::DiDk => {
            let h = FD_STEP;
            let fd = (ellint_k(k + h)? - ellint_k(k - h)?) / (2.0 * h);
            IdentityReport::new(tag, k, p.dk_dk(), fd, 2)
        }
        IdentityTag::Legendre => {
            let lhs = big_e * p.k_first_prime + p.e_second_prime * big_k - big_k * p.k_first_prime;
            IdentityReport::new(tag, k, lhs, FRAC_PI_2, 1)
        }
        other => {
            return Err(Error::InvalidChain(format!(
                "{other} is checked per coupling, not per modulus"
            )))
        }
    };
    Ok(report)
}

fn a5_rhs(p: &EllipticPair) -> f64 {
    let k2 = p.modulus.k().powi(2);
    let (big_k, big_e) = (p.k_first, p.e_second);
    2.0 * big_k.powi(3) / (3.0 * PI.powi(4)) * ((1.0 - k2) * big_k - (1.0 - 2.0 * k2) * big_e)
}

fn a6_rhs(p: &EllipticPair) -> f64 {
    let k2 = p.modulus.k().powi(2);
    let (big_k, big_e) = (p.k_first, p.e_second);
    4.0 * big_k.powi(3) / (3.0 * PI.powi(4)) * ((1.0 - 0.5 * k2) * big_e - (1.0 - k2) * big_k)
}

pub fn check_a1(k: f64, tol: f64) -> Result<IdentityReport> {
    check(IdentityTag::A1, k, tol)
}

pub fn check_a2(k: f64, tol: f64) -> Result<IdentityReport> {
    check(IdentityTag::A2, k, tol)
}

pub fn check_a3(k: f64, tol: f64) -> Result<IdentityReport> {
    check(IdentityTag::A3, k, tol)
}

pub fn check_a4(k: f64, tol: f64) -> Result<IdentityReport> {
    check(IdentityTag::A4, k, tol)
}

pub fn check_a5(k: f64, tol: f64) -> Result<IdentityReport> {
    check(IdentityTag::A5, k, tol)
}

pub fn check_a6(k: f64, tol: f64) -> Result<IdentityReport> {
    check(IdentityTag::A6, k, tol)
}

/// `dq/dk`, `dK/dk` and the Legendre relation at `k`.
pub fn check_useful_relations(k: f64, tol: f64) -> Result<[IdentityReport; 3]> {
    Ok([
        check(IdentityTag::DqDk, k, tol)?,
        check(IdentityTag::DiDk, k, tol)?,
        check(IdentityTag::Legendre, k, tol)?,
    ])
}

fn chain_coupling(lambda: f64) -> Result<(Coupling, EllipticPair)> {
    let c = Coupling::new(lambda)?;
    let p = c.elliptic()?;
    Ok((c, p))
}

/// Ladder-sum `D` against `ε²` times the A5 (`λ < 1`) or A6 (`λ > 1`)
/// right-hand side.
pub fn check_dispersion_chain(lambda: f64, tol: f64) -> Result<IdentityReport> {
    let (c, p) = chain_coupling(lambda)?;
    let eps = p.log_nome_neg();
    let rhs = match c.phase() {
        Phase::Disordered => a5_rhs(&p),
        _ => a6_rhs(&p),
    };
    let series = dispersion_series(&c, truncation(tol))?;
    Ok(IdentityReport::new(IdentityTag::DispersionChain, c.k(), series, eps * eps * rhs, 1).at_lambda(lambda))
}

/// Ladder-sum `S` against `ε·(A3 or A4 sum) + ln(A1 or A2 product)`.
pub fn check_entropy_chain(lambda: f64, tol: f64) -> Result<IdentityReport> {
    let (c, p) = chain_coupling(lambda)?;
    let eps = p.log_nome_neg();
    let log_q = -eps;
    let tt = truncation(tol);
    let parity = match c.phase() {
        Phase::Disordered => Parity::Odd,
        _ => Parity::Even,
    };
    let (first, n1) = nome_sum(log_q, parity, tt, DEFAULT_TERM_CAP, |m, x| m * x / (1.0 + x))?;
    let (ln_prod, n2) = nome_sum(log_q, parity, tt, DEFAULT_TERM_CAP, |_, x| x.ln_1p())?;
    let series = entropy_series(&c, tt)?;
    Ok(IdentityReport::new(
        IdentityTag::EntropyChain,
        c.k(),
        series,
        eps * first + ln_prod,
        n1.max(n2),
    )
    .at_lambda(lambda))
}

/// Ladder sums against closed forms for `S` and `D` at one coupling.
pub fn check_series_closed(lambda: f64, tol: f64) -> Result<[IdentityReport; 2]> {
    let c = Coupling::new(lambda)?;
    let tt = truncation(tol);
    Ok([
        IdentityReport::new(
            IdentityTag::SeriesEntropy,
            c.k(),
            entropy_series(&c, tt)?,
            entropy_closed(&c)?,
            1,
        )
        .at_lambda(lambda),
        IdentityReport::new(
            IdentityTag::SeriesDispersion,
            c.k(),
            dispersion_series(&c, tt)?,
            dispersion_closed(&c)?,
            1,
        )
        .at_lambda(lambda),
    ])
}

/// `k ∈ {0.05, 0.10, …, 0.95}`.
pub fn standard_k_grid() -> Vec<f64> {
    (1..=19).map(|i| i as f64 * 0.05).collect()
}

/// 100 log-spaced couplings in `[0.05, 0.95]` and 100 in `[1.05, 20]`.
pub fn standard_lambda_grid() -> Vec<f64> {
    let mut g = crate::solve::log_grid(0.05, 0.95, 100);
    g.extend(crate::solve::log_grid(1.05, 20.0, 100));
    g
}

/// Every modulus family on every `k`, in family-major order.
pub fn modulus_suite(families: &[IdentityTag], ks: &[f64], tol: f64) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::with_capacity(families.len() * ks.len());
    for &tag in families {
        for &k in ks {
            out.push(check(tag, k, tol)?);
        }
    }
    Ok(out)
}

/// Series-vs-closed and derivation-chain checks over a coupling grid.
pub fn coupling_suite(
    families: &[IdentityTag],
    lambdas: &[f64],
    tol: f64,
) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for &tag in families {
        for &l in lambdas {
            match tag {
                IdentityTag::SeriesEntropy => out.push(check_series_closed(l, tol)?[0]),
                IdentityTag::SeriesDispersion => out.push(check_series_closed(l, tol)?[1]),
                IdentityTag::DispersionChain => out.push(check_dispersion_chain(l, tol)?),
                IdentityTag::EntropyChain => out.push(check_entropy_chain(l, tol)?),
                other => {
                    return Err(Error::InvalidChain(format!(
                        "{other} is checked per modulus, not per coupling"
                    )))
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn self_dual_products() {
        for tag in [IdentityTag::A1, IdentityTag::A2] {
            let r = check(tag, FRAC_1_SQRT_2, 1e-12).unwrap();
            assert!(r.defect < 1e-12, "{tag}: {r:?}");
        }
    }

    #[test]
    fn small_k_limits() {
        let a1 = check_a1(1e-4, 1e-12).unwrap();
        assert!((a1.lhs - 1.0).abs() < 1e-8 && (a1.rhs - 1.0).abs() < 1e-8);
        let a2 = check_a2(1e-4, 1e-12).unwrap();
        assert!((a2.lhs - 2.0).abs() < 1e-8 && (a2.rhs - 2.0).abs() < 1e-8);
        let a3 = check_a3(1e-4, 1e-12).unwrap();
        assert!(a3.lhs.abs() < 1e-8 && a3.rhs.abs() < 1e-8);
    }

    #[test]
    fn range_errors() {
        assert!(check_a1(0.0, 1e-12).is_err());
        assert!(check_a1(0.99995, 1e-12).is_err());
        assert!(check_a1(0.5, 0.0).is_err());
        assert!(check(IdentityTag::SeriesEntropy, 0.5, 1e-12).is_err());
    }

    #[test]
    fn relations_at_reference_points() {
        let [dq, _, _] = check_useful_relations(0.5, 1e-12).unwrap();
        assert!(dq.defect < 1e-6);
        let [_, _, leg] = check_useful_relations(0.3, 1e-12).unwrap();
        assert!(leg.defect < 1e-12);
        // k = k': 2EK − K² = π/2
        let p = EllipticPair::from_k(FRAC_1_SQRT_2).unwrap();
        let v = 2.0 * p.e_second * p.k_first - p.k_first * p.k_first;
        assert!((v - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn tag_parsing() {
        assert_eq!("a5".parse::<IdentityTag>().unwrap(), IdentityTag::A5);
        assert_eq!("Legendre".parse::<IdentityTag>().unwrap(), IdentityTag::Legendre);
        assert!("A7".parse::<IdentityTag>().is_err());
    }

    #[test]
    fn passes_uses_resolution_floor() {
        let r = check(IdentityTag::DqDk, 0.5, 1e-12).unwrap();
        assert!(r.passes(1e-16) == (r.defect < FD_RESOLUTION));
        let a = check(IdentityTag::A5, 0.5, 1e-12).unwrap();
        assert!(a.passes(1e-12));
    }
}
