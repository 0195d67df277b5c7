//! Free-fermion form of the half-chain reduced density matrix,
//! `ρ = e^{−H'}/Z` with `H' = Σⱼ εⱼ nⱼ`.
//!
//! The single-particle ladder is equidistant: odd multiples `(2j+1)ε` in the
//! disordered phase (`λ < 1`), even multiples `2jε` in the ordered phase
//! (`λ > 1`), with `ε = π K(k')/K(k)` and `k = min(λ, 1/λ)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::elliptic::{EllipticPair, Modulus};
use crate::error::{Error, Result};

/// Default cap on the number of ladder terms in any truncated sum.
pub const DEFAULT_TERM_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Phase {
    /// `λ < 1`, paramagnetic.
    Disordered,
    /// `λ > 1`, ferromagnetic.
    Ordered,
    /// `λ = 1`.
    Critical,
}

/// Spin–spin coupling `λ` at unit transverse field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coupling {
    lambda: f64,
    k: f64,
    phase: Phase,
}

impl Coupling {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::domain("coupling λ", lambda, "(0, ∞)"));
        }
        let phase = if lambda < 1.0 {
            Phase::Disordered
        } else if lambda > 1.0 {
            Phase::Ordered
        } else {
            Phase::Critical
        };
        Ok(Self {
            lambda,
            k: lambda.min(1.0 / lambda),
            phase,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `k = min(λ, 1/λ)`.
    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn modulus(&self) -> Result<Modulus> {
        if self.phase == Phase::Critical {
            return Err(Error::CriticalPoint);
        }
        Modulus::new(self.k)
    }

    pub fn elliptic(&self) -> Result<EllipticPair> {
        EllipticPair::new(self.modulus()?)
    }

    pub fn spectrum(&self) -> Result<FermionSpectrum> {
        FermionSpectrum::from_coupling(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `εⱼ = (2j+1)ε`
    Odd,
    /// `εⱼ = 2jε`
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FermionSpectrum {
    pub epsilon: f64,
    pub branch: Branch,
}

impl FermionSpectrum {
    pub fn new(epsilon: f64, branch: Branch) -> Result<Self> {
        if !(epsilon > 0.0) || epsilon.is_nan() {
            return Err(Error::domain("level spacing ε", epsilon, "(0, ∞)"));
        }
        Ok(Self { epsilon, branch })
    }

    pub fn from_coupling(c: &Coupling) -> Result<Self> {
        let branch = match c.phase() {
            Phase::Disordered => Branch::Odd,
            Phase::Ordered => Branch::Even,
            Phase::Critical => return Err(Error::CriticalPoint),
        };
        Ok(Self {
            epsilon: level_spacing(c)?,
            branch,
        })
    }

    /// `εⱼ`
    pub fn level(&self, j: usize) -> f64 {
        excitation(j, self)
    }
}

/// `ε = π K(k')/K(k)`.
pub fn level_spacing(c: &Coupling) -> Result<f64> {
    let pair = c.elliptic()?;
    Ok(PI * pair.k_first_prime / pair.k_first)
}

pub fn excitation(j: usize, s: &FermionSpectrum) -> f64 {
    let m = match s.branch {
        Branch::Odd => 2 * j + 1,
        Branch::Even => 2 * j,
    };
    m as f64 * s.epsilon
}

/// Truncated `Σⱼ term(εⱼ)` over a ladder.
///
/// `term` must decay at least like `e^{−rate·x}` and be nonincreasing for
/// `x ≥ decreasing_from`. Summation stops at the first such level whose term
/// drops below `tol·(1 − e^{−2·rate·ε})`, the geometric tail majorant.
/// Returns the sum and the number of terms used.
pub(crate) fn ladder_sum<F>(
    s: &FermionSpectrum,
    rate: f64,
    decreasing_from: f64,
    tol: f64,
    cap: usize,
    mut term: F,
) -> Result<(f64, usize)>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::domain("series tolerance", tol, "(0, ∞)"));
    }
    let threshold = tol * -(-2.0 * rate * s.epsilon).exp_m1();
    let mut sum = 0.0;
    for j in 0..cap {
        let x = excitation(j, s);
        let t = term(x);
        sum += t;
        if x >= decreasing_from && t.abs() < threshold {
            return Ok((sum, j + 1));
        }
    }
    Err(Error::NonConvergence {
        what: "ladder sum",
        limit: cap,
    })
}

/// `ln(1 + e^{−x})`
pub(crate) fn softplus_neg(x: f64) -> f64 {
    (-x).exp().ln_1p()
}

/// `ln Z = Σⱼ ln(1 + e^{−εⱼ})`.
pub fn log_partition(s: &FermionSpectrum, tol: f64) -> Result<f64> {
    log_partition_capped(s, tol, DEFAULT_TERM_CAP)
}

pub fn log_partition_capped(s: &FermionSpectrum, tol: f64, cap: usize) -> Result<f64> {
    ladder_sum(s, 1.0, 0.0, tol, cap, softplus_neg).map(|(v, _)| v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2, SQRT_2};

    #[test]
    fn coupling_phases_and_duality() {
        assert_eq!(Coupling::new(0.3).unwrap().phase(), Phase::Disordered);
        assert_eq!(Coupling::new(3.0).unwrap().phase(), Phase::Ordered);
        assert_eq!(Coupling::new(1.0).unwrap().phase(), Phase::Critical);
        for lam in [0.01, 0.37, 0.9, 1.7, 42.0] {
            let a = Coupling::new(lam).unwrap();
            let b = Coupling::new(1.0 / lam).unwrap();
            assert!((a.k() - b.k()).abs() <= 2.0 * f64::EPSILON * a.k());
        }
        assert!(Coupling::new(0.0).is_err());
        assert!(Coupling::new(-1.0).is_err());
        assert!(Coupling::new(f64::NAN).is_err());
    }

    #[test]
    fn self_dual_spacing_is_pi() {
        let e1 = level_spacing(&Coupling::new(FRAC_1_SQRT_2).unwrap()).unwrap();
        let e2 = level_spacing(&Coupling::new(SQRT_2).unwrap()).unwrap();
        assert!((e1 - PI).abs() < 1e-14);
        assert!((e2 - PI).abs() < 1e-14);
    }

    #[test]
    fn critical_point_is_rejected() {
        let c = Coupling::new(1.0).unwrap();
        assert_eq!(level_spacing(&c), Err(Error::CriticalPoint));
        assert_eq!(c.spectrum(), Err(Error::CriticalPoint));
    }

    #[test]
    fn excitation_ladder() {
        let even = FermionSpectrum::new(2.0, Branch::Even).unwrap();
        let odd = FermionSpectrum::new(PI, Branch::Odd).unwrap();
        assert_eq!(excitation(0, &even), 0.0);
        assert_eq!(excitation(0, &odd), PI);
        let half = FermionSpectrum::new(0.5, Branch::Odd).unwrap();
        assert_eq!(excitation(3, &half), 3.5);
    }

    #[test]
    fn partition_limits() {
        let even = FermionSpectrum::new(1e3, Branch::Even).unwrap();
        let odd = FermionSpectrum::new(1e3, Branch::Odd).unwrap();
        assert!((log_partition(&even, 1e-15).unwrap() - LN_2).abs() < 1e-15);
        assert!(log_partition(&odd, 1e-15).unwrap().abs() < 1e-300);
    }

    #[test]
    fn partition_odd_unit_spacing_matches_long_sum() {
        let s = FermionSpectrum::new(1.0, Branch::Odd).unwrap();
        let direct: f64 = (0..10_000)
            .map(|j| (1.0 + (-((2 * j + 1) as f64)).exp()).ln())
            .sum();
        assert!((log_partition(&s, 1e-15).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn partition_cap_reports_nonconvergence() {
        let s = FermionSpectrum::new(1e-6, Branch::Odd).unwrap();
        assert!(matches!(
            log_partition_capped(&s, 1e-14, 100),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn doubling_the_cap_changes_nothing() {
        for lam in [0.2, 0.9, 1.1, 5.0] {
            let s = Coupling::new(lam).unwrap().spectrum().unwrap();
            let a = log_partition_capped(&s, 1e-14, 1_000_000).unwrap();
            let b = log_partition_capped(&s, 1e-14, 2_000_000).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}
