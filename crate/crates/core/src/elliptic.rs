//! Complete elliptic integrals of the first and second kinds, the
//! complementary modulus and the Jacobi nome.
//!
//! Everything is evaluated with the arithmetic–geometric mean. Given the pair
//! `(k, k')` the AGM of `(1, k')` yields `K(k) = π / (2·AGM)`, and the
//! sequence `c₀ = k`, `cₙ₊₁ = cₙ² / (4aₙ₊₁)` yields
//!
//! ```text
//! E(k) = K(k) · (1 − Σₙ 2ⁿ⁻¹ cₙ²).
//! ```
//!
//! The `cₙ` recursion never subtracts nearly equal numbers, so both `K − E`
//! and the tail `Σₙ≥₁ 2ⁿ⁻¹ cₙ²` stay accurate when `k` is small. The
//! closed-form fluctuation formulas depend on that.
//!
//! The complementary integrals `K(k')`, `E(k')` are computed from the AGM
//! of `(1, k)` directly, never through `√(1 − k'²)`, so callers that know
//! both moduli accurately (e.g. from the coupling `λ`) keep full precision
//! near `k → 0` and `k → 1`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted for `K`; beyond this `K` is dominated by the
/// rounding of `1 − k`.
pub const MAX_MODULUS: f64 = 1.0 - 1e-15;

const AGM_MAX_ITER: usize = 64;

/// A modulus `k ∈ [0, 1)` together with its complement `k' = √(1 − k²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Modulus {
    k: f64,
    k_prime: f64,
}

impl Modulus {
    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() || !(0.0..1.0).contains(&k) {
            return Err(Error::domain("modulus", k, "[0, 1)"));
        }
        if k > MAX_MODULUS {
            return Err(Error::NumericalRange {
                what: "modulus",
                value: k,
            });
        }
        Ok(Self {
            k,
            k_prime: ((1.0 - k) * (1.0 + k)).sqrt(),
        })
    }

    /// Builds a modulus whose complement the caller already knows to full
    /// precision.
    pub(crate) fn from_parts(k: f64, k_prime: f64) -> Result<Self> {
        if k > MAX_MODULUS || k_prime < (2e-15_f64).sqrt() {
            return Err(Error::NumericalRange {
                what: "modulus",
                value: k,
            });
        }
        debug_assert!((k * k + k_prime * k_prime - 1.0).abs() < 1e-15);
        Ok(Self { k, k_prime })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn k_prime(&self) -> f64 {
        self.k_prime
    }

    /// The modulus `k'` with complement `k`.
    pub fn complement(&self) -> Result<Self> {
        Self::from_parts(self.k_prime, self.k)
    }
}

/// Output of one AGM run on `(1, b)` with `c₀ = c`.
#[derive(Debug, Clone, Copy)]
struct Agm {
    /// `K = π / (2·AGM(1, b))`
    k_first: f64,
    /// `Σₙ≥₁ 2ⁿ⁻¹ cₙ²`
    tail: f64,
}

fn agm(b0: f64, c0: f64) -> Agm {
    let mut a = 1.0_f64;
    let mut b = b0;
    let mut c = c0;
    let mut tail = 0.0;
    let mut weight = 1.0;
    for _ in 0..AGM_MAX_ITER {
        if c <= 1e-16 * a {
            break;
        }
        let a_next = 0.5 * (a + b);
        c = c * c / (4.0 * a_next);
        b = (a * b).sqrt();
        a = a_next;
        tail += weight * c * c;
        weight *= 2.0;
    }
    Agm {
        k_first: FRAC_PI_2 / a,
        tail,
    }
}

/// Complete elliptic integral of the first kind,
/// `K(k) = ∫₀^{π/2} dθ / √(1 − k² sin²θ)`.
pub fn ellint_k(k: f64) -> Result<f64> {
    let m = Modulus::new(k)?;
    Ok(agm(m.k_prime, m.k).k_first)
}

/// Complete elliptic integral of the second kind,
/// `E(k) = ∫₀^{π/2} √(1 − k² sin²θ) dθ`. Accepts `k = 1`.
pub fn ellint_e(k: f64) -> Result<f64> {
    if !k.is_finite() || !(0.0..=1.0).contains(&k) {
        return Err(Error::domain("ellint_E", k, "[0, 1]"));
    }
    if k == 1.0 {
        return Ok(1.0);
    }
    if k > MAX_MODULUS {
        // K diverges but E → 1 + O(k'² ln k'), below rounding here.
        return Ok(1.0);
    }
    let m = Modulus::new(k)?;
    let r = agm(m.k_prime, m.k);
    Ok(r.k_first * (1.0 - 0.5 * k * k - r.tail))
}

/// `K`, `K'`, `E`, `E'` for one modulus `k ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticPair {
    pub modulus: Modulus,
    /// `K(k)`
    pub k_first: f64,
    /// `K(k')`
    pub k_first_prime: f64,
    /// `E(k)`
    pub e_second: f64,
    /// `E(k')`
    pub e_second_prime: f64,
    /// `Σₙ≥₁ 2ⁿ⁻¹ cₙ²` of the AGM for `k`, so `K − E = K·(k²/2 + tail)`.
    pub tail: f64,
}

impl EllipticPair {
    pub fn new(modulus: Modulus) -> Result<Self> {
        let (k, kp) = (modulus.k, modulus.k_prime);
        if k <= 0.0 {
            return Err(Error::domain("elliptic pair", k, "(0, 1)"));
        }
        let direct = agm(kp, k);
        let comp = agm(k, kp);
        Ok(Self {
            modulus,
            k_first: direct.k_first,
            k_first_prime: comp.k_first,
            e_second: direct.k_first * (1.0 - 0.5 * k * k - direct.tail),
            e_second_prime: comp.k_first * (1.0 - 0.5 * kp * kp - comp.tail),
            tail: direct.tail,
        })
    }

    pub fn from_k(k: f64) -> Result<Self> {
        Self::new(Modulus::new(k)?)
    }

    /// `π K(k') / K(k)`, i.e. `−ln q`.
    pub fn log_nome_neg(&self) -> f64 {
        PI * self.k_first_prime / self.k_first
    }

    pub fn nome(&self) -> f64 {
        (-self.log_nome_neg()).exp()
    }

    /// `E K' + E' K − K K' − π/2`.
    pub fn legendre_defect(&self) -> f64 {
        self.e_second * self.k_first_prime + self.e_second_prime * self.k_first
            - self.k_first * self.k_first_prime
            - FRAC_PI_2
    }

    /// `dK/dk = (E/k'² − K)/k`, evaluated as `K (k²/2 − tail) / (k k'²)`.
    pub fn dk_dk(&self) -> f64 {
        let (k, kp) = (self.modulus.k, self.modulus.k_prime);
        self.k_first * (0.5 * k * k - self.tail) / (k * kp * kp)
    }

    /// `dq/dk = π² q / (2 k k'² K²)`.
    pub fn dq_dk(&self) -> f64 {
        let (k, kp) = (self.modulus.k, self.modulus.k_prime);
        PI * PI * self.nome() / (2.0 * k * kp * kp * self.k_first * self.k_first)
    }
}

fn interior(what: &'static str, k: f64) -> Result<EllipticPair> {
    if !k.is_finite() || k <= 0.0 || k >= 1.0 {
        return Err(Error::domain(what, k, "(0, 1)"));
    }
    EllipticPair::from_k(k)
}

/// Jacobi nome `q = exp(−π K(k')/K(k))` for `k ∈ (0, 1)`.
pub fn nome(k: f64) -> Result<f64> {
    Ok(interior("nome", k)?.nome())
}

pub fn dk_dk(k: f64) -> Result<f64> {
    Ok(interior("dK/dk", k)?.dk_dk())
}

pub fn dq_dk(k: f64) -> Result<f64> {
    Ok(interior("dq/dk", k)?.dq_dk())
}
