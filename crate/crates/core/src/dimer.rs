//! The two-site chain `H₂ = −σˣ₁ − σˣ₂ − λ σᶻ₁σᶻ₂`, solved in closed form.
//!
//! Basis ordering throughout is `|1,1⟩, |1,−1⟩, |−1,1⟩, |−1,−1⟩` in the
//! eigenbasis of `σᶻ`. Both signs of `λ` are accepted.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::solve::{brent, scan_bracket, linear_grid, Landmark};
use crate::stats::{EntropyStats, NORMALIZATION_TOL};

/// The explicit 4×4 matrix of `H₂`.
pub fn dimer_hamiltonian(lambda: f64) -> [[f64; 4]; 4] {
    [
        [-lambda, -1.0, -1.0, 0.0],
        [-1.0, lambda, 0.0, -1.0],
        [-1.0, 0.0, lambda, -1.0],
        [0.0, -1.0, -1.0, -lambda],
    ]
}

fn finite(what: &'static str, lambda: f64) -> Result<()> {
    if lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(what, lambda, "finite reals"))
    }
}

/// `{±√(λ²+4), ±λ}` in ascending order.
pub fn dimer_spectrum(lambda: f64) -> Result<[f64; 4]> {
    finite("dimer spectrum", lambda)?;
    let r = lambda.hypot(2.0);
    let l = lambda.abs();
    Ok([-r, -l, l, r])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimerGround {
    pub energy: f64,
    pub amplitudes: [f64; 4],
    /// `d = 2[(λ + √(λ²+4))² + 4]`
    pub norm_const: f64,
}

impl DimerGround {
    /// `‖H₂ψ − Eψ‖` for a given `λ`.
    pub fn residual(&self, lambda: f64) -> f64 {
        let h = dimer_hamiltonian(lambda);
        (0..4)
            .map(|i| {
                let hv: f64 = (0..4).map(|j| h[i][j] * self.amplitudes[j]).sum();
                let r = hv - self.energy * self.amplitudes[i];
                r * r
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// `(λ + √(λ²+4), 2, 2, λ + √(λ²+4))/√d`.
pub fn dimer_ground(lambda: f64) -> Result<DimerGround> {
    finite("dimer ground state", lambda)?;
    let r = lambda.hypot(2.0);
    // λ + r without cancellation for λ < 0
    let a = if lambda >= 0.0 { lambda + r } else { 4.0 / (r - lambda) };
    let norm = std::f64::consts::SQRT_2 * a.hypot(2.0);
    let (x, y) = (a / norm, 2.0 / norm);
    Ok(DimerGround {
        energy: -r,
        amplitudes: [x, y, y, x],
        norm_const: 2.0 * (a * a + 4.0),
    })
}

/// `C = 2|a₁,₁ a₋₁,₋₁ − a₁,₋₁ a₋₁,₁|` of a normalized two-qubit state.
pub fn concurrence_of_state(a: &[f64; 4]) -> Result<f64> {
    let norm: f64 = a.iter().map(|x| x * x).sum();
    if !((norm - 1.0).abs() <= NORMALIZATION_TOL) {
        return Err(Error::Unnormalized { sum: norm });
    }
    Ok((2.0 * (a[0] * a[3] - a[1] * a[2]).abs()).clamp(0.0, 1.0))
}

/// `C = [1 + (2/λ)²]^{−1/2}`, continuously extended by `C(0) = 0`.
pub fn dimer_concurrence(lambda: f64) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let l = lambda.abs();
    l / l.hypot(2.0)
}

fn check_concurrence(c: f64) -> Result<()> {
    if (0.0..=1.0).contains(&c) {
        Ok(())
    } else {
        Err(Error::domain("concurrence", c, "[0, 1]"))
    }
}

/// Schmidt probabilities `p± = (1 ± √(1 − C²))/2`.
pub fn schmidt_probs(c: f64) -> Result<[f64; 2]> {
    check_concurrence(c)?;
    let s = ((1.0 - c) * (1.0 + c)).sqrt();
    let p_plus = 0.5 * (1.0 + s);
    // p₊p₋ = C²/4
    let p_minus = if p_plus > 0.0 { 0.25 * c * c / p_plus } else { 0.0 };
    Ok([p_plus, p_minus])
}

/// Binary entropy (nats) of `p±`.
pub fn entropy_from_c(c: f64) -> Result<f64> {
    let [pp, pm] = schmidt_probs(c)?;
    let h = |p: f64| if p > 0.0 { -p * p.ln() } else { 0.0 };
    Ok(h(pp) + h(pm))
}

/// `ΔS = C ln[(1 + √(1 − C²))/C]`, with `ΔS(0) = 0`.
pub fn fluctuation_from_c(c: f64) -> Result<f64> {
    check_concurrence(c)?;
    if c == 0.0 {
        return Ok(0.0);
    }
    let s = ((1.0 - c) * (1.0 + c)).sqrt();
    Ok(c * ((1.0 + s) / c).ln())
}

pub fn dimer_stats(lambda: f64) -> Result<EntropyStats> {
    finite("dimer", lambda)?;
    let c = dimer_concurrence(lambda);
    let s = entropy_from_c(c)?;
    let ds = fluctuation_from_c(c)?;
    Ok(EntropyStats::from_moments(s, ds * ds))
}

fn excess(lambda: f64) -> f64 {
    let c = dimer_concurrence(lambda);
    match (fluctuation_from_c(c), entropy_from_c(c)) {
        (Ok(ds), Ok(s)) => ds - s,
        _ => f64::NAN,
    }
}

/// The coupling `λ_f ∈ (1, 5)` where `ΔS = S`.
pub fn dimer_lambda_f() -> Result<Landmark> {
    let grid = linear_grid(1.0, 5.0, 1000);
    let (lo, hi) = scan_bracket(excess, &grid).ok_or(Error::BracketFailure {
        what: "dimer ΔS − S",
        lo: 1.0,
        hi: 5.0,
    })?;
    let root = brent(excess, lo, hi, 1e-12, 200)?;
    Ok(Landmark {
        lambda: root.x,
        value: entropy_from_c(dimer_concurrence(root.x))?,
        bracket_width: root.bracket_width,
    })
}
