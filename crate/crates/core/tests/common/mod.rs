//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

fn simpson<F: Fn(f64) -> f64>(f: &F, (a, fa): (f64, f64), (m, fm): (f64, f64), (b, fb): (f64, f64), whole: f64, tol: f64, depth: u32) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, (a, fa), (lm, flm), (m, fm), left, 0.5 * tol, depth - 1)
        + simpson(f, (m, fm), (rm, frm), (b, fb), right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fb, fm) = (f(a), f(b), f(m));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, (a, fa), (m, fm), (b, fb), whole, tol, 50)
}

/// `K(k) = ∫₀^{π/2} dθ/√(1 − k² sin²θ)` by quadrature.
pub fn quad_k(k: f64) -> f64 {
    integrate(|t| 1.0 / (1.0 - (k * t.sin()).powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-15)
}

/// `E(k) = ∫₀^{π/2} √(1 − k² sin²θ) dθ` by quadrature.
pub fn quad_e(k: f64) -> f64 {
    integrate(|t| (1.0 - (k * t.sin()).powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-15)
}

/// Lowest eigenpair of a dense symmetric matrix via nalgebra.
pub fn dense_ground(rows: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let n = rows.len();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let eig = m.symmetric_eigen();
    let i = (0..n)
        .min_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]))
        .unwrap();
    let mut v: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    (eig.eigenvalues[i], v)
}

/// Singular values squared, descending, via nalgebra.
pub fn dense_schmidt(amps: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    let m = nalgebra::DMatrix::from_fn(rows, cols, |r, c| amps[r * cols + c]);
    let mut p: Vec<f64> = m.singular_values().iter().map(|s| s * s).collect();
    p.sort_by(|a, b| b.total_cmp(a));
    p
}
