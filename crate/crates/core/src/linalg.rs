//! Small real-symmetric eigensolvers: cyclic Jacobi for dense matrices,
//! implicit QL for tridiagonal ones, and Lanczos with full
//! reorthogonalization for matrix-free operators.

use crate::error::{Error, Result};

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.data[i * self.n..(i + 1) * self.n]
                .iter()
                .zip(x)
                .map(|(a, b)| a * b)
                .sum();
        }
    }
}

/// Eigenvalues in ascending order with matching eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[i]` belongs to `values[i]`.
    pub vectors: Vec<Vec<f64>>,
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations on a symmetric matrix.
pub fn jacobi_eigen(a: &DenseMatrix) -> Result<Eigen> {
    let n = a.n;
    let mut m = a.data.clone();
    // vecs[j] is the j-th column of the accumulated rotation
    let mut vecs: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let total: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut converged = n < 2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| 2.0 * m[i * n + j].powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * total {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + theta.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    let np = c * akp - s * akq;
                    let nq = s * akp + c * akq;
                    m[k * n + p] = np;
                    m[p * n + k] = np;
                    m[k * n + q] = nq;
                    m[q * n + k] = nq;
                }
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                let (lo, hi) = vecs.split_at_mut(q);
                for (vp, vq) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (x, y) = (*vp, *vq);
                    *vp = c * x - s * y;
                    *vq = s * x + c * y;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            what: "Jacobi eigensolver",
            limit: JACOBI_MAX_SWEEPS,
        });
    }
    let values: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    Ok(sorted(values, vecs))
}

fn sorted(values: Vec<f64>, vectors: Vec<Vec<f64>>) -> Eigen {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    Eigen {
        values: order.iter().map(|&i| values[i]).collect(),
        vectors: order.iter().map(|&i| vectors[i].clone()).collect(),
    }
}

/// Implicit-shift QL on the tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples `i` and `i+1`).
pub fn tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<Eigen> {
    let n = diag.len();
    assert!(n == 0 || off.len() + 1 == n, "off-diagonal must have n−1 entries");
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    // z[k][i]: component k of eigenvector i
    let mut z = vec![vec![0.0; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NonConvergence {
                    what: "tridiagonal QL",
                    limit: 60,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    let vectors = (0..n).map(|i| z.iter().map(|row| row[i]).collect()).collect();
    Ok(sorted(d, vectors))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Debug, Clone, Copy)]
pub struct LanczosOptions {
    /// Total matrix–vector products allowed across restarts.
    pub max_iter: usize,
    /// Target for `‖Ax − θx‖`.
    pub residual_tol: f64,
    /// Krylov dimension before a restart from the current Ritz vector.
    pub max_krylov: usize,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            max_iter: 10_000,
            residual_tol: 1e-11,
            max_krylov: 300,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Lowest eigenpair of the symmetric operator `apply` (computing `y = A x`)
/// by Lanczos with full reorthogonalization, restarted from the current
/// Ritz vector when the Krylov space reaches `max_krylov`.
pub fn lanczos_lowest<F>(apply: F, start: &[f64], opts: LanczosOptions) -> Result<Eigenpair>
where
    F: Fn(&[f64], &mut [f64]),
{
    let n = start.len();
    let mut x = start.to_vec();
    let nx = norm(&x);
    if !(nx > 0.0) {
        return Err(Error::domain("Lanczos start vector norm", nx, "(0, ∞)"));
    }
    x.iter_mut().for_each(|v| *v /= nx);

    let mut w = vec![0.0; n];
    let mut used = 0;
    while used < opts.max_iter {
        let mut basis: Vec<Vec<f64>> = vec![x.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        let krylov_cap = opts.max_krylov.min(n);
        loop {
            let j = basis.len() - 1;
            apply(&basis[j], &mut w);
            used += 1;
            let alpha = dot(&basis[j], &w);
            alphas.push(alpha);
            let before = {
                w.iter_mut().zip(&basis[j]).for_each(|(wi, vi)| *wi -= alpha * vi);
                if j > 0 {
                    let b = betas[j - 1];
                    w.iter_mut().zip(&basis[j - 1]).for_each(|(wi, vi)| *wi -= b * vi);
                }
                norm(&w)
            };
            // full reorthogonalization; a second pass only if the first
            // removed most of the vector
            for pass in 0..2 {
                for v in &basis {
                    let h = dot(v, &w);
                    w.iter_mut().zip(v).for_each(|(wi, vi)| *wi -= h * vi);
                }
                if pass == 0 && norm(&w) > 0.7 * before {
                    break;
                }
            }
            let beta = norm(&w);
            let scale = alphas.iter().fold(beta, |m, a| m.max(a.abs()));
            let exhausted = beta <= 1e-13 * scale.max(1.0);
            let full = basis.len() >= krylov_cap || used >= opts.max_iter;
            let check = exhausted || full || basis.len().is_multiple_of(5);
            if check {
                let ritz = tridiagonal_eigen(&alphas, &betas)?;
                let y = &ritz.vectors[0];
                let estimate = beta * y[y.len() - 1].abs();
                if exhausted || full || estimate < 0.1 * opts.residual_tol {
                    x = vec![0.0; n];
                    for (v, c) in basis.iter().zip(y) {
                        x.iter_mut().zip(v).for_each(|(xi, vi)| *xi += c * vi);
                    }
                    let nx = norm(&x);
                    x.iter_mut().for_each(|v| *v /= nx);
                    apply(&x, &mut w);
                    used += 1;
                    let value = dot(&x, &w);
                    let residual = w
                        .iter()
                        .zip(&x)
                        .map(|(a, b)| (a - value * b).powi(2))
                        .sum::<f64>()
                        .sqrt();
                    if residual <= opts.residual_tol {
                        return Ok(Eigenpair {
                            value,
                            vector: x,
                            residual,
                            iterations: used,
                        });
                    }
                    break;
                }
            }
            betas.push(beta);
            basis.push(w.iter().map(|v| v / beta).collect());
        }
    }
    Err(Error::NonConvergence {
        what: "Lanczos",
        limit: opts.max_iter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_matrix(n: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = ((i * 7 + j * 3) % 11) as f64 / 11.0 + ((j * 7 + i * 3) % 11) as f64 / 11.0;
                m.set(i, j, v + if i == j { i as f64 } else { 0.0 });
            }
        }
        m
    }

    fn check_pairs(a: &DenseMatrix, e: &Eigen, tol: f64) {
        let n = a.dim();
        let mut y = vec![0.0; n];
        for (val, vec) in e.values.iter().zip(&e.vectors) {
            a.apply(vec, &mut y);
            let r: f64 = y.iter().zip(vec).map(|(p, q)| (p - val * q).powi(2)).sum::<f64>();
            assert!(r.sqrt() < tol, "residual {}", r.sqrt());
            assert!((norm(vec) - 1.0).abs() < 1e-12);
        }
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn jacobi_diagonalizes() {
        let a = test_matrix(12);
        let e = jacobi_eigen(&a).unwrap();
        check_pairs(&a, &e, 1e-12);
        let trace: f64 = (0..12).map(|i| a.get(i, i)).sum();
        assert!((e.values.iter().sum::<f64>() - trace).abs() < 1e-11);
    }

    #[test]
    fn tridiagonal_matches_jacobi() {
        let diag = [2.0, -1.0, 0.5, 3.0, 1.0, -2.5];
        let off = [1.0, 0.3, -0.7, 2.0, 0.1];
        let mut a = DenseMatrix::zeros(6);
        for i in 0..6 {
            a.set(i, i, diag[i]);
            if i < 5 {
                a.set(i, i + 1, off[i]);
                a.set(i + 1, i, off[i]);
            }
        }
        let t = tridiagonal_eigen(&diag, &off).unwrap();
        let j = jacobi_eigen(&a).unwrap();
        for (x, y) in t.values.iter().zip(&j.values) {
            assert!((x - y).abs() < 1e-13);
        }
        check_pairs(&a, &t, 1e-13);
    }

    #[test]
    fn lanczos_finds_lowest() {
        let a = test_matrix(40);
        let dense = jacobi_eigen(&a).unwrap();
        let start = vec![1.0; 40];
        let e = lanczos_lowest(|x, y| a.apply(x, y), &start, LanczosOptions::default()).unwrap();
        assert!((e.value - dense.values[0]).abs() < 1e-11);
        assert!(e.residual < 1e-11);
    }

    #[test]
    fn lanczos_exact_start_vector() {
        // start is already an eigenvector: the Krylov space is exhausted at once
        let mut a = DenseMatrix::zeros(3);
        for i in 0..3 {
            a.set(i, i, -1.0);
        }
        let e = lanczos_lowest(|x, y| a.apply(x, y), &[1.0, 1.0, 1.0], LanczosOptions::default())
            .unwrap();
        assert!((e.value + 1.0).abs() < 1e-14);
    }
}
