//! Exact diagonalization of the open chain
//! `H = −Σᵢ σˣᵢ − λ Σᵢ σᶻᵢσᶻᵢ₊₁` for `2 ≤ L ≤ 14`.
//!
//! Basis states are `L`-bit integers. Site 1 is the most significant bit and
//! a set bit means `σᶻ = −1`, so for `L = 2` the ordering is
//! `|1,1⟩, |1,−1⟩, |−1,1⟩, |−1,−1⟩`. Splitting the chain after site `cut`
//! then reshapes the amplitude vector into a `2^cut × 2^(L−cut)` row-major
//! matrix.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigen, lanczos_lowest, DenseMatrix, LanczosOptions};
use crate::solve::{argmax, golden_max, linear_grid};
use crate::stats::{check_normalized, stats_from_probs, EntropyStats};

pub const MIN_SITES: usize = 2;
pub const MAX_SITES: usize = 14;

/// Schmidt weights below this are dropped.
pub const SCHMIDT_FLOOR: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainSpec {
    sites: usize,
    lambda: f64,
    cut: usize,
}

impl ChainSpec {
    /// Chain of `sites` spins with the half-chain cut `⌊L/2⌋`.
    pub fn new(sites: usize, lambda: f64) -> Result<Self> {
        if !(MIN_SITES..=MAX_SITES).contains(&sites) {
            return Err(Error::InvalidChain(format!(
                "L = {sites} outside [{MIN_SITES}, {MAX_SITES}]"
            )));
        }
        if !lambda.is_finite() {
            return Err(Error::InvalidChain(format!("λ = {lambda} is not finite")));
        }
        Ok(Self {
            sites,
            lambda,
            cut: sites / 2,
        })
    }

    pub fn with_cut(self, cut: usize) -> Result<Self> {
        check_cut(self.sites, cut)?;
        Ok(Self { cut, ..self })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn cut(&self) -> usize {
        self.cut
    }

    pub fn dim(&self) -> usize {
        1 << self.sites
    }
}

fn check_cut(sites: usize, cut: usize) -> Result<()> {
    if cut == 0 || cut >= sites {
        return Err(Error::InvalidChain(format!(
            "cut {cut} outside [1, {}]",
            sites - 1
        )));
    }
    Ok(())
}

/// Matrix-free Hamiltonian of an open chain.
#[derive(Debug, Clone, Copy)]
pub struct ChainOperator {
    sites: usize,
    lambda: f64,
}

impl ChainOperator {
    pub fn dim(&self) -> usize {
        1 << self.sites
    }

    /// `−λ Σ σᶻᵢσᶻᵢ₊₁` on basis state `b`.
    pub fn diagonal(&self, b: usize) -> f64 {
        let bonds = self.sites as u32 - 1;
        let mask = (1usize << bonds) - 1;
        let walls = ((b ^ (b >> 1)) & mask).count_ones();
        let aligned = bonds - walls;
        -self.lambda * (aligned as f64 - walls as f64)
    }

    /// `y = H x`
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (b, yb) in y.iter_mut().enumerate() {
            let mut acc = self.diagonal(b) * x[b];
            for i in 0..self.sites {
                acc -= x[b ^ (1 << i)];
            }
            *yb = acc;
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(n);
        for b in 0..n {
            m.set(b, b, self.diagonal(b));
            for i in 0..self.sites {
                m.set(b, b ^ (1 << i), -1.0);
            }
        }
        m
    }
}

pub fn build_hamiltonian(spec: &ChainSpec) -> ChainOperator {
    ChainOperator {
        sites: spec.sites,
        lambda: spec.lambda,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundState {
    pub sites: usize,
    pub lambda: f64,
    pub energy: f64,
    pub amplitudes: Vec<f64>,
}

impl GroundState {
    /// `‖Hψ − Eψ‖`
    pub fn residual(&self) -> f64 {
        let op = ChainOperator {
            sites: self.sites,
            lambda: self.lambda,
        };
        let mut y = vec![0.0; op.dim()];
        op.apply(&self.amplitudes, &mut y);
        y.iter()
            .zip(&self.amplitudes)
            .map(|(h, a)| (h - self.energy * a).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Lowest eigenpair by Lanczos from the normalized all-ones vector, sign
/// fixed so that the amplitudes sum to a positive number.
pub fn ground_state(spec: &ChainSpec) -> Result<GroundState> {
    ground_state_with(spec, LanczosOptions::default())
}

pub fn ground_state_with(spec: &ChainSpec, opts: LanczosOptions) -> Result<GroundState> {
    let op = build_hamiltonian(spec);
    let start = vec![1.0; op.dim()];
    let pair = lanczos_lowest(|x, y| op.apply(x, y), &start, opts)?;
    Ok(finish(spec, pair.value, pair.vector))
}

/// Ground state by dense Jacobi diagonalization; practical for `L ≤ 6`.
pub fn ground_state_dense(spec: &ChainSpec) -> Result<GroundState> {
    let eig = jacobi_eigen(&build_hamiltonian(spec).to_dense())?;
    Ok(finish(spec, eig.values[0], eig.vectors[0].clone()))
}

fn finish(spec: &ChainSpec, energy: f64, mut amplitudes: Vec<f64>) -> GroundState {
    if amplitudes.iter().sum::<f64>() < 0.0 {
        amplitudes.iter_mut().for_each(|a| *a = -*a);
    }
    GroundState {
        sites: spec.sites,
        lambda: spec.lambda,
        energy,
        amplitudes,
    }
}

/// Eigenvalues of the reduced density matrix, descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtSpectrum {
    probs: Vec<f64>,
}

impl SchmidtSpectrum {
    /// Validates normalization and sorts descending.
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        check_normalized(&probs)?;
        probs.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_probs(self) -> Vec<f64> {
        self.probs
    }
}

/// Squared singular values of the amplitude array reshaped at `cut`,
/// obtained from the Gram matrix on the smaller side of the cut.
pub fn schmidt_spectrum(g: &GroundState, cut: usize) -> Result<SchmidtSpectrum> {
    check_cut(g.sites, cut)?;
    schmidt_of_amplitudes(&g.amplitudes, g.sites, cut)
}

pub(crate) fn schmidt_of_amplitudes(amps: &[f64], sites: usize, cut: usize) -> Result<SchmidtSpectrum> {
    let rows = 1usize << cut;
    let cols = 1usize << (sites - cut);
    // `small` indexes the Gram side, `big` the side summed over
    let (small, big) = (rows.min(cols), rows.max(cols));
    let at = |s: usize, b: usize| {
        if rows <= cols {
            amps[s * cols + b]
        } else {
            amps[b * cols + s]
        }
    };
    let mut gram = DenseMatrix::zeros(small);
    for i in 0..small {
        for j in i..small {
            let v: f64 = (0..big).map(|b| at(i, b) * at(j, b)).sum();
            gram.set(i, j, v);
            gram.set(j, i, v);
        }
    }
    let eig = jacobi_eigen(&gram)?;
    // ‖Aᵀu‖² instead of the Gram eigenvalue: the noise drops from ε‖A‖² to
    // (ε‖A‖)², so roundoff no longer survives the floor.
    let mut probs: Vec<f64> = eig
        .vectors
        .iter()
        .map(|u| {
            (0..big)
                .map(|b| {
                    let w: f64 = (0..small).map(|s| u[s] * at(s, b)).sum();
                    w * w
                })
                .sum::<f64>()
        })
        .filter(|&p| p >= SCHMIDT_FLOOR)
        .collect();
    let total: f64 = probs.iter().sum();
    check_normalized(&probs)?;
    probs.iter_mut().for_each(|p| *p /= total);
    SchmidtSpectrum::new(probs)
}

pub fn entropy_stats_from_spectrum(p: &SchmidtSpectrum) -> Result<EntropyStats> {
    stats_from_probs(&p.probs)
}

/// Ground state, Schmidt spectrum at `spec.cut()` and its statistics.
pub fn chain_stats(spec: &ChainSpec) -> Result<EntropyStats> {
    let g = ground_state(spec)?;
    entropy_stats_from_spectrum(&schmidt_spectrum(&g, spec.cut)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FluctuationPeak {
    pub lambda: f64,
    pub fluctuation: f64,
    /// The scan maximum sat on an endpoint of the range.
    pub at_boundary: bool,
}

pub const DEFAULT_PEAK_RANGE: (f64, f64) = (0.2, 3.0);

/// Position of the maximum of the half-chain `ΔS(λ)`: a 200-point scan of
/// `range` refined by golden section to `1e-4`.
pub fn max_fluctuation_position(sites: usize, range: (f64, f64)) -> Result<FluctuationPeak> {
    ChainSpec::new(sites, range.0)?;
    let fluct = |lambda: f64| -> Result<f64> {
        Ok(chain_stats(&ChainSpec::new(sites, lambda)?)?.fluctuation)
    };
    let grid = linear_grid(range.0, range.1, 200);
    let values = grid.iter().map(|&l| fluct(l)).collect::<Result<Vec<f64>>>()?;
    let i = argmax(&values).ok_or_else(|| Error::InvalidChain("no finite ΔS on scan".into()))?;
    if i == 0 || i + 1 == grid.len() {
        return Ok(FluctuationPeak {
            lambda: grid[i],
            fluctuation: values[i],
            at_boundary: true,
        });
    }
    let peak = golden_max(
        |l| fluct(l).unwrap_or(f64::NAN),
        grid[i - 1],
        grid[i + 1],
        1e-4,
    );
    Ok(FluctuationPeak {
        lambda: peak.x,
        fluctuation: peak.value,
        at_boundary: false,
    })
}
