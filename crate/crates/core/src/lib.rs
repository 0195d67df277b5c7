//! Entanglement entropy `S`, its dispersion `D`, the absolute fluctuation
//! `ΔS = √D` and the relative fluctuation `δS = ΔS/S` for the ground state
//! of the transverse-field Ising chain
//!
//! ```text
//! H = −Σ σˣᵢ − λ Σ σᶻᵢ σᶻᵢ₊₁
//! ```
//!
//! Three systems are covered:
//!
//! * [`dimer`]: the two-site chain, fully analytic.
//! * [`finite_chain`]: open chains up to 14 sites by exact diagonalization.
//! * [`infinite_entropy`]: the half-infinite chain via its free-fermion
//!   entanglement spectrum ([`free_fermion`]), both as ladder sums and in
//!   closed form through complete elliptic integrals ([`elliptic`]).
//!
//! [`generalized_entropy`] adds Rényi/Tsallis entropies and moment
//! generation, and [`identities`] checks the product/sum identities of the
//! Jacobi nome that connect the ladder sums to the closed forms.

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dimer;
pub mod elliptic;
pub mod error;
pub mod finite_chain;
pub mod free_fermion;
pub mod generalized_entropy;
pub mod identities;
pub mod infinite_entropy;
pub mod linalg;
pub mod solve;
pub mod stats;

pub use elliptic::{EllipticPair, Modulus};
pub use error::{Error, Result};
pub use free_fermion::{Branch, Coupling, FermionSpectrum, Phase};
pub use stats::EntropyStats;
