//! Coherence of quantum states with respect to general POVMs.
//!
//! The crate computes three POVM coherence quantifiers (relative entropy,
//! l1-norm and Tsallis-α), upper bounds on the l1 quantifier, the link
//! between the Tsallis-1/2 quantifier and least-square-measurement state
//! discrimination, an entropic uncertainty relation for the relative-entropy
//! quantifier, and exact averages over Haar-random pure states.
//!
//! Everything here is `no_std` with `alloc`; file formats, the command line
//! and parallel Monte Carlo live in the companion `povm-coherence-cli` crate.
//!
//! Module map:
//!
//! - [`matrix`], [`spectral`]: dense complex matrices and the Hermitian
//!   spectral calculus (Jacobi eigensolver, matrix functions, norms, entropy).
//! - [`quantum`]: validated states, POVMs, ensembles and random sampling.
//! - [`coherence`]: `C_r`, `C_l1`, `C_{T,α}` and the incoherence test.
//! - [`bounds`]: upper bounds on `C_l1` and the two worked example families.
//! - [`lsm`]: least-square measurement and the state/POVM ↔ ensemble maps.
//! - [`uncertainty`]: overlap constants and the `C_r` uncertainty relation.
//! - [`divided`], [`gamma`], [`haar`]: confluent divided differences, the
//!   Gamma function and Haar averages with a Monte Carlo oracle.

#![no_std]
#![forbid(unsafe_code)]
// `!(x <= tol)` is deliberate throughout: NaN has to fail every tolerance check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod coherence;
pub mod divided;
pub mod error;
pub mod gamma;
pub mod haar;
pub mod lsm;
pub mod matrix;
pub mod quantum;
pub mod spectral;
pub mod uncertainty;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, C64};
pub use quantum::{DensityMatrix, Ensemble, Povm, PureState};
