//! Entropic uncertainty relation for the relative-entropy POVM coherence.
//!
//! For POVMs `E`, `F` on the same space,
//! `C_r(ρ,E) + C_r(ρ,F) ≥ 2 (log₂(1/c) − S(ρ))` with the overlap constant
//! `c = max_{j,k} ‖√E_j √F_k‖`. Pure states satisfy the sharper
//! `C_r(ψ,E) + C_r(ψ,F) ≥ log₂(1/c)`.
//!
//! The refined constant
//! `c′ = min{max_k ‖Σ_j E_j F_k E_j‖, max_j ‖Σ_k F_k E_j F_k‖}` is measured
//! in squared-overlap units (`c′ ≤ c²` for projective pairs), so the
//! corresponding bound is `log₂(1/c′) − 2 S(ρ)`.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::coherence::c_r;
use crate::error::Result;
use crate::matrix::{sum_matrices, ComplexMatrix};
use crate::quantum::{check_dims, DensityMatrix, Povm};
use crate::spectral::{entropy_psd, operator_norm};

/// `max_{j,k} ‖√E_j √F_k‖`.
pub fn overlap_c(e: &Povm, f: &Povm) -> Result<f64> {
    check_dims(e.dim(), f.dim())?;
    let re = e.sqrt_elements()?;
    let rf = f.sqrt_elements()?;
    let mut c = 0.0f64;
    for a in &re {
        for b in &rf {
            c = c.max(operator_norm(&(a * b))?);
        }
    }
    Ok(c)
}

/// `max_k ‖Σ_j A_j B_k A_j‖`.
fn max_twirl_norm(a: &[ComplexMatrix], b: &[ComplexMatrix]) -> Result<f64> {
    let mut best = 0.0f64;
    for bk in b {
        let terms: Vec<ComplexMatrix> = a.iter().map(|aj| &(aj * bk) * aj).collect();
        let sum = sum_matrices(terms.iter()).expect("POVMs are non-empty");
        best = best.max(operator_norm(&sum)?);
    }
    Ok(best)
}

/// `min{max_k ‖Σ_j E_j F_k E_j‖, max_j ‖Σ_k F_k E_j F_k‖}`.
pub fn overlap_c_prime(e: &Povm, f: &Povm) -> Result<f64> {
    check_dims(e.dim(), f.dim())?;
    let first = max_twirl_norm(e.elements(), f.elements())?;
    let second = max_twirl_norm(f.elements(), e.elements())?;
    Ok(first.min(second))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport {
    /// `C_r(ρ,E) + C_r(ρ,F)` in bits.
    pub lhs: f64,
    pub c: f64,
    pub c_prime: f64,
    /// `2 (log₂(1/c) − S(ρ))`.
    pub bound_c: f64,
    /// `log₂(1/c′) − 2 S(ρ)`.
    pub bound_c_prime: f64,
    /// `log₂(1/c)`, the pure-state bound (valid only when `ρ` is pure).
    pub pure_state_bound: f64,
    pub entropy_rho: f64,
}

impl UncertaintyReport {
    /// Both general bounds hold to within `tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs >= self.bound_c - tol && self.lhs >= self.bound_c_prime - tol
    }
}

pub fn uncertainty_report(rho: &DensityMatrix, e: &Povm, f: &Povm) -> Result<UncertaintyReport> {
    check_dims(e.dim(), rho.dim())?;
    check_dims(f.dim(), rho.dim())?;
    let c = overlap_c(e, f)?;
    let c_prime = overlap_c_prime(e, f)?;
    let s = entropy_psd(rho.matrix())?;
    let lhs = c_r(rho, e)?.value + c_r(rho, f)?.value;
    Ok(UncertaintyReport {
        lhs,
        c,
        c_prime,
        bound_c: 2.0 * (-c.log2() - s),
        bound_c_prime: -c_prime.log2() - 2.0 * s,
        pure_state_bound: -c.log2(),
        entropy_rho: s,
    })
}
