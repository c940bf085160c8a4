//! The three POVM coherence quantifiers and the incoherence test.
//!
//! For a state `ρ` and POVM `E = {E_j}`:
//!
//! - `C_r(ρ,E)   = Σ_j S(√E_j ρ √E_j) − S(ρ)` (bits),
//! - `C_l1(ρ,E)  = Σ_{j≠k} ‖√E_j ρ √E_k‖_tr`,
//! - `C_{T,α}(ρ,E) = (Σ_j tr[(√E_j ρ^α √E_j)^{1/α}] − 1)/(α − 1)` for
//!   `α ∈ (0,1)∪(1,2]`.
//!
//! All three vanish exactly on states with `E_j ρ E_k = 0` for `j ≠ k`.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::quantum::{check_dims, DensityMatrix, Povm};
use crate::spectral::{self, entropy_of_spectrum};

/// Values in `[-NEGATIVE_ROUNDOFF_TOL, 0)` are reported as 0; anything more
/// negative is a numerical failure.
pub const NEGATIVE_ROUNDOFF_TOL: f64 = 1e-9;
pub const DEFAULT_INCOHERENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    RelativeEntropy,
    L1,
    Tsallis { alpha: f64 },
}

impl Measure {
    pub fn id(&self) -> &'static str {
        match self {
            Measure::RelativeEntropy => "relative_entropy",
            Measure::L1 => "l1",
            Measure::Tsallis { .. } => "tsallis",
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match *self {
            Measure::Tsallis { alpha } => Some(alpha),
            _ => None,
        }
    }

    /// Value on a pure state with outcome probabilities `p_j = ⟨ψ|E_j|ψ⟩`.
    ///
    /// Each block `√E_j |ψ⟩⟨ψ| √E_j` is rank one with eigenvalue `p_j`, so
    /// `C_r = H(p)`, `C_l1 = Σ_{j≠k} √(p_j p_k)` and
    /// `C_{T,α} = (Σ p_j^{1/α} − 1)/(α − 1)`.
    pub fn pure_state_value(&self, probabilities: &[f64]) -> f64 {
        match *self {
            Measure::RelativeEntropy => entropy_of_spectrum(probabilities),
            Measure::L1 => {
                let root_sum: f64 = probabilities.iter().map(|p| p.max(0.0).sqrt()).sum();
                let sum: f64 = probabilities.iter().map(|p| p.max(0.0)).sum();
                root_sum * root_sum - sum
            }
            Measure::Tsallis { alpha } => {
                let s: f64 = probabilities
                    .iter()
                    .map(|p| p.max(0.0).powf(1.0 / alpha))
                    .sum();
                (s - 1.0) / (alpha - 1.0)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceResult {
    pub value: f64,
    pub measure: Measure,
    /// Set when a slightly negative roundoff value was reported as 0.
    pub roundoff_clamped: bool,
}

impl CoherenceResult {
    fn new(value: f64, measure: Measure) -> Result<Self> {
        if value < -NEGATIVE_ROUNDOFF_TOL || !value.is_finite() {
            return Err(Error::NegativeCoherence(value));
        }
        Ok(CoherenceResult {
            value: value.max(0.0),
            measure,
            roundoff_clamped: value < 0.0,
        })
    }
}

/// Rejects `α` outside `(0,1)∪(1,2]`.
pub fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 2.0 && alpha != 1.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

/// Relative entropy of POVM coherence, in bits.
pub fn c_r(rho: &DensityMatrix, e: &Povm) -> Result<CoherenceResult> {
    check_dims(e.dim(), rho.dim())?;
    let mut total = 0.0;
    for root in e.sqrt_elements()? {
        total += spectral::entropy_psd(&root.sandwich(rho.matrix()))?;
    }
    let value = total - spectral::entropy_psd(rho.matrix())?;
    CoherenceResult::new(value, Measure::RelativeEntropy)
}

/// l1-norm of POVM coherence.
pub fn c_l1(rho: &DensityMatrix, e: &Povm) -> Result<CoherenceResult> {
    check_dims(e.dim(), rho.dim())?;
    let roots = e.sqrt_elements()?;
    let left: Vec<_> = roots.iter().map(|r| r * rho.matrix()).collect();
    let mut total = 0.0;
    for (j, lj) in left.iter().enumerate() {
        for rk in &roots[j + 1..] {
            // ‖√E_k ρ √E_j‖ = ‖(√E_j ρ √E_k)†‖
            total += 2.0 * spectral::trace_norm(&(lj * rk))?;
        }
    }
    CoherenceResult::new(total, Measure::L1)
}

/// Tsallis-α POVM coherence.
pub fn c_tsallis(rho: &DensityMatrix, e: &Povm, alpha: f64) -> Result<CoherenceResult> {
    check_dims(e.dim(), rho.dim())?;
    check_alpha(alpha)?;
    let rho_alpha = spectral::power_psd(rho.matrix(), alpha)?;
    let mut total = 0.0;
    for root in e.sqrt_elements()? {
        let block = root.sandwich(&rho_alpha);
        let eig = spectral::eig_hermitian(&block)?;
        total += eig
            .psd_eigenvalues()?
            .iter()
            .map(|&x| if x > 0.0 { x.powf(1.0 / alpha) } else { 0.0 })
            .sum::<f64>();
    }
    CoherenceResult::new((total - 1.0) / (alpha - 1.0), Measure::Tsallis { alpha })
}

pub fn coherence(rho: &DensityMatrix, e: &Povm, measure: Measure) -> Result<CoherenceResult> {
    match measure {
        Measure::RelativeEntropy => c_r(rho, e),
        Measure::L1 => c_l1(rho, e),
        Measure::Tsallis { alpha } => c_tsallis(rho, e, alpha),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncoherenceCheck {
    pub incoherent: bool,
    /// `max_{j≠k} max |(E_j ρ E_k)_{ab}|`, zero for single-outcome POVMs.
    pub max_defect: f64,
}

/// Tests `E_j ρ E_k = 0` for all `j ≠ k` up to `tol` in max-abs entry.
pub fn is_povm_incoherent(rho: &DensityMatrix, e: &Povm, tol: f64) -> Result<IncoherenceCheck> {
    check_dims(e.dim(), rho.dim())?;
    let elements = e.elements();
    let left: Vec<_> = elements.iter().map(|m| m * rho.matrix()).collect();
    let mut max_defect = 0.0f64;
    for (j, lj) in left.iter().enumerate() {
        for ek in &elements[j + 1..] {
            // E_k ρ E_j is the adjoint of E_j ρ E_k
            max_defect = max_defect.max((lj * ek).max_abs());
        }
    }
    Ok(IncoherenceCheck {
        incoherent: max_defect <= tol,
        max_defect,
    })
}
