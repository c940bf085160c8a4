//! Least-square measurement and the correspondence between (state, POVM)
//! pairs and discrimination ensembles.
//!
//! For an ensemble `{(ρ_j, η_j)}` with average `ρ_out = Σ η_j ρ_j` the
//! least-square measurement is `M_j = η_j ρ_out^{-1/2} ρ_j ρ_out^{-1/2}` and
//! its error probability is `P = 1 − Σ η_j tr(M_j ρ_j)`.
//!
//! A pair `(ρ, E)` induces the ensemble `η_j = tr(ρ E_j)`,
//! `ρ_j = √ρ E_j √ρ / η_j`, whose average is `ρ` and whose least-square
//! measurement is `E` itself. Then `C_{T,1/2}(ρ, E) = 2 P`.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::coherence::c_tsallis;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::quantum::{check_dims, DensityMatrix, Ensemble, Povm};
use crate::spectral::{self, eig_hermitian};

/// Eigenvalues at or below this fraction of `λ_max` are kernel.
pub const PINV_REL_TOL: f64 = 1e-12;
/// Outcomes with `tr(ρ E_j)` at or below this are dropped from the induced
/// ensemble.
pub const WEIGHT_DROP_TOL: f64 = 1e-14;
/// Minimum eigenvalue above which an ensemble average counts as full rank.
pub const FULL_RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct LsmInstance {
    pub ensemble: Ensemble,
    /// `M_j`, one per ensemble member. They sum to the projector onto the
    /// support of the average state, which is the identity only when that
    /// state has full rank.
    pub measurement: Vec<ComplexMatrix>,
    pub error_probability: f64,
    /// Numerical rank of the average state.
    pub support_rank: usize,
}

impl LsmInstance {
    pub fn is_full_rank(&self) -> bool {
        self.support_rank == self.ensemble.dim()
    }

    /// The measurement as a validated POVM, if it is complete.
    pub fn povm(&self) -> Option<Povm> {
        if self.is_full_rank() {
            Povm::new(self.measurement.clone()).ok()
        } else {
            None
        }
    }
}

pub fn lsm_build(ens: &Ensemble) -> Result<LsmInstance> {
    let rho_out = ens.average();
    let top = eig_hermitian(&rho_out)?.max_eigenvalue();
    if !(top > WEIGHT_DROP_TOL) {
        return Err(Error::DegenerateEnsemble);
    }
    let (inv_sqrt, support_rank) = spectral::pinv_sqrt_psd(&rho_out, PINV_REL_TOL)?;
    let mut success = 0.0;
    let measurement: Vec<ComplexMatrix> = ens
        .members()
        .iter()
        .map(|(state, weight)| {
            let m = inv_sqrt
                .sandwich(state.matrix())
                .scale(*weight)
                .hermitian_part();
            success += weight * m.trace_product(state.matrix()).re;
            m
        })
        .collect();
    Ok(LsmInstance {
        ensemble: ens.clone(),
        measurement,
        error_probability: (1.0 - success).clamp(0.0, 1.0),
        support_rank,
    })
}

/// An induced ensemble together with the POVM index of each member.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedEnsemble {
    pub ensemble: Ensemble,
    pub outcomes: Vec<usize>,
}

/// `η_j = tr(ρ E_j)`, `ρ_j = √ρ E_j √ρ / η_j`; zero-weight outcomes are
/// dropped and the remaining weights renormalized.
pub fn ensemble_from(rho: &DensityMatrix, e: &Povm) -> Result<InducedEnsemble> {
    check_dims(e.dim(), rho.dim())?;
    let root = spectral::sqrt_psd(rho.matrix())?;
    let mut kept = Vec::new();
    for (j, el) in e.elements().iter().enumerate() {
        let block = root.sandwich(el);
        let weight = block.real_trace();
        if weight > WEIGHT_DROP_TOL {
            kept.push((j, DensityMatrix::from_unnormalized(&block)?, weight));
        }
    }
    let total: f64 = kept.iter().map(|k| k.2).sum();
    let outcomes = kept.iter().map(|k| k.0).collect();
    let members = kept.into_iter().map(|(_, s, w)| (s, w / total)).collect();
    Ok(InducedEnsemble {
        ensemble: Ensemble::new(members)?,
        outcomes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restriction {
    FullRank,
    /// The average state was rank-deficient; state and POVM live on its
    /// support, of the given dimension.
    SupportRestricted {
        rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatePovm {
    pub state: DensityMatrix,
    pub povm: Povm,
    pub restriction: Restriction,
    /// Isometry (`d × rank`) from the support into the original space when
    /// restricted.
    pub support_basis: Option<ComplexMatrix>,
}

/// `ρ = Σ η_j ρ_j`, `E_j = η_j ρ^{-1/2} ρ_j ρ^{-1/2}`. A rank-deficient `ρ`
/// is compressed to its support first, where the `E_j` are complete.
pub fn state_povm_from(ens: &Ensemble) -> Result<StatePovm> {
    let rho = ens.average();
    let eig = eig_hermitian(&rho)?;
    let top = eig.max_eigenvalue();
    if !(top > WEIGHT_DROP_TOL) {
        return Err(Error::DegenerateEnsemble);
    }
    if eig.min_eigenvalue() > FULL_RANK_TOL {
        let inv_sqrt = eig.map(|x| 1.0 / x.sqrt());
        let elements = ens
            .members()
            .iter()
            .map(|(s, w)| inv_sqrt.sandwich(s.matrix()).scale(*w).hermitian_part())
            .collect();
        return Ok(StatePovm {
            state: DensityMatrix::new(rho)?,
            povm: Povm::new(elements)?,
            restriction: Restriction::FullRank,
            support_basis: None,
        });
    }
    let cutoff = PINV_REL_TOL * top;
    let support: Vec<usize> = (0..eig.dim())
        .filter(|&k| eig.eigenvalues[k] > cutoff)
        .collect();
    let rank = support.len();
    let v = ComplexMatrix::from_columns(
        &support
            .iter()
            .map(|&k| eig.eigenvectors.column(k))
            .collect::<Vec<_>>(),
    );
    let vt = v.adjoint();
    let compress = |m: &ComplexMatrix| vt.sandwich(m);
    let inv_sqrt = ComplexMatrix::from_diag(
        &support
            .iter()
            .map(|&k| 1.0 / eig.eigenvalues[k].sqrt())
            .collect::<Vec<_>>(),
    );
    let elements = ens
        .members()
        .iter()
        .map(|(s, w)| {
            inv_sqrt
                .sandwich(&compress(s.matrix()))
                .scale(*w)
                .hermitian_part()
        })
        .collect();
    Ok(StatePovm {
        state: DensityMatrix::from_unnormalized(&compress(&rho))?,
        povm: Povm::new(elements)?,
        restriction: Restriction::SupportRestricted { rank },
        support_basis: Some(v),
    })
}

/// Both sides of `C_{T,1/2}(ρ, E) = 2 P` and their absolute difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub tsallis_half: f64,
    pub twice_error: f64,
    pub defect: f64,
}

impl IdentityCheck {
    fn new(tsallis_half: f64, error_probability: f64) -> Self {
        let twice_error = 2.0 * error_probability;
        IdentityCheck {
            tsallis_half,
            twice_error,
            defect: (tsallis_half - twice_error).abs(),
        }
    }
}

/// Compares `C_{T,1/2}(ρ, E)` with twice the least-square error of the
/// ensemble induced by `(ρ, E)`.
pub fn tsallis_lsm_identity(rho: &DensityMatrix, e: &Povm) -> Result<IdentityCheck> {
    let induced = ensemble_from(rho, e)?;
    let lsm = lsm_build(&induced.ensemble)?;
    let lhs = c_tsallis(rho, e, 0.5)?.value;
    Ok(IdentityCheck::new(lhs, lsm.error_probability))
}

/// Compares twice the least-square error of `ens` with `C_{T,1/2}(ρ, E)`
/// for the pair built by [`state_povm_from`].
pub fn ensemble_tsallis_identity(ens: &Ensemble) -> Result<(IdentityCheck, StatePovm)> {
    let lsm = lsm_build(ens)?;
    let pair = state_povm_from(ens)?;
    let lhs = c_tsallis(&pair.state, &pair.povm, 0.5)?.value;
    Ok((IdentityCheck::new(lhs, lsm.error_probability), pair))
}
