//! Upper bounds on the l1 POVM coherence.
//!
//! For a general POVM:
//!
//! - the Hölder-type bound `Σ_{j≠k} a_j b_k` with
//!   `a_j = ‖E_j^{p/2} ρ‖_tr^{1/p}`, `b_k = ‖E_k^{q/2} ρ‖_tr^{1/q}`,
//!   `1/p + 1/q = 1`, and its `p = q = 2` closed form
//!   `(Σ_j ‖E_j ρ‖_tr^{1/2})² − Σ_j ‖E_j ρ‖_tr`;
//! - the ordered bound `2 Σ_j (n − j) t↑_j` and its uniform relaxation
//!   `(n − 1) Σ_j t_j`, where `t_j = ‖E_j^{1/2} ρ‖_tr` and `t↑` is sorted
//!   nondecreasing.
//!
//! For an orthonormal basis `{|u_j⟩}` (rank-one projective POVM):
//!
//! - `B1 = 2 Σ_j (d − j) ‖ρ|u_j⟩‖↑`, which coincides with the ordered bound;
//! - `B2 = (Σ_j √⟨u_j|ρ|u_j⟩)² − 1`;
//! - `B3 = √(d(d−1)(tr ρ² − Σ_j ⟨u_j|ρ|u_j⟩²))`.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::coherence::c_l1;
use crate::error::{Error, Result};
use crate::matrix::{vector_norm, ComplexMatrix, C64};
use crate::quantum::{check_dims, projective_povm, DensityMatrix, Povm, PureState, UNITARY_TOL};
use crate::spectral::{self, eig_hermitian, power_of_decomposition};

/// Allowed slack in `1/p + 1/q = 1`.
pub const EXPONENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Holder,
    HolderP2Q2,
    OrderedTraceNorm,
    UniformTraceNorm,
    B1,
    B2,
    B3,
}

impl BoundKind {
    pub fn id(&self) -> &'static str {
        match self {
            BoundKind::Holder => "thm1",
            BoundKind::HolderP2Q2 => "thm1_p2q2",
            BoundKind::OrderedTraceNorm => "thm2_ordered",
            BoundKind::UniformTraceNorm => "thm2_uniform",
            BoundKind::B1 => "b1",
            BoundKind::B2 => "b2",
            BoundKind::B3 => "b3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub c_l1: f64,
    pub bound: f64,
    pub kind: BoundKind,
    pub exponents: Option<(f64, f64)>,
}

impl BoundReport {
    /// `bound ≥ c_l1 − tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.bound >= self.c_l1 - tol
    }
}

/// Rejects `(p, q)` unless `p > 1`, `q > 1` and `|1/p + 1/q − 1| ≤ EXPONENT_TOL`.
pub fn check_exponents(p: f64, q: f64) -> Result<()> {
    if p > 1.0 && q > 1.0 && (1.0 / p + 1.0 / q - 1.0).abs() <= EXPONENT_TOL {
        Ok(())
    } else {
        Err(Error::InvalidExponents { p, q })
    }
}

/// `‖E_j^s ρ‖_tr` for every element.
fn power_trace_norms(rho: &DensityMatrix, e: &Povm, s: f64) -> Result<Vec<f64>> {
    check_dims(e.dim(), rho.dim())?;
    e.elements()
        .iter()
        .map(|el| {
            let power = power_of_decomposition(&eig_hermitian(el)?, s)?;
            spectral::trace_norm(&(&power * rho.matrix()))
        })
        .collect()
}

/// `Σ_{j≠k} a_j b_k = (Σ a)(Σ b) − Σ a_j b_j`.
fn off_diagonal_pair_sum(a: &[f64], b: &[f64]) -> f64 {
    let sa: f64 = a.iter().sum();
    let sb: f64 = b.iter().sum();
    let diag: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    (sa * sb - diag).max(0.0)
}

fn holder_value(rho: &DensityMatrix, e: &Povm, p: f64, q: f64) -> Result<f64> {
    check_exponents(p, q)?;
    let a: Vec<f64> = power_trace_norms(rho, e, p / 2.0)?
        .iter()
        .map(|t| t.powf(1.0 / p))
        .collect();
    let b: Vec<f64> = power_trace_norms(rho, e, q / 2.0)?
        .iter()
        .map(|t| t.powf(1.0 / q))
        .collect();
    Ok(off_diagonal_pair_sum(&a, &b))
}

fn holder_p2q2_value(rho: &DensityMatrix, e: &Povm) -> Result<f64> {
    let t = power_trace_norms(rho, e, 1.0)?;
    let root_sum: f64 = t.iter().map(|x| x.sqrt()).sum();
    Ok((root_sum * root_sum - t.iter().sum::<f64>()).max(0.0))
}

/// `2 Σ_j (n − j) x↑_j` with a stable ascending sort.
fn ordered_sum(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    sorted
        .iter()
        .enumerate()
        .map(|(j, x)| 2.0 * (n - 1 - j) as f64 * x)
        .sum()
}

fn trace_norm_values(rho: &DensityMatrix, e: &Povm) -> Result<(f64, f64)> {
    let t = power_trace_norms(rho, e, 0.5)?;
    let uniform = (t.len() as f64 - 1.0) * t.iter().sum::<f64>();
    Ok((ordered_sum(&t), uniform))
}

fn check_basis(rho: &DensityMatrix, basis: &ComplexMatrix) -> Result<()> {
    let defect = basis.unitarity_defect();
    if !(defect <= UNITARY_TOL) {
        return Err(Error::NotUnitary { defect });
    }
    check_dims(basis.rows(), rho.dim())
}

fn basis_diagonal(rho: &DensityMatrix, basis: &ComplexMatrix) -> Vec<f64> {
    (0..basis.cols())
        .map(|j| rho.matrix().expectation(&basis.column(j)).max(0.0))
        .collect()
}

fn b1_value(rho: &DensityMatrix, basis: &ComplexMatrix) -> Result<f64> {
    check_basis(rho, basis)?;
    let norms: Vec<f64> = (0..basis.cols())
        .map(|j| vector_norm(&rho.matrix().apply(&basis.column(j))))
        .collect();
    Ok(ordered_sum(&norms))
}

fn b2_value(rho: &DensityMatrix, basis: &ComplexMatrix) -> Result<f64> {
    check_basis(rho, basis)?;
    let s: f64 = basis_diagonal(rho, basis).iter().map(|p| p.sqrt()).sum();
    Ok(s * s - 1.0)
}

fn b3_value(rho: &DensityMatrix, basis: &ComplexMatrix) -> Result<f64> {
    check_basis(rho, basis)?;
    let d = rho.dim() as f64;
    let diag_sq: f64 = basis_diagonal(rho, basis).iter().map(|p| p * p).sum();
    Ok((d * (d - 1.0) * (rho.purity() - diag_sq).max(0.0)).sqrt())
}

fn report(c_l1: f64, bound: f64, kind: BoundKind, exponents: Option<(f64, f64)>) -> BoundReport {
    BoundReport {
        c_l1,
        bound,
        kind,
        exponents,
    }
}

pub fn holder_bound(rho: &DensityMatrix, e: &Povm, p: f64, q: f64) -> Result<BoundReport> {
    let bound = holder_value(rho, e, p, q)?;
    Ok(report(
        c_l1(rho, e)?.value,
        bound,
        BoundKind::Holder,
        Some((p, q)),
    ))
}

pub fn holder_bound_p2q2(rho: &DensityMatrix, e: &Povm) -> Result<BoundReport> {
    let bound = holder_p2q2_value(rho, e)?;
    Ok(report(
        c_l1(rho, e)?.value,
        bound,
        BoundKind::HolderP2Q2,
        Some((2.0, 2.0)),
    ))
}

/// The ordered and uniform trace-norm bounds, in that order.
pub fn trace_norm_bounds(rho: &DensityMatrix, e: &Povm) -> Result<(BoundReport, BoundReport)> {
    let (ordered, uniform) = trace_norm_values(rho, e)?;
    let c = c_l1(rho, e)?.value;
    Ok((
        report(c, ordered, BoundKind::OrderedTraceNorm, None),
        report(c, uniform, BoundKind::UniformTraceNorm, None),
    ))
}

fn basis_report(
    rho: &DensityMatrix,
    basis: &ComplexMatrix,
    kind: BoundKind,
    value: fn(&DensityMatrix, &ComplexMatrix) -> Result<f64>,
) -> Result<BoundReport> {
    let bound = value(rho, basis)?;
    let c = c_l1(rho, &projective_povm(basis)?)?.value;
    Ok(report(c, bound, kind, None))
}

pub fn b1(rho: &DensityMatrix, basis: &ComplexMatrix) -> Result<BoundReport> {
    basis_report(rho, basis, BoundKind::B1, b1_value)
}

pub fn b2(rho: &DensityMatrix, basis: &ComplexMatrix) -> Result<BoundReport> {
    basis_report(rho, basis, BoundKind::B2, b2_value)
}

pub fn b3(rho: &DensityMatrix, basis: &ComplexMatrix) -> Result<BoundReport> {
    basis_report(rho, basis, BoundKind::B3, b3_value)
}

/// Every bound for one `(ρ, E)` pair, sharing the single `C_l1` evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundTable {
    pub c_l1: f64,
    /// One entry per requested `(p, q)`, in request order.
    pub holder: Vec<((f64, f64), f64)>,
    pub ordered: f64,
    pub uniform: f64,
    /// `(B1, B2, B3)`, present when the POVM is rank-one projective.
    pub basis_bounds: Option<(f64, f64, f64)>,
}

impl BoundTable {
    pub fn reports(&self) -> Vec<BoundReport> {
        let mut out: Vec<BoundReport> = self
            .holder
            .iter()
            .map(|&(pq, v)| report(self.c_l1, v, BoundKind::Holder, Some(pq)))
            .collect();
        out.push(report(
            self.c_l1,
            self.ordered,
            BoundKind::OrderedTraceNorm,
            None,
        ));
        out.push(report(
            self.c_l1,
            self.uniform,
            BoundKind::UniformTraceNorm,
            None,
        ));
        if let Some((v1, v2, v3)) = self.basis_bounds {
            out.push(report(self.c_l1, v1, BoundKind::B1, None));
            out.push(report(self.c_l1, v2, BoundKind::B2, None));
            out.push(report(self.c_l1, v3, BoundKind::B3, None));
        }
        out
    }
}

pub fn bound_table(rho: &DensityMatrix, e: &Povm, exponents: &[(f64, f64)]) -> Result<BoundTable> {
    let c = c_l1(rho, e)?.value;
    let holder = exponents
        .iter()
        .map(|&(p, q)| Ok(((p, q), holder_value(rho, e, p, q)?)))
        .collect::<Result<Vec<_>>>()?;
    let (ordered, uniform) = trace_norm_values(rho, e)?;
    let basis_bounds = match rank_one_basis(e) {
        Some(basis) => Some((
            b1_value(rho, &basis)?,
            b2_value(rho, &basis)?,
            b3_value(rho, &basis)?,
        )),
        None => None,
    };
    Ok(BoundTable {
        c_l1: c,
        holder,
        ordered,
        uniform,
        basis_bounds,
    })
}

/// If every element is a rank-one projector `|u_j⟩⟨u_j|` and there are
/// exactly `d` of them, the unitary with columns `u_j`.
pub fn rank_one_basis(e: &Povm) -> Option<ComplexMatrix> {
    if e.len() != e.dim() {
        return None;
    }
    let mut cols = Vec::with_capacity(e.len());
    for el in e.elements() {
        let eig = eig_hermitian(el).ok()?;
        let top = eig.max_eigenvalue();
        if (top - 1.0).abs() > 1e-9 || eig.eigenvalues[1..].iter().any(|x| x.abs() > 1e-9) {
            return None;
        }
        cols.push(eig.eigenvectors.column(0));
    }
    let basis = ComplexMatrix::from_columns(&cols);
    (basis.unitarity_defect() <= UNITARY_TOL).then_some(basis)
}

/// `½ [[1 − z, ½], [½, 1 + z]]` for `z ∈ [0, 4/5]`.
pub fn example1_state(z: f64) -> Result<DensityMatrix> {
    if !(0.0..=0.8).contains(&z) {
        return Err(Error::ZOutOfRange(z));
    }
    DensityMatrix::new(ComplexMatrix::from_real(
        2,
        2,
        &[0.5 * (1.0 - z), 0.25, 0.25, 0.5 * (1.0 + z)],
    )?)
}

/// Projector onto `x|0⟩ + 4x|1⟩ + √(1 − 17x²)|2⟩` for `x ∈ [0, 1/√17]`.
pub fn example2_state(x: f64) -> Result<DensityMatrix> {
    if !(x >= 0.0 && 17.0 * x * x <= 1.0 + 1e-15) {
        return Err(Error::XOutOfRange(x));
    }
    let third = (1.0 - 17.0 * x * x).max(0.0).sqrt();
    let psi = PureState::new(alloc::vec![
        C64::new(x, 0.0),
        C64::new(4.0 * x, 0.0),
        C64::new(third, 0.0),
    ])?;
    Ok(psi.to_density())
}
