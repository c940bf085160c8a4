//! Validated quantum objects and random sampling.
//!
//! [`DensityMatrix`], [`PureState`], [`Povm`] and [`Ensemble`] can only be
//! built through constructors that check their invariants; the [`validate`]
//! module reports every violated invariant of a raw candidate instead.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result, Violation, ViolationKind};
use crate::matrix::{sum_matrices, vector_norm, ComplexMatrix, C64};
use crate::spectral::{self, HERMITIAN_TOL, PSD_TOL};

pub const TRACE_TOL: f64 = 1e-10;
pub const COMPLETENESS_TOL: f64 = 1e-8;
pub const PURE_NORM_TOL: f64 = 1e-12;
pub const WEIGHT_SUM_TOL: f64 = 1e-10;
pub const UNITARY_TOL: f64 = 1e-9;

/// Positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let violations = validate::density(&mat);
        if !violations.is_empty() {
            return Err(Error::invalid("density matrix", violations));
        }
        Ok(DensityMatrix {
            mat: mat.hermitian_part(),
        })
    }

    /// Symmetrizes and rescales a PSD matrix to unit trace, then validates.
    pub fn from_unnormalized(mat: &ComplexMatrix) -> Result<Self> {
        let h = mat.hermitian_part();
        let tr = h.real_trace();
        if !(tr > 0.0) {
            return Err(Error::invalid(
                "density matrix",
                alloc::vec![Violation {
                    kind: ViolationKind::Trace,
                    defect: (tr - 1.0).abs(),
                }],
            ));
        }
        Self::new(h.scale(1.0 / tr))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix {
            mat: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// `t·self + (1-t)·other`.
    pub fn mix(&self, other: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        check_dims(self.dim(), other.dim())?;
        DensityMatrix::new(&self.mat.scale(t) + &other.mat.scale(1.0 - t))
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.mat.trace_product(&self.mat).re
    }
}

impl From<&PureState> for DensityMatrix {
    fn from(psi: &PureState) -> Self {
        DensityMatrix {
            mat: ComplexMatrix::outer(psi.amplitudes()),
        }
    }
}

/// Unit vector in `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let violations = validate::pure_state(&amplitudes);
        if !violations.is_empty() {
            return Err(Error::invalid("pure state", violations));
        }
        Ok(PureState { amplitudes })
    }

    /// Normalizes a nonzero vector.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let norm = vector_norm(&amplitudes);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::invalid(
                "pure state",
                alloc::vec![Violation {
                    kind: ViolationKind::Norm,
                    defect: (norm - 1.0).abs(),
                }],
            ));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(PureState { amplitudes })
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = alloc::vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        PureState { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from(self)
    }
}

/// Ordered list of PSD operators summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let violations = validate::povm(&elements);
        if !violations.is_empty() {
            return Err(Error::invalid("POVM", violations));
        }
        let dim = elements[0].rows();
        Ok(Povm {
            dim,
            elements: elements.iter().map(ComplexMatrix::hermitian_part).collect(),
        })
    }

    /// The single-outcome measurement `{I_d}`.
    pub fn trivial(dim: usize) -> Self {
        Povm {
            dim,
            elements: alloc::vec![ComplexMatrix::identity(dim)],
        }
    }

    /// Rank-one projectors onto the computational basis.
    pub fn computational(dim: usize) -> Self {
        Povm {
            dim,
            elements: (0..dim)
                .map(|j| {
                    let mut diag = alloc::vec![0.0; dim];
                    diag[j] = 1.0;
                    ComplexMatrix::from_diag(&diag)
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn sqrt_elements(&self) -> Result<Vec<ComplexMatrix>> {
        self.elements.iter().map(spectral::sqrt_psd).collect()
    }

    /// Outcome probabilities `⟨ψ|E_j|ψ⟩`, clamped at zero.
    pub fn probabilities(&self, psi: &[C64]) -> Vec<f64> {
        self.elements
            .iter()
            .map(|e| e.expectation(psi).max(0.0))
            .collect()
    }

    /// The same measurement with outcomes reordered: outcome `j` of the
    /// result is outcome `order[j]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Povm {
        Povm {
            dim: self.dim,
            elements: order.iter().map(|&j| self.elements[j].clone()).collect(),
        }
    }

    /// `max |Σ E_j - I|`.
    pub fn completeness_defect(&self) -> f64 {
        completeness_defect(&self.elements)
    }
}

/// Labelled mixture `{(ρ_j, η_j)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    dim: usize,
    members: Vec<(DensityMatrix, f64)>,
}

impl Ensemble {
    pub fn new(members: Vec<(DensityMatrix, f64)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        let dim = members[0].0.dim();
        let mut violations = Vec::new();
        for (state, weight) in &members {
            if state.dim() != dim {
                violations.push(Violation {
                    kind: ViolationKind::DimensionMismatch,
                    defect: (state.dim() as f64 - dim as f64).abs(),
                });
            }
            if !weight.is_finite() || *weight < 0.0 {
                violations.push(Violation {
                    kind: ViolationKind::NegativeWeight,
                    defect: -weight,
                });
            }
        }
        let total: f64 = members.iter().map(|m| m.1).sum();
        if !((total - 1.0).abs() <= WEIGHT_SUM_TOL) {
            violations.push(Violation {
                kind: ViolationKind::WeightSum,
                defect: (total - 1.0).abs(),
            });
        }
        if !violations.is_empty() {
            return Err(Error::invalid("ensemble", violations));
        }
        Ok(Ensemble { dim, members })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[(DensityMatrix, f64)] {
        &self.members
    }

    pub fn weights(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.1).collect()
    }

    /// `Σ η_j ρ_j`.
    pub fn average(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for (state, weight) in &self.members {
            acc = &acc + &state.matrix().scale(*weight);
        }
        acc
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn completeness_defect(elements: &[ComplexMatrix]) -> f64 {
    match sum_matrices(elements.iter()) {
        Some(total) if total.is_square() => {
            total.max_abs_diff(&ComplexMatrix::identity(total.rows()))
        }
        _ => f64::INFINITY,
    }
}

/// Invariant reports for raw candidates. An empty list means valid.
pub mod validate {
    use super::*;

    fn operator(m: &ComplexMatrix, out: &mut Vec<Violation>) -> bool {
        if !m.is_square() {
            out.push(Violation {
                kind: ViolationKind::NotSquare,
                defect: (m.rows() as f64 - m.cols() as f64).abs(),
            });
            return false;
        }
        if !m.is_finite() {
            out.push(Violation {
                kind: ViolationKind::NonFinite,
                defect: f64::INFINITY,
            });
            return false;
        }
        let herm = m.hermiticity_defect();
        if herm > HERMITIAN_TOL {
            out.push(Violation {
                kind: ViolationKind::NotHermitian,
                defect: herm,
            });
            return false;
        }
        match spectral::eig_hermitian(m) {
            Ok(eig) if eig.min_eigenvalue() < -PSD_TOL => out.push(Violation {
                kind: ViolationKind::NotPositive,
                defect: -eig.min_eigenvalue(),
            }),
            Ok(_) => {}
            Err(_) => out.push(Violation {
                kind: ViolationKind::NonFinite,
                defect: f64::INFINITY,
            }),
        }
        true
    }

    pub fn density(m: &ComplexMatrix) -> Vec<Violation> {
        let mut out = Vec::new();
        if m.rows() == 0 {
            out.push(Violation {
                kind: ViolationKind::Empty,
                defect: 1.0,
            });
            return out;
        }
        if operator(m, &mut out) {
            let tr = m.trace();
            let defect = (tr - C64::new(1.0, 0.0)).norm();
            if !(defect <= TRACE_TOL) {
                out.push(Violation {
                    kind: ViolationKind::Trace,
                    defect,
                });
            }
        }
        out
    }

    pub fn pure_state(amplitudes: &[C64]) -> Vec<Violation> {
        let mut out = Vec::new();
        if amplitudes.is_empty() {
            out.push(Violation {
                kind: ViolationKind::Empty,
                defect: 1.0,
            });
            return out;
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            out.push(Violation {
                kind: ViolationKind::NonFinite,
                defect: f64::INFINITY,
            });
            return out;
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > PURE_NORM_TOL {
            out.push(Violation {
                kind: ViolationKind::Norm,
                defect: (norm_sq - 1.0).abs(),
            });
        }
        out
    }

    pub fn povm(elements: &[ComplexMatrix]) -> Vec<Violation> {
        let mut out = Vec::new();
        let Some(first) = elements.first() else {
            out.push(Violation {
                kind: ViolationKind::Empty,
                defect: 1.0,
            });
            return out;
        };
        let dim = first.rows();
        let mut shapes_ok = true;
        for e in elements {
            if e.rows() != dim || e.cols() != dim {
                out.push(Violation {
                    kind: ViolationKind::DimensionMismatch,
                    defect: (e.rows() as f64 - dim as f64)
                        .abs()
                        .max((e.cols() as f64 - dim as f64).abs()),
                });
                shapes_ok = false;
                continue;
            }
            operator(e, &mut out);
        }
        if shapes_ok {
            let defect = completeness_defect(elements);
            if !(defect <= COMPLETENESS_TOL) {
                out.push(Violation {
                    kind: ViolationKind::Completeness,
                    defect,
                });
            }
        }
        out
    }

    pub fn ensemble(members: &[(ComplexMatrix, f64)]) -> Vec<Violation> {
        let mut out = Vec::new();
        let Some(first) = members.first() else {
            out.push(Violation {
                kind: ViolationKind::Empty,
                defect: 1.0,
            });
            return out;
        };
        let dim = first.0.rows();
        for (state, weight) in members {
            if state.rows() != dim {
                out.push(Violation {
                    kind: ViolationKind::DimensionMismatch,
                    defect: (state.rows() as f64 - dim as f64).abs(),
                });
            }
            out.extend(density(state));
            if !weight.is_finite() || *weight < 0.0 {
                out.push(Violation {
                    kind: ViolationKind::NegativeWeight,
                    defect: -weight,
                });
            }
        }
        let total: f64 = members.iter().map(|m| m.1).sum();
        if !((total - 1.0).abs() <= WEIGHT_SUM_TOL) {
            out.push(Violation {
                kind: ViolationKind::WeightSum,
                defect: (total - 1.0).abs(),
            });
        }
        out
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `rows × cols` matrix of i.i.d. standard complex Gaussians.
pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn haar_random_pure<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    assert!(dim >= 1, "dimension must be positive");
    loop {
        let v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        let norm = vector_norm(&v);
        if norm > 0.0 {
            return PureState {
                amplitudes: v.into_iter().map(|z| z / norm).collect(),
            };
        }
    }
}

/// Random density matrix `GG†/tr(GG†)` from a square Gaussian `G`
/// (Hilbert–Schmidt measure; full rank with probability one).
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    random_density_with_rank(dim, dim, rng)
}

/// As [`random_density`] with `G` of shape `dim × rank`.
pub fn random_density_with_rank<R: Rng + ?Sized>(
    dim: usize,
    rank: usize,
    rng: &mut R,
) -> DensityMatrix {
    let g = gaussian_matrix(dim, rank, rng);
    let m = &g * &g.adjoint();
    let tr = m.real_trace();
    DensityMatrix {
        mat: m.scale(1.0 / tr).hermitian_part(),
    }
}

/// Unitary from Gram–Schmidt orthonormalization of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let g = gaussian_matrix(dim, dim, rng);
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
        let mut ok = true;
        for j in 0..dim {
            let mut v = g.column(j);
            // two passes of modified Gram–Schmidt
            for _ in 0..2 {
                for u in &cols {
                    let overlap: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi -= overlap * ui;
                    }
                }
            }
            let norm = vector_norm(&v);
            if norm < 1e-8 {
                ok = false;
                break;
            }
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
        if ok {
            return ComplexMatrix::from_columns(&cols);
        }
    }
}

pub const RANDOM_POVM_ATTEMPTS: usize = 10;

/// Random full-rank POVM `E_j = S^{-1/2} G_j S^{-1/2}` with `G_j = A_j A_j†`
/// for square complex Gaussian `A_j` and `S = Σ G_j`.
pub fn random_povm<R: Rng + ?Sized>(dim: usize, n: usize, rng: &mut R) -> Result<Povm> {
    random_povm_with_rank(dim, n, dim, rng)
}

/// As [`random_povm`] with `A_j` of shape `dim × rank`, so every element has
/// rank `min(rank, dim)`. Needs `n · rank ≥ dim` for a nonsingular sum.
pub fn random_povm_with_rank<R: Rng + ?Sized>(
    dim: usize,
    n: usize,
    rank: usize,
    rng: &mut R,
) -> Result<Povm> {
    assert!(dim >= 1 && n >= 1 && rank >= 1);
    if n == 1 {
        // S^{-1/2} S S^{-1/2} = I exactly
        return Ok(Povm::trivial(dim));
    }
    for _ in 0..RANDOM_POVM_ATTEMPTS {
        let grams: Vec<ComplexMatrix> = (0..n)
            .map(|_| {
                let a = gaussian_matrix(dim, rank, rng);
                (&a * &a.adjoint()).hermitian_part()
            })
            .collect();
        let sum = sum_matrices(grams.iter()).expect("n >= 1");
        let eig = spectral::eig_hermitian(&sum)?;
        if eig.min_eigenvalue() <= 1e-10 * eig.max_eigenvalue() {
            continue;
        }
        let inv_sqrt = eig.map(|x| 1.0 / x.sqrt());
        let mut elements: Vec<ComplexMatrix> = grams
            .iter()
            .map(|g| inv_sqrt.sandwich(g).hermitian_part())
            .collect();
        // one refinement pass pushes completeness to roundoff level
        let total = sum_matrices(elements.iter()).expect("n >= 1");
        let (fix, _) = spectral::pinv_sqrt_psd(&total, 1e-12)?;
        elements = elements
            .iter()
            .map(|e| fix.sandwich(e).hermitian_part())
            .collect();
        return Povm::new(elements);
    }
    Err(Error::SingularSum {
        attempts: RANDOM_POVM_ATTEMPTS,
    })
}

/// Rank-one projectors onto the columns of a unitary.
pub fn projective_povm(basis: &ComplexMatrix) -> Result<Povm> {
    let defect = basis.unitarity_defect();
    if !(defect <= UNITARY_TOL) {
        return Err(Error::NotUnitary { defect });
    }
    let elements = (0..basis.cols())
        .map(|j| ComplexMatrix::outer(&basis.column(j)))
        .collect();
    Povm::new(elements)
}

/// Projectors onto consecutive groups of basis columns with the given ranks.
pub fn block_projective_povm(basis: &ComplexMatrix, ranks: &[usize]) -> Result<Povm> {
    let defect = basis.unitarity_defect();
    if !(defect <= UNITARY_TOL) {
        return Err(Error::NotUnitary { defect });
    }
    let total: usize = ranks.iter().sum();
    check_dims(basis.cols(), total)?;
    let mut start = 0;
    let mut elements = Vec::with_capacity(ranks.len());
    for &r in ranks {
        let mut p = ComplexMatrix::zeros(basis.rows(), basis.rows());
        for j in start..start + r {
            p = &p + &ComplexMatrix::outer(&basis.column(j));
        }
        elements.push(p);
        start += r;
    }
    Povm::new(elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{assert_close, rng};
    use alloc::vec;

    #[test]
    fn haar_single_amplitude_has_unit_modulus() {
        let psi = haar_random_pure(1, &mut rng(1));
        assert_close(psi.amplitudes()[0].norm(), 1.0, 1e-15);
    }

    #[test]
    fn haar_is_deterministic_under_seed() {
        let a = haar_random_pure(5, &mut rng(7));
        let b = haar_random_pure(5, &mut rng(7));
        assert_eq!(a, b);
        let p = random_povm(3, 4, &mut rng(9)).unwrap();
        let q = random_povm(3, 4, &mut rng(9)).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn haar_marginal_mean() {
        // E|ψ_0|² = 1/d; Var = (d-1)/(d²(d+1))
        let mut r = rng(2024);
        let d = 4;
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            sum += haar_random_pure(d, &mut r).amplitudes()[0].norm_sqr();
        }
        let mean = sum / n as f64;
        let var = (d as f64 - 1.0) / ((d * d) as f64 * (d as f64 + 1.0));
        let se = (var / n as f64).sqrt();
        assert!((mean - 0.25).abs() <= 3.0 * se, "mean {mean}");
    }

    #[test]
    fn haar_qubit_population_is_uniform() {
        // |⟨0|ψ⟩|² ~ U[0,1] for d=2; KS statistic vs 1% critical value
        let mut r = rng(31337);
        let n = 100_000;
        let mut xs: Vec<f64> = (0..n)
            .map(|_| haar_random_pure(2, &mut r).amplitudes()[0].norm_sqr())
            .collect();
        xs.sort_by(f64::total_cmp);
        let ks = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let lo = i as f64 / n as f64;
                let hi = (i + 1) as f64 / n as f64;
                (x - lo).abs().max((hi - x).abs())
            })
            .fold(0.0, f64::max);
        let critical = 1.628 / (n as f64).sqrt();
        assert!(ks < critical, "KS {ks} >= {critical}");
    }

    #[test]
    fn single_element_random_povm_is_identity() {
        let p = random_povm(4, 1, &mut rng(3)).unwrap();
        assert!(p.elements()[0].max_abs_diff(&ComplexMatrix::identity(4)) <= 1e-10);
    }

    #[test]
    fn random_povm_completeness_and_positivity() {
        let p = random_povm(2, 3, &mut rng(5)).unwrap();
        assert!(p.completeness_defect() <= 1e-10);
        let mut r = rng(6);
        for d in 1..=6 {
            for n in 1..=8 {
                let p = random_povm(d, n, &mut r).unwrap();
                assert!(validate::povm(p.elements()).is_empty());
                for e in p.elements() {
                    let eig = spectral::eig_hermitian(e).unwrap();
                    assert!(eig.min_eigenvalue() >= -1e-10);
                }
            }
        }
    }

    #[test]
    fn projective_povms() {
        let p = projective_povm(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(p.elements()[0], ComplexMatrix::from_diag(&[1.0, 0.0]));
        assert_eq!(p.elements()[1], ComplexMatrix::from_diag(&[0.0, 1.0]));

        let s = 0.5f64.sqrt();
        let hadamard = ComplexMatrix::from_real(2, 2, &[s, s, s, -s]).unwrap();
        let x = projective_povm(&hadamard).unwrap();
        let plus = ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        let minus = ComplexMatrix::from_real(2, 2, &[0.5, -0.5, -0.5, 0.5]).unwrap();
        assert!(x.elements()[0].max_abs_diff(&plus) < 1e-15);
        assert!(x.elements()[1].max_abs_diff(&minus) < 1e-15);

        let u = random_unitary(5, &mut rng(8));
        let p = projective_povm(&u).unwrap();
        assert!(validate::povm(p.elements()).is_empty());

        let skewed = ComplexMatrix::from_real(2, 2, &[1.0, 0.1, 0.0, 1.0]).unwrap();
        assert!(matches!(
            projective_povm(&skewed),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn validation_reports() {
        assert!(validate::density(&ComplexMatrix::from_diag(&[0.5, 0.5])).is_empty());

        let v = validate::density(&ComplexMatrix::from_diag(&[0.6, 0.5]));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::Trace);
        assert_close(v[0].defect, 0.1, 1e-15);

        let missing = [ComplexMatrix::from_diag(&[1.0, 0.0])];
        let v = validate::povm(&missing);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::Completeness);
        assert_close(v[0].defect, 1.0, 1e-15);

        let negative = ComplexMatrix::from_diag(&[1.5, -0.5]);
        let kinds: Vec<_> = validate::density(&negative)
            .iter()
            .map(|v| v.kind)
            .collect();
        assert_eq!(kinds, vec![ViolationKind::NotPositive]);

        let v = validate::pure_state(&[C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
        assert_eq!(v[0].kind, ViolationKind::Norm);

        let rho = ComplexMatrix::from_diag(&[1.0, 0.0]);
        let v = validate::ensemble(&[(rho.clone(), 0.7), (rho, -0.1)]);
        let kinds: Vec<_> = v.iter().map(|v| v.kind).collect();
        assert!(kinds.contains(&ViolationKind::NegativeWeight));
        assert!(kinds.contains(&ViolationKind::WeightSum));
    }

    #[test]
    fn ensemble_rejects_empty() {
        assert_eq!(Ensemble::new(vec![]), Err(Error::EmptyEnsemble));
    }
}
