//! Hermitian spectral calculus on top of a cyclic complex Jacobi eigensolver.
//!
//! Everything that needs a matrix function (square roots of POVM elements,
//! `ρ^α`, inverse square roots, entropies, norms) goes through
//! [`eig_hermitian`]. Singular values are read off the Hermitian
//! Jordan–Wielandt embedding `[[0, M], [M†, 0]]`, whose spectrum is
//! `±σ_i` padded with zeros, so small singular values keep absolute accuracy
//! `~ε‖M‖` instead of the `~√ε‖M‖` one gets from `eig(M†M)`.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ZERO};

/// Inputs with `max |m - m†|` above this are rejected rather than symmetrized.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero; below is an error.
pub const PSD_TOL: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 100;
/// Stop when the off-diagonal Frobenius norm drops below this times `‖M‖_F`.
pub const OFF_DIAGONAL_REL_TOL: f64 = 1e-14;
/// Clamped eigenvalues at or below this fraction of the spectral radius are
/// indistinguishable from zero at double precision and are snapped to it
/// before non-Lipschitz functions (square roots, fractional powers) are
/// applied.
pub const ZERO_SNAP_REL: f64 = 32.0 * f64::EPSILON;

/// Eigenvalues in descending order with a unitary matrix of eigenvectors
/// (one per column).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V diag(values) V†`.
    pub fn compose(&self, values: &[f64]) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let d = self.dim();
        assert_eq!(values.len(), d);
        let mut out = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let mut acc = ZERO;
                for (k, &w) in values.iter().enumerate() {
                    if w != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * w;
                    }
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)] = C64::new(out[(i, i)].re, 0.0);
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.compose(&self.eigenvalues)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        self.compose(&values)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Spectrum of a PSD matrix: eigenvalues below `-PSD_TOL` are an error,
    /// small negative ones are clamped and roundoff-sized ones snapped to 0.
    pub fn psd_eigenvalues(&self) -> Result<Vec<f64>> {
        let min = self.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(Error::NegativeEigenvalue { value: min });
        }
        let radius = self
            .eigenvalues
            .iter()
            .fold(0.0f64, |acc, x| acc.max(x.abs()));
        let snap = ZERO_SNAP_REL * radius;
        Ok(self
            .eigenvalues
            .iter()
            .map(|&x| if x <= snap { 0.0 } else { x })
            .collect())
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input is symmetrized as `(m + m†)/2` first; a defect above
/// [`HERMITIAN_TOL`] is reported as [`Error::NotHermitian`].
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_REL_TOL * a.frobenius_norm();

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilates `a[p][q]` with the unitary `U = diag(1, e^{-iφ}) R(θ)`, where
/// the phase makes the pivot real and `R` is the classical real rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let g = b.norm();
    if g == 0.0 {
        return;
    }
    let phase = b.conj() / g;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -phase * s;
    let u_qq = phase * c;

    let n = a.rows();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp * u_pp + akq * u_qp;
        let new_kq = akp * u_pq + akq * u_qq;
        a[(k, p)] = new_kp;
        a[(k, q)] = new_kq;
        a[(p, k)] = new_kp.conj();
        a[(q, k)] = new_kq.conj();
    }
    a[(p, p)] = C64::new(app - t * g, 0.0);
    a[(q, q)] = C64::new(aqq + t * g, 0.0);
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// `V diag(f(λ)) V†`. `f` returns `None` where it is undefined.
pub fn mat_func_hermitian(
    m: &ComplexMatrix,
    f: impl Fn(f64) -> Option<f64>,
) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(m)?;
    let mut values = Vec::with_capacity(eig.dim());
    for &x in &eig.eigenvalues {
        match f(x) {
            Some(y) if y.is_finite() => values.push(y),
            _ => return Err(Error::DomainError { value: x }),
        }
    }
    Ok(eig.compose(&values))
}

/// Principal square root of a PSD matrix.
pub fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(m)?;
    let values: Vec<f64> = eig.psd_eigenvalues()?.iter().map(|x| x.sqrt()).collect();
    Ok(eig.compose(&values))
}

/// `m^exponent` for PSD `m` and `exponent > 0` (with `0^exponent = 0`).
pub fn power_psd(m: &ComplexMatrix, exponent: f64) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(m)?;
    power_of_decomposition(&eig, exponent)
}

pub(crate) fn power_of_decomposition(
    eig: &SpectralDecomposition,
    exponent: f64,
) -> Result<ComplexMatrix> {
    let spectrum = eig.psd_eigenvalues()?;
    let mut values = Vec::with_capacity(spectrum.len());
    for x in spectrum {
        if x == 0.0 {
            if exponent <= 0.0 {
                return Err(Error::DomainError { value: x });
            }
            values.push(0.0);
        } else {
            values.push(x.powf(exponent));
        }
    }
    Ok(eig.compose(&values))
}

/// Inverse square root on the support of a PSD matrix. Eigenvalues at or
/// below `rel_tol · λ_max` are treated as kernel. Returns the pseudo-inverse
/// square root and the numerical rank.
pub fn pinv_sqrt_psd(m: &ComplexMatrix, rel_tol: f64) -> Result<(ComplexMatrix, usize)> {
    let eig = eig_hermitian(m)?;
    let spectrum = eig.psd_eigenvalues()?;
    let cutoff = rel_tol * eig.max_eigenvalue().max(0.0);
    let mut rank = 0;
    let values: Vec<f64> = spectrum
        .iter()
        .map(|&x| {
            if x > cutoff && x > 0.0 {
                rank += 1;
                1.0 / x.sqrt()
            } else {
                0.0
            }
        })
        .collect();
    Ok((eig.compose(&values), rank))
}

/// Singular values in descending order (length `min(rows, cols)`).
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let (r, c) = (m.rows(), m.cols());
    let k = r.min(c);
    if k == 0 {
        return Ok(Vec::new());
    }
    if m.max_abs() == 0.0 {
        return Ok(alloc::vec![0.0; k]);
    }
    let embedded = ComplexMatrix::from_fn(r + c, r + c, |i, j| {
        if i < r && j >= r {
            m[(i, j - r)]
        } else if i >= r && j < r {
            m[(j, i - r)].conj()
        } else {
            ZERO
        }
    });
    let eig = eig_hermitian(&embedded)?;
    Ok(eig.eigenvalues[..k].iter().map(|&x| x.max(0.0)).collect())
}

/// `tr √(M†M)`, the sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.iter().sum())
}

/// Largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

/// `-Σ λ log₂ λ` with `0 log 0 = 0`.
pub fn entropy_of_spectrum(spectrum: &[f64]) -> f64 {
    spectrum
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum()
}

/// `S(M) = -tr(M log₂ M)` for PSD `M`, not necessarily of unit trace.
pub fn entropy_psd(m: &ComplexMatrix) -> Result<f64> {
    let eig = eig_hermitian(m)?;
    Ok(entropy_of_spectrum(&eig.psd_eigenvalues()?))
}
