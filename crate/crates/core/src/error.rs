use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// A single invariant that an input failed, with the measured defect.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub defect: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    NotSquare,
    DimensionMismatch,
    NonFinite,
    NotHermitian,
    NotPositive,
    Trace,
    Completeness,
    Empty,
    Norm,
    NegativeWeight,
    WeightSum,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::NotSquare => "not square",
            ViolationKind::DimensionMismatch => "dimension mismatch",
            ViolationKind::NonFinite => "non-finite entry",
            ViolationKind::NotHermitian => "not hermitian",
            ViolationKind::NotPositive => "not positive semidefinite",
            ViolationKind::Trace => "trace",
            ViolationKind::Completeness => "completeness",
            ViolationKind::Empty => "empty",
            ViolationKind::Norm => "norm",
            ViolationKind::NegativeWeight => "negative weight",
            ViolationKind::WeightSum => "weight sum",
        };
        f.write_str(s)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (defect {:e})", self.kind, self.defect)
    }
}

pub(crate) struct Violations<'a>(pub &'a [Violation]);

impl fmt::Display for Violations<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("jacobi eigensolver did not converge within {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },

    #[error("negative eigenvalue {value:e} below the PSD tolerance")]
    NegativeEigenvalue { value: f64 },

    #[error("function undefined at eigenvalue {value:e}")]
    DomainError { value: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("invalid {what}: {}", Violations(.violations))]
    Invalid {
        what: &'static str,
        violations: Vec<Violation>,
    },

    #[error("alpha {0} outside (0,1)∪(1,2]")]
    AlphaOutOfRange(f64),

    #[error("invalid exponents p={p}, q={q}: need p>1, q>1, 1/p+1/q=1")]
    InvalidExponents { p: f64, q: f64 },

    #[error("basis is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("z={0} outside [0, 4/5]")]
    ZOutOfRange(f64),

    #[error("x={0} outside [0, 1/sqrt(17)]")]
    XOutOfRange(f64),

    #[error("random POVM sum was numerically singular after {attempts} attempts")]
    SingularSum { attempts: usize },

    #[error("ensemble has no members")]
    EmptyEnsemble,

    #[error("ensemble average state is numerically zero")]
    DegenerateEnsemble,

    #[error("derivative of order {order} unavailable at node {node:e}")]
    DerivativeUnavailable { node: f64, order: usize },

    #[error("beta must be positive, got {0}")]
    BetaNonPositive(f64),

    #[error("coherence value {0:e} is negative beyond roundoff")]
    NegativeCoherence(f64),

    #[error("at least {min} Monte Carlo samples required, got {got}")]
    TooFewSamples { min: usize, got: usize },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, violations: Vec<Violation>) -> Self {
        Error::Invalid { what, violations }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
