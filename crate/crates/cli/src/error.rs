use povm_coherence::Error as CoreError;
use serde_json::{json, Value};
use thiserror::Error;

/// Input or validation problem.
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;
/// A computation failed on valid input.
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("cannot parse {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },

    #[error("{0}")]
    Format(String),

    #[error(transparent)]
    Core(#[from] CoreError),
}

fn core_kind(e: &CoreError) -> &'static str {
    match e {
        CoreError::NotSquare { .. } => "not_square",
        CoreError::NotHermitian { .. } => "not_hermitian",
        CoreError::ConvergenceFailure { .. } => "convergence_failure",
        CoreError::NegativeEigenvalue { .. } => "negative_eigenvalue",
        CoreError::DomainError { .. } => "domain_error",
        CoreError::DimensionMismatch { .. } => "dimension_mismatch",
        CoreError::NonFinite => "non_finite",
        CoreError::Invalid { .. } => "invalid",
        CoreError::AlphaOutOfRange(_) => "alpha_out_of_range",
        CoreError::InvalidExponents { .. } => "invalid_exponents",
        CoreError::NotUnitary { .. } => "not_unitary",
        CoreError::ZOutOfRange(_) => "z_out_of_range",
        CoreError::XOutOfRange(_) => "x_out_of_range",
        CoreError::SingularSum { .. } => "singular_sum",
        CoreError::EmptyEnsemble => "empty_ensemble",
        CoreError::DegenerateEnsemble => "degenerate_ensemble",
        CoreError::DerivativeUnavailable { .. } => "derivative_unavailable",
        CoreError::BetaNonPositive(_) => "beta_non_positive",
        CoreError::NegativeCoherence(_) => "negative_coherence",
        CoreError::TooFewSamples { .. } => "too_few_samples",
    }
}

fn core_exit_code(e: &CoreError) -> i32 {
    match e {
        CoreError::DimensionMismatch { .. } => EXIT_DIMENSION,
        CoreError::ConvergenceFailure { .. }
        | CoreError::NegativeEigenvalue { .. }
        | CoreError::DomainError { .. }
        | CoreError::SingularSum { .. }
        | CoreError::DegenerateEnsemble
        | CoreError::DerivativeUnavailable { .. }
        | CoreError::NegativeCoherence(_) => EXIT_NUMERIC,
        _ => EXIT_INPUT,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => core_exit_code(e),
            _ => EXIT_INPUT,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Format(_) => "format",
            CliError::Core(e) => core_kind(e),
        }
    }

    /// The object written to stderr.
    pub fn to_json(&self) -> Value {
        let mut body = json!({
            "kind": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        if let CliError::Core(CoreError::Invalid { what, violations }) = self {
            body["object"] = json!(what);
            body["violations"] = violations
                .iter()
                .map(|v| json!({"kind": v.kind.to_string(), "defect": v.defect}))
                .collect();
        }
        json!({ "error": body })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_class() {
        let dim = CliError::from(CoreError::DimensionMismatch {
            expected: 2,
            found: 3,
        });
        assert_eq!(dim.exit_code(), EXIT_DIMENSION);
        assert_eq!(
            CliError::from(CoreError::AlphaOutOfRange(1.0)).exit_code(),
            EXIT_INPUT
        );
        assert_eq!(
            CliError::from(CoreError::ConvergenceFailure { sweeps: 100 }).exit_code(),
            EXIT_NUMERIC
        );
        assert_eq!(
            CliError::Usage("alpha required".into()).exit_code(),
            EXIT_INPUT
        );
    }

    #[test]
    fn error_object_is_machine_readable() {
        let v = CliError::from(CoreError::AlphaOutOfRange(1.0)).to_json();
        assert_eq!(v["error"]["kind"], "alpha_out_of_range");
        assert_eq!(v["error"]["exit_code"], 2);
    }
}
