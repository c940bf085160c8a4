//! JSON matrix files.
//!
//! Every file carries a `kind` tag and the Hilbert-space dimension. Complex
//! numbers are `[re, im]` pairs and matrices are row-major nested arrays:
//!
//! ```json
//! {"kind": "state", "dim": 2, "matrix": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]]}
//! {"kind": "pure_state", "dim": 2, "amplitudes": [[0.7071067811865476, 0], [0.7071067811865476, 0]]}
//! {"kind": "povm", "dim": 2, "elements": [M0, M1, ...]}
//! {"kind": "ensemble", "dim": 2, "states": [M0, M1, ...], "weights": [0.5, 0.5]}
//! ```
//!
//! Doubles are written in shortest round-trip form and parsed exactly, so
//! `parse(emit(x)) == x` bit for bit.

use std::fs;
use std::path::Path;

use povm_coherence::{ComplexMatrix, DensityMatrix, Ensemble, Povm, PureState, C64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatrixFile {
    State {
        dim: usize,
        matrix: JsonMatrix,
    },
    PureState {
        dim: usize,
        amplitudes: Vec<[f64; 2]>,
    },
    Povm {
        dim: usize,
        elements: Vec<JsonMatrix>,
    },
    Ensemble {
        dim: usize,
        states: Vec<JsonMatrix>,
        weights: Vec<f64>,
    },
}

fn shape_error(message: String) -> CliError {
    CliError::Format(message)
}

pub fn matrix_to_json(m: &ComplexMatrix) -> JsonMatrix {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

pub fn matrix_from_json(
    rows: &JsonMatrix,
    dim: usize,
    what: &str,
) -> Result<ComplexMatrix, CliError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(shape_error(format!(
            "{what}: expected a {dim}x{dim} matrix, found row lengths {shape:?}"
        )));
    }
    let data = rows
        .iter()
        .flatten()
        .map(|&[re, im]| C64::new(re, im))
        .collect();
    Ok(ComplexMatrix::from_vec(dim, dim, data)?)
}

fn vector_to_json(v: &[C64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

impl MatrixFile {
    pub fn kind(&self) -> &'static str {
        match self {
            MatrixFile::State { .. } => "state",
            MatrixFile::PureState { .. } => "pure_state",
            MatrixFile::Povm { .. } => "povm",
            MatrixFile::Ensemble { .. } => "ensemble",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            MatrixFile::State { dim, .. }
            | MatrixFile::PureState { dim, .. }
            | MatrixFile::Povm { dim, .. }
            | MatrixFile::Ensemble { dim, .. } => *dim,
        }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        MatrixFile::State {
            dim: rho.dim(),
            matrix: matrix_to_json(rho.matrix()),
        }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        MatrixFile::PureState {
            dim: psi.dim(),
            amplitudes: vector_to_json(psi.amplitudes()),
        }
    }

    pub fn from_povm(e: &Povm) -> Self {
        MatrixFile::Povm {
            dim: e.dim(),
            elements: e.elements().iter().map(matrix_to_json).collect(),
        }
    }

    pub fn from_ensemble(ens: &Ensemble) -> Self {
        MatrixFile::Ensemble {
            dim: ens.dim(),
            states: ens
                .members()
                .iter()
                .map(|(s, _)| matrix_to_json(s.matrix()))
                .collect(),
            weights: ens.weights(),
        }
    }

    fn wrong_kind(&self, expected: &str) -> CliError {
        CliError::Usage(format!(
            "expected a {expected} file, found kind \"{}\"",
            self.kind()
        ))
    }

    /// A density matrix from either a `state` or a `pure_state` file.
    pub fn to_density(&self) -> Result<DensityMatrix, CliError> {
        match self {
            MatrixFile::State { dim, matrix } => Ok(DensityMatrix::new(matrix_from_json(
                matrix, *dim, "state",
            )?)?),
            MatrixFile::PureState { .. } => Ok(self.to_pure()?.to_density()),
            _ => Err(self.wrong_kind("state")),
        }
    }

    pub fn to_pure(&self) -> Result<PureState, CliError> {
        match self {
            MatrixFile::PureState { dim, amplitudes } => {
                if amplitudes.len() != *dim {
                    return Err(shape_error(format!(
                        "pure_state: expected {dim} amplitudes, found {}",
                        amplitudes.len()
                    )));
                }
                let v = amplitudes
                    .iter()
                    .map(|&[re, im]| C64::new(re, im))
                    .collect();
                Ok(PureState::new(v)?)
            }
            _ => Err(self.wrong_kind("pure_state")),
        }
    }

    pub fn to_povm(&self) -> Result<Povm, CliError> {
        match self {
            MatrixFile::Povm { dim, elements } => {
                let ms = elements
                    .iter()
                    .enumerate()
                    .map(|(j, m)| matrix_from_json(m, *dim, &format!("povm element {j}")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Povm::new(ms)?)
            }
            _ => Err(self.wrong_kind("povm")),
        }
    }

    pub fn to_ensemble(&self) -> Result<Ensemble, CliError> {
        match self {
            MatrixFile::Ensemble {
                dim,
                states,
                weights,
            } => {
                if states.len() != weights.len() {
                    return Err(shape_error(format!(
                        "ensemble: {} states but {} weights",
                        states.len(),
                        weights.len()
                    )));
                }
                let members = states
                    .iter()
                    .zip(weights)
                    .enumerate()
                    .map(|(j, (m, &w))| {
                        let m = matrix_from_json(m, *dim, &format!("ensemble state {j}"))?;
                        Ok((DensityMatrix::new(m)?, w))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Ok(Ensemble::new(members)?)
            }
            _ => Err(self.wrong_kind("ensemble")),
        }
    }

    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix files always serialize")
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text).map_err(|source| CliError::Parse {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.emit()).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus() -> MatrixFile {
        MatrixFile::State {
            dim: 2,
            matrix: vec![vec![[0.5, 0.0], [0.5, 0.0]], vec![[0.5, 0.0], [0.5, 0.0]]],
        }
    }

    #[test]
    fn parses_tagged_state() {
        let text = r#"{"kind":"state","dim":2,"matrix":[[[0.5,0],[0.5,0]],[[0.5,0],[0.5,0]]]}"#;
        let f = MatrixFile::parse(text).unwrap();
        assert_eq!(f, plus());
        assert_eq!(f.to_density().unwrap().purity(), 1.0);
    }

    #[test]
    fn pure_state_files_give_projectors() {
        let s = 0.5f64.sqrt();
        let f = MatrixFile::PureState {
            dim: 2,
            amplitudes: vec![[s, 0.0], [0.0, s]],
        };
        let rho = f.to_density().unwrap();
        assert!((rho.matrix()[(0, 1)].im + 0.5).abs() < 1e-15);
    }

    #[test]
    fn shape_errors_are_reported() {
        let f = MatrixFile::State {
            dim: 2,
            matrix: vec![vec![[1.0, 0.0]]],
        };
        assert!(matches!(f.to_density(), Err(CliError::Format(_))));
        let e = MatrixFile::Ensemble {
            dim: 1,
            states: vec![vec![vec![[1.0, 0.0]]]],
            weights: vec![0.5, 0.5],
        };
        assert!(matches!(e.to_ensemble(), Err(CliError::Format(_))));
    }

    #[test]
    fn invalid_objects_are_rejected() {
        let f = MatrixFile::State {
            dim: 1,
            matrix: vec![vec![[2.0, 0.0]]],
        };
        assert_eq!(f.to_density().unwrap_err().exit_code(), 2);
        let p = MatrixFile::Povm {
            dim: 1,
            elements: vec![vec![vec![[0.5, 0.0]]]],
        };
        assert_eq!(p.to_povm().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn kind_mismatch_is_a_usage_error() {
        assert!(matches!(plus().to_povm(), Err(CliError::Usage(_))));
    }

    #[test]
    fn unknown_kinds_and_fields_fail_to_parse() {
        assert!(MatrixFile::parse(r#"{"kind":"channel","dim":1}"#).is_err());
        assert!(MatrixFile::parse(r#"{"kind":"state","dim":1,"matrix":[[[1,0]]],"x":1}"#).is_err());
    }
}
