//! On-disk game description: a JSON object with dimensions, the two strategy
//! arguments and the payoff matrix as rows of `[re, im]` pairs.
//!
//! ```json
//! {
//!   "m": 2, "n": 2,
//!   "alpha": {"kind": "pi_fraction", "num": 1, "den": 4},
//!   "beta":  {"kind": "radians", "value": 1.3089969389957472},
//!   "matrix": [[[2, 0], [1, 1]], [[3, 1], [3, 0]]]
//! }
//! ```

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::ComplexGame;
use crate::numerics::{c, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArgumentSpec {
    /// `pi * num / den`.
    PiFraction {
        num: i64,
        den: i64,
    },
    Radians {
        value: f64,
    },
}

impl ArgumentSpec {
    /// Evaluated as `(PI * num) / den`, in that order.
    pub fn radians(&self) -> f64 {
        match *self {
            ArgumentSpec::PiFraction { num, den } => PI * num as f64 / den as f64,
            ArgumentSpec::Radians { value } => value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub m: usize,
    pub n: usize,
    pub alpha: ArgumentSpec,
    pub beta: ArgumentSpec,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Error)]
pub enum GameFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed game file: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> GameFileError {
    GameFileError::Field {
        field: field.into(),
        message: message.into(),
    }
}

impl GameFile {
    pub fn parse(text: &str) -> Result<Self, GameFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, GameFileError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| GameFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn from_game(g: &ComplexGame) -> Self {
        Self {
            m: g.rows(),
            n: g.cols(),
            alpha: ArgumentSpec::Radians { value: g.alpha() },
            beta: ArgumentSpec::Radians { value: g.beta() },
            matrix: g
                .matrix()
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("game files always serialize")
    }

    /// Validates every field and builds the game.
    pub fn to_game(&self) -> Result<ComplexGame, GameFileError> {
        if self.m == 0 {
            return Err(field_err("m", "must be at least 1"));
        }
        if self.n == 0 {
            return Err(field_err("n", "must be at least 1"));
        }
        let alpha = check_arg("alpha", &self.alpha)?;
        let beta = check_arg("beta", &self.beta)?;
        if self.matrix.len() != self.m {
            return Err(field_err(
                "matrix",
                format!("expected {} rows, found {}", self.m, self.matrix.len()),
            ));
        }
        let mut rows = Vec::with_capacity(self.m);
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != self.n {
                return Err(field_err(
                    format!("matrix[{i}]"),
                    format!("expected {} entries, found {}", self.n, row.len()),
                ));
            }
            let mut out = Vec::with_capacity(self.n);
            for (j, &[re, im]) in row.iter().enumerate() {
                if !(re.is_finite() && im.is_finite()) {
                    return Err(field_err(format!("matrix[{i}][{j}]"), "entries must be finite"));
                }
                out.push(c(re, im));
            }
            rows.push(out);
        }
        let matrix = ComplexMatrix::from_rows(rows).map_err(|e| field_err("matrix", e.to_string()))?;
        ComplexGame::new(matrix, alpha, beta).map_err(|e| field_err("alpha/beta", e.to_string()))
    }
}

fn check_arg(field: &str, spec: &ArgumentSpec) -> Result<f64, GameFileError> {
    if let ArgumentSpec::PiFraction { den: 0, .. } = spec {
        return Err(field_err(field, "pi_fraction denominator must be nonzero"));
    }
    let v = spec.radians();
    if v.is_finite() && v > 0.0 && v < PI / 2.0 {
        Ok(v)
    } else {
        Err(field_err(
            field,
            format!("argument {v} must lie strictly between 0 and pi/2"),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{
        "m": 2, "n": 3,
        "alpha": {"kind": "pi_fraction", "num": 1, "den": 4},
        "beta": {"kind": "pi_fraction", "num": 5, "den": 12},
        "matrix": [[[2, 0], [1, 1], [5, 2]], [[3, 1], [3, 0], [4, -1]]]
    }"#;

    #[test]
    fn parses_example() {
        let g = GameFile::parse(EXAMPLE).unwrap().to_game().unwrap();
        assert_eq!((g.rows(), g.cols()), (2, 3));
        assert_eq!(g.alpha(), PI * 1.0 / 4.0);
        assert_eq!(g.beta(), PI * 5.0 / 12.0);
        assert_eq!(g.matrix().get(1, 2), c(4.0, -1.0));
    }

    #[test]
    fn errors_name_the_field() {
        let bad = EXAMPLE.replace(r#""num": 5, "den": 12"#, r#""num": 7, "den": 12"#);
        let err = GameFile::parse(&bad).unwrap().to_game().unwrap_err();
        assert!(err.to_string().contains("beta"), "{err}");

        let bad = EXAMPLE.replace("[4, -1]", "[4, -1], [0, 0]");
        let err = GameFile::parse(&bad).unwrap().to_game().unwrap_err();
        assert!(err.to_string().contains("matrix[1]"), "{err}");

        let bad = EXAMPLE.replace(r#""m": 2,"#, "");
        let err = GameFile::parse(&bad).unwrap_err();
        assert!(err.to_string().contains("`m`"), "{err}");

        let bad = EXAMPLE.replace(r#""den": 4"#, r#""den": 0"#);
        let err = GameFile::parse(&bad).unwrap().to_game().unwrap_err();
        assert!(err.to_string().contains("alpha"), "{err}");
    }

    #[test]
    fn round_trip_through_radians() {
        let g = GameFile::parse(EXAMPLE).unwrap().to_game().unwrap();
        let again = GameFile::parse(&GameFile::from_game(&g).to_json())
            .unwrap()
            .to_game()
            .unwrap();
        assert_eq!(g, again);
    }
}
