//! Polynomial input: text (`x1^2*x2 + x2^3`), a JSON exponent matrix
//! (`{"monomials": [[2,1],[0,3]]}`), or `-` for standard input.

use std::io::Read;

use invpoly_core::{parse_polynomial, ExponentMatrix, MatrixError, ParseError, ParseWarning};
use thiserror::Error;

use crate::formats::MatrixJson;

#[derive(Debug, Error)]
pub enum InputError {
    #[error(transparent)]
    Polynomial(#[from] ParseError),
    #[error("invalid JSON matrix: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid exponent matrix: {0}")]
    Matrix(#[from] MatrixError),
    #[error("reading standard input: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone)]
pub struct Input {
    pub matrix: ExponentMatrix,
    pub warnings: Vec<ParseWarning>,
}

pub fn read_polynomial(arg: &str) -> Result<Input, InputError> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        return parse_input(&buf);
    }
    parse_input(arg)
}

pub fn parse_input(text: &str) -> Result<Input, InputError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let json: MatrixJson = serde_json::from_str(trimmed)?;
        return Ok(Input { matrix: ExponentMatrix::new(json.monomials)?, warnings: Vec::new() });
    }
    let parsed = parse_polynomial(trimmed)?;
    Ok(Input { matrix: parsed.matrix, warnings: parsed.warnings })
}
