use invpoly_core::{ClassifyError, CleaveError, MilnorError, SymmetryError};
use thiserror::Error;

use crate::input::InputError;
use crate::limits::LimitsError;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitCode {
    Ok = 0,
    VerificationFailed = 1,
    ParseError = 2,
    NotInvertible = 3,
    LimitsOrConfig = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    NotInvertible(String),
    #[error("{0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Parse(_) => ExitCode::ParseError,
            CliError::NotInvertible(_) => ExitCode::NotInvertible,
            CliError::Config(_) => ExitCode::LimitsOrConfig,
            CliError::Verification(_) => ExitCode::VerificationFailed,
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<LimitsError> for CliError {
    fn from(e: LimitsError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        CliError::NotInvertible(e.to_string())
    }
}

impl From<MilnorError> for CliError {
    fn from(e: MilnorError) -> Self {
        match e {
            MilnorError::LimitExceeded { .. } => CliError::Config(e.to_string()),
            MilnorError::InvalidClassification => CliError::Verification(e.to_string()),
            MilnorError::Classify(e) => e.into(),
            MilnorError::NotQuasihomogeneous(_) | MilnorError::NotIsolated => {
                CliError::NotInvertible(format!("not invertible: {e}"))
            }
        }
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::ClosedFormMismatch { .. } => CliError::Verification(e.to_string()),
            _ => CliError::NotInvertible(format!("not invertible: {e}")),
        }
    }
}

impl From<CleaveError> for CliError {
    fn from(e: CleaveError) -> Self {
        match e {
            CleaveError::Classify(e) => e.into(),
            CleaveError::Milnor(e) => e.into(),
            CleaveError::Symmetry(e) => e.into(),
            CleaveError::Weights(_) => CliError::NotInvertible(format!("not invertible: {e}")),
            CleaveError::FermatNotAugmentable
            | CleaveError::BadB(_)
            | CleaveError::CaseA { .. }
            | CleaveError::NotGorenstein { .. } => CliError::Config(e.to_string()),
            CleaveError::IdentityViolated { .. }
            | CleaveError::UnexpectedMinusSide(_)
            | CleaveError::LengthMismatch { .. }
            | CleaveError::NonzeroSumD { .. }
            | CleaveError::TerminalMismatch { .. } => CliError::Verification(e.to_string()),
        }
    }
}
