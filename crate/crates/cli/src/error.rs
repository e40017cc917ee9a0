use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Eval(#[from] zeta_interp::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    BadJson { path: PathBuf, source: serde_json::Error },

    #[error("writing output: {0}")]
    Output(String),

    /// A verification suite reported failures; the report is already written.
    #[error("{failures} of {cases} checks failed")]
    VerifyFailed { cases: usize, failures: usize },
}

impl CliError {
    /// 2 for anything the caller got wrong, 1 for failures of the run itself.
    pub fn exit_code(&self) -> i32 {
        use zeta_interp::Error as E;
        match self {
            CliError::Usage(_) | CliError::BadJson { .. } => 2,
            CliError::Eval(
                E::Domain(_)
                | E::PoleProximity { .. }
                | E::NonConvergent(_)
                | E::NotACharacter(_)
                | E::NearNode { .. }
                | E::IrrationalV
                | E::InvalidConfig(_)
                | E::DivisionNearZero { .. },
            ) => 2,
            _ => 1,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
