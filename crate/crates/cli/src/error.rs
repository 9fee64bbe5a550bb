use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{op}: {source}")]
    Numerical {
        op: String,
        #[source]
        source: zrp_core::Error,
    },

    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{failed} validation check(s) failed")]
    Validation { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Numerical { .. } | CliError::Output { .. } => 3,
        }
    }

    /// Input problems reported by the core become usage errors; everything
    /// else is a numerical failure tagged with the operation.
    pub fn from_core(op: impl Into<String>, e: zrp_core::Error) -> Self {
        use zrp_core::Error as E;
        match e {
            E::InvalidMomentum(_)
            | E::InvalidTarget(_)
            | E::InvalidDirection(_)
            | E::UnknownPreset(_)
            | E::MissingSeparation(_)
            | E::MalformedJson { .. }
            | E::Io { .. }
            | E::QuadratureOrder(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical { op: op.into(), source: e },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
