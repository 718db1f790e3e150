use thiserror::Error;

/// Failures of the command-line layer. Exit codes: 1 for a failed
/// computation, 2 for usage and parse errors, 3 when a resource cap is hit.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: hopf_core::Error,
    },
}

impl CliError {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Parse { location: location.into(), message: message.into() }
    }

    /// Attributes a core error to the place it came from. Core parse
    /// errors (bad permutations, tables, words) stay parse errors.
    pub fn core(context: impl Into<String>, source: hopf_core::Error) -> Self {
        let context = context.into();
        match source {
            hopf_core::Error::ParseError { location, message } => {
                CliError::Parse { location: format!("{context}, {location}"), message }
            }
            source => CliError::Core { context, source },
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::Core { source, .. } => core_exit_code(source),
        }
    }
}

pub fn core_exit_code(e: &hopf_core::Error) -> u8 {
    match e {
        hopf_core::Error::CapExceeded { .. } | hopf_core::Error::SearchSpaceExceeded(_) => 3,
        hopf_core::Error::ParseError { .. } => 2,
        _ => 1,
    }
}

/// Whether a core error is a resource cap rather than a mathematical failure.
pub fn is_cap(e: &hopf_core::Error) -> bool {
    core_exit_code(e) == 3
}
