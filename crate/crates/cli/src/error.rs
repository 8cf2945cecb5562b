use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{path}:{line}:{column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: field `{field}`: {message}")]
    Field {
        path: String,
        field: String,
        message: String,
    },

    #[error("{path}: {source}")]
    Rule { path: String, source: finpow::Error },

    #[error("{0}")]
    Unsupported(String),
}

impl CliError {
    /// Every error is a problem with the input document or its use.
    pub fn exit_code(&self) -> i32 {
        crate::EXIT_SPEC_ERROR
    }
}
