use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error{}, field `{field}`: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Config {
        line: Option<usize>,
        field: String,
        message: String,
    },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] carleman::Error),
}

impl CliError {
    /// Process exit status for an error that prevented a report.
    pub fn exit_code(&self) -> u8 {
        3
    }
}
