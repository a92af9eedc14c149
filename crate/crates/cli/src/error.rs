use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] segre::Error),

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("{position}: {message}")]
    Format { position: String, message: String },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.kind(),
            CliError::Io { .. } => "io",
            CliError::Format { .. } => "format",
        }
    }

    /// The record written to stderr: `{"error":{"kind":..,"message":..}}`.
    pub fn record(&self) -> String {
        #[derive(Serialize)]
        struct Inner<'a> {
            kind: &'a str,
            message: String,
        }
        #[derive(Serialize)]
        struct Record<'a> {
            error: Inner<'a>,
        }
        let record = Record {
            error: Inner {
                kind: self.kind(),
                message: self.to_string(),
            },
        };
        serde_json::to_string(&record).expect("serializable record")
    }
}
