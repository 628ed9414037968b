use heart_core::HeartError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] HeartError),
    /// A computed result contradicts a property it must satisfy.
    #[error("{0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io { context: context.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) | Self::Io { .. } | Self::Json(_) => 1,
            Self::Core(e) => match e {
                HeartError::EmptyHeart
                | HeartError::NoConvergence { .. }
                | HeartError::WitnessInvalid(_)
                | HeartError::QuadratureUnstable(_) => 2,
                _ => 1,
            },
            Self::Inconsistent(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Self::Input(_) => "invalid_input",
            Self::Io { .. } => "io",
            Self::Json(_) => "json",
            Self::Core(_) => "computation",
            Self::Inconsistent(_) => "inconsistent",
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            schema: u32,
            error: Detail<'a>,
        }
        #[derive(Serialize)]
        struct Detail<'a> {
            kind: &'a str,
            exit_code: i32,
            message: String,
        }
        let body = Body {
            schema: crate::report::SCHEMA,
            error: Detail { kind: self.kind(), exit_code: self.exit_code(), message: self.to_string() },
        };
        serde_json::to_string(&body).expect("error body serializes")
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
