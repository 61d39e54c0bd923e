//! File formats, corpus management, verification checks and reports for
//! `khovanov-core`, plus the `khovanov` command-line tool.

pub use khovanov_core as core;

pub mod checks;
pub mod compute;
pub mod corpus;
pub mod report;

/// Outcome classes of the command-line tool, each with its own exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Check(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl From<khovanov_core::Error> for Failure {
    fn from(e: khovanov_core::Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Default limit on the number of crossings accepted by the tool.
pub const DEFAULT_MAX_CROSSINGS: usize = 12;

/// Environment variable setting the worker thread count.
pub const THREADS_ENV: &str = "KHOVANOV_THREADS";

/// Directory of the bundled corpus.
pub fn bundled_corpus() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}
