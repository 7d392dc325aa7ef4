//! Command-line front end: every command produces a [`ResultTable`] written
//! as CSV (with `#` metadata lines) or JSON (`{meta, columns, rows}`).

pub mod commands;
pub mod table;

pub use commands::{run, Cli};
pub use table::{Cell, Format, InputTable, ResultTable, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cftent::Error),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for validation problems, 3 for resource limits, 1 for internal
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(cftent::Error::Resource(_)) => 3,
            CliError::Core(cftent::Error::Consistency(_)) => 1,
            CliError::Core(_) | CliError::Input(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

pub const EXIT_STRICT_FIT: i32 = 4;
