//! Command implementations behind the `redoff` binary.
//!
//! Each command writes its primary output to one stream and diagnostics to
//! another and returns the process exit code, so tests can drive them
//! without spawning a process.

pub mod bench;
pub mod commands;
pub mod trace;

use std::fmt;
use std::fs;
use std::path::Path;

use redoff_core::function::LogicFunction;
use redoff_core::multi_output::MultiFunction;
use redoff_core::pla::{parse_minterm_list, parse_pla, Pla};
use redoff_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

/// A failure carrying its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn inconsistent(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INCONSISTENT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InconsistentFunction { .. } | Error::ConflictingOutput { .. } => {
                CliError::inconsistent(e.to_string())
            }
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A loaded input file: a PLA, or a bare `<minterm> <value>` list.
#[derive(Debug, Clone)]
pub enum Source {
    Pla(Pla),
    List(LogicFunction),
}

impl Source {
    pub fn parse(text: &str) -> CliResult<Source> {
        let is_pla = text.lines().any(|l| l.trim_start().starts_with('.'));
        Ok(if is_pla {
            Source::Pla(parse_pla(text)?)
        } else {
            Source::List(parse_minterm_list(text)?)
        })
    }

    pub fn load(path: &Path) -> CliResult<Source> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        Source::parse(&text).map_err(|e| CliError {
            code: e.code,
            message: format!("{}: {}", path.display(), e.message),
        })
    }

    pub fn inputs(&self) -> usize {
        match self {
            Source::Pla(p) => p.inputs,
            Source::List(f) => f.inputs(),
        }
    }

    pub fn outputs(&self) -> usize {
        match self {
            Source::Pla(p) => p.outputs,
            Source::List(_) => 1,
        }
    }

    /// Output `j` as a single-output function.
    pub fn function(&self, j: usize, max_expand: usize) -> CliResult<LogicFunction> {
        if j >= self.outputs() {
            return Err(CliError::input(format!(
                "output {j} does not exist; the input has {} output(s)",
                self.outputs()
            )));
        }
        Ok(match self {
            Source::Pla(p) => p.function(j, max_expand)?,
            Source::List(f) => f.clone(),
        })
    }

    pub fn multi_function(&self, max_expand: usize) -> CliResult<MultiFunction> {
        match self {
            Source::Pla(p) => Ok(p.multi_function(max_expand)?),
            Source::List(_) => Err(CliError::input("--multi needs a PLA input")),
        }
    }

    pub fn output_labels(&self) -> Vec<String> {
        match self {
            Source::Pla(p) => p.output_labels.clone(),
            Source::List(_) => Vec::new(),
        }
    }

    pub fn input_labels(&self) -> Vec<String> {
        match self {
            Source::Pla(p) => p.input_labels.clone(),
            Source::List(_) => Vec::new(),
        }
    }
}
