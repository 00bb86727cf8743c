//! IO, file formats, and dataset handling for the simulator CLI.

pub mod dataset;
pub mod output;

use std::process::ExitCode;

use pagsim_core::Error;

/// Process exit codes: parse, configuration, and consistency failures
/// are distinguishable for scripting.
pub fn exit_code_for(err: &anyhow::Error) -> ExitCode {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Parse { .. }) => ExitCode::from(2),
        Some(Error::Config(_)) => ExitCode::from(3),
        Some(Error::Consistency(_)) => ExitCode::from(4),
        Some(Error::Engine(_)) => ExitCode::from(5),
        None => ExitCode::from(1),
    }
}
