//! Process-level error split: configuration/usage problems exit with a
//! different status than numeric failures, so scripts can tell "you called
//! it wrong" apart from "the identities did not hold".

use susy_bargmann::Error;

#[derive(Debug)]
pub enum CliError {
    /// Bad input, unusable flags, unreadable files: exit status 2.
    Config(String),
    /// The run executed but a numeric contract was not met: exit status 1.
    Failure(String),
}

impl From<Error> for CliError {
    fn from(error: Error) -> CliError {
        match error {
            Error::Domain { .. }
            | Error::SectorMismatch { .. }
            | Error::LatticeViolation { .. }
            | Error::SingularPoint { .. } => CliError::Config(error.to_string()),
            Error::Calibration { .. }
            | Error::NonConvergence { .. }
            | Error::NonFiniteSample { .. }
            | Error::ExpansionResidual { .. }
            | Error::Overflow { .. } => CliError::Failure(error.to_string()),
        }
    }
}
