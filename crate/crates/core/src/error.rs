use alloc::string::String;
use core::fmt;

use crate::arrangements::ValidationReport;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A surface variant violates one of its parameter bounds.
    InvalidSurface(String),
    /// An arrangement combinatorics value is malformed (bad `k`, bad `t_r`).
    InvalidCombinatorics(String),
    /// A curve profile set is malformed or inconsistent with its combinatorics.
    InvalidProfile(String),
    /// An argument is outside the domain of the operation (e.g. `n < 2`).
    Domain(String),
    /// The input failed a required validation rule; the full report is attached.
    Rejected(ValidationReport),
    /// The (family, exponent) combination has no supported derivation.
    UnsupportedCase(String),
    /// A normal-crossing model is internally inconsistent.
    ModelInconsistent(String),
    /// The enumeration target sum exceeds the configured cap.
    TargetTooLarge { target: i64, cap: i64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSurface(msg) => write!(f, "invalid surface: {msg}"),
            Error::InvalidCombinatorics(msg) => write!(f, "invalid combinatorics: {msg}"),
            Error::InvalidProfile(msg) => write!(f, "invalid profile: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Rejected(report) => {
                write!(f, "input rejected by validation: ")?;
                let mut first = true;
                for finding in report.findings.iter().filter(|r| !r.passed) {
                    if !first {
                        write!(f, "; ")?;
                    }
                    write!(f, "{} failed ({})", finding.rule, finding.detail)?;
                    first = false;
                }
                Ok(())
            }
            Error::UnsupportedCase(msg) => write!(f, "unsupported case: {msg}"),
            Error::ModelInconsistent(msg) => write!(f, "inconsistent model: {msg}"),
            Error::TargetTooLarge { target, cap } => {
                write!(f, "enumeration target {target} exceeds cap {cap}")
            }
        }
    }
}

impl core::error::Error for Error {}
