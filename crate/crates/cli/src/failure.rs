use std::fmt;

use symqubit::Error;

/// A command failure carrying its process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const PROPERTY: u8 = 1;
    pub const VALIDATION: u8 = 2;
    pub const DOMAIN: u8 = 3;

    pub fn property(message: impl Into<String>) -> Self {
        Failure { code: Self::PROPERTY, message: message.into() }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Failure { code: Self::VALIDATION, message: message.into() }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Failure { code: Self::DOMAIN, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotSymmetricState(_) | Error::I4Zero | Error::DegenerateHypothesis { .. } => {
                Failure::DOMAIN
            }
            Error::InconsistentVerdict { .. } => Failure::PROPERTY,
            _ => Failure::VALIDATION,
        };
        Failure { code, message: e.to_string() }
    }
}
