use std::process::ExitCode;

use serde_json::json;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NOT_CERTIFIED: u8 = 2;
pub const EXIT_MALFORMED: u8 = 3;

/// An error reported to the user as JSON on stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            kind: "usage",
            message: message.into(),
        }
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MALFORMED,
            kind: "malformed_input",
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MALFORMED,
            kind: "io",
            message: message.into(),
        }
    }

    pub fn context(mut self, what: &str) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }

    pub fn report(&self) -> ExitCode {
        let body = json!({ "error": { "kind": self.kind, "message": self.message } });
        eprintln!("{body}");
        ExitCode::from(self.code)
    }
}

impl From<sfcurve::Error> for Failure {
    fn from(e: sfcurve::Error) -> Self {
        use sfcurve::Error::*;
        let kind = match e {
            Domain(_) => "domain",
            Malformed(_) => "malformed_curve",
            Structure(_) => "structure",
            Continuity { .. } => "continuity",
            Precondition(_) => "precondition",
            OutOfRange { .. } => "out_of_range",
            InsufficientBreakpoints { .. } => "insufficient_breakpoints",
            Parse { .. } => "parse",
        };
        Failure {
            code: EXIT_MALFORMED,
            kind,
            message: e.to_string(),
        }
    }
}
