use std::fmt;
use std::io::{self, Write};
use std::process::ExitCode;

use exactgrp::Error;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A verified negative answer, e.g. a refutation.
    Negative,
    Inconclusive,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Negative => 1,
            Status::Inconclusive => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Success => "success",
            Status::Negative => "negative",
            Status::Inconclusive => "inconclusive",
        }
    }
}

pub struct Report {
    pub status: Status,
    pub result: Value,
    pub text: String,
}

impl Report {
    pub fn new(status: Status, result: Value, text: impl Into<String>) -> Self {
        Self { status, result, text: text.into() }
    }

    pub fn ok(result: Value, text: impl Into<String>) -> Self {
        Self::new(Status::Success, result, text)
    }

    /// `Success` when `passed`, else `Negative`.
    pub fn verdict(passed: bool, result: Value, text: impl Into<String>) -> Self {
        Self::new(if passed { Status::Success } else { Status::Negative }, result, text)
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl CliError {
    /// Caps and failed searches are inconclusive, failed verifications are
    /// negative results, anything else is bad input.
    fn status(&self) -> Option<Status> {
        match self {
            CliError::Core(Error::ResourceCap { .. } | Error::NotFoundWithinCap { .. }) => Some(Status::Inconclusive),
            CliError::Core(Error::Violation(_)) => Some(Status::Negative),
            _ => None,
        }
    }
}

/// Writes a line to stdout, ignoring a closed pipe.
fn out(s: &str) {
    let _ = writeln!(io::stdout(), "{s}");
}

pub fn emit(command: &str, json_out: bool, outcome: Result<Report, CliError>) -> ExitCode {
    match outcome {
        Ok(r) => {
            if json_out {
                let v = json!({"schema": 1, "command": command, "status": r.status.name(), "result": r.result});
                out(&serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                out(r.text.trim_end());
            }
            ExitCode::from(r.status.code())
        }
        Err(e) => {
            let (name, code) = match e.status() {
                Some(s) => (s.name(), s.code()),
                None => ("error", 3),
            };
            if json_out {
                let v = json!({"schema": 1, "command": command, "status": name, "error": e.to_string()});
                out(&serde_json::to_string_pretty(&v).expect("serializable"));
            }
            if code == 3 {
                eprintln!("error: {e}");
            } else if !json_out {
                out(&format!("{name}: {e}"));
            }
            ExitCode::from(code)
        }
    }
}
