use std::fmt;
use std::io::Write;

use serde_json::{json, Map, Value};

/// Version of the JSON result envelope; bump on breaking changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    True,
    False,
    Unknown,
}

impl Status {
    pub fn of(b: bool) -> Self {
        if b {
            Status::True
        } else {
            Status::False
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::True => 0,
            Status::False => 1,
            Status::Unknown => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::True => "true",
            Status::False => "false",
            Status::Unknown => "unknown",
        }
    }
}

/// What a command produced: a verdict, machine fields and a text rendering.
pub struct Report {
    pub status: Status,
    pub fields: Map<String, Value>,
    pub text: String,
}

impl Report {
    pub fn new(status: Status, fields: Value, text: impl Into<String>) -> Self {
        let fields = match fields {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => {
                let mut m = Map::new();
                m.insert("result".into(), other);
                m
            }
        };
        Report {
            status,
            fields,
            text: text.into(),
        }
    }

    pub fn ok(fields: Value, text: impl Into<String>) -> Self {
        Report::new(Status::True, fields, text)
    }

    pub fn envelope(&self, command: &str) -> Value {
        let mut m = Map::new();
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("command".into(), json!(command));
        m.insert("status".into(), json!(self.status.as_str()));
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        if self.status == Status::Unknown && !m.contains_key("reason") {
            m.insert("reason".into(), json!("search budget exhausted"));
        }
        Value::Object(m)
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit 3.
    Input(String),
    /// A search ran out of budget or time: exit 2.
    Unknown(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Unknown(m) => f.write_str(m),
        }
    }
}

impl From<relift::Error> for CliError {
    fn from(e: relift::Error) -> Self {
        if e.is_budget() {
            CliError::Unknown(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

macro_rules! via_lib_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                relift::Error::from(e).into()
            }
        })*
    };
}

via_lib_error!(
    relift::structures::StructureError,
    relift::structures::CodecError,
    relift::structures::IsoError,
    relift::hom::HomError,
    relift::pieces::PieceError,
    relift::lifting::LiftError,
    relift::amalgamation::AmalgamError,
    relift::fraisse::FraisseError,
    relift::duality::DualityError,
    relift::ramsey::RamseyError
);

pub fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// Prints the outcome and returns the exit code.
pub fn emit(command: &str, outcome: Result<Report, CliError>, json_out: bool) -> i32 {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match outcome {
        Ok(report) => {
            if json_out {
                let _ = writeln!(out, "{}", report.envelope(command));
            } else if !report.text.is_empty() {
                let _ = write!(out, "{}", report.text);
                if !report.text.ends_with('\n') {
                    let _ = writeln!(out);
                }
            }
            report.status.exit_code()
        }
        Err(CliError::Unknown(msg)) => {
            eprintln!("relift {command}: unknown: {msg}");
            if json_out {
                let r = Report::new(Status::Unknown, json!({ "reason": msg }), "");
                let _ = writeln!(out, "{}", r.envelope(command));
            }
            2
        }
        Err(CliError::Input(msg)) => {
            eprintln!("relift {command}: error: {msg}");
            3
        }
    }
}
