use std::io::Write;
use std::path::Path;

use chordal::scalar::format_scalar;
use chordal::{Integer, Rational};
use serde_json::{json, Map, Value};

/// One divisibility or identity check.
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub check: String,
}

impl Verdict {
    pub fn divides(name: impl Into<String>, a: &Integer, b: &Integer) -> Verdict {
        let passed = chordal::scalar::divides(a, b);
        let rel = if passed { "divides" } else { "does not divide" };
        Verdict {
            name: name.into(),
            passed,
            check: format!("{a} {rel} {b}"),
        }
    }

    pub fn holds(name: impl Into<String>, passed: bool, check: impl Into<String>) -> Verdict {
        Verdict {
            name: name.into(),
            passed,
            check: check.into(),
        }
    }
}

pub struct Report {
    pub command: Vec<String>,
    pub result: Map<String, Value>,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            result: Map::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.result.insert(key.to_string(), v.into());
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self, elapsed: Option<f64>) -> Value {
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| json!({"name": v.name, "passed": v.passed, "check": v.check}))
            .collect();
        let mut out = json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "result": Value::Object(self.result.clone()),
            "verdicts": verdicts,
            "passed": self.passed(),
        });
        if let Some(t) = elapsed {
            out["timing"] = json!({ "elapsed_seconds": t });
        }
        out
    }
}

pub fn rational(x: &Rational) -> Value {
    Value::String(format_scalar(x))
}

pub fn integer(x: &Integer) -> Value {
    Value::String(x.to_string())
}

pub fn rationals(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

/// Writes a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(format!(".tmp-{}", std::process::id()));
    let tmp = path.with_file_name(name);
    let mut f = std::fs::File::create(&tmp)?;
    f.write_all(contents.as_bytes())?;
    f.sync_all()?;
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })
}
