//! Verification verdicts shared by the checkers and the CLI.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    pub fn pass(check: impl Into<String>) -> Verdict {
        Verdict {
            check: check.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn fail(check: impl Into<String>, witness: impl Into<String>) -> Verdict {
        Verdict {
            check: check.into(),
            pass: false,
            witness: Some(witness.into()),
        }
    }

    pub fn from_result(check: impl Into<String>, r: Result<(), String>) -> Verdict {
        match r {
            Ok(()) => Verdict::pass(check),
            Err(w) => Verdict::fail(check, w),
        }
    }
}

pub fn all_pass(verdicts: &[Verdict]) -> bool {
    verdicts.iter().all(|v| v.pass)
}

/// The first failing verdict, as an error message.
pub fn first_failure(verdicts: &[Verdict]) -> Option<String> {
    verdicts.iter().find(|v| !v.pass).map(|v| {
        format!("{}: {}", v.check, v.witness.as_deref().unwrap_or("failed"))
    })
}

/// SHA-256 of one input file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

/// Output of one CLI run. Tables are keyed by name; every field but
/// `elapsed_us` is a function of the inputs.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputHash>,
    pub tables: std::collections::BTreeMap<String, serde_json::Value>,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl Report {
    pub fn table(&mut self, name: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("tables serialize");
        self.tables.insert(name.to_string(), v);
    }

    pub fn verdicts(&mut self, v: impl IntoIterator<Item = Verdict>) {
        self.verdicts.extend(v);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
