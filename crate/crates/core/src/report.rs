use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of one named axiom or identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

/// Ordered list of checks; the first failure is the one reported.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    /// Records a check; `Err` carries the witness.
    pub fn record(&mut self, name: &str, outcome: Result<(), String>) {
        let (passed, witness) = match outcome {
            Ok(()) => (true, None),
            Err(w) => (false, Some(w)),
        };
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}:", self.subject)?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            match &c.witness {
                Some(w) => writeln!(f, "  [{mark}] {} ({w})", c.name)?,
                None => writeln!(f, "  [{mark}] {}", c.name)?,
            }
        }
        Ok(())
    }
}
