use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

const STORED_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub witness: String,
}

/// Outcome of an exhaustive axiom check. An empty report means the input is valid.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub total: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.total == 0
    }

    pub fn push(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.total += 1;
        if self.violations.len() < STORED_LIMIT {
            self.violations.push(Violation {
                check: check.into(),
                witness: witness.into(),
            });
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: Report) {
        self.total += other.total;
        for v in other.violations {
            if self.violations.len() < STORED_LIMIT {
                self.violations.push(v);
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn has(&self, check: &str) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }

    pub fn into_result(self, stage: &str) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::verification(
                stage,
                format!("{}: {} ({} violation(s))", v.check, v.witness, self.total),
            )),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        writeln!(f, "{} violation(s)", self.total)?;
        for v in &self.violations {
            writeln!(f, "  {}: {}", v.check, v.witness)?;
        }
        Ok(())
    }
}
