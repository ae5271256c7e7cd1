//! Failure reports for axiom checkers.
//!
//! Checkers never stop at the first broken axiom: they enumerate every
//! failing instance so a property-test counterexample pins down the basis
//! indices involved.

use serde::Serialize;
use std::fmt;

/// One failed axiom instance.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    /// Name of the axiom or law that failed, e.g. `associativity`.
    pub check: String,
    /// Basis indices of the instance that failed.
    pub indices: Vec<usize>,
    /// Human-readable discrepancy (difference vector or expected/actual).
    pub detail: String,
}

/// Outcome of an exhaustive axiom suite. Empty `failures` means pass.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub context: String,
    pub checks_run: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(context: impl Into<String>) -> Self {
        Report {
            context: context.into(),
            checks_run: 0,
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tick(&mut self) {
        self.checks_run += 1;
    }

    pub fn fail(&mut self, check: &str, indices: &[usize], detail: impl Into<String>) {
        self.failures.push(Failure {
            check: check.to_string(),
            indices: indices.to_vec(),
            detail: detail.into(),
        });
    }

    /// Fold another report into this one, keeping its context as a prefix.
    pub fn absorb(&mut self, other: Report) {
        self.checks_run += other.checks_run;
        for mut f in other.failures {
            f.check = format!("{}: {}", other.context, f.check);
            self.failures.push(f);
        }
    }

    /// Error out when the report carries failures.
    pub fn into_result(self) -> Result<(), crate::Error> {
        if self.ok() {
            Ok(())
        } else {
            let context = self.context.clone();
            Err(crate::Error::verification(context, self))
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "{}: ok ({} checks)", self.context, self.checks_run);
        }
        writeln!(
            f,
            "{}: {} failure(s) out of {} checks",
            self.context,
            self.failures.len(),
            self.checks_run
        )?;
        for fail in self.failures.iter().take(16) {
            writeln!(f, "  {} at {:?}: {}", fail.check, fail.indices, fail.detail)?;
        }
        if self.failures.len() > 16 {
            writeln!(f, "  ... and {} more", self.failures.len() - 16)?;
        }
        Ok(())
    }
}
