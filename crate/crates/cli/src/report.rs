//! Verification reports.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Everything needed to reproduce a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub variety: String,
    pub basis: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// The identity being checked, written out.
    pub anchor: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), checks: Vec::new(), summary: Summary::default() }
    }

    /// Records a comparison; the payload is built only on failure.
    pub fn compare<T: PartialEq + fmt::Display>(
        &mut self,
        id: impl Into<String>,
        anchor: &str,
        variety: impl fmt::Display,
        basis: &[&str],
        lhs: &T,
        rhs: &T,
    ) {
        let passed = lhs == rhs;
        let counterexample = (!passed).then(|| Counterexample {
            variety: variety.to_string(),
            basis: basis.iter().map(|s| s.to_string()).collect(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
        self.push(Check { id: id.into(), anchor: anchor.to_string(), passed, counterexample });
    }

    /// Records a check that failed with an error instead of two values.
    pub fn error(&mut self, id: impl Into<String>, anchor: &str, variety: impl fmt::Display, basis: &[&str], err: impl fmt::Display) {
        self.push(Check {
            id: id.into(),
            anchor: anchor.to_string(),
            passed: false,
            counterexample: Some(Counterexample {
                variety: variety.to_string(),
                basis: basis.iter().map(|s| s.to_string()).collect(),
                lhs: format!("error: {err}"),
                rhs: String::new(),
            }),
        });
    }

    pub fn push(&mut self, check: Check) {
        self.summary.total += 1;
        if check.passed {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Sorts checks by id so that output does not depend on evaluation order.
    pub fn finish(mut self) -> Self {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{verdict} {}: {} checks, {} passed, {} failed",
            self.suite, self.summary.total, self.summary.passed, self.summary.failed
        )?;
        let mut anchors: Vec<&str> = self.checks.iter().map(|c| c.anchor.as_str()).collect();
        anchors.sort_unstable();
        anchors.dedup();
        for a in anchors {
            writeln!(f, "  identity: {a}")?;
        }
        for c in self.failures() {
            writeln!(f, "  failed {} [{}]", c.id, c.anchor)?;
            if let Some(x) = &c.counterexample {
                writeln!(f, "    on {} at {}", x.variety, x.basis.join(", "))?;
                writeln!(f, "    lhs = {}", x.lhs)?;
                writeln!(f, "    rhs = {}", x.rhs)?;
            }
        }
        Ok(())
    }
}
