//! Pass/fail records shared by every checker.

use serde::Serialize;

/// One named property, checked over some number of instances. The first
/// failing instance is kept as the witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    /// Instances whose preconditions did not hold (e.g. a quotient that does
    /// not exist). They count neither for nor against the property.
    #[serde(skip_serializing_if = "is_zero")]
    pub skipped: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn is_zero(n: &u64) -> bool {
    *n == 0
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            checked: 0,
            skipped: 0,
            witness: None,
            note: None,
        }
    }

    /// Records one instance; `witness` is only evaluated on failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail_with(witness());
        }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.checked += 1;
        self.fail_with(witness.into());
    }

    fn fail_with(&mut self, witness: String) {
        if self.passed {
            self.witness = Some(witness);
        }
        self.passed = false;
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        let mut s = format!("{verdict:4}  {}  ({} checked", self.name, self.checked);
        if self.skipped > 0 {
            s.push_str(&format!(", {} skipped", self.skipped));
        }
        s.push(')');
        if let Some(w) = &self.witness {
            s.push_str(&format!("  witness: {w}"));
        }
        if let Some(n) = &self.note {
            s.push_str(&format!("  [{n}]"));
        }
        s
    }
}

/// A named group of checks together with the scope of the evidence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSet {
    pub title: String,
    /// What was covered: "exhaustive", "window K=20", "500 samples", ...
    pub scope: String,
    pub checks: Vec<Check>,
}

impl CheckSet {
    pub fn new(title: impl Into<String>, scope: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            scope: scope.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Name of the first failing check.
    pub fn first_failure(&self) -> Option<&str> {
        self.checks.iter().find(|c| !c.passed).map(|c| c.name.as_str())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn render(&self) -> String {
        let mut s = format!("{} [{}]\n", self.title, self.scope);
        for c in &self.checks {
            s.push_str("  ");
            s.push_str(&c.line());
            s.push('\n');
        }
        s
    }
}
