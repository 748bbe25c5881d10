use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// One failed identity: where it was evaluated and both sides, rendered.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub context: String,
    pub lhs: String,
    pub rhs: String,
}

impl Violation {
    pub fn new(context: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        Violation { context: context.into(), lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub violations: Vec<Violation>,
    /// Free-form notes, e.g. why a bounded search was inconclusive.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip)]
    checked: usize,
    #[serde(skip)]
    inconclusive: bool,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            params: Map::new(),
            status: Status::Pass,
            violations: Vec::new(),
            notes: Vec::new(),
            checked: 0,
            inconclusive: false,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Records `count` evaluated identities and the ones that failed.
    pub fn record(&mut self, count: usize, violations: impl IntoIterator<Item = Violation>) {
        self.checked += count;
        self.violations.extend(violations);
        self.refresh();
    }

    pub fn mark_inconclusive(&mut self, note: impl Into<String>) {
        self.inconclusive = true;
        self.notes.push(note.into());
        self.refresh();
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report's results into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        let prefix = other.suite.clone();
        self.checked += other.checked;
        self.inconclusive |= other.inconclusive;
        self.violations.extend(other.violations.into_iter().map(|mut v| {
            v.context = format!("{prefix}: {}", v.context);
            v
        }));
        self.notes.extend(other.notes.into_iter().map(|n| format!("{prefix}: {n}")));
        self.refresh();
    }

    fn refresh(&mut self) {
        self.violations.sort();
        self.status = if !self.violations.is_empty() {
            Status::Fail
        } else if self.inconclusive {
            Status::Inconclusive
        } else {
            Status::Pass
        };
    }

    /// Number of identities evaluated.
    pub fn checked(&self) -> usize {
        self.checked
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
