//! Verdicts for property checks.
//!
//! A check either asserts a property (pass / fail with witness) or, when the
//! input lies outside the hypotheses the property is known under, only
//! records what was observed.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail {
        witness: String,
    },
    Observed {
        holds: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<String>,
    },
    Skipped {
        reason: String,
    },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    /// `Some(holds)` for pass/fail/observed, `None` for skipped.
    pub fn holds(&self) -> Option<bool> {
        match self {
            Verdict::Pass => Some(true),
            Verdict::Fail { .. } => Some(false),
            Verdict::Observed { holds, .. } => Some(*holds),
            Verdict::Skipped { .. } => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail { .. } => "fail",
            Verdict::Observed { .. } => "observed",
            Verdict::Skipped { .. } => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// Collects checks; `asserting` decides between pass/fail and observed.
#[derive(Debug, Clone)]
pub struct Checker {
    asserting: bool,
    checks: Vec<Check>,
}

impl Checker {
    pub fn new(asserting: bool) -> Self {
        Checker {
            asserting,
            checks: Vec::new(),
        }
    }

    pub fn asserting(&self) -> bool {
        self.asserting
    }

    /// Records a property; `failure` is the first counterexample, if any.
    /// Returns whether the property holds.
    pub fn check(&mut self, id: &str, failure: Option<String>) -> bool {
        let asserting = self.asserting;
        self.check_as(id, asserting, failure)
    }

    pub fn check_as(&mut self, id: &str, assert: bool, failure: Option<String>) -> bool {
        let holds = failure.is_none();
        let verdict = match (assert, failure) {
            (true, None) => Verdict::Pass,
            (true, Some(witness)) => Verdict::Fail { witness },
            (false, witness) => Verdict::Observed { holds, witness },
        };
        self.checks.push(Check {
            id: id.to_string(),
            verdict,
        });
        holds
    }

    pub fn observe(&mut self, id: &str, failure: Option<String>) -> bool {
        self.check_as(id, false, failure)
    }

    pub fn skip(&mut self, id: &str, reason: impl Into<String>) {
        self.checks.push(Check {
            id: id.to_string(),
            verdict: Verdict::Skipped { reason: reason.into() },
        });
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn into_checks(self) -> Vec<Check> {
        self.checks
    }
}

/// First item violating `ok`, rendered by `show`.
pub fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    mut ok: impl FnMut(&T) -> bool,
    show: impl Fn(&T) -> String,
) -> Option<String> {
    items.into_iter().find(|t| !ok(t)).map(|t| show(&t))
}
