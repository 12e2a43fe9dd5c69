//! Machine-readable run reports: named assertions with kinds, grouped into
//! suites, carrying the full run configuration for replayability.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// How an assertion was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssertionKind {
    /// Exact arithmetic; failure means a formula or invariant is wrong.
    Exact,
    /// Statistical comparison at three sigma.
    MonteCarlo,
    /// Informational measurement; never gates the run.
    Measured,
}

/// One named check with its observed values (rationals as `p/q` strings).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub kind: AssertionKind,
    pub pass: bool,
    pub values: BTreeMap<String, String>,
}

impl Assertion {
    pub fn new(name: impl Into<String>, kind: AssertionKind, pass: bool) -> Assertion {
        Assertion {
            name: name.into(),
            kind,
            pass,
            values: BTreeMap::new(),
        }
    }

    pub fn exact(name: impl Into<String>, pass: bool) -> Assertion {
        Assertion::new(name, AssertionKind::Exact, pass)
    }

    pub fn monte_carlo(name: impl Into<String>, pass: bool) -> Assertion {
        Assertion::new(name, AssertionKind::MonteCarlo, pass)
    }

    pub fn measured(name: impl Into<String>) -> Assertion {
        Assertion::new(name, AssertionKind::Measured, true)
    }

    pub fn with_value(mut self, key: impl Into<String>, value: impl ToString) -> Assertion {
        self.values.insert(key.into(), value.to_string());
        self
    }

    /// Whether this assertion can fail the run.
    pub fn gates(&self) -> bool {
        self.kind != AssertionKind::Measured
    }
}

/// Run-wide configuration embedded in every report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: u64,
    pub depth: usize,
    pub n: usize,
    /// Distortion threshold.
    pub threshold: u64,
    pub workers: u64,
    pub format: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 2024,
            samples: 10_000,
            depth: 12,
            n: 6,
            threshold: 8,
            workers: 8,
            format: "json".into(),
        }
    }
}

/// A suite outcome: assertions sorted by name, overall pass flag.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: RunConfig,
    pub assertions: Vec<Assertion>,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: impl Into<String>, config: RunConfig) -> Report {
        Report {
            suite: suite.into(),
            config,
            assertions: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, assertion: Assertion) {
        if assertion.gates() && !assertion.pass {
            self.pass = false;
        }
        self.assertions.push(assertion);
    }

    /// Sorts assertions by name; call once after the last push.
    pub fn finish(mut self) -> Report {
        self.assertions.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    /// Merges another report's assertions under a `prefix:` namespace.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut a in other.assertions {
            a.name = format!("{prefix}:{}", a.name);
            self.push(a);
        }
    }

    pub fn failing(&self) -> Vec<&Assertion> {
        self.assertions
            .iter()
            .filter(|a| a.gates() && !a.pass)
            .collect()
    }
}
