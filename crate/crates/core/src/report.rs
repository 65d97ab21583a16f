//! Structured results for identity checkers.
//!
//! Checkers return where and how the two sides diverge rather than a bare
//! boolean, so an off-by-one regression is diagnosable from the report alone.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Outcome of one verified identity, in the shape the CLI report emits.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub params: BTreeMap<String, String>,
    /// True when the asserting path is exact rational arithmetic; false when
    /// the check is a tolerance-bound complex mirror.
    pub exact: bool,
    pub pass: bool,
    /// Max absolute deviation observed on a complex path, stringified.
    pub max_dev: Option<String>,
    pub first_failure: Option<FailureDetail>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailureDetail {
    /// Where the identity first broke, e.g. `n=7` or `n=7,k=3`.
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    pub fn exact_pass(name: impl Into<String>, params: BTreeMap<String, String>) -> Self {
        Check {
            name: name.into(),
            params,
            exact: true,
            pass: true,
            max_dev: None,
            first_failure: None,
        }
    }

    pub fn exact_fail(
        name: impl Into<String>,
        params: BTreeMap<String, String>,
        failure: FailureDetail,
    ) -> Self {
        Check {
            name: name.into(),
            params,
            exact: true,
            pass: false,
            max_dev: None,
            first_failure: Some(failure),
        }
    }

    /// Tolerance-path check: passes when `max_dev <= tol`.
    pub fn complex(
        name: impl Into<String>,
        params: BTreeMap<String, String>,
        max_dev: f64,
        tol: f64,
    ) -> Self {
        Check {
            name: name.into(),
            params,
            exact: false,
            pass: max_dev <= tol,
            max_dev: Some(format!("{max_dev:e}")),
            first_failure: None,
        }
    }
}

/// A full suite run: every check plus the horizon it ran at.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub horizon: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, horizon: u64) -> Self {
        SuiteReport {
            suite: suite.into(),
            horizon,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Report aggregation is order-independent: sort by name, then params.
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| {
            a.name
                .cmp(&b.name)
                .then_with(|| format!("{:?}", a.params).cmp(&format!("{:?}", b.params)))
        });
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Convenience for building the `params` maps.
pub fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
