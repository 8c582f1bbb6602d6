//! Structured verification reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::Verdict;
use crate::weil::{Group, WeilRep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
            witness: None,
        }
    }

    /// Turns configuration-type failures into a failed check; precision errors propagate.
    pub fn from_result(name: &str, r: Result<bool>, detail: impl Into<String>) -> Result<Check> {
        match r {
            Ok(b) => Ok(Check::new(name, b, detail)),
            Err(Error::Precision(m)) => Err(Error::Precision(m)),
            Err(e) => Ok(Check::new(name, false, e.to_string())),
        }
    }

    pub fn with_witness(mut self, w: Option<String>) -> Check {
        self.witness = w;
        self
    }
}

/// A representation recorded in a report, with the group it parametrizes if any.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NamedRep {
    pub name: String,
    pub group: Option<Group>,
    pub rep: WeilRep,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwistOutcome {
    pub twist: String,
    pub verdict: Verdict,
}

/// Twisted gamma comparisons of two representations over a test family.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaEquivReport {
    pub level: u32,
    pub tested: usize,
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub per_twist: Vec<TwistOutcome>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub p: u64,
    pub params: BTreeMap<String, String>,
    pub data: Vec<NamedRep>,
    pub checks: Vec<Check>,
    pub comparisons: Vec<GammaEquivReport>,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl Report {
    pub fn new(scenario: &str, p: u64) -> Report {
        Report {
            scenario: scenario.to_string(),
            p,
            params: BTreeMap::new(),
            data: Vec::new(),
            checks: Vec::new(),
            comparisons: Vec::new(),
            notes: Vec::new(),
            passed: false,
        }
    }

    pub fn param(&mut self, k: &str, v: impl ToString) {
        self.params.insert(k.to_string(), v.to_string());
    }

    pub fn rep(&mut self, name: &str, group: Option<Group>, rep: &WeilRep) {
        self.data.push(NamedRep {
            name: name.to_string(),
            group,
            rep: rep.clone(),
        });
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Seals the verdict: pass only if every check passed.
    pub fn finish(mut self) -> Report {
        self.passed = !self.checks.is_empty() && self.checks.iter().all(|c| c.passed);
        self
    }
}
