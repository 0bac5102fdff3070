//! Report types shared by the theorem checkers and the CLI.
//!
//! Checkers never panic on mathematical failure: they return a report
//! carrying a status and, on failure, a concrete witness string.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

/// Outcome of one theorem instance on one input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    /// Hypotheses hold and the conclusion was verified.
    Pass,
    /// Hypotheses hold but the conclusion failed; a witness is attached.
    Fail,
    /// Hypotheses do not hold; the instance is vacuous.
    HypothesisNotMet,
}

impl CheckStatus {
    pub fn is_violation(self) -> bool {
        self == CheckStatus::Fail
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremReport {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    pub witness: Option<String>,
}

impl TheoremReport {
    pub fn pass(name: &str, detail: String) -> Self {
        TheoremReport {
            name: String::from(name),
            status: CheckStatus::Pass,
            detail,
            witness: None,
        }
    }
    pub fn fail(name: &str, detail: String, witness: String) -> Self {
        TheoremReport {
            name: String::from(name),
            status: CheckStatus::Fail,
            detail,
            witness: Some(witness),
        }
    }
    pub fn vacuous(name: &str, detail: String) -> Self {
        TheoremReport {
            name: String::from(name),
            status: CheckStatus::HypothesisNotMet,
            detail,
            witness: None,
        }
    }
}

/// Aggregate over all theorem instances of one input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremSuiteReport {
    pub input: String,
    pub reports: Vec<TheoremReport>,
}

impl TheoremSuiteReport {
    pub fn violated(&self) -> bool {
        self.reports.iter().any(|r| r.status.is_violation())
    }
}
