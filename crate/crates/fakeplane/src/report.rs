//! Machine-readable verification reports.
//!
//! One report per family instance, versioned with a top-level `schema`
//! field. Field order is fixed by the struct, map keys are sorted, and all
//! numeric lattice data is rendered as decimal strings, so a report is
//! byte-for-byte reproducible for fixed inputs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::families::{BlowUpStep, CheckResult, ExpectedFact, VerificationOutcome};
use crate::homology::Verdict;
use crate::kodaira::KappaEvidence;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub family: String,
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub picard_rank: Option<usize>,
    pub boundary: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_matrix: Option<Vec<Vec<String>>>,
    pub snf_diag: Vec<String>,
    pub construction: Vec<BlowUpStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<KappaEvidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fibration_flags: Option<(bool, bool)>,
    pub checks: Vec<CheckResult>,
    pub expected: Vec<ExpectedFact>,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl Report {
    pub fn from_outcome(outcome: &VerificationOutcome) -> Report {
        Report {
            schema: SCHEMA_VERSION,
            family: outcome.family.clone(),
            params: outcome.params.clone(),
            picard_rank: outcome.picard_rank,
            boundary: outcome.boundary.clone(),
            j_matrix: outcome.presentation_matrix.clone(),
            snf_diag: outcome.snf_diag.clone(),
            construction: outcome.construction.clone(),
            verdict: outcome.verdict.clone(),
            kappa: outcome.kappa.clone(),
            fibration_flags: outcome.fibration_flags,
            checks: outcome.checks.clone(),
            expected: outcome.expected.clone(),
            notes: outcome.notes.clone(),
            passed: outcome.passed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{verify, Params};

    #[test]
    fn reports_are_deterministic() {
        let a = Report::from_outcome(&verify("conic_complement", &Params::new()).unwrap());
        let b = Report::from_outcome(&verify("conic_complement", &Params::new()).unwrap());
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.to_json().contains("\"schema\": 1"));
    }
}
