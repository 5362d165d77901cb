//! Flat, serializable records of checker results.

use serde::{Deserialize, Serialize};

use crate::axioms::{AxiomVerdict, Coverage, Outcome, Witness};

/// One axiom check against one concept on one named class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub axiom: String,
    pub concept: String,
    pub class: String,
    pub result: Outcome,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coverage: Option<Coverage>,
}

impl CheckRecord {
    pub fn from_verdict(verdict: &AxiomVerdict, class: &str) -> Self {
        CheckRecord {
            axiom: verdict.axiom().as_str().to_string(),
            concept: verdict.concept().to_string(),
            class: class.to_string(),
            result: verdict.outcome(),
            witness: verdict.witness().cloned(),
            coverage: verdict.coverage(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}
