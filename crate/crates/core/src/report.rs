//! The serialized result of a computation.

use serde::{Deserialize, Serialize};

use crate::conversion::ConversionResult;
use crate::json::PovmJson;
use crate::measurement::Separability;
use crate::monotone::Bracket;
use crate::tolerance::Tolerances;

/// Monotone values plus the tolerances they were computed under. Optional
/// sections are omitted from the JSON when absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub c_m: Option<f64>,
    pub e_m: Option<Bracket>,
    pub log_base: u32,
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coherence_contributions: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separability: Option<Separability>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conversion: Option<ConversionResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converted_povm: Option<PovmJson>,
}

impl ResourceReport {
    pub fn new(tolerances: Tolerances) -> Self {
        Self {
            c_m: None,
            e_m: None,
            log_base: 2,
            tolerances,
            coherence_contributions: None,
            separability: None,
            conversion: None,
            verification: None,
            converted_povm: None,
        }
    }
}

impl Default for ResourceReport {
    fn default() -> Self {
        Self::new(Tolerances::default())
    }
}

/// Outcome of a theorem check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub theorem: u8,
    pub holds: bool,
    pub detail: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_report_has_schema_keys() {
        let mut r = ResourceReport::default();
        r.c_m = Some(1.0);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["c_m"], 1.0);
        assert!(v["e_m"].is_null());
        assert_eq!(v["log_base"], 2);
        assert_eq!(v["tolerances"]["bracket"], 1e-7);
        assert!(v.get("conversion").is_none());
    }
}
