use std::fmt;

use serde::{Deserialize, Serialize};

use super::interval::DensityInterval;
use crate::hypergraph::IndependenceSequence;

/// One rule application in a derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    pub citation: String,
    pub inputs: Vec<String>,
}

impl Step {
    pub fn new(rule: &str, citation: &str, inputs: Vec<String>) -> Self {
        Step { rule: rule.to_string(), citation: citation.to_string(), inputs }
    }
}

/// An enclosure of a named limiting density together with how it was
/// obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub quantity: String,
    #[serde(flatten)]
    pub interval: DensityInterval,
    pub derivation: Vec<Step>,
    /// Sequences that may attain the minimum. Only set by
    /// [`t_limit_components`](super::t_limit_components); not part of the
    /// JSON form, where the same list appears in the derivation.
    #[serde(skip)]
    pub minimizers: Vec<IndependenceSequence>,
}

impl BoundReport {
    pub fn new(quantity: impl Into<String>, interval: DensityInterval, derivation: Vec<Step>) -> Self {
        debug_assert!(!derivation.is_empty());
        BoundReport { quantity: quantity.into(), interval, derivation, minimizers: Vec::new() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} in {}  (~[{:.6}, {:.6}])",
            self.quantity,
            self.interval,
            self.interval.lo_f64(),
            self.interval.hi_f64()
        )?;
        for step in &self.derivation {
            writeln!(f, "  {:<22} {}", step.rule, step.inputs.join(", "))?;
            writeln!(f, "  {:<22} ({})", "", step.citation)?;
        }
        Ok(())
    }
}
