//! Reproducible JSON certificates.

use insep::logic::enumerate::ORDER_TAG;
use insep::verify::{all_hold, Verification};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct Inputs {
    pub sha256: String,
    pub inline: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub command: String,
    pub inputs: Inputs,
    pub outputs: Value,
    pub verification: Vec<Verification>,
    pub tool_version: String,
    pub enumeration_order: String,
}

impl Certificate {
    pub fn new(command: &str, inline: Value, outputs: Value, verification: Vec<Verification>) -> Certificate {
        let canonical = serde_json::to_string(&inline).expect("values serialize");
        Certificate {
            command: command.to_string(),
            inputs: Inputs { sha256: hex::encode(Sha256::digest(canonical.as_bytes())), inline },
            outputs,
            verification,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            enumeration_order: ORDER_TAG.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        all_hold(&self.verification)
    }

    /// Pretty JSON with a trailing newline. Object keys are sorted, so equal
    /// certificates print identically.
    pub fn render(&self) -> String {
        let v = serde_json::to_value(self).expect("certificates serialize");
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }
}

/// Serializes any output value.
pub fn json<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("outputs serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use insep::verify::Method;
    use serde_json::json;

    #[test]
    fn rendering_is_stable_and_hashes_inputs() {
        let a = Certificate::new(
            "x",
            json!({"b": 1, "a": 2}),
            json!([1]),
            vec![Verification::new("c", Method::Exact, true)],
        );
        let b = Certificate::new(
            "x",
            json!({"a": 2, "b": 1}),
            json!([1]),
            vec![Verification::new("c", Method::Exact, true)],
        );
        assert_eq!(a.render(), b.render());
        assert_eq!(a.inputs.sha256.len(), 64);
        assert!(a.passed());
    }
}
