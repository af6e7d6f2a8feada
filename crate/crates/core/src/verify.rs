//! Verification records attached to certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

/// How a claim was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Method {
    /// Settled exactly by finite computation.
    Exact,
    /// Holds up to the stated budget; not a proof beyond it.
    ToBudget(u64),
    /// Settled by a decision procedure.
    Decider,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Exact => write!(f, "exact"),
            Method::ToBudget(b) => write!(f, "to_budget({b})"),
            Method::Decider => write!(f, "decider"),
        }
    }
}

impl From<Method> for String {
    fn from(m: Method) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for Method {
    type Error = String;

    fn try_from(s: String) -> Result<Method, String> {
        match s.as_str() {
            "exact" => Ok(Method::Exact),
            "decider" => Ok(Method::Decider),
            _ => s
                .strip_prefix("to_budget(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|b| b.parse().ok())
                .map(Method::ToBudget)
                .ok_or_else(|| format!("unknown verification method {s:?}")),
        }
    }
}

/// One checked claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub claim: String,
    pub method: Method,
    pub result: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Verification {
    pub fn new(claim: impl Into<String>, method: Method, result: bool) -> Verification {
        Verification { claim: claim.into(), method, result, detail: String::new() }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Verification {
        self.detail = detail.into();
        self
    }
}

/// Whether every record holds.
pub fn all_hold(records: &[Verification]) -> bool {
    records.iter().all(|v| v.result)
}
