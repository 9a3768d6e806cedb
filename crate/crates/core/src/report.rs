//! Pass/fail reports produced by every identity and structure check.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

/// The first case where an identity failed: where it failed and both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub location: BTreeMap<String, Value>,
    pub lhs: String,
    pub rhs: String,
}

impl Counterexample {
    pub fn new(lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Counterexample {
            location: BTreeMap::new(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    pub fn at(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.location.insert(key.to_string(), value.into());
        self
    }

    /// Integer location field, if present.
    pub fn get_i64(&self, key: &str) -> Option<i64> {
        self.location.get(key).and_then(Value::as_i64)
    }
}

impl Serialize for Counterexample {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.location.len() + 2))?;
        for (k, v) in &self.location {
            map.serialize_entry(k, v)?;
        }
        map.serialize_entry("lhs", &self.lhs)?;
        map.serialize_entry("rhs", &self.rhs)?;
        map.end()
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.location {
            match v {
                Value::String(s) => write!(f, "{k}={s} ")?,
                other => write!(f, "{k}={other} ")?,
            }
        }
        write!(f, "lhs={} rhs={}", self.lhs, self.rhs)
    }
}

/// Outcome of an identity check. `pass()` is true exactly when no
/// counterexample was recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub identity: String,
    pub params: BTreeMap<String, Value>,
    pub cases: u64,
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>) -> Self {
        IdentityReport {
            identity: identity.into(),
            params: BTreeMap::new(),
            cases: 0,
            counterexample: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn pass(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Records one checked case; the first failure is kept.
    pub fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> Counterexample) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(counterexample());
        }
    }

    /// Folds a sub-report into this one, keeping the first counterexample.
    pub fn absorb(&mut self, other: IdentityReport) {
        self.cases += other.cases;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(5))?;
        map.serialize_entry("identity", &self.identity)?;
        map.serialize_entry("params", &self.params)?;
        map.serialize_entry("pass", &self.pass())?;
        map.serialize_entry("cases", &self.cases)?;
        map.serialize_entry("counterexample", &self.counterexample)?;
        map.end()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} cases", self.identity, self.cases)?;
        for (k, v) in &self.params {
            match v {
                Value::String(s) => write!(f, ", {k}={s}")?,
                other => write!(f, ", {k}={other}")?,
            }
        }
        write!(f, ")")?;
        if let Some(c) = &self.counterexample {
            write!(f, "; counterexample: {c}")?;
        }
        Ok(())
    }
}
