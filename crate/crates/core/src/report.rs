//! Check records and verification reports shared by every sweep.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckRecord {
    pub check: String,
    pub instance: String,
    pub lhs: Value,
    pub rhs: Value,
    pub modulus: Option<u64>,
    pub ok: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub vacuous: bool,
}

impl CheckRecord {
    pub fn exact(check: &str, instance: String, lhs: impl Into<Value>, rhs: impl Into<Value>) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let ok = lhs == rhs;
        CheckRecord { check: check.into(), instance, lhs, rhs, modulus: None, ok, vacuous: false }
    }

    /// Congruence of two residues already reduced modulo `m`; `m = 1` is flagged vacuous.
    pub fn congruence(check: &str, instance: String, lhs: u64, rhs: u64, m: u64) -> Self {
        CheckRecord {
            check: check.into(),
            instance,
            lhs: lhs.into(),
            rhs: rhs.into(),
            modulus: Some(m),
            ok: lhs % m == rhs % m,
            vacuous: m == 1,
        }
    }

    pub fn failed(check: &str, instance: String, reason: &str) -> Self {
        CheckRecord {
            check: check.into(),
            instance,
            lhs: Value::String(reason.into()),
            rhs: Value::Null,
            modulus: None,
            ok: false,
            vacuous: false,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub checked: usize,
    pub passed: usize,
    pub violations: usize,
    pub vacuous: usize,
    pub skipped: usize,
}

/// A list of records plus notes about instances skipped for budget reasons.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub records: Vec<CheckRecord>,
    pub skipped: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport { name: name.into(), ..Default::default() }
    }
    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }
    pub fn skip(&mut self, why: String) {
        self.skipped.push(why);
    }
    pub fn note(&mut self, s: String) {
        self.notes.push(s);
    }
    pub fn extend(&mut self, other: CheckReport) {
        self.records.extend(other.records);
        self.skipped.extend(other.skipped);
        self.notes.extend(other.notes);
    }
    pub fn violations(&self) -> Vec<&CheckRecord> {
        self.records.iter().filter(|r| !r.ok).collect()
    }
    pub fn ok(&self) -> bool {
        self.records.iter().all(|r| r.ok)
    }
    pub fn summary(&self) -> Summary {
        let violations = self.records.iter().filter(|r| !r.ok).count();
        Summary {
            checked: self.records.len(),
            passed: self.records.len() - violations,
            violations,
            vacuous: self.records.iter().filter(|r| r.vacuous).count(),
            skipped: self.skipped.len(),
        }
    }
    /// Records of one check id.
    pub fn of(&self, check: &str) -> Vec<&CheckRecord> {
        self.records.iter().filter(|r| r.check == check).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts() {
        let mut r = CheckReport::new("t");
        r.push(CheckRecord::exact("a", "x".into(), 1, 1));
        r.push(CheckRecord::exact("a", "y".into(), 1, 2));
        r.push(CheckRecord::congruence("b", "z".into(), 0, 5, 1));
        let s = r.summary();
        assert_eq!((s.checked, s.passed, s.violations, s.vacuous), (3, 2, 1, 1));
        assert!(!r.ok());
        assert_eq!(r.of("a").len(), 2);
    }
}
