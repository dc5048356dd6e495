//! Outcome types shared by certification, criteria and scans.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Refuted,
    Inconclusive,
}

impl Status {
    /// Refuted dominates Inconclusive, which dominates Verified.
    pub fn combine(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Refuted, _) | (_, Refuted) => Refuted,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Verified,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// A concrete index (or index pair) at which a checked statement failed or
/// could not be settled. Values are decimal strings; interval endpoints carry
/// their outward rounding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<u64>,
    pub lhs: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Witness {
    pub fn new(indices: Vec<u64>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Witness { indices, lhs: lhs.into(), rhs: rhs.into(), note: String::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

/// The finite range over which a statement was actually checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Horizon {
    pub description: String,
    pub from: u64,
    pub to: u64,
}

impl Horizon {
    pub fn indices(from: u64, to: u64) -> Self {
        Horizon { description: format!("{from} <= n <= {to}"), from, to }
    }

    pub fn pairs(b_min: u64, a_max: u64, sum_max: u64) -> Self {
        Horizon {
            description: format!("{b_min} <= b <= a <= {a_max}, a + b <= {sum_max}"),
            from: b_min,
            to: a_max,
        }
    }
}

/// Outcome of one checked statement.
///
/// `Verified` only ever means "no failure within `horizon`". `Refuted`
/// always carries at least one witness from a conclusive comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub label: String,
    pub status: Status,
    pub horizon: Horizon,
    /// Failures at or above the claimed threshold.
    pub witnesses: Vec<Witness>,
    /// Indices that stayed unresolved at the precision cap.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unresolved: Vec<Witness>,
    /// Failures below the claimed threshold: informative, not refutations.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub below_threshold: Vec<Witness>,
    /// Discovered thresholds, keyed by name (e.g. `"N3"`).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub thresholds: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Verdict>,
}

impl Verdict {
    pub fn new(label: impl Into<String>, horizon: Horizon) -> Self {
        Verdict {
            label: label.into(),
            status: Status::Verified,
            horizon,
            witnesses: Vec::new(),
            unresolved: Vec::new(),
            below_threshold: Vec::new(),
            thresholds: BTreeMap::new(),
            notes: Vec::new(),
            parts: Vec::new(),
        }
    }

    pub fn refute(&mut self, witness: Witness) {
        self.status = Status::Refuted;
        self.witnesses.push(witness);
    }

    pub fn leave_unresolved(&mut self, witness: Witness) {
        self.status = self.status.combine(Status::Inconclusive);
        self.unresolved.push(witness);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Adds a sub-verdict and folds its status into this one.
    pub fn push_part(&mut self, part: Verdict) {
        self.status = self.status.combine(part.status);
        self.parts.push(part);
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }

    pub fn part(&self, label: &str) -> Option<&Verdict> {
        self.parts.iter().find(|p| p.label == label)
    }

    /// Depth-first search for a sub-verdict by label.
    pub fn find(&self, label: &str) -> Option<&Verdict> {
        if self.label == label {
            return Some(self);
        }
        self.parts.iter().find_map(|p| p.find(label))
    }

    /// Checks the structural invariants: every refutation has a witness and
    /// statuses of parents dominate their parts.
    pub fn well_formed(&self) -> bool {
        let own = match self.status {
            Status::Refuted => !self.witnesses.is_empty() || self.parts.iter().any(Verdict::is_refuted),
            _ => true,
        };
        own && self.parts.iter().all(Verdict::well_formed)
    }
}

/// Returns `1 + max(failing)` when that is within `to`, `Some(from)` when
/// nothing failed and `None` when failures reach the end of the range.
pub fn clean_threshold(failing: impl IntoIterator<Item = u64>, from: u64, to: u64) -> Option<u64> {
    match failing.into_iter().max() {
        None => Some(from),
        Some(last) if last < to => Some(last + 1),
        Some(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_lattice() {
        assert_eq!(Status::Verified.combine(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Inconclusive.combine(Status::Refuted), Status::Refuted);
        assert_eq!(Status::Verified.combine(Status::Verified), Status::Verified);
    }

    #[test]
    fn thresholds_from_failures() {
        assert_eq!(clean_threshold([3, 5, 25], 2, 500), Some(26));
        assert_eq!(clean_threshold([], 2, 500), Some(2));
        assert_eq!(clean_threshold([500], 2, 500), None);
    }

    #[test]
    fn parts_fold_status() {
        let mut v = Verdict::new("top", Horizon::indices(1, 5));
        let mut bad = Verdict::new("bad", Horizon::indices(1, 5));
        bad.refute(Witness::new(vec![3], "1", "2"));
        v.push_part(bad);
        assert!(v.is_refuted());
        assert!(v.well_formed());
        assert!(v.find("bad").is_some());
    }
}
