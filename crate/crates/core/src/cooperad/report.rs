use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// Maximum number of witnesses kept per identity.
pub const WITNESS_CAP: usize = 8;

/// Named index tuple such as `(p, q, r, i, j)`, kept in the given order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Indices(pub Vec<(&'static str, i64)>);

impl Indices {
    pub fn new(pairs: &[(&'static str, i64)]) -> Self {
        Indices(pairs.to_vec())
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

impl fmt::Display for Indices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(n, v)| format!("{n}={v}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for Indices {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// A reproducible counterexample to an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub identity: String,
    pub indices: Indices,
    /// The decomposition maps the failing composite is built from.
    pub maps: Vec<String>,
    /// Input basis element.
    pub basis: String,
    /// Output basis tensor at which the two sides differ.
    pub term: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {} on [{}]: coefficient of {} is {} on the left, {} on the right",
            self.identity, self.indices, self.basis, self.term, self.left, self.right
        )?;
        if !self.maps.is_empty() {
            write!(f, " (maps: {})", self.maps.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of one named identity, counted over index tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub identity: String,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    /// Reported but not counted towards the suite verdict.
    pub informational: bool,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn new(identity: impl Into<String>) -> Self {
        CheckResult {
            identity: identity.into(),
            pass: 0,
            fail: 0,
            skip: 0,
            informational: false,
            witnesses: Vec::new(),
            note: None,
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn record(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::Skip => self.skip += 1,
            Outcome::Fail(w) => {
                self.fail += 1;
                if self.witnesses.len() < WITNESS_CAP {
                    self.witnesses.push(*w);
                }
            }
        }
    }

    pub fn merge(&mut self, other: CheckResult) {
        self.pass += other.pass;
        self.fail += other.fail;
        self.skip += other.skip;
        for w in other.witnesses {
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(w);
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.fail == 0
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skip
    }
}

/// Result of checking one identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Box<Witness>),
    Skip,
}

/// Per-suite collection of identity results.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn check(&self, identity: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.identity == identity)
    }

    /// True when no non-informational identity failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| !c.informational).all(CheckResult::ok)
    }

    pub fn totals(&self) -> (usize, usize, usize) {
        self.checks
            .iter()
            .filter(|c| !c.informational)
            .fold((0, 0, 0), |(p, f, s), c| (p + c.pass, f + c.fail, s + c.skip))
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.checks.iter().flat_map(|c| c.witnesses.iter())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.ok())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}]", self.suite)?;
        for c in &self.checks {
            let status = if !c.ok() {
                "FAIL"
            } else if c.pass == 0 && c.skip > 0 {
                "skip"
            } else {
                "ok"
            };
            let tag = if c.informational { " (informational)" } else { "" };
            writeln!(
                f,
                "  {status:<4} {}{tag}: {} pass, {} fail, {} skip",
                c.identity, c.pass, c.fail, c.skip
            )?;
            if let Some(note) = &c.note {
                writeln!(f, "       note: {note}")?;
            }
        }
        Ok(())
    }
}
