//! Check records shared by every harness and suite.

use serde::{Deserialize, Serialize};

use crate::term::EqVerdict;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Equal,
    Distinct,
    Unknown,
}

impl From<EqVerdict> for Verdict {
    fn from(v: EqVerdict) -> Self {
        match v {
            EqVerdict::Equal => Verdict::Equal,
            EqVerdict::Distinct => Verdict::Distinct,
            EqVerdict::Unknown { .. } => Verdict::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub equal: usize,
    pub distinct: usize,
    pub unknown: usize,
}

impl Tally {
    pub fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Equal => self.equal += 1,
            Verdict::Distinct => self.distinct += 1,
            Verdict::Unknown => self.unknown += 1,
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.equal += other.equal;
        self.distinct += other.distinct;
        self.unknown += other.unknown;
    }

    pub fn total(&self) -> usize {
        self.equal + self.distinct + self.unknown
    }

    /// Distinct dominates, then Unknown.
    pub fn verdict(&self) -> Verdict {
        if self.distinct > 0 {
            Verdict::Distinct
        } else if self.unknown > 0 {
            Verdict::Unknown
        } else {
            Verdict::Equal
        }
    }

    pub fn unknown_rate(&self) -> f64 {
        if self.total() == 0 {
            0.0
        } else {
            self.unknown as f64 / self.total() as f64
        }
    }
}

/// One checked equation, or a family of them when `tally` is present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// The identity being checked, in words or symbols.
    pub law: String,
    pub verdict: Verdict,
    pub steps: usize,
    /// Printed terms or tables making up the instance.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub instance: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tally: Option<Tally>,
    /// Failed or inconclusive instances of a family.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<CheckRecord>,
}

impl CheckRecord {
    pub fn single(id: impl Into<String>, law: impl Into<String>, v: EqVerdict, steps: usize) -> CheckRecord {
        CheckRecord {
            id: id.into(),
            law: law.into(),
            verdict: v.into(),
            steps,
            instance: Vec::new(),
            tally: None,
            details: Vec::new(),
        }
    }

    pub fn with_instance(mut self, instance: Vec<String>) -> CheckRecord {
        self.instance = instance;
        self
    }
}

/// Accumulates verdicts for one family of instances.
#[derive(Debug, Clone)]
pub struct Family {
    id: String,
    law: String,
    tally: Tally,
    steps: usize,
    details: Vec<CheckRecord>,
    max_details: usize,
}

impl Family {
    pub fn new(id: impl Into<String>, law: impl Into<String>) -> Family {
        Family {
            id: id.into(),
            law: law.into(),
            tally: Tally::default(),
            steps: 0,
            details: Vec::new(),
            max_details: 20,
        }
    }

    /// Records one instance; `instance` is only rendered when it has to be
    /// kept.
    pub fn record(&mut self, v: EqVerdict, steps: usize, instance: impl FnOnce() -> Vec<String>) {
        let verdict = Verdict::from(v);
        self.tally.add(verdict);
        self.steps += steps;
        if verdict != Verdict::Equal && self.details.len() < self.max_details {
            let n = self.tally.total() - 1;
            self.details.push(
                CheckRecord::single(format!("{}#{n}", self.id), self.law.clone(), v, steps)
                    .with_instance(instance()),
            );
        }
    }

    pub fn merge(&mut self, other: Family) {
        self.tally.merge(other.tally);
        self.steps += other.steps;
        for d in other.details {
            if self.details.len() < self.max_details {
                self.details.push(d);
            }
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn tally(&self) -> Tally {
        self.tally
    }

    pub fn finish(self) -> CheckRecord {
        CheckRecord {
            id: self.id,
            law: self.law,
            verdict: self.tally.verdict(),
            steps: self.steps,
            instance: Vec::new(),
            tally: Some(self.tally),
            details: self.details,
        }
    }
}

/// The machine-readable outcome of a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    pub fuel: usize,
    pub eta: bool,
    pub records: Vec<CheckRecord>,
    pub summary: Tally,
}

impl SuiteReport {
    /// Sorts records by id and recomputes the summary from them.
    pub fn new(suite: &str, seed: u64, fuel: usize, eta: bool, mut records: Vec<CheckRecord>) -> SuiteReport {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Tally::default();
        for r in &records {
            summary.add(r.verdict);
        }
        SuiteReport {
            schema: SCHEMA_VERSION,
            suite: suite.to_string(),
            seed,
            fuel,
            eta,
            records,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.distinct == 0 && self.summary.unknown == 0
    }

    pub fn record(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tally = r
                .tally
                .map(|t| format!(" [{} equal, {} distinct, {} unknown]", t.equal, t.distinct, t.unknown))
                .unwrap_or_default();
            out.push_str(&format!("{:<9} {}  {}{}\n", format!("{:?}", r.verdict), r.id, r.law, tally));
            for d in &r.details {
                out.push_str(&format!("    {:?} {}: {}\n", d.verdict, d.id, d.instance.join(" | ")));
            }
        }
        out.push_str(&format!(
            "{}: {} equal, {} distinct, {} unknown\n",
            self.suite, self.summary.equal, self.summary.distinct, self.summary.unknown
        ));
        out
    }
}

/// A named group of records certifying one construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub subject: String,
    pub records: Vec<CheckRecord>,
}

impl Certificate {
    pub fn new(subject: impl Into<String>, records: Vec<CheckRecord>) -> Certificate {
        Certificate {
            subject: subject.into(),
            records,
        }
    }

    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for r in &self.records {
            match r.tally {
                Some(x) => t.merge(x),
                None => t.add(r.verdict),
            }
        }
        t
    }

    /// Every record Equal.
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.verdict == Verdict::Equal)
    }

    pub fn no_distinct(&self) -> bool {
        self.records.iter().all(|r| r.verdict != Verdict::Distinct)
    }

    pub fn record(&self, suffix: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id.ends_with(suffix))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_matches_records() {
        let recs = vec![
            CheckRecord::single("b", "x", EqVerdict::Equal, 1),
            CheckRecord::single("a", "y", EqVerdict::Unknown { steps: 5 }, 5),
        ];
        let r = SuiteReport::new("t", 0, 10, false, recs);
        assert_eq!(r.records[0].id, "a");
        assert_eq!(r.summary, Tally { equal: 1, distinct: 0, unknown: 1 });
        assert!(!r.passed());
        let back: SuiteReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn family_keeps_only_failures() {
        let mut f = Family::new("law", "l");
        f.record(EqVerdict::Equal, 2, || vec!["never".into()]);
        f.record(EqVerdict::Distinct, 3, || vec!["t".into()]);
        let rec = f.finish();
        assert_eq!(rec.verdict, Verdict::Distinct);
        assert_eq!(rec.details.len(), 1);
        assert_eq!(rec.details[0].instance, vec!["t".to_string()]);
        assert_eq!(rec.steps, 5);
    }
}
