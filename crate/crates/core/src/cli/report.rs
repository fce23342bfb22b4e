//! Verdicts as text or JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{ChartReport, CycleReport};
use crate::complexes::VerificationReport;
use crate::witness::WitnessReport;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub subject: String,
    pub field: String,
    pub passed: bool,
    pub items: Vec<Item>,
    pub conclusion: Option<String>,
    pub elapsed_ms: u64,
}

/// One checked complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub name: String,
    pub passed: bool,
    pub ranks: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<ChartReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qiso: Option<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nonexact: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groebner: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub first_failure: Option<String>,
}

impl Item {
    pub fn new(name: &str, ranks: Vec<usize>) -> Self {
        Item {
            name: name.to_string(),
            passed: true,
            ranks,
            ..Item::default()
        }
    }

    pub fn with_qiso(mut self, q: VerificationReport) -> Self {
        self.passed &= q.passed;
        self.qiso = Some(q);
        self.refresh_failure();
        self
    }

    pub fn with_witness(mut self, w: WitnessReport) -> Self {
        self.passed &= w.passed;
        self.witness = Some(w);
        self.refresh_failure();
        self
    }

    pub fn with_nonexact(mut self, degrees: Vec<i64>) -> Self {
        self.passed &= degrees.is_empty();
        self.nonexact = degrees;
        self.refresh_failure();
        self
    }

    pub fn with_notes(mut self, notes: &[String]) -> Self {
        self.notes.extend(notes.iter().cloned());
        self
    }

    /// An item for one chart of the cycle; the window caveat is attached.
    pub fn from_chart(r: ChartReport, notes: &[String]) -> Self {
        let mut item = Item::new(&format!("chart {} ({:?})", r.id, r.kind).to_lowercase(), r.ranks.clone());
        if let Some(q) = r.qiso.clone() {
            item = item.with_qiso(q);
        }
        if let Some(w) = r.witness.clone() {
            item = item.with_witness(w);
        }
        item = item.with_nonexact(r.nonexact.clone()).with_notes(notes);
        item.passed = r.passed;
        item.chart = Some(r);
        item
    }

    fn refresh_failure(&mut self) {
        self.first_failure = self.describe_failure();
    }

    fn describe_failure(&self) -> Option<String> {
        if let Some(q) = &self.qiso {
            if let Some(f) = q.first_failure {
                return Some(format!("{:?} fails at degree {}", f.condition, f.degree));
            }
        }
        if let Some(&d) = self.nonexact.first() {
            return Some(format!("homology nonzero at degree {d}"));
        }
        if let Some(w) = &self.witness {
            if let Some(s) = w.steps.iter().find(|s| !s.passed) {
                let detail = s.detail.as_deref().unwrap_or("block mismatch");
                return Some(format!("witness step {}: {detail}", s.index));
            }
            if let Some(c) = w.certificates.iter().find(|c| !c.passed) {
                let detail = c.detail.as_deref().unwrap_or("not weakly product");
                return Some(format!("certificate {}: {detail}", c.label));
            }
        }
        None
    }
}

impl Report {
    pub fn new(command: &str, subject: &str, field: String, items: Vec<Item>, conclusion: Option<String>) -> Self {
        let passed = !items.is_empty() && items.iter().all(|i| i.passed);
        Report {
            schema: REPORT_SCHEMA,
            command: command.to_string(),
            subject: subject.to_string(),
            field,
            passed,
            items,
            conclusion: if passed { conclusion } else { None },
            elapsed_ms: 0,
        }
    }

    pub fn from_cycle(r: CycleReport, field: String, notes: &[Vec<String>]) -> Self {
        let items = r
            .charts
            .into_iter()
            .zip(notes)
            .map(|(c, n)| Item::from_chart(c, n))
            .collect();
        let mut report = Report::new("verify", &format!("cycle I_{}", r.n), field, items, r.conclusion);
        report.passed &= r.passed;
        report
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Human-readable form; identical across runs apart from the last line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = |p: bool| if p { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{} {} over {}", self.command, self.subject, self.field);
        for item in &self.items {
            let _ = writeln!(s, "  [{}] {}  ranks {:?}", verdict(item.passed), item.name, item.ranks);
            if let Some(q) = &item.qiso {
                let exact: Vec<String> = q
                    .exactness
                    .iter()
                    .map(|d| format!("{}{}", d.degree, if d.exact { "" } else { "!" }))
                    .collect();
                let _ = writeln!(
                    s,
                    "      window [{}, {}]  exact at [{}]  H_{} = R/I: well-defined {}, onto {}, injective {}",
                    q.window.0,
                    q.window.1,
                    exact.join(" "),
                    q.i0,
                    q.well_defined,
                    q.surjective,
                    q.injective
                );
            }
            if let Some(w) = &item.witness {
                let certs = w.certificates.iter().filter(|c| c.passed).count();
                let _ = writeln!(
                    s,
                    "      witness: {} steps, generation time {}, certificates {}/{}{}",
                    w.steps.len(),
                    w.generation_time,
                    certs,
                    w.certificates.len(),
                    if w.product_only { ", product objects only" } else { "" }
                );
            }
            if let Some(gb) = &item.groebner {
                let _ = writeln!(s, "      groebner basis ({}):", gb.len());
                for g in gb {
                    let _ = writeln!(s, "        {g}");
                }
            }
            if let Some(f) = &item.first_failure {
                let _ = writeln!(s, "      first failure: {f}");
            }
            for n in &item.notes {
                let _ = writeln!(s, "      note: {n}");
            }
        }
        let passed = self.items.iter().filter(|i| i.passed).count();
        let _ = writeln!(s, "{}: {}/{} passed", verdict(self.passed), passed, self.items.len());
        if let Some(c) = &self.conclusion {
            let _ = writeln!(s, "conclusion: {c}");
        }
        let _ = writeln!(s, "elapsed: {} ms", self.elapsed_ms);
        s
    }
}
