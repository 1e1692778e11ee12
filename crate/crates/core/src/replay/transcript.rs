//! Replay transcripts and their plain-text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use super::evidence::Evidence;
use super::fs::FsReport;

/// A lattice-level check: class equality, renaming, certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub claim: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub id: String,
    pub kind: String,
    pub params: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub evidence: Vec<Evidence>,
    pub checks: Vec<Check>,
    pub axioms: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FsReport>,
    pub before: Vec<String>,
    pub after: Vec<String>,
    /// Positions whose label or class changed, `pos: old => new`.
    pub diff: Vec<String>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinalRow {
    pub pos: usize,
    pub expected: String,
    pub actual: String,
    pub matched: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinalComparison {
    pub expected: Vec<String>,
    pub actual: Vec<String>,
    pub rows: Vec<FinalRow>,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomUse {
    pub name: String,
    pub source: String,
    pub quote: String,
    /// Step ids, with `start` for the header.
    pub used_in: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub steps_total: usize,
    pub steps_passed: usize,
    pub evidence_total: usize,
    pub proved: usize,
    pub axioms: Vec<AxiomUse>,
    /// `step: claim` for every CHI-ONLY precondition.
    pub chi_only: Vec<String>,
    pub unchecked: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InitialCheck {
    pub collection: Vec<String>,
    pub exceptional: bool,
    pub qualified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Transcript {
    pub scenario: String,
    pub variety: Option<String>,
    pub nodes: Option<usize>,
    pub strict: bool,
    pub initial: Option<InitialCheck>,
    pub steps: Vec<StepRecord>,
    #[serde(rename = "final")]
    pub final_comparison: Option<FinalComparison>,
    pub summary: Summary,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl Transcript {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = self.write_text(&mut out);
        out
    }

    fn write_text(&self, out: &mut String) -> std::fmt::Result {
        writeln!(out, "scenario {}", self.scenario)?;
        if let Some(v) = &self.variety {
            writeln!(out, "variety {v} (N = {})", self.nodes.unwrap_or(0))?;
        }
        if let Some(init) = &self.initial {
            let tag = match (init.exceptional, init.qualified) {
                (false, _) => "NOT EXCEPTIONAL",
                (true, true) => "exceptional (blocks skipped)",
                (true, false) => "exceptional",
            };
            writeln!(out, "start  {}  [{tag}]", init.collection.join(" ; "))?;
        }
        for s in &self.steps {
            write!(out, "\nstep {} {} {}", s.id, s.kind, s.params)?;
            if let Some(p) = &s.label {
                write!(out, "  ({p})")?;
            }
            writeln!(out, "  {}", s.verdict)?;
            for e in &s.evidence {
                writeln!(out, "  {e}")?;
            }
            for c in &s.checks {
                writeln!(out, "  [{}] {} ({})", if c.ok { "ok" } else { "MISMATCH" }, c.claim, c.detail)?;
            }
            if let Some(fs) = &s.certificate {
                let cert = fs.full.certificate.as_ref().map(|c| format!("{c:?}")).unwrap_or_else(|| "none".into());
                writeln!(out, "  certificate: relations {:?} coefficients {cert} -> {}", fs.full.relations, fs.verdict)?;
            }
            for n in &s.notes {
                writeln!(out, "  note: {n}")?;
            }
            for d in &s.diff {
                writeln!(out, "  {d}")?;
            }
            if let Some(m) = &s.message {
                writeln!(out, "  ! {m}")?;
            }
        }
        if let Some(fc) = &self.final_comparison {
            writeln!(out, "\nfinal  {}", fc.actual.join(" ; "))?;
            writeln!(out, "expect {}", fc.expected.join(" ; "))?;
            for r in fc.rows.iter().filter(|r| !r.matched) {
                writeln!(out, "  mismatch at {}: {} vs {} ({})", r.pos, r.actual, r.expected, r.detail)?;
            }
            writeln!(out, "comparison {}", if fc.exact { "exact" } else { "FAILED" })?;
        }
        let s = &self.summary;
        writeln!(out, "\nsummary: {}/{} steps, {} preconditions ({} proved)", s.steps_passed, s.steps_total, s.evidence_total, s.proved)?;
        for a in &s.axioms {
            writeln!(out, "  axiom {} [{}] used in {}", a.name, a.source, a.used_in.join(", "))?;
        }
        for c in &s.chi_only {
            writeln!(out, "  chi-only {c}")?;
        }
        for c in &s.unchecked {
            writeln!(out, "  unchecked {c}")?;
        }
        if let Some(f) = &self.failure {
            writeln!(out, "failure: {f}")?;
        }
        writeln!(out, "verdict {}", self.verdict)
    }
}
