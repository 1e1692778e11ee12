//! Everything `verify-all` runs: bundled scenarios, the fiber-plane
//! certificate, double-cover checks, conformance tables and property suites.

use serde::Serialize;

use crate::checks::{self, ConformanceRow, SuiteReport};
use crate::error::Result;
use crate::varieties::cover::{double_cover_check, CoverReport};
use crate::varieties::homvar::HomVariety;
use crate::varieties::m::VarietyM;
use crate::varieties::y::BlowupY;
use crate::varieties::DEFAULT_NODES;

use super::fs::{check_prop_fs, FsReport};
use super::transcript::AxiomUse;
use super::{run_scenario, RunOptions, Scenario, BUNDLED};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub nodes: usize,
    pub strict: bool,
    pub seed: u64,
    /// Scale factor on the property suite sizes; 1 gives the documented counts.
    pub scale: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { nodes: DEFAULT_NODES, strict: false, seed: checks::DEFAULT_SEED, scale: 1 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioOutcome {
    pub name: String,
    pub verdict: String,
    pub expected: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub nodes: usize,
    pub scenarios: Vec<ScenarioOutcome>,
    pub prop_fs: FsReport,
    pub covers: Vec<CoverReport>,
    pub cohomology: Vec<ConformanceRow>,
    pub hypercohomology: Vec<ConformanceRow>,
    pub suites: Vec<SuiteReport>,
    pub axioms: Vec<AxiomUse>,
    pub passed: bool,
}

/// The collections whose doubles are checked: `(O(-h), O)` on P3 and
/// `(O(-h), O(-e_1), ..., O(-e_N), O)` on Y.
pub fn cover_reports(nodes: usize) -> Result<Vec<CoverReport>> {
    let p3 = HomVariety::p3()?;
    let y = BlowupY::new(nodes)?;
    let mut coll = vec!["O(-h)".to_string()];
    coll.extend((1..=nodes).map(|i| format!("O(-e{i})")));
    coll.push("O".into());
    Ok(vec![
        double_cover_check(&p3, "2h", &["O(-h)".into(), "O".into()])?,
        double_cover_check(&y, "2h-sum_e", &coll)?,
    ])
}

pub fn verify_all(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let opts = RunOptions { strict: cfg.strict, nodes: Some(cfg.nodes) };
    let mut scenarios = Vec::new();
    let mut axioms: Vec<AxiomUse> = Vec::new();
    for b in BUNDLED {
        let t = run_scenario(&Scenario::parse(b.text)?, &opts)?;
        let expected = if b.expect_pass { "PASS" } else { "FAIL" };
        scenarios.push(ScenarioOutcome { name: b.name.into(), verdict: t.verdict.clone(), expected: expected.into(), ok: t.verdict == expected });
        if b.expect_pass {
            for a in t.summary.axioms {
                match axioms.iter_mut().find(|x| x.name == a.name) {
                    Some(x) => x.used_in.extend(a.used_in.iter().map(|s| format!("{}:{s}", b.name))),
                    None => axioms.push(AxiomUse { used_in: a.used_in.iter().map(|s| format!("{}:{s}", b.name)).collect(), ..a }),
                }
            }
        }
    }
    axioms.sort_by(|a, b| a.name.cmp(&b.name));
    let m = VarietyM::new(cfg.nodes)?;
    let prop_fs = check_prop_fs(&m, 1, cfg.strict);
    let covers = cover_reports(cfg.nodes)?;
    let cohomology = checks::cohomology_conformance()?;
    let hypercohomology = checks::hyper_conformance(&m);
    let k = cfg.scale.max(1);
    let mut suites = vec![
        checks::bbw_serre_duality(cfg.seed, 500 * k),
        checks::cross_engine_chi(cfg.seed, 200 * k, 100 * k)?,
        checks::numerical_serre(cfg.seed, 100 * k, cfg.nodes)?,
    ];
    suites.extend(checks::mutation_properties(cfg.seed, 100 * k, cfg.nodes)?);
    suites.push(checks::pi_shadow(&m)?);
    let passed = scenarios.iter().all(|s| s.ok)
        && prop_fs.verdict != "FAIL"
        && covers.iter().all(|c| c.verdict != "FAIL" && c.identity_holds)
        && cohomology.iter().chain(&hypercohomology).all(|r| r.ok)
        && suites.iter().all(SuiteReport::passed);
    Ok(VerifyReport { nodes: cfg.nodes, scenarios, prop_fs, covers, cohomology, hypercohomology, suites, axioms, passed })
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        let mut out = format!("verify-all (N = {})\n", self.nodes);
        for s in &self.scenarios {
            out += &format!("{} scenario {} -> {} (expected {})\n", mark(s.ok), s.name, s.verdict, s.expected);
        }
        out += &format!("{} fiber-plane certificate -> {}\n", mark(self.prop_fs.verdict != "FAIL"), self.prop_fs.verdict);
        for c in &self.covers {
            out += &format!("{} double cover of {} branched in 2({}) -> {}\n", mark(c.verdict != "FAIL" && c.identity_holds), c.base, c.half_branch, c.verdict);
        }
        for r in self.cohomology.iter().chain(&self.hypercohomology) {
            out += &format!("{} {}: Ext({}, {}) = {} [{}]\n", mark(r.ok), r.variety, r.from, r.to, r.computed, r.tag);
        }
        for s in &self.suites {
            out += &format!("{}\n", s.line());
        }
        out += "axioms used:\n";
        for a in &self.axioms {
            out += &format!("  {} [{}] in {}\n", a.name, a.source, a.used_in.join(", "));
        }
        out += &format!("verdict {}\n", mark(self.passed));
        out
    }
}
