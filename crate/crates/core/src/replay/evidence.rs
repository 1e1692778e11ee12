//! Preconditions checked through the Ext oracle, and how their answers are
//! judged.

use std::fmt;

use serde::Serialize;

use crate::bbw::GradedDims;
use crate::notation::parse_graded;
use crate::varieties::{ext_oracle, instantiate, ExtAnswer, Resolved, Tag, Variety};

use super::scenario::Requirement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    #[serde(rename = "PROVED")]
    Proved,
    /// Holds because the prior decomposition is semiorthogonal.
    #[serde(rename = "INHERITED")]
    Inherited,
    #[serde(rename = "AXIOM")]
    Axiom,
    #[serde(rename = "CHI-ONLY")]
    ChiOnly,
    #[serde(rename = "UNCHECKED")]
    Unchecked,
    #[serde(rename = "FAILED")]
    Failed,
}

impl Status {
    pub fn passes(self, strict: bool) -> bool {
        match self {
            Status::Proved | Status::Inherited | Status::Axiom => true,
            Status::ChiOnly => !strict,
            Status::Unchecked | Status::Failed => false,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proved => "PROVED",
            Status::Inherited => "INHERITED",
            Status::Axiom => "AXIOM",
            Status::ChiOnly => "CHI-ONLY",
            Status::Unchecked => "UNCHECKED",
            Status::Failed => "FAILED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub claim: String,
    /// Number of instances when the claim ranges over a family index.
    pub instances: usize,
    pub status: Status,
    /// Worst strategy tag among the instances.
    pub tag: Option<Tag>,
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
    pub detail: String,
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.status, self.claim)?;
        if self.instances > 1 {
            write!(f, " (x{})", self.instances)?;
        }
        if let Some(v) = &self.value {
            write!(f, " : {v}")?;
        }
        if let Some(t) = self.tag {
            write!(f, " via {t}")?;
        }
        if let Some(a) = &self.axiom {
            write!(f, " ({a})")?;
        }
        Ok(())
    }
}

/// Status of one oracle answer against an expected graded value.
pub fn judge(ans: &ExtAnswer, expected: &GradedDims) -> Status {
    match (&ans.value, ans.chi) {
        (Some(v), _) if v != expected => Status::Failed,
        (Some(_), _) if ans.tag == Tag::Axiom => Status::Axiom,
        (Some(_), _) => Status::Proved,
        (None, Some(c)) if c == expected.euler_characteristic() => Status::ChiOnly,
        (None, Some(_)) => Status::Failed,
        (None, None) => Status::Unchecked,
    }
}

fn render(ans: &ExtAnswer) -> String {
    match (&ans.value, ans.chi) {
        (Some(v), _) => v.to_string(),
        (None, Some(c)) => format!("chi = {c}"),
        (None, None) => "?".into(),
    }
}

/// Fold per-instance answers into one evidence line.
pub fn aggregate(claim: String, answers: Vec<(ExtAnswer, Status)>) -> Evidence {
    let instances = answers.len();
    let worst = answers.iter().max_by_key(|(a, s)| (*s, a.tag));
    let Some((ans, status)) = worst else {
        return Evidence { claim, instances: 0, status: Status::Proved, tag: None, value: None, axiom: None, detail: "vacuous".into() };
    };
    let uniform = answers.iter().all(|(a, _)| render(a) == render(ans));
    Evidence {
        claim,
        instances,
        status: *status,
        tag: Some(ans.tag),
        value: Some(if uniform { render(ans) } else { format!("{} (varies)", render(ans)) }),
        axiom: answers.iter().find_map(|(a, _)| a.axiom.clone()),
        detail: ans.detail.clone(),
    }
}

pub fn failed(claim: String, detail: impl Into<String>) -> Evidence {
    Evidence { claim, instances: 1, status: Status::Failed, tag: None, value: None, axiom: None, detail: detail.into() }
}

/// Check `Ext(from, to) = value`, expanding `#` over `indices` when present.
pub fn check_requirement(var: &dyn Variety, req: &Requirement, indices: &[usize], strict: bool) -> Evidence {
    let _ = strict;
    let claim = format!("Ext({}, {}) = {}", req.from, req.to, req.value);
    let expected = match parse_graded(&req.value) {
        Ok(v) => v,
        Err(e) => return failed(claim, e.to_string()),
    };
    let family = req.from.contains('#') || req.to.contains('#');
    let idx: Vec<usize> = if family { indices.to_vec() } else { vec![0] };
    let mut answers = Vec::new();
    for i in idx {
        let (a, b) = (instantiate(&req.from, i), instantiate(&req.to, i));
        match (var.resolve(&a), var.resolve(&b)) {
            (Ok(ra), Ok(rb)) => {
                let ans = ext_oracle(var, &ra, &rb);
                let st = judge(&ans, &expected);
                answers.push((ans, st));
            }
            (Err(e), _) | (_, Err(e)) => return failed(claim, e.to_string()),
        }
    }
    aggregate(claim, answers)
}

/// `Ext(a, b) = 0` for every member pair.
pub fn check_vanishing(var: &dyn Variety, from: &[Resolved], to: &[Resolved], claim: String) -> Evidence {
    let zero = GradedDims::zero();
    let answers = from
        .iter()
        .flat_map(|a| to.iter().map(move |b| (a, b)))
        .map(|(a, b)| {
            let ans = ext_oracle(var, a, b);
            let st = judge(&ans, &zero);
            (ans, st)
        })
        .collect();
    aggregate(claim, answers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::y::BlowupY;

    #[test]
    fn family_requirement() {
        let y = BlowupY::new(3).unwrap();
        let r = Requirement { from: "O_E#(-1)".into(), to: "O(-2h)".into(), value: "C[-1]".into() };
        let e = check_requirement(&y, &r, &[1, 2, 3], false);
        assert_eq!((e.status, e.instances), (Status::Proved, 3));
        let wrong = Requirement { value: "0".into(), ..r };
        assert_eq!(check_requirement(&y, &wrong, &[1, 2, 3], false).status, Status::Failed);
    }

    #[test]
    fn judging() {
        let chi = ExtAnswer::chi_only(0, "x");
        assert_eq!(judge(&chi, &GradedDims::zero()), Status::ChiOnly);
        assert!(!Status::ChiOnly.passes(true));
        assert_eq!(judge(&ExtAnswer::unknown("x"), &GradedDims::zero()), Status::Unchecked);
    }
}
