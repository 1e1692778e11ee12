//! Scenario files: a line-oriented text format and its JSON form.
//!
//! ```text
//! # comment
//! scenario <name>
//! variety <name>
//! nodes <N>                       optional, overrides the catalog default
//! axiom <name> [<name> ...]       imports the start collection relies on
//! start <entry> ; <entry> ; ...
//! step <id> <kind> <args>
//!   require ext <A> ; <B> = <graded>
//!   axiom <name> [<name> ...]
//!   as <entry> [; <entry> ...]
//!   expect <entry> ; <entry> ; ...
//!   certificate prop_fs
//!   label "<label>"
//!   note "<text>"
//! expect <entry> ; <entry> ; ...
//! ```
//!
//! Entries are object labels, families `{...#...}` indexed by `#`, or
//! blocks `<name>`. Positions are 0-based. Step kinds and their arguments:
//! `mutate_left <pos> <to>`, `mutate_right <pos> <to>`,
//! `serre_translate left|right [count]`, `swap_orthogonal <pos>`,
//! `twist_all <twist>`, `insert_block <pos> <entry> [; <entry> ...]`,
//! `identify <pos> <entry>`. Graded values are written `0`, `C`, `C^4[-2]`,
//! `C + C[-1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kmut::Direction;
use crate::notation::split_entries;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variety: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(default)]
    pub axioms: Vec<String>,
    #[serde(default)]
    pub start: Vec<String>,
    #[serde(default)]
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Action {
    MutateLeft { pos: usize, to: usize },
    MutateRight { pos: usize, to: usize },
    SerreTranslate { direction: Direction, count: usize },
    SwapOrthogonal { pos: usize },
    TwistAll { twist: String },
    InsertBlock { pos: usize, entries: Vec<String> },
    Identify { pos: usize, entry: String },
}

impl Action {
    pub fn kind(&self) -> &'static str {
        match self {
            Action::MutateLeft { .. } => "mutate_left",
            Action::MutateRight { .. } => "mutate_right",
            Action::SerreTranslate { .. } => "serre_translate",
            Action::SwapOrthogonal { .. } => "swap_orthogonal",
            Action::TwistAll { .. } => "twist_all",
            Action::InsertBlock { .. } => "insert_block",
            Action::Identify { .. } => "identify",
        }
    }

    pub fn params(&self) -> String {
        match self {
            Action::MutateLeft { pos, to } | Action::MutateRight { pos, to } => format!("{pos} -> {to}"),
            Action::SerreTranslate { direction, count } => format!("{direction:?} x{count}").to_lowercase(),
            Action::SwapOrthogonal { pos } => format!("{pos} <-> {}", pos + 1),
            Action::TwistAll { twist } => twist.clone(),
            Action::InsertBlock { pos, entries } => format!("{pos} := {}", entries.join("; ")),
            Action::Identify { pos, entry } => format!("{pos} := {entry}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Requirement {
    pub from: String,
    pub to: String,
    /// Expected graded value, e.g. `C[-1]` or `0`.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub id: String,
    #[serde(flatten)]
    pub action: Action,
    #[serde(default)]
    pub requires: Vec<Requirement>,
    #[serde(default)]
    pub axioms: Vec<String>,
    #[serde(default, rename = "as")]
    pub rename: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Step {
    pub fn new(id: impl Into<String>, action: Action) -> Self {
        Step {
            id: id.into(),
            action,
            requires: Vec::new(),
            axioms: Vec::new(),
            rename: Vec::new(),
            expect: None,
            certificate: None,
            label: None,
            notes: Vec::new(),
        }
    }
}

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn quoted(s: &str, line: usize) -> Result<String> {
    let s = s.trim();
    s.strip_prefix('"')
        .and_then(|t| t.strip_suffix('"'))
        .map(str::to_string)
        .ok_or_else(|| err(line, format!("expected a quoted string, found `{s}`")))
}

fn num(s: Option<&str>, line: usize, what: &str) -> Result<usize> {
    s.ok_or_else(|| err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| err(line, format!("bad {what}")))
}

fn parse_action(rest: &str, line: usize) -> Result<Action> {
    let mut words = rest.split_whitespace();
    let kind = words.next().ok_or_else(|| err(line, "missing step kind"))?;
    let tail = |n: usize| rest.split_whitespace().skip(n).collect::<Vec<_>>().join(" ");
    let action = match kind {
        "mutate_left" | "mutate_right" => {
            let pos = num(words.next(), line, "position")?;
            let to = num(words.next(), line, "target position")?;
            if kind == "mutate_left" {
                Action::MutateLeft { pos, to }
            } else {
                Action::MutateRight { pos, to }
            }
        }
        "serre_translate" => {
            let direction = match words.next() {
                Some("left") => Direction::Left,
                Some("right") => Direction::Right,
                other => return Err(err(line, format!("direction must be left or right, found {other:?}"))),
            };
            let count = match words.next() {
                Some(c) => c.parse().map_err(|_| err(line, "bad count"))?,
                None => 1,
            };
            Action::SerreTranslate { direction, count }
        }
        "swap_orthogonal" => Action::SwapOrthogonal { pos: num(words.next(), line, "position")? },
        "twist_all" => Action::TwistAll { twist: words.next().ok_or_else(|| err(line, "missing twist"))?.to_string() },
        "insert_block" => {
            let pos = num(words.next(), line, "position")?;
            Action::InsertBlock { pos, entries: split_entries(&tail(2)) }
        }
        "identify" => {
            let pos = num(words.next(), line, "position")?;
            Action::Identify { pos, entry: tail(2) }
        }
        other => return Err(err(line, format!("unknown step kind `{other}`"))),
    };
    if !matches!(action, Action::InsertBlock { .. } | Action::Identify { .. }) && words.next().is_some() {
        return Err(err(line, "trailing arguments"));
    }
    Ok(action)
}

fn parse_require(rest: &str, line: usize) -> Result<Requirement> {
    let body = rest.strip_prefix("ext").ok_or_else(|| err(line, "require must start with `ext`"))?;
    let (pair, value) = body.rsplit_once('=').ok_or_else(|| err(line, "require needs `= <value>`"))?;
    let parts = split_entries(pair);
    let [from, to] = parts.as_slice() else { return Err(err(line, "require needs `<A> ; <B>`")) };
    Ok(Requirement { from: from.clone(), to: to.clone(), value: value.trim().to_string() })
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let mut sc = Scenario::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = strip_comment(raw);
            if content.trim().is_empty() {
                continue;
            }
            let indented = raw.starts_with(' ') || raw.starts_with('\t');
            let trimmed = content.trim();
            let (key, rest) = trimmed.split_once(char::is_whitespace).map_or((trimmed, ""), |(k, r)| (k, r.trim()));
            if indented {
                let step = sc.steps.last_mut().ok_or_else(|| err(line, "continuation line before any step"))?;
                match key {
                    "require" => step.requires.push(parse_require(rest, line)?),
                    "axiom" => step.axioms.extend(rest.split_whitespace().map(str::to_string)),
                    "as" => step.rename = split_entries(rest),
                    "expect" => step.expect = Some(split_entries(rest)),
                    "certificate" => step.certificate = Some(rest.to_string()),
                    "label" => step.label = Some(quoted(rest, line)?),
                    "note" => step.notes.push(quoted(rest, line)?),
                    other => return Err(err(line, format!("unknown step attribute `{other}`"))),
                }
                continue;
            }
            match key {
                "scenario" => sc.name = rest.to_string(),
                "variety" => sc.variety = Some(rest.to_string()),
                "nodes" => sc.nodes = Some(num(Some(rest), line, "node count")?),
                "axiom" => sc.axioms.extend(rest.split_whitespace().map(str::to_string)),
                "start" => sc.start = split_entries(rest),
                "expect" => sc.expect = Some(split_entries(rest)),
                "step" => {
                    let (id, action) = rest.split_once(char::is_whitespace).ok_or_else(|| err(line, "step needs an id and a kind"))?;
                    if sc.steps.iter().any(|s| s.id == id) {
                        return Err(err(line, format!("duplicate step id `{id}`")));
                    }
                    sc.steps.push(Step::new(id, parse_action(action, line)?));
                }
                other => return Err(err(line, format!("unknown directive `{other}`"))),
            }
        }
        Ok(sc)
    }

    pub fn from_json(text: &str) -> Result<Scenario> {
        Ok(serde_json::from_str(text)?)
    }

    /// JSON if the text starts with `{`, the line format otherwise.
    pub fn load(text: &str) -> Result<Scenario> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse(text)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}

/// The part of a line before a comment. `#` doubles as the family index,
/// so only a `#` at the start of the line or after whitespace opens a comment.
fn strip_comment(raw: &str) -> &str {
    let bytes = raw.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'#' && (i == 0 || bytes[i - 1].is_ascii_whitespace()) {
            return &raw[..i];
        }
    }
    raw
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
# a comment
scenario sample
variety Y
nodes 3
start O(-h); {O_E#}; O
step s1 mutate_left 1 0   # trailing comment
  require ext O(-h) ; O_E#(-1) = C[-1]
  as {O(-e#)}
  label "Step 3"
step s2 serre_translate left 2
  axiom orlov-y
expect {O(-e#)}; O(-h); O
"#;

    #[test]
    fn parses_and_round_trips() {
        let sc = Scenario::parse(SAMPLE).unwrap();
        assert_eq!(sc.name, "sample");
        assert_eq!(sc.nodes, Some(3));
        assert_eq!(sc.start, vec!["O(-h)", "{O_E#}", "O"]);
        assert_eq!(sc.steps.len(), 2);
        assert_eq!(sc.steps[0].action, Action::MutateLeft { pos: 1, to: 0 });
        assert_eq!(sc.steps[0].requires[0].to, "O_E#(-1)");
        assert_eq!(sc.steps[0].rename, vec!["{O(-e#)}"]);
        assert_eq!(sc.steps[1].action, Action::SerreTranslate { direction: Direction::Left, count: 2 });
        let back = Scenario::from_json(&sc.to_json()).unwrap();
        assert_eq!(back, sc);
        assert_eq!(Scenario::load(&sc.to_json()).unwrap(), sc);
    }

    #[test]
    fn empty_text_is_an_empty_scenario() {
        assert_eq!(Scenario::parse("").unwrap(), Scenario::default());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = Scenario::parse("scenario x\nstep a fly 1").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        assert!(Scenario::parse("  as O").is_err());
        assert!(Scenario::parse("step a swap_orthogonal 1\nstep a swap_orthogonal 2").is_err());
        assert!(Scenario::parse("step a mutate_left 1").is_err());
    }
}
