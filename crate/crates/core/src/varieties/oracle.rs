//! Ext answers with evidence tags, and the closed-form cohomology used by
//! the rule tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bbw::GradedDims;

/// Which strategy produced an Ext answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tag {
    #[serde(rename = "BBW")]
    Bbw,
    #[serde(rename = "RULE")]
    Rule,
    #[serde(rename = "AXIOM")]
    Axiom,
    #[serde(rename = "CHI-ONLY")]
    ChiOnly,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl Tag {
    /// Graded answers computed here rather than imported.
    pub fn is_proof(self) -> bool {
        matches!(self, Tag::Bbw | Tag::Rule)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Bbw => "BBW",
            Tag::Rule => "RULE",
            Tag::Axiom => "AXIOM",
            Tag::ChiOnly => "CHI-ONLY",
            Tag::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtAnswer {
    pub tag: Tag,
    /// Graded dimensions; absent for CHI-ONLY and UNKNOWN.
    pub value: Option<GradedDims>,
    pub chi: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
    pub detail: String,
}

impl ExtAnswer {
    pub fn graded(tag: Tag, value: GradedDims, detail: impl Into<String>) -> Self {
        let chi = Some(value.euler_characteristic());
        ExtAnswer { tag, value: Some(value), chi, axiom: None, detail: detail.into() }
    }

    pub fn axiom(name: &str, value: GradedDims, detail: impl Into<String>) -> Self {
        let mut a = ExtAnswer::graded(Tag::Axiom, value, detail);
        a.axiom = Some(name.to_string());
        a
    }

    pub fn chi_only(chi: i64, detail: impl Into<String>) -> Self {
        ExtAnswer { tag: Tag::ChiOnly, value: None, chi: Some(chi), axiom: None, detail: detail.into() }
    }

    pub fn unknown(detail: impl Into<String>) -> Self {
        ExtAnswer { tag: Tag::Unknown, value: None, chi: None, axiom: None, detail: detail.into() }
    }

    pub fn is_zero(&self) -> Option<bool> {
        match (&self.value, self.chi) {
            (Some(v), _) => Some(v.is_zero()),
            _ => None,
        }
    }
}

impl fmt::Display for ExtAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.value, self.chi) {
            (Some(v), _) => write!(f, "{v} [{}]", self.tag)?,
            (None, Some(c)) => write!(f, "chi = {c} [{}]", self.tag)?,
            (None, None) => write!(f, "? [{}]", self.tag)?,
        }
        if let Some(a) = &self.axiom {
            write!(f, " ({a})")?;
        }
        Ok(())
    }
}

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `H^*(P^n, O(d))`.
pub fn projective(n: i64, d: i64) -> GradedDims {
    if d >= 0 {
        GradedDims::concentrated(0, binom(n + d, n))
    } else if d < -n {
        GradedDims::concentrated(n as i32, binom(-d - 1, n))
    } else {
        GradedDims::zero()
    }
}

/// `H^*(P^1 x P^1, O(a, b))` by Kunneth.
pub fn quadric(a: i64, b: i64) -> GradedDims {
    let (x, y) = (projective(1, a), projective(1, b));
    let mut out = GradedDims::zero();
    for (p, m) in &x.0 {
        for (q, n) in &y.0 {
            out.add(p + q, m * n);
        }
    }
    out
}

/// Abutment of a local-to-global spectral sequence whose `E_2^{p,q}` is
/// `rows[q]` in degree `p`; `None` when a differential could be nonzero.
pub fn local_to_global(rows: &[GradedDims]) -> Option<GradedDims> {
    for (q, row) in rows.iter().enumerate() {
        for (&p, &dim) in &row.0 {
            if dim == 0 {
                continue;
            }
            for r in 2..=q + 1 {
                let target_q = q + 1 - r;
                if rows[target_q].get(p + r as i32) > 0 {
                    return None;
                }
            }
        }
    }
    let mut out = GradedDims::zero();
    for (q, row) in rows.iter().enumerate() {
        out = out.direct_sum(&row.shifted(q as i32));
    }
    Some(out)
}

/// Two-out-of-three on a triangle `A -> B -> C`: the third term when one of
/// the other two vanishes.
pub fn two_of_three(first: &GradedDims, third: &GradedDims) -> Option<GradedDims> {
    if first.is_zero() {
        Some(third.clone())
    } else if third.is_zero() {
        Some(first.clone())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_values() {
        assert_eq!(projective(3, 2), GradedDims::concentrated(0, 10));
        assert!(projective(3, -2).is_zero());
        assert_eq!(projective(3, -4), GradedDims::concentrated(3, 1));
        assert_eq!(projective(2, -3), GradedDims::concentrated(2, 1));
        assert_eq!(projective(2, -4), GradedDims::concentrated(2, 3));
    }

    #[test]
    fn quadric_values() {
        assert!(quadric(-1, 0).is_zero());
        assert_eq!(quadric(-2, 0), GradedDims::concentrated(1, 1));
        assert_eq!(quadric(-2, -2), GradedDims::concentrated(2, 1));
        assert_eq!(quadric(1, 1), GradedDims::concentrated(0, 4));
    }

    #[test]
    fn spectral_sequence_staircase() {
        // O_E(j) self-Ext shape on P^2: H(O) + H^{.-1}(O(-1))
        let v = local_to_global(&[projective(2, 0), projective(2, -1)]).unwrap();
        assert_eq!(v, GradedDims::concentrated(0, 1));
        // a potential d_2 from (0,1) to (2,0)
        assert!(local_to_global(&[GradedDims::concentrated(2, 1), GradedDims::concentrated(0, 1)]).is_none());
    }
}
