//! Parsing of object labels, divisor twists and graded-dimension strings.
//!
//! Divisors are linear combinations such as `-2h+sum_e-e3`, `h-g` or `-1`.
//! Graded dimensions use `0`, `C`, `C[-1]`, `C^4[-2]` and sums with `+`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use regex::Regex;

use crate::bbw::{FactorWeight, GradedDims, HomFactor};
use crate::error::{Error, Result};

/// A divisor as symbol -> coefficient; the constant term uses the symbol `1`.
pub type Divisor = BTreeMap<String, i64>;

fn term_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^([+-]?)(\d*)(sum_e|e\d+|[a-zA-Z])?$").expect("static regex"))
}

pub fn parse_divisor(s: &str) -> Result<Divisor> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Divisor::new();
    if s.is_empty() {
        return Ok(out);
    }
    // split before every sign that is not at the start
    let mut pieces = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            pieces.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    pieces.push(cur);
    for p in pieces {
        let caps = term_re()
            .captures(&p)
            .ok_or_else(|| Error::Parse(format!("bad divisor term `{p}` in `{s}`")))?;
        let sign = if &caps[1] == "-" { -1 } else { 1 };
        let sym = caps.get(3).map_or("1", |m| m.as_str()).to_string();
        let num = match &caps[2] {
            "" if sym == "1" => return Err(Error::Parse(format!("empty term in `{s}`"))),
            "" => 1,
            d => d.parse::<i64>().map_err(|e| Error::Parse(e.to_string()))?,
        };
        *out.entry(sym).or_insert(0) += sign * num;
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

/// Split `base(twist)` into its two parts.
pub fn split_twist(label: &str) -> Result<(String, String)> {
    let label = label.trim();
    match label.find('(') {
        None => Ok((label.to_string(), String::new())),
        Some(i) => {
            if !label.ends_with(')') {
                return Err(Error::Parse(format!("unbalanced twist in `{label}`")));
            }
            Ok((label[..i].to_string(), label[i + 1..label.len() - 1].to_string()))
        }
    }
}

/// Only the listed symbols may occur.
pub fn check_symbols(d: &Divisor, allowed: &[&str], context: &str) -> Result<()> {
    for k in d.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(Error::Parse(format!("symbol `{k}` not allowed in {context}")));
        }
    }
    Ok(())
}

/// Highest weights of a named homogeneous bundle on a Grassmannian factor
/// (before any line-bundle twist).
pub fn base_bundle(space: &HomFactor, base: &str) -> Result<FactorWeight> {
    let k = space.k;
    let m = space.quotient_rank();
    let zero_q = vec![0; m];
    let zero_s = vec![0; k];
    let first = |len: usize, a: i64| {
        let mut v = vec![0; len];
        v[0] = a;
        v
    };
    let last = |len: usize, a: i64| {
        let mut v = vec![0; len];
        v[len - 1] = a;
        v
    };
    let fw = match base {
        "O" => FactorWeight::new(zero_s, zero_q),
        "U" => FactorWeight::new(last(k, -1), zero_q),
        "Uv" | "U^v" => FactorWeight::new(first(k, 1), zero_q),
        "V/U" | "Q" => FactorWeight::new(zero_s, last(m, -1)),
        "Qv" | "Q^v" | "U^perp" | "Uperp" => FactorWeight::new(zero_s, first(m, 1)),
        "detU" => FactorWeight::new(vec![-1; k], zero_q),
        other => {
            let re = sym_re();
            let caps = re
                .captures(other)
                .ok_or_else(|| Error::UnknownLabel(format!("{other} on {}", space.name)))?;
            let p: i64 = caps[1].parse().map_err(|_| Error::Parse(other.to_string()))?;
            match &caps[2] {
                "U" => FactorWeight::new(last(k, -p), zero_q),
                "Uv" | "U^v" => FactorWeight::new(first(k, p), zero_q),
                "Q" | "V/U" => FactorWeight::new(zero_s, last(m, -p)),
                _ => FactorWeight::new(zero_s, first(m, p)),
            }
        }
    };
    Ok(fw)
}

fn sym_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^S(\d+)(U|Uv|U\^v|Q|V/U|Qv|Q\^v)$").expect("static regex"))
}

fn graded_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^C(?:\^(\d+))?(?:\[(-?\d+)\])?$").expect("static regex"))
}

/// `C^k[-d]` is `k` dimensions in degree `d`.
pub fn parse_graded(s: &str) -> Result<GradedDims> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = GradedDims::zero();
    if s == "0" {
        return Ok(out);
    }
    for piece in s.split('+') {
        let caps = graded_re()
            .captures(piece)
            .ok_or_else(|| Error::Parse(format!("bad graded value `{piece}`")))?;
        let dim = caps.get(1).map_or(Ok(1), |m| m.as_str().parse::<u64>()).map_err(|e| Error::Parse(e.to_string()))?;
        let shift = caps.get(2).map_or(Ok(0), |m| m.as_str().parse::<i32>()).map_err(|e| Error::Parse(e.to_string()))?;
        out.add(-shift, dim);
    }
    Ok(out)
}

/// Split on `;` at brace depth zero.
pub fn split_entries(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '{' | '<' => depth += 1,
            '}' | '>' => depth -= 1,
            _ => {}
        }
        if ch == ';' && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors() {
        let d = parse_divisor("-2h+sum_e-e3").unwrap();
        assert_eq!(d["h"], -2);
        assert_eq!(d["sum_e"], 1);
        assert_eq!(d["e3"], -1);
        assert_eq!(parse_divisor("h-g").unwrap(), Divisor::from([("g".into(), -1), ("h".into(), 1)]));
        assert_eq!(parse_divisor("-4").unwrap(), Divisor::from([("1".into(), -4)]));
        assert!(parse_divisor("2x+").is_err());
    }

    #[test]
    fn graded_values() {
        assert!(parse_graded("0").unwrap().is_zero());
        assert_eq!(parse_graded("C[-1]").unwrap(), GradedDims::concentrated(1, 1));
        assert_eq!(parse_graded("C^4[-2]").unwrap(), GradedDims::concentrated(2, 4));
        let both = parse_graded("C + C[-1]").unwrap();
        assert_eq!(both.euler_characteristic(), 0);
    }

    #[test]
    fn bundle_names() {
        let g = HomFactor::gr24("G");
        assert_eq!(base_bundle(&g, "S2U").unwrap(), FactorWeight::new([0, -2], [0, 0]));
        assert_eq!(base_bundle(&g, "V/U").unwrap(), FactorWeight::new([0, 0], [0, -1]));
        assert_eq!(base_bundle(&g, "U^v").unwrap(), FactorWeight::new([1, 0], [0, 0]));
        assert!(base_bundle(&g, "Foo").is_err());
    }

    #[test]
    fn entry_splitting() {
        let v = split_entries("O(-h); {O_Q#(-1,0)}; <A_X+>");
        assert_eq!(v, vec!["O(-h)", "{O_Q#(-1,0)}", "<A_X+>"]);
    }
}
