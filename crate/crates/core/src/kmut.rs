//! Mutations of exceptional collections on numerical Grothendieck lattices.
//!
//! Classes are integer vectors over a labelled basis. The Euler form may be
//! partially unknown (formal lattices), in which case every query that touches
//! an unknown entry fails with [`Error::UnknownPairing`] instead of guessing.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::snf::{relation_membership, Membership};

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KClass {
    pub coords: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl KClass {
    pub fn new(coords: Vec<i64>) -> Self {
        KClass { coords, name: None }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn zero(rank: usize) -> Self {
        KClass::new(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut c = KClass::zero(rank);
        c.coords[i] = 1;
        c
    }

    pub fn add(&self, other: &KClass) -> KClass {
        KClass::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &KClass) -> KClass {
        KClass::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> KClass {
        KClass::new(self.coords.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> KClass {
        self.scale(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&a| a == 0)
    }

    /// Equal as classes, ignoring names.
    pub fn same(&self, other: &KClass) -> bool {
        self.coords == other.coords
    }

    /// Equal up to a shift, i.e. up to sign.
    pub fn same_up_to_shift(&self, other: &KClass) -> bool {
        self.same(other) || self.same(&other.neg())
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("{:?}", self.coords))
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{:?}", self.coords),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Ambient,
    Formal,
}

/// A lattice with a (possibly partial) Euler form.
#[derive(Clone, Debug, Serialize)]
pub struct KLattice {
    pub name: String,
    pub backend: Backend,
    pub labels: Vec<String>,
    /// `form[i][j] = chi(b_i, b_j)`; `None` where no oracle is available.
    pub form: Vec<Vec<Option<i64>>>,
    /// Relations among the generators (formal lattices).
    pub relations: Vec<Vec<i64>>,
    /// Action of `- (x) omega` on coordinates: column `j` is the image of `b_j`.
    pub serre: Option<IntMatrix>,
    pub serre_inverse: Option<IntMatrix>,
    /// Named twist automorphisms (same column convention).
    pub twists: BTreeMap<String, IntMatrix>,
}

impl KLattice {
    pub fn ambient(name: impl Into<String>, labels: Vec<String>, gram: IntMatrix) -> Self {
        KLattice {
            name: name.into(),
            backend: Backend::Ambient,
            labels,
            form: gram.into_iter().map(|r| r.into_iter().map(Some).collect()).collect(),
            relations: Vec::new(),
            serre: None,
            serre_inverse: None,
            twists: BTreeMap::new(),
        }
    }

    pub fn formal(name: impl Into<String>, labels: Vec<String>, form: Vec<Vec<Option<i64>>>) -> Self {
        KLattice {
            name: name.into(),
            backend: Backend::Formal,
            labels,
            form,
            relations: Vec::new(),
            serre: None,
            serre_inverse: None,
            twists: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn generator(&self, label: &str) -> Result<KClass> {
        let i = self
            .labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(KClass::unit(self.rank(), i).named(label))
    }

    pub fn chi(&self, a: &KClass, b: &KClass) -> Result<i64> {
        let mut total = 0i64;
        for (i, &x) in a.coords.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coords.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                match self.form[i][j] {
                    Some(v) => total += x * y * v,
                    None => return Err(Error::UnknownPairing(a.label(), b.label())),
                }
            }
        }
        Ok(total)
    }

    pub fn is_exceptional(&self, e: &KClass) -> Result<bool> {
        Ok(self.chi(e, e)? == 1)
    }

    fn ensure_exceptional(&self, e: &KClass) -> Result<()> {
        let v = self.chi(e, e)?;
        if v != 1 {
            return Err(Error::NotExceptional(v));
        }
        Ok(())
    }

    pub fn apply(m: &IntMatrix, c: &KClass) -> KClass {
        KClass::new(
            (0..m.len())
                .map(|i| m[i].iter().zip(&c.coords).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `[E (x) omega]` (towards the left end) or `[E (x) omega^-1]` (towards the right end).
    pub fn serre_twist(&self, c: &KClass, dir: Direction) -> Result<KClass> {
        let m = match dir {
            Direction::Left => self.serre.as_ref(),
            Direction::Right => self.serre_inverse.as_ref(),
        }
        .ok_or_else(|| Error::NoCanonicalClass(self.name.clone()))?;
        Ok(Self::apply(m, c))
    }

    pub fn twist(&self, name: &str, c: &KClass) -> Result<KClass> {
        let m = self
            .twists
            .get(name)
            .ok_or_else(|| Error::InvalidStep(format!("no twist {name} on {}", self.name)))?;
        Ok(Self::apply(m, c))
    }

    /// Whether `a - b` lies in the span of the relations.
    pub fn equal_mod_relations(&self, a: &KClass, b: &KClass) -> bool {
        let diff = a.sub(b);
        if diff.is_zero() {
            return true;
        }
        self.membership(&diff).member
    }

    /// Whether `a - b` pairs to zero with every generator on both sides.
    /// Pairings that are unknown count as a mismatch.
    pub fn numerically_equal(&self, a: &KClass, b: &KClass) -> bool {
        let diff = a.sub(b);
        let n = self.rank();
        (0..n).all(|k| {
            let mut left = 0i64;
            let mut right = 0i64;
            for (j, &d) in diff.coords.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                match (self.form[k][j], self.form[j][k]) {
                    (Some(x), Some(y)) => {
                        left += x * d;
                        right += y * d;
                    }
                    _ => return false,
                }
            }
            left == 0 && right == 0
        })
    }

    pub fn membership(&self, target: &KClass) -> Membership {
        let rels: Vec<Vec<BigInt>> = self
            .relations
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let t: Vec<BigInt> = target.coords.iter().map(|&x| BigInt::from(x)).collect();
        relation_membership(&rels, &t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

/// `[L_E F] = [F] - chi(E, F) [E]`.
pub fn mutate_left(lat: &KLattice, e: &KClass, f: &KClass) -> Result<KClass> {
    lat.ensure_exceptional(e)?;
    let k = lat.chi(e, f)?;
    Ok(f.sub(&e.scale(k)))
}

/// `[R_E F] = [F] - chi(F, E) [E]`.
pub fn mutate_right(lat: &KLattice, e: &KClass, f: &KClass) -> Result<KClass> {
    lat.ensure_exceptional(e)?;
    let k = lat.chi(f, e)?;
    Ok(f.sub(&e.scale(k)))
}

/// Left mutation through the subcategory generated by an exceptional
/// sequence `E_1, ..., E_k`: `L_{E_1} ... L_{E_k}`.
pub fn mutate_left_through(lat: &KLattice, seq: &[KClass], f: &KClass) -> Result<KClass> {
    let mut cur = f.clone();
    for e in seq.iter().rev() {
        cur = mutate_left(lat, e, &cur)?;
    }
    Ok(cur)
}

/// Right mutation through `E_1, ..., E_k`: `R_{E_k} ... R_{E_1}`.
pub fn mutate_right_through(lat: &KLattice, seq: &[KClass], f: &KClass) -> Result<KClass> {
    let mut cur = f.clone();
    for e in seq {
        cur = mutate_right(lat, e, &cur)?;
    }
    Ok(cur)
}

/// An opaque component: a named subcategory with its history of functors applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    #[serde(default)]
    pub history: Vec<String>,
}

impl Block {
    pub fn new(name: impl Into<String>) -> Self {
        Block { name: name.into(), history: Vec::new() }
    }

    pub fn annotate(&mut self, step: impl Into<String>) {
        self.history.push(step.into());
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.history.is_empty() {
            write!(f, "<{}>", self.name)
        } else {
            write!(f, "<{} | {}>", self.name, self.history.join(" . "))
        }
    }
}

/// One position of a tracked decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Entry {
    Object { class: KClass },
    /// A completely orthogonal family occupying one position.
    Family { members: Vec<KClass> },
    Block { block: Block },
}

impl Entry {
    pub fn object(c: KClass) -> Self {
        Entry::Object { class: c }
    }

    pub fn family(members: Vec<KClass>) -> Self {
        Entry::Family { members }
    }

    pub fn block(name: impl Into<String>) -> Self {
        Entry::Block { block: Block::new(name) }
    }

    /// Explicit classes at this position (empty for blocks).
    pub fn classes(&self) -> Vec<&KClass> {
        match self {
            Entry::Object { class } => vec![class],
            Entry::Family { members } => members.iter().collect(),
            Entry::Block { .. } => Vec::new(),
        }
    }

    pub fn is_block(&self) -> bool {
        matches!(self, Entry::Block { .. })
    }

    pub fn map_classes(&self, mut f: impl FnMut(&KClass) -> Result<KClass>) -> Result<Entry> {
        Ok(match self {
            Entry::Object { class } => Entry::Object { class: f(class)? },
            Entry::Family { members } => Entry::Family { members: members.iter().map(f).collect::<Result<_>>()? },
            Entry::Block { block } => Entry::Block { block: block.clone() },
        })
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Object { class } => write!(f, "{class}"),
            Entry::Family { members } => {
                write!(f, "{{")?;
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, "}}")
            }
            Entry::Block { block } => write!(f, "{block}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collection {
    pub entries: Vec<Entry>,
}

impl Collection {
    pub fn new(entries: Vec<Entry>) -> Self {
        Collection { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn flat_classes(&self) -> Vec<&KClass> {
        self.entries.iter().flat_map(Entry::classes).collect()
    }

    pub fn has_blocks(&self) -> bool {
        self.entries.iter().any(Entry::is_block)
    }

    fn check_pos(&self, i: usize) -> Result<()> {
        if i >= self.entries.len() {
            return Err(Error::InvalidStep(format!("position {i} out of range (length {})", self.entries.len())));
        }
        Ok(())
    }

    /// Explicit classes of positions `range`, in order; blocks are rejected.
    pub fn segment_classes(&self, range: std::ops::Range<usize>) -> Result<Vec<KClass>> {
        let mut out = Vec::new();
        for e in &self.entries[range] {
            if e.is_block() {
                return Err(Error::InvalidStep(format!("cannot mutate an object through block {e}")));
            }
            out.extend(e.classes().into_iter().cloned());
        }
        Ok(out)
    }

    /// Move position `pos` to position `to < pos`, left-mutating it through
    /// the positions it crosses.
    pub fn mutate_left_at(&self, lat: &KLattice, pos: usize, to: usize) -> Result<Collection> {
        self.check_pos(pos)?;
        if to > pos {
            return Err(Error::InvalidStep(format!("left mutation target {to} is right of {pos}")));
        }
        let mut out = self.clone();
        let moving = out.entries.remove(pos);
        let new = match &moving {
            Entry::Block { block } => {
                let mut b = block.clone();
                let crossed: Vec<String> = self.entries[to..pos].iter().map(|e| e.to_string()).collect();
                b.annotate(format!("L_<{}>", crossed.join(", ")));
                Entry::Block { block: b }
            }
            _ => {
                let seg = self.segment_classes(to..pos)?;
                moving.map_classes(|c| mutate_left_through(lat, &seg, c))?
            }
        };
        out.entries.insert(to, new);
        Ok(out)
    }

    /// Move position `pos` to position `to > pos`, right-mutating it.
    pub fn mutate_right_at(&self, lat: &KLattice, pos: usize, to: usize) -> Result<Collection> {
        self.check_pos(pos)?;
        self.check_pos(to)?;
        if to < pos {
            return Err(Error::InvalidStep(format!("right mutation target {to} is left of {pos}")));
        }
        let mut out = self.clone();
        let moving = out.entries.remove(pos);
        let new = match &moving {
            Entry::Block { block } => {
                let mut b = block.clone();
                let crossed: Vec<String> = self.entries[pos + 1..=to].iter().map(|e| e.to_string()).collect();
                b.annotate(format!("R_<{}>", crossed.join(", ")));
                Entry::Block { block: b }
            }
            _ => {
                let seg = self.segment_classes(pos + 1..to + 1)?;
                moving.map_classes(|c| mutate_right_through(lat, &seg, c))?
            }
        };
        out.entries.insert(to, new);
        Ok(out)
    }

    /// Exchange positions `i` and `i + 1`; orthogonality is the caller's obligation.
    pub fn swap(&self, i: usize) -> Result<Collection> {
        self.check_pos(i + 1)?;
        let mut out = self.clone();
        out.entries.swap(i, i + 1);
        Ok(out)
    }

    /// Move the last position to the front (twisting by omega) or the first
    /// position to the end (twisting by omega^-1).
    pub fn serre_translate(&self, lat: &KLattice, dir: Direction) -> Result<Collection> {
        if self.entries.is_empty() {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        match dir {
            Direction::Left => {
                let e = out.entries.pop().expect("nonempty");
                out.entries.insert(0, translate_entry(lat, &e, dir)?);
            }
            Direction::Right => {
                let e = out.entries.remove(0);
                out.entries.push(translate_entry(lat, &e, dir)?);
            }
        }
        Ok(out)
    }

    pub fn twist_all(&self, lat: &KLattice, twist: &str) -> Result<Collection> {
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                Entry::Block { block } => {
                    let mut b = block.clone();
                    b.annotate(format!("T_{twist}"));
                    Ok(Entry::Block { block: b })
                }
                other => other.map_classes(|c| lat.twist(twist, c)),
            })
            .collect::<Result<_>>()?;
        Ok(Collection { entries })
    }
}

fn translate_entry(lat: &KLattice, e: &Entry, dir: Direction) -> Result<Entry> {
    match e {
        Entry::Block { block } => {
            let mut b = block.clone();
            b.annotate(match dir {
                Direction::Left => "(x)omega",
                Direction::Right => "(x)omega^-1",
            });
            Ok(Entry::Block { block: b })
        }
        other => other.map_classes(|c| lat.serre_twist(c, dir)),
    }
}

impl fmt::Display for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Gram matrix of the explicit classes of a collection with its verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramReport {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<Option<i64>>>,
    /// Unit diagonal and vanishing below the diagonal, plus complete
    /// orthogonality inside families.
    pub exceptional: bool,
    /// Set when blocks were skipped or some pairing is unknown.
    pub qualified: bool,
}

pub fn gram(lat: &KLattice, coll: &Collection) -> GramReport {
    let mut classes = Vec::new();
    let mut family_of = Vec::new();
    for (p, e) in coll.entries.iter().enumerate() {
        for c in e.classes() {
            classes.push(c.clone());
            family_of.push(p);
        }
    }
    let n = classes.len();
    let mut matrix = vec![vec![None; n]; n];
    let mut exceptional = true;
    let mut unknown = false;
    for i in 0..n {
        for j in 0..n {
            let v = lat.chi(&classes[i], &classes[j]).ok();
            matrix[i][j] = v;
            match v {
                None => unknown = true,
                Some(v) => {
                    let bad = if i == j {
                        v != 1
                    } else {
                        i > j && v != 0 || family_of[i] == family_of[j] && v != 0
                    };
                    if bad {
                        exceptional = false;
                    }
                }
            }
        }
    }
    GramReport {
        labels: classes.iter().map(KClass::label).collect(),
        matrix,
        exceptional,
        qualified: unknown || coll.has_blocks(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Euler form of P^3 on O, O(1), O(2), O(3): chi(O(i), O(j)) = binom(j - i + 3, 3).
    fn p3() -> KLattice {
        let b = |k: i64| (k + 1) * (k + 2) * (k + 3) / 6;
        let gram = (0..4).map(|i| (0..4).map(|j| b(j - i)).collect()).collect();
        KLattice::ambient("P3", (0..4).map(|i| format!("O({i})")).collect(), gram)
    }

    #[test]
    fn orthogonal_left_mutation_is_trivial() {
        let lat = KLattice::ambient("pt2", vec!["a".into(), "b".into()], vec![vec![1, 0], vec![0, 1]]);
        let (a, b) = (lat.generator("a").unwrap(), lat.generator("b").unwrap());
        assert!(mutate_left(&lat, &a, &b).unwrap().same(&b));
    }

    #[test]
    fn beilinson_mutation() {
        let lat = p3();
        let (o, o1) = (lat.generator("O(0)").unwrap(), lat.generator("O(1)").unwrap());
        // L_O O(1) = O(1) - 4 O
        let l = mutate_left(&lat, &o, &o1).unwrap();
        assert_eq!(l.coords, vec![-4, 1, 0, 0]);
        assert_eq!(lat.chi(&o, &l).unwrap(), 0);
    }

    #[test]
    fn non_exceptional_rejected() {
        let lat = p3();
        let two = lat.generator("O(0)").unwrap().scale(2);
        assert!(matches!(mutate_left(&lat, &two, &two), Err(Error::NotExceptional(4))));
    }

    #[test]
    fn gram_of_beilinson_collection() {
        let lat = p3();
        let coll = Collection::new((0..4).map(|i| Entry::object(KClass::unit(4, i))).collect());
        let g = gram(&lat, &coll);
        assert!(g.exceptional);
        assert!(!g.qualified);
        assert_eq!(g.matrix[0][3], Some(20));
        let rev = Collection::new(coll.entries.iter().rev().cloned().collect());
        assert!(!gram(&lat, &rev).exceptional);
    }

    #[test]
    fn unknown_pairing_is_an_error() {
        let lat = KLattice::formal("f", vec!["a".into(), "b".into()], vec![vec![Some(1), None], vec![Some(0), Some(1)]]);
        let (a, b) = (lat.generator("a").unwrap(), lat.generator("b").unwrap());
        assert!(matches!(lat.chi(&a, &b), Err(Error::UnknownPairing(..))));
        assert!(gram(&lat, &Collection::new(vec![Entry::object(a), Entry::object(b)])).qualified);
    }

    #[test]
    fn swap_twice_restores() {
        let coll = Collection::new(vec![Entry::block("A"), Entry::block("B")]);
        assert_eq!(coll.swap(0).unwrap().swap(0).unwrap(), coll);
    }

    #[test]
    fn block_mutation_annotates() {
        let lat = p3();
        let coll = Collection::new(vec![Entry::object(KClass::unit(4, 0)), Entry::block("A")]);
        let out = coll.mutate_left_at(&lat, 1, 0).unwrap();
        assert!(out.entries[0].is_block());
        assert!(out.entries[0].to_string().contains("L_<"));
        // an object cannot pass through an opaque block
        let back = Collection::new(vec![Entry::block("A"), Entry::object(KClass::unit(4, 0))]);
        assert!(back.mutate_left_at(&lat, 1, 0).is_err());
    }
}
