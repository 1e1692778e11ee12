//! Borel-Bott-Weil cohomology of homogeneous bundles on Grassmannians
//! `Gr(k, n)` (k = 1, 2), Kunneth on products, and hypercohomology and
//! relative pushforward of bounded complexes such as Koszul resolutions.
//!
//! Conventions. On `Gr(k, V)` with tautological `U` (rank k) and quotient
//! `Q = V/U`, an irreducible homogeneous bundle is `Sigma^a U^v (x) Sigma^b Q^v`
//! and is stored as the pair `(a, b)`. `O(1) = det U^v`, so `O(d)` is
//! `((d,..,d), 0)`. Cohomology is reported as `Sigma^lambda V^v` through its
//! highest weight `lambda`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{self, weyl_dim, Weight, WeightSum};

/// A Grassmannian `Gr(k, n)` taking part in a product space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomFactor {
    pub k: usize,
    pub n: usize,
    pub name: String,
}

impl HomFactor {
    pub fn new(k: usize, n: usize, name: impl Into<String>) -> Result<Self> {
        if !(1..=2).contains(&k) || !(3..=4).contains(&n) || k >= n {
            return Err(Error::Unsupported(format!("Gr({k},{n}) is not a catalog factor")));
        }
        Ok(HomFactor { k, n, name: name.into() })
    }

    pub fn projective3(name: impl Into<String>) -> Self {
        HomFactor { k: 1, n: 4, name: name.into() }
    }

    pub fn gr24(name: impl Into<String>) -> Self {
        HomFactor { k: 2, n: 4, name: name.into() }
    }

    pub fn gr23(name: impl Into<String>) -> Self {
        HomFactor { k: 2, n: 3, name: name.into() }
    }

    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    pub fn quotient_rank(&self) -> usize {
        self.n - self.k
    }

    /// The bundle `O(d)`.
    pub fn line(&self, d: i64) -> FactorWeight {
        FactorWeight {
            sub: Weight::det_power(self.k, d),
            quo: Weight::zero(self.quotient_rank()),
        }
    }

    /// Canonical bundle `O(-n)`.
    pub fn canonical(&self) -> FactorWeight {
        self.line(-(self.n as i64))
    }

    pub fn trivial(&self) -> FactorWeight {
        self.line(0)
    }
}

impl fmt::Display for HomFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=Gr({},{})", self.name, self.k, self.n)
    }
}

/// Weights of one factor of a box-tensor term: `Sigma^sub U^v (x) Sigma^quo Q^v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FactorWeight {
    pub sub: Weight,
    pub quo: Weight,
}

impl FactorWeight {
    pub fn new(sub: impl Into<Vec<i64>>, quo: impl Into<Vec<i64>>) -> Self {
        FactorWeight {
            sub: Weight::new(sub),
            quo: Weight::new(quo),
        }
    }

    pub fn dual(&self) -> FactorWeight {
        FactorWeight {
            sub: self.sub.dualize(),
            quo: self.quo.dualize(),
        }
    }

    pub fn twisted(&self, d: i64) -> FactorWeight {
        FactorWeight {
            sub: self.sub.shifted(d),
            quo: self.quo.clone(),
        }
    }

    pub fn check(&self, space: &HomFactor) -> Result<()> {
        if self.sub.len() != space.k {
            return Err(Error::WeightLength { expected: space.k, found: self.sub.len() });
        }
        if self.quo.len() != space.quotient_rank() {
            return Err(Error::WeightLength {
                expected: space.quotient_rank(),
                found: self.quo.len(),
            });
        }
        self.sub.ensure_dominant()?;
        self.quo.ensure_dominant()
    }

    pub fn rank(&self) -> Result<u64> {
        Ok(weyl_dim(&self.sub)? * weyl_dim(&self.quo)?)
    }

    /// Irreducible decomposition of a tensor product on one factor.
    pub fn tensor(&self, other: &FactorWeight) -> Result<Vec<(FactorWeight, u64)>> {
        let subs = weights::tensor(&self.sub, &other.sub)?;
        let quos = weights::tensor(&self.quo, &other.quo)?;
        let mut out = Vec::new();
        for (s, ms) in subs.iter() {
            for (q, mq) in quos.iter() {
                out.push((FactorWeight { sub: s.clone(), quo: q.clone() }, ms * mq));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FactorWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]", self.sub, self.quo)
    }
}

/// One box-tensor summand `mult * (F_1 ⊠ ... ⊠ F_r)[shift]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BundleTerm {
    pub mult: u64,
    pub factors: Vec<FactorWeight>,
    #[serde(default)]
    pub shift: i32,
}

/// A formal sum of irreducible box-tensor bundles on a product of factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantBundle {
    pub terms: Vec<BundleTerm>,
}

impl EquivariantBundle {
    pub fn irreducible(factors: Vec<FactorWeight>) -> Self {
        EquivariantBundle {
            terms: vec![BundleTerm { mult: 1, factors, shift: 0 }],
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn trivial(spaces: &[HomFactor]) -> Self {
        Self::irreducible(spaces.iter().map(HomFactor::trivial).collect())
    }

    /// Line bundle `O(d_1) ⊠ ... ⊠ O(d_r)`.
    pub fn line(spaces: &[HomFactor], degrees: &[i64]) -> Self {
        Self::irreducible(spaces.iter().zip(degrees).map(|(s, &d)| s.line(d)).collect())
    }

    pub fn with_mult(mut self, m: u64) -> Self {
        for t in &mut self.terms {
            t.mult *= m;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn check(&self, spaces: &[HomFactor]) -> Result<()> {
        for t in &self.terms {
            if t.factors.len() != spaces.len() {
                return Err(Error::FactorMismatch { expected: spaces.len(), found: t.factors.len() });
            }
            for (fw, s) in t.factors.iter().zip(spaces) {
                fw.check(s)?;
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> Result<u64> {
        let mut r = 0;
        for t in &self.terms {
            let mut tr = t.mult;
            for fw in &t.factors {
                tr *= fw.rank()?;
            }
            r += tr;
        }
        Ok(r)
    }

    pub fn dual(&self) -> Self {
        EquivariantBundle {
            terms: self
                .terms
                .iter()
                .map(|t| BundleTerm {
                    mult: t.mult,
                    factors: t.factors.iter().map(FactorWeight::dual).collect(),
                    shift: -t.shift,
                })
                .collect(),
        }
    }

    /// Twist every term by `O(d_1) ⊠ ... ⊠ O(d_r)`.
    pub fn twisted(&self, degrees: &[i64]) -> Self {
        EquivariantBundle {
            terms: self
                .terms
                .iter()
                .map(|t| BundleTerm {
                    mult: t.mult,
                    factors: t.factors.iter().zip(degrees).map(|(f, &d)| f.twisted(d)).collect(),
                    shift: t.shift,
                })
                .collect(),
        }
    }

    pub fn sum(&self, other: &EquivariantBundle) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        EquivariantBundle { terms }.canonical()
    }

    /// Tensor product, decomposed into irreducible box-tensor terms.
    pub fn tensor(&self, other: &EquivariantBundle) -> Result<Self> {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                if a.factors.len() != b.factors.len() {
                    return Err(Error::FactorMismatch { expected: a.factors.len(), found: b.factors.len() });
                }
                let mut partial: Vec<(Vec<FactorWeight>, u64)> = vec![(Vec::new(), a.mult * b.mult)];
                for (fa, fb) in a.factors.iter().zip(&b.factors) {
                    let pieces = fa.tensor(fb)?;
                    let mut next = Vec::with_capacity(partial.len() * pieces.len());
                    for (prefix, m) in &partial {
                        for (fw, mp) in &pieces {
                            let mut v = prefix.clone();
                            v.push(fw.clone());
                            next.push((v, m * mp));
                        }
                    }
                    partial = next;
                }
                for (factors, mult) in partial {
                    terms.push(BundleTerm { mult, factors, shift: a.shift + b.shift });
                }
            }
        }
        Ok(EquivariantBundle { terms }.canonical())
    }

    /// Merge equal terms and fix a canonical order.
    pub fn canonical(self) -> Self {
        let mut acc: BTreeMap<(Vec<FactorWeight>, i32), u64> = BTreeMap::new();
        for t in self.terms {
            *acc.entry((t.factors, t.shift)).or_insert(0) += t.mult;
        }
        EquivariantBundle {
            terms: acc
                .into_iter()
                .filter(|(_, m)| *m > 0)
                .map(|((factors, shift), mult)| BundleTerm { mult, factors, shift })
                .collect(),
        }
    }

    /// Split off the factors with the given indices: returns, per term,
    /// `(kept factors, integrated factors)`.
    fn split(&self, along: &[usize]) -> Vec<(u64, i32, Vec<FactorWeight>, Vec<FactorWeight>)> {
        self.terms
            .iter()
            .map(|t| {
                let mut keep = Vec::new();
                let mut drop = Vec::new();
                for (i, f) in t.factors.iter().enumerate() {
                    if along.contains(&i) {
                        drop.push(f.clone());
                    } else {
                        keep.push(f.clone());
                    }
                }
                (t.mult, t.shift, keep, drop)
            })
            .collect()
    }
}

impl fmt::Display for EquivariantBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if t.mult != 1 {
                write!(f, "{}*", t.mult)?;
            }
            for (j, fw) in t.factors.iter().enumerate() {
                if j > 0 {
                    write!(f, "⊠")?;
                }
                write!(f, "{fw}")?;
            }
            if t.shift != 0 {
                write!(f, "[{}]", t.shift)?;
            }
        }
        Ok(())
    }
}

/// Cohomology as a graded representation of the product of the GL factors.
///
/// Each degree maps a tuple of highest weights (one per factor) to its
/// multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSpace {
    pieces: BTreeMap<i32, BTreeMap<Vec<Weight>, u64>>,
}

impl GradedSpace {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(degree: i32, weights: Vec<Weight>, mult: u64) -> Self {
        let mut g = Self::zero();
        g.add(degree, weights, mult);
        g
    }

    pub fn add(&mut self, degree: i32, weights: Vec<Weight>, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.pieces.entry(degree).or_default().entry(weights).or_insert(0) += mult;
    }

    pub fn extend(&mut self, other: &GradedSpace) {
        for (d, reps) in &other.pieces {
            for (w, m) in reps {
                self.add(*d, w.clone(), *m);
            }
        }
    }

    pub fn shifted(&self, by: i32) -> Self {
        GradedSpace {
            pieces: self.pieces.iter().map(|(d, r)| (d + by, r.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Kunneth: degrees add, weight tuples concatenate.
    pub fn tensor(&self, other: &GradedSpace) -> Self {
        let mut out = GradedSpace::zero();
        for (da, ra) in &self.pieces {
            for (db, rb) in &other.pieces {
                for (wa, ma) in ra {
                    for (wb, mb) in rb {
                        let mut w = wa.clone();
                        w.extend(wb.iter().cloned());
                        out.add(da + db, w, ma * mb);
                    }
                }
            }
        }
        out
    }

    pub fn scaled(&self, m: u64) -> Self {
        GradedSpace {
            pieces: self
                .pieces
                .iter()
                .map(|(d, r)| (*d, r.iter().map(|(w, x)| (w.clone(), x * m)).collect()))
                .collect(),
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.pieces.keys().copied()
    }

    pub fn reps(&self, degree: i32) -> impl Iterator<Item = (&Vec<Weight>, u64)> {
        self.pieces.get(&degree).into_iter().flat_map(|m| m.iter().map(|(w, x)| (w, *x)))
    }

    /// For single-factor spaces: the representation in a degree as a [`WeightSum`].
    pub fn weight_sum(&self, degree: i32) -> WeightSum {
        let mut s = WeightSum::new();
        for (ws, m) in self.reps(degree) {
            if let [w] = ws.as_slice() {
                s.add(w.clone(), m);
            }
        }
        s
    }

    pub fn dim_in(&self, degree: i32) -> u64 {
        self.reps(degree)
            .map(|(ws, m)| m * ws.iter().map(|w| weyl_dim(w).expect("cohomology weights are dominant")).product::<u64>())
            .sum()
    }

    /// Degree to total dimension, zero degrees omitted.
    pub fn dims(&self) -> BTreeMap<i32, u64> {
        self.pieces
            .keys()
            .map(|&d| (d, self.dim_in(d)))
            .filter(|(_, x)| *x > 0)
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims()
            .iter()
            .map(|(d, x)| if d % 2 == 0 { *x as i64 } else { -(*x as i64) })
            .sum()
    }

    /// Graded dimensions as a plain value, without representation data.
    pub fn to_graded_dims(&self) -> GradedDims {
        GradedDims(self.dims())
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims = self.dims();
        if dims.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, x)) in dims.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "degree {d}: dim {x}")?;
        }
        Ok(())
    }
}

impl Serialize for GradedSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Rep<'a> {
            weights: &'a [Weight],
            mult: u64,
        }
        #[derive(Serialize)]
        struct Deg<'a> {
            degree: i32,
            dim: u64,
            reps: Vec<Rep<'a>>,
        }
        let v: Vec<Deg> = self
            .pieces
            .iter()
            .map(|(d, r)| Deg {
                degree: *d,
                dim: self.dim_in(*d),
                reps: r.iter().map(|(w, m)| Rep { weights: w, mult: *m }).collect(),
            })
            .collect();
        v.serialize(s)
    }
}

/// Graded dimensions `degree -> dim`; the representation-free shadow of a
/// [`GradedSpace`], used for Ext answers that do not come from BBW.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims(pub BTreeMap<i32, u64>);

impl GradedDims {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn concentrated(degree: i32, dim: u64) -> Self {
        let mut g = Self::zero();
        g.add(degree, dim);
        g
    }

    pub fn add(&mut self, degree: i32, dim: u64) {
        if dim > 0 {
            *self.0.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(|&d| d == 0)
    }

    pub fn get(&self, degree: i32) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .map(|(d, x)| if d % 2 == 0 { *x as i64 } else { -(*x as i64) })
            .sum()
    }

    pub fn shifted(&self, by: i32) -> Self {
        GradedDims(self.0.iter().map(|(d, x)| (d + by, *x)).collect())
    }

    /// `t -> dims[n - t]`, the shape of a Serre dual.
    pub fn reflected(&self, n: i32) -> Self {
        GradedDims(self.0.iter().map(|(d, x)| (n - d, *x)).collect())
    }

    pub fn direct_sum(&self, other: &GradedDims) -> Self {
        let mut out = self.clone();
        for (d, x) in &other.0 {
            out.add(*d, *x);
        }
        out
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<_> = self.0.iter().filter(|(_, x)| **x > 0).collect();
        if nz.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, x)) in nz.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            // C^k[-d] notation
            if **x == 1 {
                write!(f, "C")?;
            } else {
                write!(f, "C^{x}")?;
            }
            if **d != 0 {
                write!(f, "[{}]", -**d)?;
            }
        }
        Ok(())
    }
}

/// Cohomology of one irreducible homogeneous bundle on `Gr(k, n)`.
///
/// Form `(sub ++ quo) + rho` with `rho = (n-1, ..., 1, 0)`. A repeated entry
/// means all cohomology vanishes; otherwise sorting into strictly decreasing
/// order with `l` inversions gives `H^l = Sigma^(sorted - rho) V^v`.
pub fn bbw_factor(space: &HomFactor, term: &FactorWeight) -> Result<GradedSpace> {
    term.check(space)?;
    let n = space.n;
    let mut shifted: Vec<i64> = term
        .sub
        .entries()
        .iter()
        .chain(term.quo.entries())
        .enumerate()
        .map(|(i, a)| a + (n - 1 - i) as i64)
        .collect();
    let mut inversions = 0i32;
    for i in 0..n {
        for j in i + 1..n {
            if shifted[i] == shifted[j] {
                return Ok(GradedSpace::zero());
            }
            if shifted[i] < shifted[j] {
                inversions += 1;
            }
        }
    }
    shifted.sort_unstable_by(|a, b| b.cmp(a));
    let lambda: Vec<i64> = shifted.iter().enumerate().map(|(i, a)| a - (n - 1 - i) as i64).collect();
    Ok(GradedSpace::single(inversions, vec![Weight::new(lambda)], 1))
}

/// Kunneth over the factors, summed over terms; term multiplicities scale the
/// result and term shifts move degrees.
pub fn bbw_product(spaces: &[HomFactor], bundle: &EquivariantBundle) -> Result<GradedSpace> {
    bundle.check(spaces)?;
    let mut out = GradedSpace::zero();
    for t in &bundle.terms {
        let mut acc = GradedSpace::single(0, Vec::new(), 1);
        for (fw, space) in t.factors.iter().zip(spaces) {
            acc = acc.tensor(&bbw_factor(space, fw)?);
            if acc.is_zero() {
                break;
            }
        }
        out.extend(&acc.scaled(t.mult).shifted(-t.shift));
    }
    Ok(out)
}

/// A bounded complex of homogeneous bundles indexed by cohomological position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermComplex {
    pub terms: BTreeMap<i32, EquivariantBundle>,
}

impl TermComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, EquivariantBundle)>) -> Self {
        let mut c = Self::new();
        for (p, b) in terms {
            c.insert(p, b);
        }
        c
    }

    pub fn insert(&mut self, position: i32, bundle: EquivariantBundle) {
        let entry = self.terms.entry(position).or_default();
        *entry = entry.sum(&bundle);
        if entry.is_zero() {
            self.terms.remove(&position);
        }
    }

    /// Tensor every term with a bundle.
    pub fn tensor(&self, bundle: &EquivariantBundle) -> Result<Self> {
        let mut out = Self::new();
        for (p, b) in &self.terms {
            out.insert(*p, b.tensor(bundle)?);
        }
        Ok(out)
    }

    pub fn twisted(&self, degrees: &[i64]) -> Self {
        TermComplex {
            terms: self.terms.iter().map(|(p, b)| (*p, b.twisted(degrees))).collect(),
        }
    }

    /// Ranks of the terms by position.
    pub fn ranks(&self) -> Result<BTreeMap<i32, u64>> {
        self.terms.iter().map(|(p, b)| Ok((*p, b.rank()?))).collect()
    }
}

impl fmt::Display for TermComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, b)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " -> ")?;
            }
            write!(f, "{{{p}: {b}}}")?;
        }
        Ok(())
    }
}

/// First page of the hypercohomology spectral sequence: `(p, q) -> H^q(K^p)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct E1Table {
    pub entries: BTreeMap<(i32, i32), GradedSpace>,
}

impl E1Table {
    /// Pairs of nonzero entries that some differential `d_r: (p,q) -> (p+r, q-r+1)`, `r >= 1`, connects.
    pub fn collisions(&self) -> Vec<((i32, i32), (i32, i32))> {
        let keys: Vec<_> = self.entries.keys().copied().collect();
        let mut out = Vec::new();
        for &(p, q) in &keys {
            for &(p2, q2) in &keys {
                let r = p2 - p;
                if r >= 1 && q2 == q - r + 1 {
                    out.push(((p, q), (p2, q2)));
                }
            }
        }
        out
    }

    pub fn is_staircase_disjoint(&self) -> bool {
        self.collisions().is_empty()
    }
}

/// Outcome of a hypercohomology computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hypercohomology {
    Determinate(GradedSpace),
    Indeterminate(E1Table),
}

impl Hypercohomology {
    pub fn determinate(&self) -> Option<&GradedSpace> {
        match self {
            Hypercohomology::Determinate(g) => Some(g),
            Hypercohomology::Indeterminate(_) => None,
        }
    }
}

/// Hypercohomology of a bounded complex by its E1 page. Returns the direct sum
/// only when the table is staircase-disjoint; degeneration is never assumed
/// otherwise.
pub fn hypercohomology(spaces: &[HomFactor], complex: &TermComplex) -> Result<Hypercohomology> {
    let table = e1_table(spaces, complex)?;
    if !table.is_staircase_disjoint() {
        return Ok(Hypercohomology::Indeterminate(table));
    }
    let mut total = GradedSpace::zero();
    for ((p, q), g) in &table.entries {
        debug_assert!(g.degrees().all(|d| d == *q));
        total.extend(&g.shifted(*p));
    }
    Ok(Hypercohomology::Determinate(total))
}

pub fn e1_table(spaces: &[HomFactor], complex: &TermComplex) -> Result<E1Table> {
    let mut table = E1Table::default();
    for (p, bundle) in &complex.terms {
        let h = bbw_product(spaces, bundle)?;
        for q in h.degrees().collect::<Vec<_>>() {
            let mut piece = GradedSpace::zero();
            for (w, m) in h.reps(q) {
                piece.add(q, w.clone(), m);
            }
            if !piece.is_zero() {
                table.entries.insert((*p, q), piece);
            }
        }
    }
    Ok(table)
}

/// One term produced by a relative pushforward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub koszul_position: i32,
    pub fibre_degree: i32,
    pub total_position: i32,
    /// Weights of the fibre cohomology (as representations of the integrated factors).
    pub fibre_weights: Vec<Weight>,
    pub bundle: EquivariantBundle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushforward {
    pub complex: TermComplex,
    pub contributions: Vec<Contribution>,
    /// False when contributions from different Koszul positions land at the
    /// same total position: their extension is then not determined by the terms.
    pub determinate: bool,
}

/// Push a complex on a product forward along the factors listed in `along`,
/// term by term: fibre cohomology in degree `q` of the term at position `p`
/// contributes at position `p + q`.
pub fn pushforward_complex(spaces: &[HomFactor], complex: &TermComplex, along: &[usize]) -> Result<Pushforward> {
    let fibre: Vec<HomFactor> = along.iter().map(|&i| spaces[i].clone()).collect();
    let mut out = TermComplex::new();
    let mut contributions = Vec::new();
    let mut sources: BTreeMap<i32, std::collections::BTreeSet<i32>> = BTreeMap::new();
    for (p, bundle) in &complex.terms {
        bundle.check(spaces)?;
        for (mult, shift, keep, drop) in bundle.split(along) {
            let fibre_bundle = EquivariantBundle::irreducible(drop);
            let h = bbw_product(&fibre, &fibre_bundle)?;
            for q in h.degrees().collect::<Vec<_>>() {
                for (ws, m) in h.reps(q) {
                    let dim: u64 = ws.iter().map(|w| weyl_dim(w).expect("dominant")).product();
                    let total = p + q - shift;
                    let b = EquivariantBundle::irreducible(keep.clone()).with_mult(mult * m * dim);
                    out.insert(total, b.clone());
                    sources.entry(total).or_default().insert(*p);
                    contributions.push(Contribution {
                        koszul_position: *p,
                        fibre_degree: q,
                        total_position: total,
                        fibre_weights: ws.clone(),
                        bundle: b,
                    });
                }
            }
        }
    }
    let determinate = sources.values().all(|s| s.len() <= 1);
    Ok(Pushforward { complex: out, contributions, determinate })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr24() -> HomFactor {
        HomFactor::gr24("Gr(2,W)")
    }

    #[test]
    fn symmetric_square_of_dual_tautological_twisted() {
        // S^2 U (-1) = Sigma^(0,-2) U^v tensored with det^(-1)
        let fw = FactorWeight::new([-1, -3], [0, 0]);
        let h = bbw_factor(&gr24(), &fw).unwrap();
        assert_eq!(h.dims(), BTreeMap::from([(2, 1)]));
    }

    #[test]
    fn symmetric_cube_gives_four_dimensional_h2() {
        let fw = FactorWeight::new([0, -3], [0, 0]);
        let h = bbw_factor(&gr24(), &fw).unwrap();
        assert_eq!(h.dims(), BTreeMap::from([(2, 4)]));
        // (0,-1,-1,-1) = dual vector representation twisted by det^(-1)
        assert_eq!(h.weight_sum(2).multiplicity(&Weight::new(vec![0, -1, -1, -1])), 1);
    }

    #[test]
    fn negative_line_bundle_on_gr24_is_acyclic() {
        let h = bbw_factor(&gr24(), &gr24().line(-1)).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn projective_space_top_cohomology() {
        let p3 = HomFactor::projective3("P3");
        let h = bbw_factor(&p3, &p3.line(-4)).unwrap();
        assert_eq!(h.dims(), BTreeMap::from([(3, 1)]));
        let h1 = bbw_factor(&p3, &p3.line(1)).unwrap();
        assert_eq!(h1.dims(), BTreeMap::from([(0, 4)]));
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let bad = FactorWeight::new([0], [0, 0]);
        assert!(bbw_factor(&gr24(), &bad).is_err());
    }

    #[test]
    fn product_of_trivial_bundles() {
        let spaces = [HomFactor::gr24("Gr(2,V)"), HomFactor::projective3("P(W)")];
        let h = bbw_product(&spaces, &EquivariantBundle::trivial(&spaces)).unwrap();
        assert_eq!(h.dims(), BTreeMap::from([(0, 1)]));
        let dead = EquivariantBundle::line(&spaces, &[-1, 2]);
        assert!(bbw_product(&spaces, &dead).unwrap().is_zero());
    }

    #[test]
    fn staircase_detects_possible_cancellation() {
        let p1 = HomFactor::projective3("P3");
        // O at position -1 (H^0) and O(-4) at position -3 (H^3): d_? from (-3,3) to (-1,... ) no;
        // O(-4) at position -4 has (p,q)=(-4,3), O at 0 has (0,0): r=4 gives q'=0 -> collision.
        let c = TermComplex::from_terms([
            (-4, EquivariantBundle::line(std::slice::from_ref(&p1), &[-4])),
            (0, EquivariantBundle::line(std::slice::from_ref(&p1), &[0])),
        ]);
        let h = hypercohomology(&[p1], &c).unwrap();
        assert!(matches!(h, Hypercohomology::Indeterminate(_)));
    }
}
